# Copyright 2026 The sbcrb Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""YAML run configurations and their resolution into Scenarios."""

import collections
import logging

import numpy as np
import yaml

from sbcrb import pool
from sbcrb import simulate
from sbcrb import system_model
from sbcrb.errors import ConfigError, SbcrbError
from sbcrb.system_model import ChannelDistribution, PrecoderKind


DEFAULT_GAMMA = 10.0
DEFAULT_TRIALS = 100000
DEFAULT_SEED = 0

CHANNEL_STREAM = 10
SYMBOL_STREAM = 11

OUTPUT_FORMATS = ('json', 'csv')
SWEEP_VARIABLES = ('gamma', 'pilots', 'precoder')
GAMMA_SCALES = ('log', 'linear')

_TOP_LEVEL_KEYS = ('dims', 'precoder', 'pilots', 'gamma', 'sweep', 'channel',
                   'symbols', 'trials', 'seed', 'output')

_log = logging.getLogger(__name__)


class RunConfig(object):
    """A validated configuration with every default filled in.

    Each section is kept in its canonical dict form, so to_dict() is the
    resolved configuration and from_dict(to_dict()) reproduces it.
    """
    # pylint: disable=too-many-instance-attributes

    def __init__(self):
        self.dims = None
        self.precoder = None
        self.pilots = None
        self.gamma = None
        self.sweep = None
        self.channel = None
        self.symbols = None
        self.trials = DEFAULT_TRIALS
        self.seed = DEFAULT_SEED
        self.output = None
        self.base_dir = ''

    @classmethod
    def from_dict(cls, d, base_dir=''):
        if not isinstance(d, dict):
            raise ConfigError('a config must be a mapping, got %s' %
                              type(d).__name__)
        _check_keys('config', d, _TOP_LEVEL_KEYS)
        if 'dims' not in d:
            raise ConfigError('config has no "dims" section')
        c = cls()
        c.base_dir = base_dir
        c.seed = _int('seed', d.get('seed', DEFAULT_SEED), low=0)
        c.trials = _int('trials', d.get('trials', DEFAULT_TRIALS), low=1)
        c.dims = _parse_dims(d['dims'])
        c.precoder = _parse_precoder(d.get('precoder'))
        c.pilots = _parse_pilots(d.get('pilots'))
        c.gamma = _parse_gamma(d.get('gamma', DEFAULT_GAMMA))
        c.sweep = _parse_sweep(d.get('sweep'), c)
        c.channel = _parse_channel(d.get('channel'), c.seed)
        c.symbols = _parse_symbols(d.get('symbols'), c.seed)
        c.output = _parse_output(d.get('output'))
        return c

    def to_dict(self):
        d = collections.OrderedDict()
        d['dims'] = self.dims
        d['precoder'] = self.precoder
        d['pilots'] = self.pilots
        d['gamma'] = self.gamma
        if self.sweep is not None:
            d['sweep'] = self.sweep
        d['channel'] = self.channel
        d['symbols'] = self.symbols
        d['trials'] = self.trials
        d['seed'] = self.seed
        d['output'] = self.output
        return d

    def __eq__(self, other):
        return (isinstance(other, RunConfig) and
                plain_dict(self.to_dict()) == plain_dict(other.to_dict()))

    def __ne__(self, other):
        return not self == other

    @property
    def gamma_is_range(self):
        return isinstance(self.gamma, dict)

    def gamma_values(self):
        if not self.gamma_is_range:
            return [self.gamma]
        g = self.gamma
        if g['scale'] == 'log':
            vals = np.logspace(np.log10(g['start']), np.log10(g['stop']),
                               g['points'])
        else:
            vals = np.linspace(g['start'], g['stop'], g['points'])
        return [float(v) for v in vals]

    def single_gamma(self, command):
        if self.gamma_is_range:
            raise ConfigError('"%s" needs a single gamma; use "sweep" for a '
                              'gamma range' % command)
        return self.gamma


def load_config(host, path):
    """Reads and validates a YAML config file through the host."""
    try:
        text = host.read_text_file(path)
    except (IOError, OSError) as e:
        raise ConfigError('cannot read config %s: %s' % (path, e))
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError('%s is not valid YAML: %s' % (path, e))
    _log.debug('loaded config %s', path)
    return RunConfig.from_dict(data, base_dir=host.dirname(host.abspath(path)))


def dump_config(config):
    return yaml.safe_dump(plain_dict(config.to_dict()),
                          default_flow_style=False, sort_keys=False)


class ScenarioBuilder(object):
    """Turns a RunConfig into Scenarios, reading matrix files via the host."""

    def __init__(self, config, host):
        self.config = config
        self.host = host
        try:
            d = config.dims
            self.dims = system_model.SystemDims(d['M'], d['L'], d['N'])
        except SbcrbError as e:
            raise ConfigError('dims: %s' % e)
        self._symbols = None
        self._channel = None

    def scenario(self, gamma=None, pilot_count=None, precoder_kind=None):
        if gamma is None:
            gamma = self.config.gamma_values()[0]
        precoder = self.precoder(precoder_kind)
        s, pilots = self._symbols_and_pilots(pilot_count)
        try:
            return system_model.Scenario(self.dims, precoder, pilots,
                                         self.channel(), s, gamma)
        except (SbcrbError, ValueError) as e:
            raise ConfigError(str(e))

    def precoder(self, kind=None):
        cfg = self.config.precoder
        kind = kind or cfg['kind']
        try:
            if kind == PrecoderKind.custom:
                if 'matrix_file' not in cfg:
                    raise ConfigError('a custom precoder needs a matrix_file')
                return system_model.load_precoder(
                    self._read(cfg['matrix_file']), self.dims)
            return system_model.build_precoder(kind, self.dims)
        except (SbcrbError, ValueError) as e:
            raise ConfigError('precoder: %s' % e)

    def channel(self):
        if self._channel is None:
            cfg = self.config.channel
            try:
                if 'taps' in cfg:
                    self._channel = system_model.ChannelState(
                        _complex_list('channel.taps', cfg['taps']),
                        self.dims)
                else:
                    rng = pool.RngSpec(cfg['seed'],
                                       CHANNEL_STREAM).generator(0)
                    self._channel = system_model.random_channel(
                        self.dims, rng, cfg['distribution'])
            except (SbcrbError, ValueError) as e:
                raise ConfigError('channel: %s' % e)
        return self._channel

    def pilots(self, s=None, count=None):
        """The PilotSpec; count-style pilots take their values from s."""
        cfg = self.config.pilots
        try:
            if 'count' in cfg or count is not None:
                count = cfg.get('count', 0) if count is None else count
                if count > self.dims.MN:
                    raise ConfigError('%d pilots do not fit %d symbols' %
                                      (count, self.dims.MN))
                idx = list(range(count))
                return system_model.pilot_spec_from_indices(
                    idx, s[idx], self.dims)
            values = _complex_list('pilots.values', cfg['values'])
            if 'indices' in cfg:
                return system_model.pilot_spec_from_indices(
                    cfg['indices'], values, self.dims)
            A = system_model.parse_matrix_text(self._read(cfg['matrix_file']))
            return system_model.pilot_spec_from_matrix(A, values, self.dims)
        except (SbcrbError, ValueError) as e:
            raise ConfigError('pilots: %s' % e)

    def _symbols_and_pilots(self, pilot_count):
        cfg = self.config.symbols
        counted = 'count' in self.config.pilots or pilot_count is not None
        if 'values' in cfg:
            s = _complex_list('symbols.values', cfg['values'])
            if len(s) != self.dims.MN:
                raise ConfigError('symbols: %d values given, expected MN=%d' %
                                  (len(s), self.dims.MN))
            s = np.asarray(s, dtype=complex)
            return s, self.pilots(s, pilot_count)
        if counted:
            if self._symbols is None:
                no_pilots = system_model.pilot_spec_from_indices(
                    [], [], self.dims)
                self._symbols = self._draw(no_pilots)
            return self._symbols, self.pilots(self._symbols, pilot_count)
        pilots = self.pilots()
        return self._draw(pilots), pilots

    def _draw(self, pilots):
        cfg = self.config.symbols
        rng = pool.RngSpec(cfg['seed'], SYMBOL_STREAM).generator(0)
        try:
            return simulate.draw_symbols(self.dims.MN, cfg['constellation'],
                                         pilots, rng)
        except (SbcrbError, ValueError) as e:
            raise ConfigError('symbols: %s' % e)

    def _read(self, path):
        if not self.host.isabs(path) and self.config.base_dir:
            path = self.host.join(self.config.base_dir, path)
        try:
            return self.host.read_text_file(path)
        except (IOError, OSError) as e:
            raise ConfigError('cannot read %s: %s' % (path, e))


def plain_dict(obj):
    if isinstance(obj, dict):
        return dict((k, plain_dict(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [plain_dict(v) for v in obj]
    return obj


def _check_keys(section, d, allowed):
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise ConfigError('%s: unknown key(s) %s' %
                          (section, ', '.join(str(k) for k in unknown)))


def _mapping(section, d):
    if d is None:
        return {}
    if not isinstance(d, dict):
        raise ConfigError('%s must be a mapping' % section)
    return d


def _int(name, val, low=None):
    if (isinstance(val, bool) or not isinstance(val, (int, float)) or
            not np.isfinite(val) or int(val) != val):
        raise ConfigError('%s must be an integer, got %r' % (name, val))
    if low is not None and val < low:
        raise ConfigError('%s must be at least %d, got %r' % (name, low, val))
    return int(val)


def _float(name, val):
    if isinstance(val, bool):
        raise ConfigError('%s must be a number, got %r' % (name, val))
    try:
        val = float(val)
    except (TypeError, ValueError):
        raise ConfigError('%s must be a number, got %r' % (name, val))
    if not np.isfinite(val):
        raise ConfigError('%s must be finite' % name)
    return val


def _choice(name, val, choices):
    if val not in choices:
        raise ConfigError('%s must be one of %s, got %r' %
                          (name, ', '.join(choices), val))
    return val


def _complex_list(name, vals):
    if not isinstance(vals, (list, tuple)):
        raise ConfigError('%s must be a list' % name)
    try:
        return [system_model.parse_complex(v) for v in vals]
    except ValueError as e:
        raise ConfigError('%s: %s' % (name, e))


def _formatted(name, vals):
    return [system_model.format_complex(z) for z in _complex_list(name, vals)]


def _parse_dims(d):
    d = _mapping('dims', d)
    _check_keys('dims', d, ('M', 'L', 'N'))
    out = collections.OrderedDict()
    for key, low in (('M', 1), ('L', 0), ('N', 1)):
        if key not in d:
            raise ConfigError('dims.%s is missing' % key)
        out[key] = _int('dims.%s' % key, d[key], low)
    return out


def _parse_precoder(d):
    d = _mapping('precoder', d)
    _check_keys('precoder', d, ('kind', 'matrix_file'))
    out = collections.OrderedDict()
    out['kind'] = _choice('precoder.kind', d.get('kind', PrecoderKind.cp_ofdm),
                          PrecoderKind.values)
    if 'matrix_file' in d:
        out['matrix_file'] = str(d['matrix_file'])
    if out['kind'] == PrecoderKind.custom and 'matrix_file' not in out:
        raise ConfigError('a custom precoder needs precoder.matrix_file')
    return out


def _parse_pilots(d):
    d = _mapping('pilots', d)
    _check_keys('pilots', d, ('indices', 'values', 'matrix_file', 'count'))
    out = collections.OrderedDict()
    forms = [k for k in ('indices', 'matrix_file', 'count') if k in d]
    if len(forms) > 1:
        raise ConfigError('pilots: give only one of %s' % ', '.join(forms))
    if not forms:
        out['count'] = 0
        return out
    if forms[0] == 'count':
        if 'values' in d:
            raise ConfigError('pilots.count takes its values from the '
                              'drawn symbols; drop pilots.values')
        out['count'] = _int('pilots.count', d['count'], low=0)
        return out
    if 'values' not in d:
        raise ConfigError('pilots.values is missing')
    if forms[0] == 'indices':
        if not isinstance(d['indices'], (list, tuple)):
            raise ConfigError('pilots.indices must be a list')
        out['indices'] = [_int('pilots.indices', i) for i in d['indices']]
    else:
        out['matrix_file'] = str(d['matrix_file'])
    out['values'] = _formatted('pilots.values', d['values'])
    return out


def _parse_gamma(g):
    if not isinstance(g, dict):
        val = _float('gamma', g)
        if val <= 0:
            raise ConfigError('gamma must be positive, got %r' % val)
        return val
    _check_keys('gamma', g, ('start', 'stop', 'points', 'scale'))
    out = collections.OrderedDict()
    for key in ('start', 'stop'):
        if key not in g:
            raise ConfigError('gamma.%s is missing' % key)
        out[key] = _float('gamma.%s' % key, g[key])
        if out[key] <= 0:
            raise ConfigError('gamma.%s must be positive' % key)
    out['points'] = _int('gamma.points', g.get('points', 2), low=1)
    out['scale'] = _choice('gamma.scale', g.get('scale', 'log'), GAMMA_SCALES)
    return out


def _parse_sweep(d, c):
    if d is None:
        return None
    d = _mapping('sweep', d)
    _check_keys('sweep', d, ('variable', 'pilot_counts'))
    out = collections.OrderedDict()
    default = 'pilots' if 'pilot_counts' in d else 'gamma'
    out['variable'] = _choice('sweep.variable', d.get('variable', default),
                              SWEEP_VARIABLES)
    if out['variable'] == 'pilots':
        counts = d.get('pilot_counts')
        if not isinstance(counts, (list, tuple)) or not counts:
            raise ConfigError('a pilot sweep needs a non-empty '
                              'sweep.pilot_counts list')
        if 'count' not in c.pilots:
            raise ConfigError('a pilot sweep needs count-style pilots')
        out['pilot_counts'] = [_int('sweep.pilot_counts', k, low=0)
                               for k in counts]
    elif 'pilot_counts' in d:
        raise ConfigError('sweep.pilot_counts only applies to pilot sweeps')
    return out


def _parse_channel(d, seed):
    d = _mapping('channel', d)
    _check_keys('channel', d, ('taps', 'seed', 'distribution'))
    out = collections.OrderedDict()
    if 'taps' in d:
        if 'seed' in d or 'distribution' in d:
            raise ConfigError('channel: give taps or a random distribution, '
                              'not both')
        out['taps'] = _formatted('channel.taps', d['taps'])
        return out
    out['distribution'] = _choice(
        'channel.distribution',
        d.get('distribution', ChannelDistribution.rayleigh),
        ChannelDistribution.values)
    out['seed'] = _int('channel.seed', d.get('seed', seed), low=0)
    return out


def _parse_symbols(d, seed):
    d = _mapping('symbols', d)
    _check_keys('symbols', d, ('values', 'constellation', 'seed'))
    out = collections.OrderedDict()
    if 'values' in d:
        if 'constellation' in d or 'seed' in d:
            raise ConfigError('symbols: give values or a constellation, '
                              'not both')
        out['values'] = _formatted('symbols.values', d['values'])
        return out
    out['constellation'] = _choice(
        'symbols.constellation',
        d.get('constellation', simulate.Constellation.qpsk),
        simulate.Constellation.values)
    out['seed'] = _int('symbols.seed', d.get('seed', seed), low=0)
    return out


def _parse_output(d):
    d = _mapping('output', d)
    _check_keys('output', d, ('path', 'format'))
    out = collections.OrderedDict()
    path = d.get('path')
    out['path'] = None if path is None else str(path)
    fmt = d.get('format')
    out['format'] = (None if fmt is None else
                     _choice('output.format', fmt, OUTPUT_FORMATS))
    return out
