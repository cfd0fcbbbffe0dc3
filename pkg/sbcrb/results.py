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

"""Report assembly for the command line: ordered JSON and CSV."""

from collections import OrderedDict

import csv
import io
import json

import numpy as np

from sbcrb import config as config_module
from sbcrb.system_model import format_complex
from sbcrb.version import VERSION


SCHEMA_VERSION = 1

SWEEP_COLUMNS = ('sweep_variable', 'trace_bound', 'min_singular',
                 'max_singular', 'non_identifiable')


class ExitCode(object):
    success = 0
    config_error = 1
    non_identifiable = 2
    attainability_failure = 3
    verification_failure = 4
    interrupted = 130


class SweepPoint(object):
    """One sweep row; report is None when the point is not identifiable."""

    def __init__(self, value, report=None, reason=''):
        self.value = value
        self.report = report
        self.reason = reason

    @property
    def identifiable(self):
        return self.report is not None


def make_header(command, config):
    # We use OrderedDicts here so that the output is stable.
    report = OrderedDict()
    report['schema_version'] = SCHEMA_VERSION
    report['command'] = command
    report['version'] = VERSION
    report['config'] = config_module.plain_dict(config.to_dict())
    return report


def make_compute_report(config, scenario, crb_report):
    report = make_header('compute', config)
    report['dims'] = _dims(scenario.dims)
    report['gamma'] = crb_report.gamma
    report['precoder'] = scenario.precoder.kind
    report['pilot_count'] = scenario.pilots.count
    report['crb_h'] = complex_matrix(crb_report.crb_h)
    report['trace_bound'] = float(crb_report.trace_bound)
    report['singular_values'] = [float(v) for v in crb_report.singular_values]
    return report


def make_sweep_report(config, variable, points):
    report = make_header('sweep', config)
    report['variable'] = variable
    rows = []
    for p in points:
        row = OrderedDict()
        row['value'] = p.value
        if p.identifiable:
            row['trace_bound'] = float(p.report.trace_bound)
            row['min_singular'] = float(np.min(p.report.singular_values))
            row['max_singular'] = float(np.max(p.report.singular_values))
        row['non_identifiable'] = not p.identifiable
        if p.reason:
            row['reason'] = p.reason
        rows.append(row)
    report['points'] = rows
    return report


def make_simulate_report(config, attainability):
    stats = attainability.stats
    report = make_header('simulate', config)
    empirical = OrderedDict()
    empirical['trials'] = stats.trials
    empirical['mean_estimate'] = [format_complex(z)
                                  for z in stats.mean_estimate]
    empirical['sample_cov'] = complex_matrix(stats.sample_cov)
    empirical['bias_norm'] = stats.bias_norm
    empirical['bias_error'] = stats.bias_error
    empirical['cov_error'] = stats.cov_error
    empirical['relative_mc_error'] = float(attainability.relative_mc_error)
    report['empirical'] = empirical
    report['crb_h'] = complex_matrix(attainability.crb_h)
    report['trace_ratio'] = attainability.trace_ratio
    report['trace_tolerance'] = float(attainability.trace_tolerance)
    report['loewner_pass'] = bool(attainability.loewner_pass)
    report['bias_pass'] = bool(attainability.bias_pass)
    report['insufficient_trials'] = bool(attainability.insufficient_trials)
    report['passed'] = bool(attainability.passed)
    return report


def make_verify_report(config, checks):
    report = make_header('verify', config)
    entries = []
    for c in checks:
        entry = OrderedDict()
        entry['name'] = c.name
        entry['metric'] = _finite_or_none(c.metric)
        entry['threshold'] = _finite_or_none(c.threshold)
        entry['passed'] = c.passed
        entries.append(entry)
    report['checks'] = entries
    report['passed'] = all(c.passed for c in checks)
    return report


def exit_code_from_checks(checks):
    if all(c.passed for c in checks):
        return ExitCode.success
    return ExitCode.verification_failure


def failed_check_names(checks):
    return sorted(c.name for c in checks if not c.passed)


def to_json(report):
    return json.dumps(report, indent=2) + '\n'


def format_number(x):
    return '%.17g' % x


def crb_csv(crb_h):
    """The matrix in long form: one row per entry."""
    rows = [('row', 'col', 'real', 'imag')]
    for (i, j), z in np.ndenumerate(np.asarray(crb_h)):
        rows.append((str(i), str(j), format_number(z.real),
                     format_number(z.imag)))
    return _csv_text(rows)


def sweep_csv(points):
    rows = [SWEEP_COLUMNS]
    for p in points:
        value = p.value
        if isinstance(value, float):
            value = format_number(value)
        if p.identifiable:
            sv = p.report.singular_values
            rows.append((str(value), format_number(p.report.trace_bound),
                         format_number(np.min(sv)), format_number(np.max(sv)),
                         '0'))
        else:
            rows.append((str(value), '', '', '', '1'))
    return _csv_text(rows)


def complex_matrix(m):
    return [[format_complex(z) for z in row] for row in np.asarray(m)]


def _csv_text(rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerows(rows)
    return out.getvalue()


def _dims(dims):
    d = OrderedDict()
    d['M'] = dims.M
    d['L'] = dims.L
    d['N'] = dims.N
    d['P'] = dims.P
    return d


def _finite_or_none(x):
    return float(x) if np.isfinite(x) else None
