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

"""The sbcrb command line: compute, sweep, simulate and verify."""

import logging
import sys

from sbcrb import crb
from sbcrb import oracle
from sbcrb import results
from sbcrb import simulate
from sbcrb.arg_parser import ArgumentParser
from sbcrb.config import ScenarioBuilder, load_config
from sbcrb.errors import ConfigError, NonIdentifiable, SbcrbError
from sbcrb.host import Host
from sbcrb.progress import Printer, Progress
from sbcrb.results import ExitCode
from sbcrb.system_model import PrecoderKind
from sbcrb.version import VERSION


_log = logging.getLogger(__name__)


def main(argv=None, host=None):
    host = host or Host()
    runner = Runner(host=host)
    return runner.main(argv)


class Runner(object):

    def __init__(self, host=None):
        self.args = None
        self.host = host or Host()
        self.progress = None

    def main(self, argv=None):
        parser = ArgumentParser(self.host)
        self.args = parser.parse_args(args=argv)
        if parser.exit_status is not None:
            return parser.exit_status

        try:
            return self.run()
        except KeyboardInterrupt:
            self.print_('interrupted, exiting', stream=self.host.stderr)
            return ExitCode.interrupted

    def print_(self, msg='', end='\n', stream=None):
        self.host.print_(msg, end, stream=stream)

    def run(self):
        if self.args.version:
            self.print_(VERSION)
            return ExitCode.success

        self.host.configure_logging(self.args.verbose)
        try:
            return self._run_command()
        finally:
            self.host.restore_logging()

    def _run_command(self):
        args = self.args
        h = self.host
        self.progress = Progress(
            Printer(self._print_status, h.is_tty(), h.terminal_width()),
            h.time, status_format=args.status_format, quiet=args.quiet)
        try:
            config = load_config(h, args.config)
            if args.trials is not None:
                config.trials = args.trials
            if args.seed is not None:
                config.seed = args.seed
            fmt = (args.format or config.output['format'] or
                   ('csv' if args.command == 'sweep' else 'json'))
            ret, report = getattr(self, 'cmd_' + args.command)(config, fmt)
        except NonIdentifiable as e:
            self.print_('Error: the configuration is not identifiable: %s' %
                        e, stream=h.stderr)
            return ExitCode.non_identifiable
        except SbcrbError as e:
            self.print_('Error: %s' % e, stream=h.stderr)
            return ExitCode.config_error

        out = args.out or config.output['path']
        if out:
            h.write_text_file(out, report)
            _log.info('wrote %s', out)
        else:
            self.print_(report, end='')
        return ret

    def cmd_compute(self, config, fmt):
        builder = ScenarioBuilder(config, self.host)
        scenario = builder.scenario(gamma=config.single_gamma('compute'))
        report = crb.crb_channel_projector(scenario.theta(), scenario.gamma,
                                           scenario.bases())
        if fmt == 'csv':
            return ExitCode.success, results.crb_csv(report.crb_h)
        return ExitCode.success, results.to_json(
            results.make_compute_report(config, scenario, report))

    def cmd_sweep(self, config, fmt):
        builder = ScenarioBuilder(config, self.host)
        variable = (config.sweep or {}).get('variable', 'gamma')
        if variable == 'gamma':
            scenarios = [(g, lambda g=g: builder.scenario(gamma=g))
                         for g in config.gamma_values()]
        elif variable == 'pilots':
            gamma = config.single_gamma('a pilot sweep')
            scenarios = [(k, lambda k=k: builder.scenario(gamma=gamma,
                                                          pilot_count=k))
                         for k in config.sweep['pilot_counts']]
        else:
            gamma = config.single_gamma('a precoder sweep')
            kinds = [PrecoderKind.cp_ofdm, PrecoderKind.zero_padding]
            if 'matrix_file' in config.precoder:
                kinds.append(PrecoderKind.custom)
            scenarios = [(kind, lambda kind=kind: builder.scenario(
                gamma=gamma, precoder_kind=kind)) for kind in kinds]

        self.progress.start(len(scenarios))
        points = []
        for value, make_scenario in scenarios:
            scenario = make_scenario()
            try:
                report = crb.crb_channel_projector(
                    scenario.theta(), scenario.gamma, scenario.bases())
                points.append(results.SweepPoint(value, report))
            except NonIdentifiable as e:
                _log.warning('%s=%s is not identifiable: %s', variable,
                             value, e)
                points.append(results.SweepPoint(value, reason=str(e)))
            self.progress.advance('%s=%s' % (variable, value))
        self.progress.flush()

        if fmt == 'csv':
            return ExitCode.success, results.sweep_csv(points)
        return ExitCode.success, results.to_json(
            results.make_sweep_report(config, variable, points))

    def cmd_simulate(self, config, fmt):
        _check_json('simulate', fmt)
        if config.trials < 2:
            raise ConfigError('simulate needs at least 2 trials for a sample '
                              'covariance, got %d' % config.trials)
        builder = ScenarioBuilder(config, self.host)
        scenario = builder.scenario(gamma=config.single_gamma('simulate'))
        report = simulate.run_attainability_experiment(
            scenario, config.trials, config.seed, jobs=self.args.jobs,
            host=self.host, progress=self.progress)
        if report.passed:
            ret = ExitCode.success
        else:
            self.print_('Error: the LS covariance does not meet the bound '
                        '(trace ratio %.4f)' % report.trace_ratio,
                        stream=self.host.stderr)
            ret = ExitCode.attainability_failure
        return ret, results.to_json(
            results.make_simulate_report(config, report))

    def cmd_verify(self, config, fmt):
        _check_json('verify', fmt)
        builder = ScenarioBuilder(config, self.host)
        scenario = builder.scenario(gamma=config.single_gamma('verify'))
        checks = oracle.run_verification(
            scenario, config.trials, config.seed, jobs=self.args.jobs,
            host=self.host, progress=self.progress)
        ret = results.exit_code_from_checks(checks)
        if ret:
            self.print_('Error: failed checks: %s' %
                        ', '.join(results.failed_check_names(checks)),
                        stream=self.host.stderr)
        return ret, results.to_json(results.make_verify_report(config, checks))

    def _print_status(self, msg, end='\n'):
        self.host.print_(msg, end, stream=self.host.stderr)


def _check_json(command, fmt):
    if fmt != 'json':
        raise ConfigError('%s reports are only available as json' % command)


if __name__ == '__main__':  # pragma: no cover
    sys.exit(main())
