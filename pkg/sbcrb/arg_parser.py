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

import argparse

from sbcrb.host import Host
from sbcrb.progress import DEFAULT_STATUS_FORMAT


class _Bailout(Exception):
    pass


COMMANDS = ('compute', 'sweep', 'simulate', 'verify')
FORMATS = ('json', 'csv')

# Usage errors share the config-error exit code.
USAGE_ERROR = 1


class ArgumentParser(argparse.ArgumentParser):

    def __init__(self, host=None, add_help=True):
        super(ArgumentParser, self).__init__(prog='sbcrb', add_help=add_help)

        self._host = host or Host()
        self.exit_status = None

        self.usage = '%%(prog)s [options] {%s}' % ','.join(COMMANDS)

        self.add_argument('command', nargs='?', choices=COMMANDS,
                          help=('What to do: compute one bound, sweep a '
                                'variable, simulate the LS estimator, or '
                                'verify the bound numerically.'))
        self.add_argument('-V', '--version', action='store_true',
                          help='Print the sbcrb version and exit.')
        self.add_argument('-c', '--config', metavar='FILENAME',
                          help='YAML configuration file to run.')
        self.add_argument('-o', '--out', metavar='FILENAME',
                          help=('Write the report here instead of to '
                                'stdout (overrides output.path).'))
        self.add_argument('--format', choices=FORMATS,
                          help=('Report format (overrides output.format; '
                                'sweep defaults to csv).'))
        self.add_argument('--trials', type=int,
                          help='Monte-Carlo trials (overrides the config).')
        self.add_argument('--seed', type=int,
                          help='Monte-Carlo seed (overrides the config).')
        self.add_argument('-j', '--threads', metavar='N', type=int,
                          dest='jobs', default=self._host.cpu_count(),
                          help=('Number of worker processes for Monte-Carlo '
                                'runs (default %(default)s). Results do not '
                                'depend on it.'))
        self.add_argument('-v', '--verbose', action='count', default=0,
                          help=('Log more; -v for progress details, -vv for '
                                'numerical diagnostics.'))
        self.add_argument('-q', '--quiet', action='store_true',
                          help='Suppress the progress status line.')
        self.add_argument('-s', '--status-format', metavar='FORMAT',
                          default=self._host.getenv('SBCRB_STATUS',
                                                    DEFAULT_STATUS_FORMAT),
                          help=('Prefix of the progress status line: %%f '
                                'finished, %%t total, %%u remaining, %%p '
                                'percent, %%e elapsed seconds (default '
                                '"%(default)s", or $SBCRB_STATUS).'))

    def parse_args(self, args=None, namespace=None):
        try:
            rargs = super(ArgumentParser, self).parse_args(args=args,
                                                           namespace=namespace)
        except _Bailout:
            return None

        if rargs.version:
            return rargs

        if not rargs.command:
            self._print_message('Error: a command is required (one of %s)' %
                                ', '.join(COMMANDS), file=self._host.stderr)
            self.exit_status = USAGE_ERROR

        if not rargs.config:
            self._print_message('Error: --config must be specified',
                                file=self._host.stderr)
            self.exit_status = USAGE_ERROR

        if rargs.jobs < 1:
            self._print_message('Error: --threads must be at least 1',
                                file=self._host.stderr)
            self.exit_status = USAGE_ERROR

        if rargs.trials is not None and rargs.trials < 1:
            self._print_message('Error: --trials must be at least 1',
                                file=self._host.stderr)
            self.exit_status = USAGE_ERROR

        if rargs.seed is not None and rargs.seed < 0:
            self._print_message('Error: --seed must not be negative',
                                file=self._host.stderr)
            self.exit_status = USAGE_ERROR

        return rargs

    # Redefining built-in 'file' pylint: disable=W0622

    def _print_message(self, msg, file=None):
        self._host.print_(msg=msg, stream=file, end='\n')

    def print_help(self, file=None):
        self._print_message(msg=self.format_help(), file=file)

    def error(self, message, bailout=True):  # pylint: disable=W0221
        self.exit(USAGE_ERROR, '%s: error: %s\n' % (self.prog, message),
                  bailout=bailout)

    def exit(self, status=0, message=None,  # pylint: disable=W0221
             bailout=True):
        self.exit_status = status
        if message:
            self._print_message(message, file=self._host.stderr)
        if bailout:
            raise _Bailout()
