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

import logging
import multiprocessing
import os
import sys
import time


LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'


class Host(object):
    """Every side effect the command line performs goes through a Host."""

    sep = os.sep

    def __init__(self):
        self.logger = logging.getLogger()
        self.stdout = sys.stdout
        self.stderr = sys.stderr
        self.env = os.environ
        self._log_handler = None

    def abspath(self, *comps):
        return os.path.abspath(self.join(*comps))

    def cpu_count(self):
        return multiprocessing.cpu_count()

    def dirname(self, *comps):
        return os.path.dirname(self.join(*comps))

    def exists(self, *comps):
        return os.path.exists(self.join(*comps))

    def for_mp(self):
        return None

    def getenv(self, key, default=None):
        return self.env.get(key, default)

    def isabs(self, path):
        return os.path.isabs(path)

    def join(self, *comps):
        return os.path.join(*comps)

    def maybe_mkdir(self, *comps):
        path = self.abspath(self.join(*comps))
        if not self.exists(path):
            os.makedirs(path)

    def print_(self, msg='', end='\n', stream=None):
        stream = stream or self.stdout
        stream.write(str(msg) + end)
        stream.flush()

    def read_text_file(self, *comps):
        with open(self.join(*comps), 'r') as f:
            return f.read()

    def time(self):
        return time.time()

    def write_text_file(self, path, contents):
        dirname = self.dirname(path)
        if dirname:
            self.maybe_mkdir(dirname)
        with open(path, 'w') as f:
            f.write(contents)

    def is_tty(self):
        isatty = getattr(self.stdout, 'isatty', None)
        return bool(isatty and isatty())

    def terminal_width(self):
        """Returns 0 if the width cannot be determined."""
        try:
            return os.get_terminal_size(self.stderr.fileno()).columns
        except (AttributeError, OSError, ValueError):
            return 0

    def configure_logging(self, verbose=0):
        """Sends log records to stderr; -v gives INFO, -vv gives DEBUG."""
        if verbose >= 2:
            level = logging.DEBUG
        elif verbose == 1:
            level = logging.INFO
        else:
            level = logging.WARNING
        if self._log_handler:
            self.logger.removeHandler(self._log_handler)
        self._log_handler = logging.StreamHandler(self.stderr)
        self._log_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        self.logger.addHandler(self._log_handler)
        self.logger.setLevel(level)

    def restore_logging(self):
        if self._log_handler:
            self.logger.removeHandler(self._log_handler)
            self._log_handler = None
