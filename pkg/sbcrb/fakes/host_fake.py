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

import copy
import io
import logging

from sbcrb.host import LOG_FORMAT


class FakeHost(object):
    """An in-memory Host for tests."""
    # "unused arg" pylint: disable=W0613

    sep = '/'

    def __init__(self):
        self.logger = logging.getLogger()
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()
        self.env = {}
        self.dirs = set(['/tmp'])
        self.files = {}
        self.written_files = {}
        self.cwd = '/tmp'
        self._log_handler = None

    def __getstate__(self):
        d = copy.copy(self.__dict__)
        del d['stderr']
        del d['stdout']
        del d['logger']
        del d['_log_handler']
        return d

    def __setstate__(self, d):
        for k, v in d.items():
            setattr(self, k, v)
        self.logger = logging.getLogger()
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()
        self._log_handler = None

    def abspath(self, *comps):
        relpath = self.join(*comps)
        if relpath.startswith('/'):
            return relpath
        return self.join(self.cwd, relpath)

    def cpu_count(self):
        return 1

    def dirname(self, *comps):
        return '/'.join(self.join(*comps).split('/')[:-1])

    def exists(self, *comps):
        path = self.abspath(*comps)
        return ((path in self.files and self.files[path] is not None) or
                path in self.dirs)

    def for_mp(self):
        return self

    def getenv(self, key, default=None):
        return self.env.get(key, default)

    def isabs(self, path):
        return path.startswith('/')

    def join(self, *comps):
        p = ''
        for c in comps:
            if c in ('', '.'):
                continue
            elif c.startswith('/'):
                p = c
            elif p:
                p += '/' + c
            else:
                p = c
        p = p.replace('/./', '/')
        while '/..' in p:
            parts = p.split('/')
            idx = parts.index('..')
            parts = parts[:idx - 1] + parts[idx + 1:]
            p = '/'.join(parts)
        return p

    def maybe_mkdir(self, *comps):
        self.dirs.add(self.abspath(*comps))

    def print_(self, msg='', end='\n', stream=None):
        stream = stream or self.stdout
        stream.write(str(msg) + end)
        stream.flush()

    def read_text_file(self, *comps):
        path = self.abspath(*comps)
        if self.files.get(path) is None:
            raise IOError('No such file: %s' % path)
        return self.files[path]

    def time(self):
        return 0

    def write_text_file(self, path, contents):
        full_path = self.abspath(path)
        self.maybe_mkdir(self.dirname(full_path))
        self.files[full_path] = contents
        self.written_files[full_path] = contents

    def is_tty(self):
        return False

    def terminal_width(self):
        return 80

    def configure_logging(self, verbose=0):
        if verbose >= 2:
            level = logging.DEBUG
        elif verbose == 1:
            level = logging.INFO
        else:
            level = logging.WARNING
        self.restore_logging()
        self._log_handler = logging.StreamHandler(self.stderr)
        self._log_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        self.logger.addHandler(self._log_handler)
        self.logger.setLevel(level)

    def restore_logging(self):
        if self._log_handler:
            self.logger.removeHandler(self._log_handler)
            self._log_handler = None
