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

"""Ninja-style status lines for sweeps and Monte-Carlo runs."""


DEFAULT_STATUS_FORMAT = '[%f/%t] '


class Stats(object):

    def __init__(self, status_format, time_fn):
        self.fmt = status_format
        self.finished = 0
        self.total = 0
        self.started_time = time_fn()
        self._time = time_fn

    def format(self):
        out = ''
        p = 0
        end = len(self.fmt)
        while p < end:
            c = self.fmt[p]
            if c == '%' and p < end - 1:
                cn = self.fmt[p + 1]
                if cn == 'e':
                    out += '%-5.3f' % (self._time() - self.started_time)
                elif cn == 'f':
                    out += str(self.finished)
                elif cn == 'p':
                    if self.total:
                        out += '%5.1f' % (self.finished * 100.0 / self.total)
                    else:
                        out += '-'
                elif cn == 't':
                    out += str(self.total)
                elif cn == 'u':
                    out += str(self.total - self.finished)
                elif cn == '%':
                    out += '%'
                else:
                    out += c + cn
                p += 2
            else:
                out += c
                p += 1
        return out


class Printer(object):

    def __init__(self, print_, should_overwrite, cols):
        self.print_ = print_
        self.should_overwrite = should_overwrite
        self.cols = cols
        self.last_line = ''

    def flush(self):
        if self.last_line:
            self.print_('')
            self.last_line = ''

    def update(self, msg, elide=True):
        if elide and self.cols and len(msg) > self.cols - 5:
            new_len = int((self.cols - 5) / 2)
            msg = msg[:new_len] + '...' + msg[-new_len:]
        if self.should_overwrite and self.last_line:
            self.print_('\r' + ' ' * len(self.last_line) + '\r', end='')
        elif self.last_line:
            self.print_('')
        self.print_(msg, end='')
        self.last_line = msg[msg.rfind('\n') + 1:]


class Progress(object):
    """Counts finished work items and reports them through a Printer."""

    def __init__(self, printer, time_fn, status_format=DEFAULT_STATUS_FORMAT,
                 quiet=False):
        self.printer = printer
        self.stats = Stats(status_format, time_fn)
        self.quiet = quiet

    def start(self, total):
        self.stats.total = total
        self.stats.finished = 0

    def advance(self, label):
        self.stats.finished += 1
        if not self.quiet:
            self.printer.update(self.stats.format() + label)

    def flush(self):
        if not self.quiet:
            self.printer.flush()
