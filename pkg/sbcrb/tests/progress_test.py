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

import unittest

from sbcrb.progress import Printer, Progress, Stats


class TestStats(unittest.TestCase):

    def test_basic(self):
        s = Stats('foo', lambda: 0)
        self.assertEqual(s.format(), 'foo')

    def test_edges(self):
        s = Stats('[%f/%t/%u/%p]', lambda: 0)
        self.assertEqual(s.format(), '[0/0/0/-]')
        s.total = 5
        s.finished = 3
        self.assertEqual(s.format(), '[3/5/2/ 60.0]')

        s.finished = 5
        self.assertEqual(s.format(), '[5/5/0/100.0]')

    def test_elapsed_time(self):
        times = [0.0, 0.4]
        s = Stats('[%e]', lambda: times.pop(0))
        self.assertEqual(s.format(), '[0.400]')

        s = Stats('[%e]', lambda: 0)
        self.assertEqual(s.format(), '[0.000]')

    def test_escaped_percent(self):
        s = Stats('%%', lambda: 0)
        self.assertEqual(s.format(), '%')

    def test_unrecognized_escape(self):
        s = Stats('%x', lambda: 0)
        self.assertEqual(s.format(), '%x')


class TestPrinter(unittest.TestCase):

    def setUp(self):
        # 'Invalid name' pylint: disable=C0103
        self.out = []

    def print_(self, msg, end='\n'):
        self.out.append(msg + end)

    def test_basic(self):
        pr = Printer(self.print_, False, 80)
        pr.update('foo')
        pr.flush()
        self.assertEqual(self.out, ['foo', '\n'])

    def test_elide(self):
        pr = Printer(self.print_, False, 8)
        pr.update('hello world')
        pr.flush()
        self.assertEqual(self.out, ['h...d', '\n'])

    def test_overwrite(self):
        pr = Printer(self.print_, True, 80)
        pr.update('hello world')
        pr.update('goodbye world')
        pr.flush()
        self.assertEqual(self.out,
                         ['hello world',
                          '\r           \r',
                          'goodbye world',
                          '\n'])


class TestProgress(unittest.TestCase):

    def setUp(self):
        # 'Invalid name' pylint: disable=C0103
        self.out = []

    def print_(self, msg, end='\n'):
        self.out.append(msg + end)

    def test_status_lines(self):
        progress = Progress(Printer(self.print_, False, 80), lambda: 0)
        progress.start(2)
        progress.advance('gamma=1')
        progress.advance('gamma=10')
        progress.flush()
        self.assertEqual(self.out,
                         ['[1/2] gamma=1', '\n', '[2/2] gamma=10', '\n'])

    def test_quiet(self):
        progress = Progress(Printer(self.print_, False, 80), lambda: 0,
                            quiet=True)
        progress.start(1)
        progress.advance('chunk 0')
        progress.flush()
        self.assertEqual(self.out, [])
        self.assertEqual(progress.stats.finished, 1)

    def test_start_resets_the_count(self):
        progress = Progress(Printer(self.print_, False, 80), lambda: 0,
                            quiet=True)
        progress.start(3)
        progress.advance('a')
        progress.start(4)
        self.assertEqual(progress.stats.format(), '[0/4] ')
