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

import json

import numpy as np

from sbcrb import results
from sbcrb import test_case
from sbcrb.config import RunConfig, ScenarioBuilder
from sbcrb.crb import CrbReport
from sbcrb.fakes.host_fake import FakeHost
from sbcrb.oracle import Check
from sbcrb.version import VERSION


def small_config():
    return RunConfig.from_dict({'dims': {'M': 2, 'L': 1, 'N': 1},
                                'pilots': {'count': 2}})


class TestJson(test_case.TestCase):

    def test_header(self):
        report = results.make_header('compute', small_config())
        self.assertEqual(list(report)[:3],
                         ['schema_version', 'command', 'version'])
        self.assertEqual(report['version'], VERSION)
        self.assertEqual(report['config']['dims'], {'M': 2, 'L': 1, 'N': 1})
        json.dumps(report)

    def test_compute(self):
        c = small_config()
        scen = ScenarioBuilder(c, FakeHost()).scenario()
        crb_report = CrbReport(np.array([[2, 1j], [1 - 1j, 3]]), 5.0,
                               np.array([0.5, 1.0]), c.gamma)
        report = results.make_compute_report(c, scen, crb_report)
        self.assertEqual(report['dims'], {'M': 2, 'L': 1, 'N': 1, 'P': 3})
        self.assertEqual(report['precoder'], 'cp_ofdm')
        self.assertEqual(report['pilot_count'], 2)
        self.assertEqual(report['crb_h'],
                         [['2+0i', '0+1i'], ['1-1i', '3+0i']])
        self.assertEqual(report['trace_bound'], 5.0)
        parsed = json.loads(results.to_json(report))
        self.assertEqual(parsed['singular_values'], [0.5, 1.0])
        self.assertTrue(results.to_json(report).endswith('}\n'))

    def test_sweep(self):
        points = [
            results.SweepPoint(1.0, CrbReport(np.eye(1), 2.0,
                                              np.array([1.0, 4.0]), 1.0)),
            results.SweepPoint(0, reason='singular'),
        ]
        report = results.make_sweep_report(small_config(), 'pilots', points)
        first, second = report['points']
        self.assertEqual(first['min_singular'], 1.0)
        self.assertEqual(first['max_singular'], 4.0)
        self.assertFalse(first['non_identifiable'])
        self.assertTrue(second['non_identifiable'])
        self.assertEqual(second['reason'], 'singular')
        self.assertNotIn('trace_bound', second)

    def test_verify(self):
        checks = [Check('a', 1e-12, 1e-9), Check('b', float('inf'), 1.0)]
        report = results.make_verify_report(small_config(), checks)
        self.assertEqual(report['checks'][1]['metric'], None)
        self.assertFalse(report['checks'][1]['passed'])
        self.assertFalse(report['passed'])
        self.assertEqual(results.exit_code_from_checks(checks),
                         results.ExitCode.verification_failure)
        self.assertEqual(results.exit_code_from_checks(checks[:1]),
                         results.ExitCode.success)
        self.assertEqual(results.failed_check_names(checks), ['b'])
        json.loads(results.to_json(report))


class TestCsv(test_case.TestCase):

    def test_crb(self):
        text = results.crb_csv(np.array([[1.5, 0.5 + 0.25j],
                                          [0.5 - 0.25j, 2]]))
        self.assertEqual(text, ('row,col,real,imag\n'
                                '0,0,1.5,0\n'
                                '0,1,0.5,0.25\n'
                                '1,0,0.5,-0.25\n'
                                '1,1,2,0\n'))

    def test_sweep(self):
        points = [
            results.SweepPoint(0.5, CrbReport(np.eye(1), 0.125,
                                              np.array([2.0, 1.0]), 1.0)),
            results.SweepPoint(3),
        ]
        self.assertEqual(results.sweep_csv(points), (
            'sweep_variable,trace_bound,min_singular,max_singular,'
            'non_identifiable\n'
            '0.5,0.125,1,2,0\n'
            '3,,,,1\n'))

    def test_precision(self):
        x = 1.0 / 3
        self.assertEqual(float(results.format_number(x)), x)
