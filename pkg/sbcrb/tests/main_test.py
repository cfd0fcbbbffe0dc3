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
import textwrap

import numpy as np

from sbcrb import test_case
from sbcrb.system_model import parse_complex
from sbcrb.version import VERSION


d = textwrap.dedent


COMPUTE_YAML = d("""\
    dims: {M: 4, L: 1, N: 1}
    gamma: %s
    pilots:
      count: 2
    seed: 3
    """)


BLIND_YAML = d("""\
    dims: {M: 1, L: 0, N: 1}
    pilots:
      count: 0
    """)


GAMMA_SWEEP_YAML = d("""\
    dims: {M: 4, L: 1, N: 1}
    gamma: {start: 1, stop: 100, points: 3, scale: log}
    pilots: {count: 2}
    sweep: {variable: gamma}
    seed: 3
    """)


PILOT_SWEEP_YAML = d("""\
    dims: {M: 4, L: 1, N: 2}
    gamma: 10
    pilots: {count: 2}
    sweep: {pilot_counts: [2, 4, 6, 8]}
    seed: 3
    """)


PRECODER_SWEEP_YAML = d("""\
    dims: {M: 4, L: 1, N: 1}
    pilots: {count: 4}
    sweep: {variable: precoder}
    seed: 3
    """)


SIMULATE_YAML = d("""\
    dims: {M: 4, L: 2, N: 2}
    gamma: 10
    pilots: {count: 8}
    trials: 20000
    seed: 1
    """)


VERIFY_YAML = d("""\
    dims: {M: 4, L: 1, N: 1}
    precoder: {kind: zero_padding}
    gamma: 4
    pilots: {count: 2}
    trials: 20000
    seed: 5
    """)


def csv_rows(text):
    lines = text.splitlines()
    return lines[0].split(','), [line.split(',') for line in lines[1:]]


def crb_matrix(report):
    return np.array([[parse_complex(z) for z in row]
                     for row in report['crb_h']])


class TestCli(test_case.MainTestCase):

    def test_version(self):
        self.check(['-V'], ret=0, out=VERSION + '\n', err='')
        self.check(['--version'], ret=0, out=VERSION + '\n', err='')

    def test_usage_errors(self):
        self.check(['compute'], ret=1,
                   rerr='Error: --config must be specified')
        self.check(['-c', 'run.yaml'], ret=1, rerr='a command is required')
        self.check(['frobnicate', '-c', 'run.yaml'], ret=1,
                   rerr='invalid choice')

    def test_config_errors(self):
        self.check(['compute', '-c', 'missing.yaml'], ret=1,
                   rerr='Error: cannot read config')
        self.check(['compute', '-c', 'run.yaml'],
                   files={'run.yaml': 'dims: {M: 2, L: 1, N: 1}\nfoo: 1\n'},
                   ret=1, rerr=r'unknown key\(s\) foo')
        self.check(['compute', '-c', 'run.yaml'],
                   files={'run.yaml': GAMMA_SWEEP_YAML}, ret=1,
                   rerr='needs a single gamma')
        self.check(['simulate', '-c', 'run.yaml', '--format', 'csv'],
                   files={'run.yaml': SIMULATE_YAML}, ret=1,
                   rerr='only available as json')

    def test_compute_json(self):
        _, out, _, _ = self.check(['compute', '-c', 'run.yaml'],
                                  files={'run.yaml': COMPUTE_YAML % 10},
                                  ret=0, err='')
        report = json.loads(out)
        self.assertEqual(report['command'], 'compute')
        self.assertEqual(report['schema_version'], 1)
        self.assertEqual(report['dims'], {'M': 4, 'L': 1, 'N': 1, 'P': 5})
        self.assertEqual(report['pilot_count'], 2)
        crb_h = crb_matrix(report)
        self.assertEqual(crb_h.shape, (2, 2))
        self.assertHermitian(crb_h, tol=1e-12)
        self.assertRelativeError(np.trace(crb_h).real,
                                 report['trace_bound'], 1e-10)
        self.assertEqual(len(report['singular_values']), 2)

    def test_compute_scales_with_gamma(self):
        _, out10, _, _ = self.check(['compute', '-c', 'run.yaml'],
                                    files={'run.yaml': COMPUTE_YAML % 10},
                                    ret=0)
        _, out20, _, _ = self.check(['compute', '-c', 'run.yaml'],
                                    files={'run.yaml': COMPUTE_YAML % 20},
                                    ret=0)
        self.assertRelativeError(crb_matrix(json.loads(out20)),
                                 crb_matrix(json.loads(out10)) / 2, 1e-12)

    def test_compute_csv(self):
        _, out, _, _ = self.check(['compute', '-c', 'run.yaml',
                                   '--format', 'csv'],
                                  files={'run.yaml': COMPUTE_YAML % 10},
                                  ret=0)
        header, rows = csv_rows(out)
        self.assertEqual(header, ['row', 'col', 'real', 'imag'])
        self.assertEqual([r[:2] for r in rows],
                         [['0', '0'], ['0', '1'], ['1', '0'], ['1', '1']])
        self.assertGreater(float(rows[0][2]), 0.0)

    def test_not_identifiable(self):
        self.check(['compute', '-c', 'run.yaml'],
                   files={'run.yaml': BLIND_YAML}, ret=2,
                   rerr='Error: the configuration is not identifiable',
                   out='')

    def test_out_file(self):
        _, out, _, files = self.check(
            ['compute', '-c', 'run.yaml', '-o', 'crb.json'],
            files={'run.yaml': COMPUTE_YAML % 10}, ret=0)
        self.assertEqual(out, '')
        self.assertEqual(json.loads(files['/tmp/crb.json'])['command'],
                         'compute')

    def test_output_path_in_config(self):
        text = COMPUTE_YAML % 10 + 'output: {path: res/crb.csv, format: csv}\n'
        _, out, _, files = self.check(['compute', '-c', 'run.yaml'],
                                      files={'run.yaml': text}, ret=0)
        self.assertEqual(out, '')
        self.assertTrue(files['/tmp/res/crb.csv'].startswith('row,col,'))

    def test_gamma_sweep(self):
        _, out, _, _ = self.check(['sweep', '-c', 'run.yaml', '-q'],
                                  files={'run.yaml': GAMMA_SWEEP_YAML},
                                  ret=0, err='')
        header, rows = csv_rows(out)
        self.assertEqual(header, ['sweep_variable', 'trace_bound',
                                  'min_singular', 'max_singular',
                                  'non_identifiable'])
        gammas = [float(r[0]) for r in rows]
        self.assertAllClose(gammas, [1, 10, 100])
        scaled = [g * float(r[1]) for g, r in zip(gammas, rows)]
        self.assertAllClose(scaled, [scaled[0]] * 3, rtol=1e-10)
        self.assertEqual([r[4] for r in rows], ['0', '0', '0'])

    def test_sweep_progress(self):
        _, _, err, _ = self.check(['sweep', '-c', 'run.yaml'],
                                  files={'run.yaml': GAMMA_SWEEP_YAML},
                                  ret=0)
        self.assertIn('[3/3] gamma=100', err)

    def test_pilot_sweep(self):
        _, out, _, _ = self.check(['sweep', '-c', 'run.yaml', '-q'],
                                  files={'run.yaml': PILOT_SWEEP_YAML},
                                  ret=0)
        _, rows = csv_rows(out)
        self.assertEqual([r[0] for r in rows], ['2', '4', '6', '8'])
        bounds = [float(r[1]) for r in rows]
        for before, after in zip(bounds, bounds[1:]):
            self.assertLessEqual(after, before * (1 + 1e-9))

    def test_pilot_sweep_json(self):
        _, out, _, _ = self.check(['sweep', '-c', 'run.yaml', '-q',
                                   '--format', 'json'],
                                  files={'run.yaml': PILOT_SWEEP_YAML},
                                  ret=0)
        report = json.loads(out)
        self.assertEqual(report['variable'], 'pilots')
        self.assertEqual([p['value'] for p in report['points']],
                         [2, 4, 6, 8])

    def test_precoder_sweep(self):
        _, out, _, _ = self.check(['sweep', '-c', 'run.yaml', '-q'],
                                  files={'run.yaml': PRECODER_SWEEP_YAML},
                                  ret=0)
        _, rows = csv_rows(out)
        self.assertEqual([r[0] for r in rows], ['cp_ofdm', 'zero_padding'])

    def test_sweep_marks_blind_points(self):
        text = d("""\
            dims: {M: 1, L: 0, N: 1}
            pilots: {count: 0}
            sweep: {pilot_counts: [0, 1]}
            """)
        _, out, err, _ = self.check(['sweep', '-c', 'run.yaml', '-q'],
                                    files={'run.yaml': text}, ret=0)
        _, rows = csv_rows(out)
        self.assertEqual(rows[0], ['0', '', '', '', '1'])
        self.assertEqual(rows[1][4], '0')
        self.assertIn('pilots=0 is not identifiable', err)

    def test_simulate(self):
        _, out, _, _ = self.check(['simulate', '-c', 'run.yaml', '-q'],
                                  files={'run.yaml': SIMULATE_YAML}, ret=0)
        report = json.loads(out)
        self.assertTrue(report['passed'])
        self.assertFalse(report['insufficient_trials'])
        self.assertEqual(report['empirical']['trials'], 20000)
        self.assertLess(abs(report['trace_ratio'] - 1), 0.05)

    def test_simulate_few_trials(self):
        self.check(['simulate', '-c', 'run.yaml', '-q', '--trials', '10'],
                   files={'run.yaml': SIMULATE_YAML},
                   rerr='insufficient trials')

    def test_simulate_needs_all_pilots(self):
        self.check(['simulate', '-c', 'run.yaml'],
                   files={'run.yaml': COMPUTE_YAML % 10}, ret=1,
                   rerr='needs every symbol piloted')

    def test_simulate_is_independent_of_jobs(self):
        outs = []
        for jobs in ('1', '2', '8'):
            _, out, _, _ = self.check(['simulate', '-c', 'run.yaml', '-q',
                                       '--trials', '8000', '-j', jobs],
                                      files={'run.yaml': SIMULATE_YAML})
            outs.append(out)
        self.assertEqual(outs[0], outs[1])
        self.assertEqual(outs[0], outs[2])

    def test_verify(self):
        _, out, _, _ = self.check(['verify', '-c', 'run.yaml', '-q'],
                                  files={'run.yaml': VERIFY_YAML}, ret=0)
        report = json.loads(out)
        self.assertTrue(report['passed'])
        names = [c['name'] for c in report['checks']]
        self.assertIn('fd_score', names)
        self.assertIn('three_form_equivalence', names)

    def test_verify_is_independent_of_jobs(self):
        outs = []
        for jobs in ('1', '2', '8'):
            _, out, _, _ = self.check(['verify', '-c', 'run.yaml', '-q',
                                       '--trials', '8000', '-j', jobs],
                                      files={'run.yaml': VERIFY_YAML})
            outs.append(out)
        self.assertEqual(outs[0], outs[1])
        self.assertEqual(outs[0], outs[2])

    def test_simulate_needs_two_trials(self):
        self.check(['simulate', '-c', 'run.yaml', '-q', '--trials', '1'],
                   files={'run.yaml': SIMULATE_YAML}, ret=1, out='',
                   rerr='Error: simulate needs at least 2 trials')

    def test_status_format(self):
        _, _, err, _ = self.check(['sweep', '-c', 'run.yaml',
                                   '-s', '%u left: '],
                                  files={'run.yaml': GAMMA_SWEEP_YAML},
                                  ret=0)
        self.assertIn('2 left: gamma=1', err)
        self.assertIn('0 left: gamma=100', err)
