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

"""Independent numerical checks of the analytic score, FIM and bounds."""

import logging

import numpy as np

from sbcrb import crb
from sbcrb import linalg
from sbcrb import pool
from sbcrb import system_model
from sbcrb.errors import NonIdentifiable
from sbcrb.host import Host


REGULARITY_SIGMAS = 4.0

_log = logging.getLogger(__name__)


class FdConfig(object):
    scheme = 'central'

    def __init__(self, step=1e-5):
        if not step > 0:
            raise ValueError('finite-difference step must be positive')
        self.step = float(step)


def wirtinger_fd(f, z, cfg=None):
    """Central-difference estimates of (df/dz, df/dz^*) at z.

    With z = a + jb, df/dz = (df/da - j df/db) / 2 and
    df/dz^* = (df/da + j df/db) / 2.
    """
    cfg = cfg or FdConfig()
    h = cfg.step
    df_da = (f(z + h) - f(z - h)) / (2 * h)
    df_db = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return 0.5 * (df_da - 1j * df_db), 0.5 * (df_da + 1j * df_db)


def fd_score(y, theta, gamma, cfg=None):
    """d ln p / d theta^*, one coordinate at a time by finite differences."""
    cfg = cfg or FdConfig()
    base = theta.vector
    out = np.zeros(base.shape[0], dtype=complex)

    for k in range(base.shape[0]):
        def log_p(z, k=k):
            vec = base.copy()
            vec[k] = z
            return crb.log_likelihood(
                y, crb.Theta.from_vector(vec, theta.num_taps), gamma)
        out[k] = wirtinger_fd(log_p, base[k], cfg)[1]
    return out


def _score_chunk(context, rng, count):
    theta = crb.Theta(context['h'], context['x'])
    gamma = context['gamma']
    noise = context['noise_fn'](rng, (count, theta.num_obs))
    v = context['score_fn'](theta.mean(gamma) + noise, theta, gamma)
    return (count, v.sum(axis=0), v.T.dot(v.conj()),
            (np.abs(v) ** 2).sum(axis=0))


class ScoreMoments(object):

    def __init__(self, partials):
        self.trials = sum(p[0] for p in partials)
        self.mean = pool.pairwise_sum(p[1] for p in partials) / self.trials
        self.second = linalg.hermitize(
            pool.pairwise_sum(p[2] for p in partials) / self.trials)
        power = pool.pairwise_sum(p[3] for p in partials) / self.trials
        self.variance = np.maximum(power - np.abs(self.mean) ** 2, 0.0)


def score_moments(theta, gamma, trials, seed, jobs=1, host=None,
                  score_fn=crb.score, noise_fn=system_model.complex_gaussian,
                  progress=None):
    context = {'h': theta.h, 'x': theta.x, 'gamma': gamma,
               'score_fn': score_fn, 'noise_fn': noise_fn}
    partials = pool.run_chunks(host or Host(), jobs, _score_chunk, context,
                               trials, pool.RngSpec(seed, stream=2),
                               progress=progress)
    return ScoreMoments(partials)


def mc_fim(theta, gamma, trials, seed, jobs=1, host=None, **kwargs):
    """Sample average of v v^H over independent noise draws."""
    return score_moments(theta, gamma, trials, seed, jobs, host,
                         **kwargs).second


class RegularityReport(object):

    def __init__(self, mean_score_norm, threshold):
        self.mean_score_norm = mean_score_norm
        self.threshold = threshold

    @property
    def passed(self):
        return self.mean_score_norm <= self.threshold


def regularity_from_moments(moments):
    se = np.sqrt(np.sum(moments.variance) / moments.trials)
    return RegularityReport(float(np.linalg.norm(moments.mean)),
                            float(REGULARITY_SIGMAS * se))


def check_regularity(theta, gamma, trials, seed, jobs=1, host=None,
                     **kwargs):
    """Checks E[v] = 0 to within the Monte-Carlo standard error."""
    if trials < 100:
        raise ValueError('regularity needs at least 100 trials, got %d' %
                         trials)
    return regularity_from_moments(
        score_moments(theta, gamma, trials, seed, jobs, host, **kwargs))


def channel_crb_forms(theta, gamma, bases):
    """The channel CRB computed every way available, keyed by form."""
    forms = {}
    full = crb.crb_theta(theta, gamma, bases)
    forms['theta_block'] = crb.channel_block(full, theta.num_taps)
    G_E = theta.jacobian().dot(bases.E)
    forms['schur_block'] = linalg.upper_left_of_inverse(
        G_E.conj().T.dot(G_E), theta.num_taps, 'E^H J E',
        error=NonIdentifiable) / gamma
    forms['schur'] = crb.crb_channel_schur(theta, gamma, bases)
    forms['projector'] = crb.crb_channel_projector(theta, gamma, bases).crb_h
    return forms


def three_form_deviation(theta, gamma, bases):
    forms = channel_crb_forms(theta, gamma, bases)
    ref = forms['projector']
    return max(linalg.relative_error(v, ref) for v in forms.values())


def trace_identity_deviation(theta, gamma, bases):
    report = crb.crb_channel_projector(theta, gamma, bases)
    trace = np.trace(report.crb_h).real
    return abs(trace - report.trace_bound) / report.trace_bound


class Check(object):

    def __init__(self, name, metric, threshold):
        self.name = name
        self.metric = float(metric)
        self.threshold = float(threshold)

    @property
    def passed(self):
        return bool(np.isfinite(self.metric) and
                    self.metric <= self.threshold)


def run_verification(scenario, trials, seed, jobs=1, host=None,
                     score_fn=crb.score, bases=None, fd_cfg=None,
                     progress=None):
    """Runs every oracle against one scenario and returns a list of Checks.

    bases overrides the constraint bases, which lets callers confirm that
    a corrupted basis is caught.
    """
    theta = scenario.theta()
    gamma = scenario.gamma
    bases = bases or scenario.bases()
    rng = pool.RngSpec(seed, stream=3).generator(0)
    checks = []

    y = theta.mean(gamma) + system_model.complex_gaussian(rng, theta.num_obs)
    analytic = score_fn(y, theta, gamma)
    numeric = fd_score(y, theta, gamma, fd_cfg)
    checks.append(Check('fd_score', linalg.relative_error(analytic, numeric),
                        1e-6))

    moments = score_moments(theta, gamma, trials, seed, jobs, host,
                            score_fn=score_fn, progress=progress)
    J = crb.fim(theta, gamma).J
    checks.append(Check('mc_fim', linalg.relative_error(moments.second, J),
                        0.05))
    reg = regularity_from_moments(moments)
    checks.append(Check('regularity', reg.mean_score_norm, reg.threshold))

    residuals = bases.residuals(scenario.precoder, scenario.pilots,
                                scenario.dims)
    for name in sorted(residuals):
        checks.append(Check('bases.%s' % name, residuals[name], 1e-9))

    residual = system_model.constraint_residual(
        theta, bases, scenario.pilots, scenario.precoder, scenario.dims)
    checks.append(Check('constraint_residual', np.linalg.norm(residual),
                        1e-10 * max(1.0, np.linalg.norm(theta.x))))

    checks.append(Check('three_form_equivalence',
                        three_form_deviation(theta, gamma, bases), 1e-9))
    checks.append(Check('trace_identity',
                        trace_identity_deviation(theta, gamma, bases), 1e-10))

    for c in checks:
        _log.info('%s: %.3g (threshold %.3g) %s', c.name, c.metric,
                  c.threshold, 'passed' if c.passed else 'FAILED')
    return checks
