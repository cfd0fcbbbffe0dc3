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

"""Monte-Carlo experiments against the channel CRB.

The only estimator shipped here is least squares with a fully known
channel input, which is efficient in the all-pilot case; there the
empirical covariance must meet the bound, elsewhere it may only exceed it.
"""

import logging

import numpy as np

from sbcrb import crb
from sbcrb import linalg
from sbcrb import pool
from sbcrb import system_model
from sbcrb.errors import InfeasiblePilots, NonIdentifiable, ShapeMismatch
from sbcrb.host import Host


BIAS_SIGMAS = 4.0
COV_SIGMAS = 5.0
TRACE_TOLERANCE = 0.05
MAX_RELATIVE_MC_ERROR = 0.2

_log = logging.getLogger(__name__)


class Constellation(object):
    qpsk = 'qpsk'
    gaussian = 'gaussian'

    values = (qpsk, gaussian)


RngSpec = pool.RngSpec


def qpsk(rng, size):
    bits = rng.integers(0, 2, size=(size, 2))
    return ((1 - 2 * bits[:, 0]) + 1j * (1 - 2 * bits[:, 1])) / np.sqrt(2)


def draw_symbols(MN, constellation, pilots, rng):  # pylint: disable=C0103
    """Unit-power source symbols that satisfy the pilot constraint."""
    if pilots.A.shape[1] != MN:
        raise ShapeMismatch('pilots constrain %d symbols, not %d' %
                            (pilots.A.shape[1], MN))
    if constellation == Constellation.qpsk:
        s = qpsk(rng, MN)
    elif constellation == Constellation.gaussian:
        s = system_model.complex_gaussian(rng, MN)
    else:
        raise ValueError('unknown constellation %r' % constellation)
    if not pilots.count:
        return s
    if pilots.indices is not None:
        s[pilots.indices] = pilots.c
    else:
        # Closest point of the affine set {s : A s = c}.
        s = s + linalg.pinv(pilots.A).dot(pilots.c - pilots.A.dot(s))
    miss = np.linalg.norm(pilots.A.dot(s) - pilots.c)
    if miss > 1e-9 * max(1.0, np.linalg.norm(pilots.c)):
        raise InfeasiblePilots('A s = c is off by %.3g' % miss)
    return s


def draw_noise(length, rng):
    if length < 1:
        raise ValueError('noise length must be at least 1, got %r' % length)
    return system_model.complex_gaussian(rng, length)


def ls_estimator_matrix(x_known, num_taps, gamma):
    T_x = linalg.conv_matrix(x_known, num_taps)
    gram = linalg.hermitize(T_x.conj().T.dot(T_x))
    return linalg.inv(gram, 'T_x^H T_x', error=NonIdentifiable).dot(
        T_x.conj().T) / np.sqrt(gamma)


def ls_channel_estimator(y, x_known, gamma):
    """(T_x^H T_x)^{-1} T_x^H y / sqrt(gamma); one estimate per row of y."""
    y = np.asarray(y, dtype=complex)
    x_known = linalg.as_cvec(x_known, 'x_known')
    num_taps = y.shape[-1] - x_known.shape[0] + 1
    if num_taps < 1:
        raise ShapeMismatch('observation is shorter than the channel input')
    Q = ls_estimator_matrix(x_known, num_taps, gamma)
    return y.dot(Q.T)


class EmpiricalStats(object):

    def __init__(self, mean_estimate, sample_cov, trials, bias_norm,
                 bias_error, cov_error):
        self.mean_estimate = mean_estimate
        self.sample_cov = sample_cov
        self.trials = trials
        self.bias_norm = bias_norm
        self.bias_error = bias_error
        self.cov_error = cov_error


class AttainabilityReport(object):
    # pylint: disable=too-many-instance-attributes

    def __init__(self, stats, crb_h, loewner_pass, trace_ratio,
                 trace_tolerance, bias_pass):
        self.stats = stats
        self.crb_h = crb_h
        self.loewner_pass = loewner_pass
        self.trace_ratio = trace_ratio
        self.trace_tolerance = trace_tolerance
        self.bias_pass = bias_pass
        self.relative_mc_error = stats.cov_error / max(
            np.linalg.norm(stats.sample_cov), np.finfo(float).tiny)
        self.insufficient_trials = (
            self.relative_mc_error > MAX_RELATIVE_MC_ERROR)

    @property
    def passed(self):
        return (self.loewner_pass and self.bias_pass and
                abs(self.trace_ratio - 1.0) <= self.trace_tolerance)


def _ls_chunk(context, rng, count):
    noise = system_model.complex_gaussian(
        rng, (count, context['mean'].shape[0]))
    est = (context['mean'] + noise).dot(context['Q'].T)
    return count, est.sum(axis=0), est.T.dot(est.conj())


def _cov_from_sums(n, s1, s2):
    mean = s1 / n
    return linalg.hermitize((s2 - n * np.outer(mean, mean.conj())) / (n - 1))


def empirical_stats(partials, truth):
    """Combines (count, sum, sum of outer products) chunk partials."""
    n = sum(p[0] for p in partials)
    if n < 2:
        raise ValueError('need at least two trials, got %d' % n)
    s1 = pool.pairwise_sum(p[1] for p in partials)
    s2 = pool.pairwise_sum(p[2] for p in partials)
    mean = s1 / n
    cov = _cov_from_sums(n, s1, s2)
    k = len(partials)
    if k >= 2 and all(n - p[0] >= 2 for p in partials):
        loo = [_cov_from_sums(n - p[0], s1 - p[1], s2 - p[2])
               for p in partials]
        center = sum(loo) / k
        cov_error = np.sqrt((k - 1.0) / k *
                            sum(np.linalg.norm(c - center) ** 2 for c in loo))
    else:
        cov_error = np.trace(cov).real / np.sqrt(n)
    bias_error = np.sqrt(np.trace(cov).real / n)
    return EmpiricalStats(mean, cov, n, float(np.linalg.norm(mean - truth)),
                          float(bias_error), float(cov_error))


def run_attainability_experiment(scenario, trials, seed, jobs=1, host=None,
                                 progress=None):
    """LS in the all-pilot case against the channel CRB."""
    if scenario.pilots.count != scenario.dims.MN:
        raise InfeasiblePilots('the attainability experiment needs every '
                               'symbol piloted (%d of %d are)' %
                               (scenario.pilots.count, scenario.dims.MN))
    host = host or Host()
    theta = scenario.theta()
    bound = crb.crb_channel_schur(theta, scenario.gamma, scenario.bases())
    context = {
        'mean': theta.mean(scenario.gamma),
        'Q': ls_estimator_matrix(theta.x, theta.num_taps, scenario.gamma),
    }
    partials = pool.run_chunks(host, jobs, _ls_chunk, context, trials,
                               RngSpec(seed, stream=1), progress=progress)
    stats = empirical_stats(partials, theta.h)

    slack = COV_SIGMAS * stats.cov_error
    cov = stats.sample_cov
    loewner_pass = linalg.loewner_geq(cov + slack * np.eye(cov.shape[0]),
                                      bound, 1e-9)
    trace_crb = np.trace(bound).real
    trace_ratio = float(np.trace(cov).real / trace_crb)
    trace_error = np.linalg.norm(cov) / np.sqrt(stats.trials) / trace_crb
    report = AttainabilityReport(
        stats, bound, loewner_pass, trace_ratio,
        max(TRACE_TOLERANCE, COV_SIGMAS * trace_error),
        stats.bias_norm <= BIAS_SIGMAS * stats.bias_error)
    if report.insufficient_trials:
        _log.warning('insufficient trials: %d give a %.0f%% Monte-Carlo '
                     'error on the covariance', trials,
                     100 * report.relative_mc_error)
    _log.info('attainability: trace ratio %.4f, bias %.3g (se %.3g)',
              trace_ratio, stats.bias_norm, stats.bias_error)
    return report
