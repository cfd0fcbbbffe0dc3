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

"""Score, Fisher information and Cramer-Rao bounds for the block model.

theta = [h; x] stacks the L+1 channel taps and the PN channel inputs; x
is a nuisance parameter. With G = [T_x  T_h] the complex score is
sqrt(gamma) G^H n and the complex FIM is J = gamma G^H G.
"""

import logging

import numpy as np
import scipy.linalg

from sbcrb import linalg
from sbcrb.errors import NonIdentifiable, ShapeMismatch


_log = logging.getLogger(__name__)


class Theta(object):

    def __init__(self, h, x):
        self.h = linalg.as_cvec(h, 'h')
        self.x = linalg.as_cvec(x, 'x')
        if not self.h.shape[0] or not self.x.shape[0]:
            raise ShapeMismatch('theta needs at least one tap and one input')

    @classmethod
    def from_vector(cls, vec, num_taps):
        vec = linalg.as_cvec(vec, 'theta')
        return cls(vec[:num_taps], vec[num_taps:])

    @property
    def num_taps(self):
        return self.h.shape[0]

    @property
    def num_obs(self):
        return self.x.shape[0] + self.h.shape[0] - 1

    @property
    def vector(self):
        return np.concatenate([self.h, self.x])

    def T_h(self):  # pylint: disable=invalid-name
        return linalg.conv_matrix(self.h, self.x.shape[0])

    def T_x(self):  # pylint: disable=invalid-name
        return linalg.conv_matrix(self.x, self.num_taps)

    def jacobian(self):
        """G = [T_x  T_h], the derivative of T_h x with respect to theta."""
        return np.hstack([self.T_x(), self.T_h()])

    def mean(self, gamma):
        return np.sqrt(gamma) * self.T_h().dot(self.x)


class FimReport(object):

    def __init__(self, J, gamma):
        self.J = J
        self.gamma = gamma


class CrbReport(object):
    # pylint: disable=too-many-arguments

    def __init__(self, crb_h, trace_bound, singular_values, gamma,
                 crb_theta=None):
        self.crb_h = crb_h
        self.trace_bound = trace_bound
        self.singular_values = singular_values
        self.gamma = gamma
        self.crb_theta = crb_theta


def _check_gamma(gamma):
    if not gamma > 0:
        raise ValueError('gamma must be positive, got %r' % gamma)


def _residual(y, theta, gamma):
    y = np.asarray(y, dtype=complex)
    if y.shape[-1] != theta.num_obs or y.ndim not in (1, 2):
        raise ShapeMismatch('observations must have length %d, got shape %s' %
                            (theta.num_obs, y.shape))
    return y - theta.mean(gamma)


def log_likelihood(y, theta, gamma):
    """ln p(y; theta) up to an additive constant."""
    _check_gamma(gamma)
    n = _residual(y, theta, gamma)
    return -float(np.vdot(n, n).real)


def score(y, theta, gamma):
    """d ln p / d theta^* = sqrt(gamma) [T_x^H n; T_h^H n].

    y may hold one observation per row; one score is returned per row.
    """
    _check_gamma(gamma)
    n = _residual(y, theta, gamma)
    return np.sqrt(gamma) * n.dot(theta.jacobian().conj())


def fim(theta, gamma):
    _check_gamma(gamma)
    G = theta.jacobian()
    return FimReport(gamma * linalg.hermitize(G.conj().T.dot(G)), gamma)


def crb_unconstrained(fim_report):
    """J^{-1}; raises NonIdentifiable when J is numerically singular."""
    return linalg.hermitize(linalg.inv(fim_report.J, 'J',
                                       error=NonIdentifiable))


def crb_unconstrained_channel_block(fim_report, num_taps):
    return linalg.upper_left_of_inverse(fim_report.J, num_taps, 'J',
                                        error=NonIdentifiable)


def crb_constrained(fim_report, U):
    """U (U^H J U)^{-1} U^H for an orthonormal complement U."""
    J = fim_report.J
    U = linalg.as_cmat(U, 'U')
    if U.shape[0] != J.shape[0]:
        raise ShapeMismatch('U has %d rows, J is %s' % (U.shape[0], J.shape))
    if not U.shape[1]:
        # Fully constrained parameter.
        return np.zeros_like(J)
    gram = linalg.hermitize(U.conj().T.dot(J).dot(U))
    inner = linalg.inv(gram, 'U^H J U', error=NonIdentifiable)
    return linalg.hermitize(U.dot(inner).dot(U.conj().T))


def efficient_error(v, fim_report, U=None):
    """The error U (U^H J U)^{-1} U^H v of an estimator attaining the bound."""
    if U is None:
        return crb_unconstrained(fim_report).dot(v)
    return crb_constrained(fim_report, U).dot(v)


def crb_theta(theta, gamma, bases):
    """E (E^H J E)^{-1} E^H for the whole parameter [h; x]."""
    _check_gamma(gamma)
    _check_bases(theta, bases)
    G = theta.jacobian()
    unit = FimReport(linalg.hermitize(G.conj().T.dot(G)), 1.0)
    return crb_constrained(unit, bases.E) / gamma


def channel_block(crb, num_taps):
    return crb[:num_taps, :num_taps]


def crb_channel_schur(theta, gamma, bases):
    """(1/gamma) {T_x^H [I - P] T_x}^{-1}, P projecting onto range(T_h E~)."""
    _check_gamma(gamma)
    _check_bases(theta, bases)
    T_x = theta.T_x()
    B = theta.T_h().dot(bases.E_tilde)
    if B.shape[1]:
        inner = linalg.pinv(linalg.hermitize(B.conj().T.dot(B)))
        proj = B.dot(inner).dot(B.conj().T)
    else:
        proj = np.zeros((T_x.shape[0], T_x.shape[0]), dtype=complex)
    gram = T_x.conj().T.dot(np.eye(T_x.shape[0]) - proj).dot(T_x)
    gram = linalg.hermitize(gram)
    return linalg.hermitize(
        linalg.inv(gram, 'T_x^H (I - P) T_x', error=NonIdentifiable)) / gamma


def channel_complement(theta, bases):
    """U~: orthonormal basis of the complement of range(T_h E~)."""
    _check_bases(theta, bases)
    return linalg.left_null_basis(theta.T_h().dot(bases.E_tilde))


def channel_crb_from_complement(T_x, U_tilde, gamma):
    """(1/gamma) (T_x^H U~ U~^H T_x)^{-1} plus its singular values."""
    _check_gamma(gamma)
    K = T_x.conj().T.dot(U_tilde)
    sv = scipy.linalg.svdvals(K) if K.size else np.zeros(0)
    gram = linalg.hermitize(K.dot(K.conj().T))
    crb_h = linalg.hermitize(
        linalg.inv(gram, 'T_x^H U~ U~^H T_x', error=NonIdentifiable)) / gamma
    return CrbReport(crb_h, trace_bound(sv, gamma, T_x.shape[1] - 1),
                     sv, gamma)


def crb_channel_projector(theta, gamma, bases):
    report = channel_crb_from_complement(
        theta.T_x(), channel_complement(theta, bases), gamma)
    _log.debug('channel CRB: trace %.6g, singular values %s',
               report.trace_bound, report.singular_values)
    return report


def trace_bound(singular_values, gamma, L):  # pylint: disable=invalid-name
    """(1/gamma) sum of sigma^-2 over the L+1 largest singular values."""
    _check_gamma(gamma)
    sv = np.sort(np.asarray(singular_values, dtype=float))[::-1]
    if sv.shape[0] < L + 1 or not sv[L] > 0:
        raise NonIdentifiable('T_x^H U~', np.inf)
    if sv[0] / sv[L] > np.sqrt(linalg.MAX_CONDITION):
        raise NonIdentifiable('T_x^H U~', (sv[0] / sv[L]) ** 2)
    return float(np.sum(sv[:L + 1] ** -2.0) / gamma)


def _check_bases(theta, bases):
    if bases.E_tilde.shape[0] != theta.x.shape[0]:
        raise ShapeMismatch('E_tilde has %d rows, x has length %d' %
                            (bases.E_tilde.shape[0], theta.x.shape[0]))
