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

"""Dense complex matrix primitives.

Matrices are 2-D complex128 numpy arrays and vectors are 1-D arrays.
Null bases are returned with orthonormal columns and are only defined up
to a right unitary rotation; nothing downstream depends on the choice.
"""

import collections
import logging

import numpy as np
import scipy.linalg

from sbcrb.errors import NonInvertible, ShapeMismatch


MAX_CONDITION = 1e12
RTOL = 1e-10

_log = logging.getLogger(__name__)


SvdResult = collections.namedtuple('SvdResult', ['U', 'S', 'Vh'])


def as_cmat(a, name='matrix'):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeMismatch('%s must be 2-D, got shape %s' % (name, m.shape))
    if not np.all(np.isfinite(m)):
        raise ValueError('%s has non-finite entries' % name)
    return m


def as_cvec(v, name='vector', length=None):
    a = np.asarray(v, dtype=complex)
    if a.ndim != 1:
        raise ShapeMismatch('%s must be 1-D, got shape %s' % (name, a.shape))
    if length is not None and a.shape[0] != length:
        raise ShapeMismatch('%s must have length %d, got %d' %
                            (name, length, a.shape[0]))
    if not np.all(np.isfinite(a)):
        raise ValueError('%s has non-finite entries' % name)
    return a


def hermitize(m):
    return (m + m.conj().T) / 2


def rank_tolerance(shape, smax):
    return max(shape) * np.finfo(float).eps * smax


def numerical_rank(a):
    a = as_cmat(a)
    if not a.size:
        return 0
    s = scipy.linalg.svdvals(a)
    if not s[0]:
        return 0
    return int(np.sum(s > rank_tolerance(a.shape, s[0])))


def svd(a):
    u, s, vh = scipy.linalg.svd(as_cmat(a), full_matrices=False)
    return SvdResult(u, s, vh)


def conv_matrix(v, ncols):
    """Returns the (K+ncols-1) x ncols full-convolution matrix of v.

    Entry (i, j) is v[i - j] when 0 <= i - j < K and 0 otherwise, so
    conv_matrix(v, n).dot(x) == np.convolve(v, x) for len(x) == n.
    """
    v = as_cvec(v, 'filter')
    if not v.shape[0] or ncols < 1:
        raise ValueError('conv_matrix needs a non-empty filter and ncols >= 1')
    return scipy.linalg.convolution_matrix(v, ncols, mode='full')


def kron(a, b):
    return np.kron(as_cmat(a, 'A'), as_cmat(b, 'B'))


def right_null_basis(a):
    """Orthonormal basis of {z : a z = 0}, one vector per column."""
    a = as_cmat(a)
    if not np.any(a):
        return np.eye(a.shape[1], dtype=complex)
    return scipy.linalg.null_space(a, rcond=rank_tolerance(a.shape, 1.0))


def left_null_basis(a):
    """Orthonormal basis of {z : z^H a = 0}, one vector per column.

    The result spans the orthogonal complement of the column space of a.
    """
    return right_null_basis(as_cmat(a).conj().T)


def pinv(a):
    a = as_cmat(a)
    m, n = a.shape
    if not a.size:
        return np.zeros((n, m), dtype=complex)
    return scipy.linalg.pinv(a)


def condition_number(m):
    if not m.size:
        return 1.0
    s = scipy.linalg.svdvals(m)
    if not s[-1]:
        return np.inf
    return s[0] / s[-1]


def check_invertible(m, name, error=NonInvertible):
    cond = condition_number(m)
    _log.debug('%s: shape %s, condition number %.3g', name, m.shape, cond)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise error(name, cond)


def inv(m, name='matrix', error=NonInvertible):
    m = as_cmat(m, name)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch('%s must be square, got %s' % (name, m.shape))
    if not m.size:
        return m.copy()
    check_invertible(m, name, error)
    return scipy.linalg.inv(m)


def upper_left_of_inverse(m, k, name='matrix', error=NonInvertible):
    """The k x k upper-left block of m^{-1} for Hermitian invertible m.

    Computed as the inverse of the Schur complement A - B D^+ C of the
    lower-right block, and compared with the block of the full inverse.
    """
    m = hermitize(as_cmat(m, name))
    n = m.shape[0]
    if m.shape[1] != n or not 0 <= k <= n:
        raise ShapeMismatch('cannot take a %d x %d block of a %s matrix' %
                            (k, k, m.shape))
    check_invertible(m, name, error)
    a, b = m[:k, :k], m[:k, k:]
    c, d = m[k:, :k], m[k:, k:]
    block = inv(a - b.dot(pinv(d)).dot(c), 'Schur complement of %s' % name,
                error)
    full = scipy.linalg.inv(m)[:k, :k]
    scale = max(np.linalg.norm(full), np.finfo(float).tiny)
    if np.linalg.norm(block - full) > 1e-8 * scale:
        _log.warning('Schur complement and full inverse of %s disagree '
                     '(relative difference %.3g)', name,
                     np.linalg.norm(block - full) / scale)
    return hermitize(block)


def loewner_geq(a, b, tol):
    """True iff a - b is nonnegative-definite up to tol."""
    a = as_cmat(a, 'A')
    b = as_cmat(b, 'B')
    if a.shape != b.shape:
        raise ShapeMismatch('cannot order %s against %s' % (a.shape, b.shape))
    if not a.size:
        return True
    return bool(scipy.linalg.eigvalsh(hermitize(a - b))[0] >= -tol)


def projector(v):
    v = as_cmat(v)
    return v.dot(v.conj().T)


def relative_error(actual, expected):
    """Frobenius distance relative to the size of expected."""
    actual = np.asarray(actual)
    expected = np.asarray(expected)
    scale = np.linalg.norm(expected)
    diff = np.linalg.norm(actual - expected)
    if not scale:
        return diff
    return diff / scale
