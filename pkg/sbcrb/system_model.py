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

"""The redundant block transmission model.

N blocks of M source symbols s are precoded block-wise by a P x M matrix F
(P = M + L), sent through an order-L FIR channel h and observed in unit
circular Gaussian noise:

    y = sqrt(gamma) * T_h x + n,    x = (I_N kron F) s.

x is the unit-power channel input; gamma only scales the observation.
"""

import logging
import re

import numpy as np
import scipy.linalg

from sbcrb import linalg
from sbcrb.crb import Theta
from sbcrb.errors import (DegenerateConstraints, DuplicateIndex,
                          IndexOutOfRange, InfeasiblePilots, InvalidDims,
                          ShapeMismatch)


_log = logging.getLogger(__name__)


class PrecoderKind(object):
    cp_ofdm = 'cp_ofdm'
    zero_padding = 'zero_padding'
    custom = 'custom'

    values = (cp_ofdm, zero_padding, custom)


class ChannelDistribution(object):
    rayleigh = 'rayleigh'
    exponential = 'exponential'

    values = (rayleigh, exponential)


class SystemDims(object):
    # Names follow the block model (M symbols, order L, N blocks).
    # pylint: disable=invalid-name

    def __init__(self, M, L, N):
        for name, val, low in (('M', M, 1), ('L', L, 0), ('N', N, 1)):
            if int(val) != val or val < low:
                raise InvalidDims('%s must be an integer >= %d, got %r' %
                                  (name, low, val))
        self.M = int(M)
        self.L = int(L)
        self.N = int(N)

    @property
    def P(self):
        return self.M + self.L

    @property
    def PN(self):
        return self.P * self.N

    @property
    def MN(self):
        return self.M * self.N

    @property
    def num_taps(self):
        return self.L + 1

    @property
    def num_obs(self):
        return self.PN + self.L

    @property
    def num_params(self):
        return self.PN + self.L + 1

    def __eq__(self, other):
        return (isinstance(other, SystemDims) and
                (self.M, self.L, self.N) == (other.M, other.L, other.N))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'SystemDims(M=%d, L=%d, N=%d)' % (self.M, self.L, self.N)


class Precoder(object):

    def __init__(self, F, kind=PrecoderKind.custom):
        F = linalg.as_cmat(F, 'F')
        if kind not in PrecoderKind.values:
            raise ValueError('unknown precoder kind %r' % kind)
        if F.shape[0] < F.shape[1]:
            raise ShapeMismatch('precoder must be tall, got %s' % (F.shape,))
        if linalg.numerical_rank(F) != F.shape[1]:
            raise InvalidDims('precoder does not have full column rank')
        self.F = F
        self.kind = kind

    def block(self, N):
        """I_N kron F."""
        return linalg.kron(np.eye(N), self.F)

    def check_dims(self, dims):
        if self.F.shape != (dims.P, dims.M):
            raise ShapeMismatch('precoder is %s, expected %s for %r' %
                                (self.F.shape, (dims.P, dims.M), dims))


def idft_matrix(M):
    """The unitary IDFT matrix, W[m, k] = exp(+2j pi m k / M) / sqrt(M)."""
    return scipy.linalg.dft(M, scale='sqrtn').conj()


def build_cp_ofdm(dims):
    if dims.L > dims.M:
        raise InvalidDims('a cyclic prefix of length %d does not fit a '
                          'block of %d symbols' % (dims.L, dims.M))
    W = idft_matrix(dims.M)
    return Precoder(np.vstack([W[dims.M - dims.L:], W]), PrecoderKind.cp_ofdm)


def build_zero_padding(dims):
    F = np.vstack([np.eye(dims.M), np.zeros((dims.L, dims.M))])
    return Precoder(F, PrecoderKind.zero_padding)


def build_precoder(kind, dims, matrix=None):
    if kind == PrecoderKind.cp_ofdm:
        return build_cp_ofdm(dims)
    if kind == PrecoderKind.zero_padding:
        return build_zero_padding(dims)
    if kind == PrecoderKind.custom:
        if matrix is None:
            raise ValueError('a custom precoder needs a matrix')
        precoder = Precoder(matrix, PrecoderKind.custom)
        precoder.check_dims(dims)
        return precoder
    raise ValueError('unknown precoder kind %r' % kind)


def load_precoder(text, dims):
    return build_precoder(PrecoderKind.custom, dims, parse_matrix_text(text))


def remove_prefix_and_demodulate(y_block, dims):
    """Drops the first L samples of one received block and applies the DFT.

    For a CP-OFDM block this yields H[k] * S[k] per subcarrier, with H the
    M-point DFT of the channel taps.
    """
    y_block = linalg.as_cvec(y_block, 'y_block')
    if y_block.shape[0] < dims.P:
        raise ShapeMismatch('a block needs %d samples, got %d' %
                            (dims.P, y_block.shape[0]))
    return idft_matrix(dims.M).conj().T.dot(y_block[dims.L:dims.P])


class PilotSpec(object):
    """Linear pilot constraint A s = c on the MN source symbols."""

    def __init__(self, A, c, indices=None):
        A = np.asarray(A, dtype=complex)
        if A.ndim != 2:
            raise ShapeMismatch('pilot matrix must be 2-D')
        A = linalg.as_cmat(A, 'A')
        c = linalg.as_cvec(c, 'c', length=A.shape[0])
        if A.shape[0] and linalg.numerical_rank(A) != A.shape[0]:
            raise DegenerateConstraints('pilot matrix A does not have full '
                                        'row rank')
        self.A = A
        self.c = c
        self.indices = None if indices is None else list(indices)

    @property
    def count(self):
        return self.A.shape[0]

    def check_dims(self, dims):
        if self.A.shape[1] != dims.MN:
            raise ShapeMismatch('pilot matrix has %d columns, expected MN=%d' %
                                (self.A.shape[1], dims.MN))


def pilot_spec_from_indices(indices, values, dims):
    indices = [int(i) for i in indices]
    values = list(values)
    if len(indices) != len(values):
        raise ShapeMismatch('%d pilot positions but %d pilot values' %
                            (len(indices), len(values)))
    seen = set()
    for i in indices:
        if i in seen:
            raise DuplicateIndex('pilot position %d given twice' % i)
        if not 0 <= i < dims.MN:
            raise IndexOutOfRange('pilot position %d is outside [0, %d)' %
                                  (i, dims.MN))
        seen.add(i)
    A = np.eye(dims.MN, dtype=complex)[indices].reshape(len(indices), dims.MN)
    return PilotSpec(A, np.asarray(values, dtype=complex).reshape(-1), indices)


def pilot_spec_from_matrix(A, c, dims):
    pilots = PilotSpec(A, c)
    pilots.check_dims(dims)
    return pilots


class ChannelState(object):

    def __init__(self, h, dims):
        self.h = linalg.as_cvec(h, 'h', length=dims.num_taps)


def random_channel(dims, rng, distribution=ChannelDistribution.rayleigh):
    if distribution == ChannelDistribution.rayleigh:
        profile = np.full(dims.num_taps, 1.0 / dims.num_taps)
    elif distribution == ChannelDistribution.exponential:
        profile = np.exp(-np.arange(dims.num_taps, dtype=float))
        profile /= profile.sum()
    else:
        raise ValueError('unknown channel distribution %r' % distribution)
    taps = complex_gaussian(rng, dims.num_taps) * np.sqrt(profile)
    return ChannelState(taps, dims)


class SourceRealization(object):

    def __init__(self, s, gamma, precoder, dims):
        if not gamma > 0:
            raise ValueError('gamma must be positive, got %r' % gamma)
        precoder.check_dims(dims)
        self.s = linalg.as_cvec(s, 's', length=dims.MN)
        self.gamma = float(gamma)
        self.x = precoder.block(dims.N).dot(self.s)


class ConstraintBases(object):
    """Orthonormal complements realising the constraint geometry.

    U_n spans the complement of range(I_N kron F), E_tilde spans the
    null space of the stacked constraint [U_n^H; A (I_N kron F)^+], and
    E = blockdiag(I_{L+1}, E_tilde).
    """

    def __init__(self, U_n, E_tilde, num_taps):
        self.U_n = U_n
        self.E_tilde = E_tilde
        PN, k = E_tilde.shape
        self.E = np.zeros((num_taps + PN, num_taps + k), dtype=complex)
        self.E[:num_taps, :num_taps] = np.eye(num_taps)
        self.E[num_taps:, num_taps:] = E_tilde

    def residuals(self, precoder, pilots, dims):
        """Largest violation of each basis invariant."""
        stacked = stacked_constraint(self.U_n, precoder, pilots, dims)
        res = {}
        res['U_n_orthonormality'] = _orthonormality_error(self.U_n)
        res['U_n_annihilation'] = _norm(
            self.U_n.conj().T.dot(precoder.block(dims.N)))
        res['E_tilde_orthonormality'] = _orthonormality_error(self.E_tilde)
        res['E_tilde_annihilation'] = _norm(stacked.dot(self.E_tilde))
        return res


def stacked_constraint(U_n, precoder, pilots, dims):
    G = precoder.block(dims.N)
    return np.vstack([U_n.conj().T, pilots.A.dot(linalg.pinv(G))])


def build_constraint_bases(precoder, pilots, dims):
    precoder.check_dims(dims)
    pilots.check_dims(dims)
    U_n = linalg.left_null_basis(precoder.block(dims.N))
    stacked = stacked_constraint(U_n, precoder, pilots, dims)
    rank = linalg.numerical_rank(stacked)
    if rank != stacked.shape[0]:
        raise DegenerateConstraints(
            'stacked constraint matrix has rank %d < %d rows; the pilot '
            'constraints overlap the precoder constraint' %
            (rank, stacked.shape[0]))
    E_tilde = linalg.right_null_basis(stacked)
    _log.debug('constraint bases: U_n %s, E_tilde %s',
               U_n.shape, E_tilde.shape)
    return ConstraintBases(U_n, E_tilde, dims.num_taps)


def constraint_residual(theta, bases, pilots, precoder, dims):
    """Evaluates f(theta), which is zero when theta meets the constraints."""
    vec = linalg.as_cvec(theta.vector, 'theta', length=dims.num_params)
    x = vec[dims.num_taps:]
    G_pinv = linalg.pinv(precoder.block(dims.N))
    return np.concatenate([np.zeros(dims.num_taps, dtype=complex),
                           bases.U_n.conj().T.dot(x),
                           pilots.A.dot(G_pinv).dot(x) - pilots.c])


class Scenario(object):
    """One fully specified configuration: model, pilots, channel, symbols."""
    # pylint: disable=too-many-arguments

    def __init__(self, dims, precoder, pilots, channel, s, gamma):
        precoder.check_dims(dims)
        pilots.check_dims(dims)
        self.dims = dims
        self.precoder = precoder
        self.pilots = pilots
        self.channel = channel
        self.source = SourceRealization(s, gamma, precoder, dims)
        miss = np.linalg.norm(pilots.A.dot(self.source.s) - pilots.c)
        if miss > 1e-9 * max(1.0, np.linalg.norm(pilots.c)):
            raise InfeasiblePilots('symbols violate the pilot constraint '
                                   'by %.3g' % miss)
        self._bases = None

    @property
    def gamma(self):
        return self.source.gamma

    def theta(self):
        return Theta(self.channel.h, self.source.x)

    def bases(self):
        if self._bases is None:
            self._bases = build_constraint_bases(self.precoder, self.pilots,
                                                 self.dims)
        return self._bases

    def with_gamma(self, gamma):
        return Scenario(self.dims, self.precoder, self.pilots, self.channel,
                        self.source.s, gamma)

    def with_pilots(self, pilots):
        return Scenario(self.dims, self.precoder, pilots, self.channel,
                        self.source.s, self.gamma)

    def with_precoder(self, precoder):
        return Scenario(self.dims, precoder, self.pilots, self.channel,
                        self.source.s, self.gamma)


def complex_gaussian(rng, shape):
    """Circularly-symmetric unit-variance complex Gaussian samples."""
    return (rng.standard_normal(shape) +
            1j * rng.standard_normal(shape)) * np.sqrt(0.5)


def synthesize_observation(h, src, noise=None, rng=None):
    if noise is None and rng is None:
        raise ValueError('need an explicit noise vector or an rng')
    num_obs = src.x.shape[0] + h.h.shape[0] - 1
    if noise is None:
        noise = complex_gaussian(rng, num_obs)
    noise = linalg.as_cvec(noise, 'noise')
    if noise.shape[0] != num_obs:
        raise ShapeMismatch('noise must have length %d, got %d' %
                            (num_obs, noise.shape[0]))
    T_h = linalg.conv_matrix(h.h, src.x.shape[0])
    return np.sqrt(src.gamma) * T_h.dot(src.x) + noise


_COMPLEX_RE = re.compile(r'[ij]$')


def parse_complex(text):
    """Parses "a+bi" (or "a+bj", "a", "bi") into a complex number."""
    if isinstance(text, (int, float, complex)) and not isinstance(text, bool):
        return complex(text)
    s = str(text).strip().replace(' ', '')
    try:
        return complex(_COMPLEX_RE.sub('j', s))
    except ValueError:
        raise ValueError('cannot parse %r as a complex number' % text)


def format_complex(z):
    z = complex(z)
    return '%.17g%+.17gi' % (z.real, z.imag)


def parse_matrix_text(text):
    """Reads a whitespace-separated complex matrix, one row per line."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([parse_complex(tok) for tok in line.split()])
        except ValueError as e:
            raise ValueError('line %d: %s' % (lineno, e))
    if not rows:
        raise ShapeMismatch('matrix file is empty')
    if any(len(r) != len(rows[0]) for r in rows):
        raise ShapeMismatch('matrix rows have different lengths')
    return np.array(rows, dtype=complex)


def format_matrix_text(m):
    return ''.join(' '.join(format_complex(z) for z in row) + '\n'
                   for row in linalg.as_cmat(m))


def _orthonormality_error(v):
    if not v.shape[1]:
        return 0.0
    return _norm(v.conj().T.dot(v) - np.eye(v.shape[1]))


def _norm(m):
    return float(np.linalg.norm(m))
