# -*- coding: utf-8 -*-
#######
# nonlocal-core - a workbench for multiplayer nonlocal games: classical,
# no-signaling, explicit quantum and NPA-relaxed quantum values.
#
# Copyright (c) 2019 nonlocal-core developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#
#######

"""
Dense matrix and state vector helpers

Matrices are plain complex numpy arrays, state vectors carry the
dimensions of the party factors they are split into.
"""
from functools import reduce
import numpy as np
from .common.exceptions import DimensionMismatchError, NonHermitianError, DomainError

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

MAX_DIMENSION = 2 ** 20
HERMITIAN_TOLERANCE = 1e-10
NORM_TOLERANCE = 1e-10

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_matrix(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise DimensionMismatchError("A non empty matrix is required, got shape %s" % str(a.shape))
    return a


def is_hermitian(a, tol=HERMITIAN_TOLERANCE):
    a = as_matrix(a)
    return a.shape[0] == a.shape[1] and float(np.abs(a - a.conj().T).max()) <= tol


def kron(a, b):
    """The Kronecker product a (x) b, refused beyond 2^20 rows or columns"""
    a = as_matrix(a)
    b = as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_DIMENSION or cols > MAX_DIMENSION:
        raise DimensionMismatchError("The Kronecker product would have shape (%i, %i), "
                                     "the cap is %i" % (rows, cols, MAX_DIMENSION))
    return np.kron(a, b)


def tensor(*operators):
    return reduce(kron, operators)


def embed(operator, party, party_dims):
    """operator acting on factor party of a product space, identity elsewhere"""
    factors = [np.eye(d, dtype=complex) for d in party_dims]
    operator = as_matrix(operator)
    if operator.shape != (party_dims[party], party_dims[party]):
        raise DimensionMismatchError("Party %i has dimension %i, the operator shape is %s"
                                     % (party, party_dims[party], str(operator.shape)))
    factors[party] = operator
    return tensor(*factors)


def hermitian_eig(a):
    """Eigenvalues in ascending order and orthonormal eigenvectors (columns)
    of a Hermitian matrix

    Raises:
        NonHermitianError

    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("A square matrix is required, got shape %s" % str(a.shape))
    if not is_hermitian(a):
        raise NonHermitianError("The matrix deviates from its adjoint by %g"
                                % float(np.abs(a - a.conj().T).max()))
    return np.linalg.eigh((a + a.conj().T) / 2.0)


def max_eigenvalue(a):
    values, vectors = hermitian_eig(a)
    return float(values[-1]), vectors[:, -1]


class StateVector(object):
    """A normalized pure state on a product of party factors

    Args:
        amplitudes (array): The complex amplitudes, party 0 is the most
                            significant factor
        party_dims (list): The factor dimensions

    """

    def __init__(self, amplitudes, party_dims):

        amplitudes = np.asarray(amplitudes, dtype=complex).ravel()
        party_dims = tuple(int(d) for d in party_dims)
        if len(party_dims) == 0 or min(party_dims) < 1:
            raise DimensionMismatchError("Invalid party dimensions %s" % str(party_dims))
        if amplitudes.size != int(np.prod(party_dims)):
            raise DimensionMismatchError("%i amplitudes do not fit the party dimensions %s"
                                         % (amplitudes.size, str(party_dims)))
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise DomainError("The state has norm %.15g instead of 1" % norm)
        amplitudes.setflags(write=False)
        self.amplitudes = amplitudes
        self.party_dims = party_dims

    @classmethod
    def normalized(cls, amplitudes, party_dims):
        amplitudes = np.asarray(amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise DomainError("The zero vector can not be normalized")
        return cls(amplitudes / norm, party_dims)

    @property
    def dimension(self):
        return self.amplitudes.size

    def tensor(self):
        """The amplitudes reshaped to one axis per party"""
        return self.amplitudes.reshape(self.party_dims)


def expectation(state, operator):
    """<psi| operator |psi>"""
    operator = as_matrix(operator)
    if operator.shape != (state.dimension, state.dimension):
        raise DimensionMismatchError("The operator shape %s does not fit a state of dimension %i"
                                     % (str(operator.shape), state.dimension))
    return complex(np.vdot(state.amplitudes, operator @ state.amplitudes))


def phi_plus():
    """(|00> + |11>) / sqrt(2)"""
    return StateVector.normalized([1, 0, 0, 1], (2, 2))


def ghz_state(n_parties=3):
    """(|0...0> + |1...1>) / sqrt(2)"""
    amplitudes = np.zeros(2 ** n_parties, dtype=complex)
    amplitudes[0] = amplitudes[-1] = 1.0
    return StateVector.normalized(amplitudes, (2,) * n_parties)


def product_state(*vectors):
    amplitudes = reduce(np.kron, [np.asarray(v, dtype=complex).ravel() for v in vectors])
    return StateVector.normalized(amplitudes, [np.asarray(v).size for v in vectors])
