"""Shared fixtures and brute-force full-Hilbert-space oracles.

The oracles build operators and dynamics in the full 2^N qubit space and
project onto the symmetric subspace, completely independently of the
collective-spin code under test.  Only usable for small N.
"""

from itertools import combinations
from math import comb

import numpy as np
import pytest
from scipy.linalg import expm


def _kron_chain(ops):
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
_I = np.eye(2)


def single_site(n_qubits, site, op):
    ops = [_I] * n_qubits
    ops[site] = op
    return _kron_chain(ops)


def full_collective(n_qubits, op):
    """(1/2) sum_i op_i in the full 2^N space."""
    total = np.zeros((2**n_qubits, 2**n_qubits))
    for i in range(n_qubits):
        total += single_site(n_qubits, i, op)
    return total / 2


def full_parity(n_qubits):
    return _kron_chain([_X] * n_qubits)


def symmetric_isometry(n_qubits):
    """(2^N, N+1) isometry onto the symmetrized Z basis, descending m.

    Column k is the normalized equal superposition of all computational
    states with k qubits flipped to |1>, matching |N/2, N/2 - k>_Z.
    """
    dim = 2**n_qubits
    q = np.zeros((dim, n_qubits + 1))
    for k in range(n_qubits + 1):
        for flipped in combinations(range(n_qubits), k):
            index = sum(1 << (n_qubits - 1 - site) for site in flipped)
            q[index, k] = 1.0
        q[:, k] /= np.sqrt(comb(n_qubits, k))
    return q


def full_hamiltonian(n_qubits, interaction, hx, hz):
    """-(J/2) sum_ij Z_i Z_j - h^x sum_i X_i - h^z sum_i Z_i (full double sum)."""
    sz_sum = 2 * full_collective(n_qubits, _Z)
    sx_sum = 2 * full_collective(n_qubits, _X)
    return -(interaction / 2) * (sz_sum @ sz_sum) - hx * sx_sum - hz * sz_sum


def brute_force_ramp(n_qubits, interaction, field_of_t, duration, hz, psi_full, steps):
    """Midpoint-exponential propagation in the full 2^N space."""
    psi = psi_full.astype(complex)
    dt = duration / steps
    for i in range(steps):
        h = full_hamiltonian(n_qubits, interaction, field_of_t((i + 0.5) * dt), hz)
        psi = expm(-1j * h * dt) @ psi
    return psi


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1234)
