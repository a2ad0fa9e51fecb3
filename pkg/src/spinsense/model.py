"""Infinite-range Ising model: Hamiltonian, parity-resolved spectra, gaps.

The sensing Hamiltonian in collective-spin form is

    H = -2 J S_Z^2 - 2 h^x S_X - 2 h^z S_Z,

the rewriting of the ferromagnetic all-to-all Ising model (full double sum,
so the i = j constant is kept inside S_Z^2) with transverse field h^x and
longitudinal field h^z.  For h^z = 0 the spin-flip parity is conserved and
the spectrum splits into an even sector {psi_n} of dimension N/2 + 1 and an
odd sector {phi_n} of dimension N/2, each sorted by ascending energy.

Fields are quoted in units of JN where noted; all sector solvers internally
set J = 1/N so that JN = 1.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import minimize_scalar

from .dicke import (
    CollectiveOperator,
    DickeBasis,
    DickeState,
    collective_operators,
    ladder_elements,
    rotate_basis,
    rotation_matrix,
)


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the sensing Hamiltonian (energy units)."""

    n_qubits: int
    interaction: float
    transverse_field: float
    longitudinal_field: float = 0.0

    def __post_init__(self):
        DickeBasis(self.n_qubits)  # validates N even >= 2
        if self.interaction <= 0:
            raise ValueError("interaction J must be positive (ferromagnetic)")

    @property
    def jn(self):
        return self.interaction * self.n_qubits


def build_hamiltonian(params, axis="Z"):
    """H = -2J S_Z^2 - 2 h^x S_X - 2 h^z S_Z as a CollectiveOperator."""
    sx, _, sz = collective_operators(params.n_qubits)
    mat = (
        -2 * params.interaction * (sz.matrix @ sz.matrix)
        - 2 * params.transverse_field * sx.matrix
        - 2 * params.longitudinal_field * sz.matrix
    )
    op = CollectiveOperator(DickeBasis(params.n_qubits, "Z"), mat)
    return rotate_basis(op, axis)


# ---------------------------------------------------------------------------
# Parity sectors.
#
# In the X eigenbasis S_X is diagonal and S_Z acts as the (real, zero-diagonal)
# tridiagonal ladder matrix, so S_Z^2 couples X indices k and k +- 2 only.
# The Hamiltonian with h^z = 0 therefore never mixes even and odd X indices:
# restricted to one parity sector it is a real symmetric tridiagonal matrix
# in the compressed sector index.  This makes parity conservation exact in
# floating point and halves the diagonalization size.
# ---------------------------------------------------------------------------


def sector_indices(n_qubits, parity):
    if parity not in (+1, -1):
        raise ValueError("parity must be +1 or -1")
    start = 0 if parity == +1 else 1
    return np.arange(start, n_qubits + 1, 2)


def sector_tridiagonal(n_qubits, interaction, transverse_field, parity):
    """(diag, offdiag, X indices) of H restricted to one parity sector."""
    lad = ladder_elements(n_qubits)
    m = n_qubits / 2 - np.arange(n_qubits + 1)
    # In the X basis S_Z acts as minus the S_X ladder matrix, so S_Z^2 has
    #   diagonal      (S_Z^2)_X[k, k]   = sx_off[k-1]^2 + sx_off[k]^2
    #   second diag   (S_Z^2)_X[k, k+2] = sx_off[k] * sx_off[k+1]
    sx_off = lad / 2
    sq_diag = np.zeros(n_qubits + 1)
    sq_diag[:-1] += sx_off**2
    sq_diag[1:] += sx_off**2
    sq_off2 = sx_off[:-1] * sx_off[1:]
    idx = sector_indices(n_qubits, parity)
    diag = -2 * interaction * sq_diag[idx] - 2 * transverse_field * m[idx]
    off = -2 * interaction * sq_off2[idx[:-1]]
    return diag, off, idx


def sector_eigh(n_qubits, interaction, transverse_field, parity):
    """Eigenpairs of one parity sector, ascending, vectors in sector coords."""
    diag, off, _ = sector_tridiagonal(n_qubits, interaction, transverse_field, parity)
    if len(diag) == 1:
        return diag.copy(), np.ones((1, 1))
    return eigh_tridiagonal(diag, off)


@dataclass(frozen=True)
class SpectrumData:
    """Parity-resolved eigenpairs and overlaps with the strong-field ground state."""

    params: ModelParams
    even_energies: np.ndarray
    even_states: tuple
    odd_energies: np.ndarray
    odd_states: tuple
    overlaps: np.ndarray  # g_n = <psi_n | N/2, N/2>_X, complex, even sector
    even_gap: float  # E(psi_1) - E(psi_0) at this field
    full_gap: float  # E_1 - E_0 of the merged spectrum


def _gauge_fix(amp):
    k = np.argmax(np.abs(amp))
    phase = amp[k] / abs(amp[k])
    return amp / phase


def parity_resolved_spectrum(params):
    """Diagonalize each parity sector of H (requires h^z = 0).

    Eigenstates are returned as Z-basis DickeStates with the gauge fixed by
    making each state's largest-magnitude amplitude real positive, which
    pins the overlap phases gamma_n reproducibly.
    """
    if params.longitudinal_field != 0:
        raise ValueError("parity sectors are only defined for h^z = 0")
    n = params.n_qubits
    u = rotation_matrix(n)
    basis_z = DickeBasis(n, "Z")

    def solve(parity):
        w, v = sector_eigh(n, params.interaction, params.transverse_field, parity)
        idx = sector_indices(n, parity)
        states, amps_x = [], []
        for col in range(v.shape[1]):
            full_x = np.zeros(n + 1, dtype=complex)
            full_x[idx] = v[:, col]
            amp_z = _gauge_fix(u @ full_x)
            states.append(DickeState(basis_z, amp_z))
            amps_x.append(u.conj().T @ amp_z)
        return w, tuple(states), amps_x

    even_w, even_states, even_x = solve(+1)
    odd_w, odd_states, _ = solve(-1)
    # g_n = <psi_n | psi_0(inf)> with |psi_0(inf)> = e_0 in the X basis
    overlaps = np.array([np.conj(ax[0]) for ax in even_x])
    merged = np.sort(np.concatenate([even_w, odd_w]))
    return SpectrumData(
        params=params,
        even_energies=even_w,
        even_states=even_states,
        odd_energies=odd_w,
        odd_states=odd_states,
        overlaps=overlaps,
        even_gap=float(even_w[1] - even_w[0]),
        full_gap=float(merged[1] - merged[0]),
    )


def ground_overlap(n_qubits, fields_over_jn):
    """|g_0|^2 = |<psi_0(h^x) | N/2, N/2>_X|^2 on a grid of h^x / JN.

    The overlap is scale free: it depends on the field only through h^x/JN.
    Monotone increasing in the field, approaching 1 as h^x -> infinity.
    """
    fields = np.atleast_1d(np.asarray(fields_over_jn, dtype=float))
    if np.any(fields < 0):
        raise ValueError("fields must be nonnegative")
    j = 1.0 / n_qubits  # JN = 1
    out = np.empty(fields.shape)
    for i, h in enumerate(fields):
        diag, off, _ = sector_tridiagonal(n_qubits, j, h, +1)
        _, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0))
        out[i] = abs(v[0, 0]) ** 2
    return out


def even_gap_at(n_qubits, field_over_jn):
    """E(psi_1) - E(psi_0) in units of JN at the given h^x / JN."""
    j = 1.0 / n_qubits
    diag, off, _ = sector_tridiagonal(n_qubits, j, field_over_jn, +1)
    w = eigh_tridiagonal(diag, off, select="i", select_range=(0, 1))[0]
    return float(w[1] - w[0])


def critical_gap(n_qubits):
    """Even-sector gap at the critical point h^x / JN = 1, in units of JN."""
    return even_gap_at(n_qubits, 1.0)


@dataclass(frozen=True)
class GapMinimum:
    field_over_jn: float
    gap_over_jn: float


def minimum_gap(n_qubits, bracket=(0.3, 1.5)):
    """Location and value of the minimum even-sector gap over a field range.

    The bracket (in units of JN) must contain the critical point h^x/JN = 1;
    for growing N the minimum moves toward it.
    """
    lo, hi = bracket
    if not (0 <= lo < hi):
        raise ValueError(f"invalid field range {bracket}")
    if not (lo < 1.0 < hi):
        raise ValueError("field range must bracket the critical point h^x/JN = 1")
    res = minimize_scalar(
        lambda h: even_gap_at(n_qubits, h),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return GapMinimum(float(res.x), float(res.fun))


@dataclass(frozen=True)
class GapScaling:
    n_values: np.ndarray
    min_gaps: np.ndarray
    min_locations: np.ndarray
    critical_gaps: np.ndarray
    min_fit: tuple  # (slope, intercept) of log(min gap) vs log N
    critical_fit: tuple  # (slope, intercept) of log(critical gap) vs log N


def gap_scaling(n_values, bracket=(0.3, 1.5)):
    """Gap-vs-N scaling data with log-log fits.

    Reports both the true minimum gap over the bracket and the gap at the
    critical point h^x/JN = 1.  At N ~ 100 the critical-point gap already
    follows the asymptotic N^(-1/3) law, while the location of the true
    minimum still drifts with N, which flattens its fitted slope.
    """
    n_values = np.asarray(list(n_values), dtype=int)
    if len(n_values) < 2:
        raise ValueError("need at least two system sizes to fit a slope")
    mins, locs, crits = [], [], []
    for n in n_values:
        gm = minimum_gap(int(n), bracket)
        mins.append(gm.gap_over_jn)
        locs.append(gm.field_over_jn)
        crits.append(critical_gap(int(n)))
    mins = np.array(mins)
    locs = np.array(locs)
    crits = np.array(crits)
    logn = np.log(n_values)
    min_fit = tuple(np.polyfit(logn, np.log(mins), 1))
    crit_fit = tuple(np.polyfit(logn, np.log(crits), 1))
    return GapScaling(n_values, mins, locs, crits, min_fit, crit_fit)
