"""Estimation uncertainty, reference limits, offsets, dephasing, budgets.

Limits follow the error-propagation convention delta_omega = dA / (|d<A>/d
omega| sqrt(M)).  The longitudinal field enters through omega = 2 h^z, so
every h^z uncertainty carries an extra factor 1/2 relative to its omega
counterpart.  Times are in the same (arbitrary) energy-inverse units as the
couplings; sweep-facing helpers quote the paper-style grids where fields are
measured in JN and times in (2 J N^2)^(-1).
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import dynamics
from .dicke import DickeBasis, DickeState, rotate_basis

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class TargetField:
    """Longitudinal field split into known, unknown, and offset parts."""

    known: float = 0.0
    unknown: float = 0.0
    offset: float = 0.0

    @property
    def total(self):
        return self.known + self.unknown + self.offset


@dataclass(frozen=True)
class MetrologyBudget:
    """Time and noise budget of a repeated prepare-sense-read experiment."""

    total_time: float
    t_prep: float = 0.0
    t_sense: float = 0.0
    t_read: float = 0.0
    dephasing_rate: float = 0.0

    def __post_init__(self):
        if min(self.total_time, self.t_prep, self.t_sense, self.t_read) < 0:
            raise ValueError("times must be nonnegative")
        if self.dephasing_rate < 0:
            raise ValueError("dephasing rate must be nonnegative")

    @property
    def shots(self):
        """M = T / (T_prep + T_int + T_read)."""
        cycle = self.t_prep + self.t_sense + self.t_read
        if cycle <= 0:
            raise ValueError("cycle time must be positive to derive shots")
        return self.total_time / cycle


# ---------------------------------------------------------------------------
# Error propagation.
# ---------------------------------------------------------------------------


def error_propagation(std_observable, slope, shots=1):
    """delta = ΔA / (|d<A>/dparam| sqrt(M)); infinite when the slope vanishes."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if slope == 0:
        return np.inf
    return std_observable / (abs(slope) * np.sqrt(shots))


def projection_noise(p):
    """Bernoulli standard deviation sqrt(P(1-P)) of a projection readout."""
    return np.sqrt(max(p * (1.0 - p), 0.0))


@dataclass(frozen=True)
class FdSlope:
    value: float
    cancellation: bool
    suggested_step: float | None = None


def finite_difference_slope(p_plus, p_zero, step):
    """Forward difference (P(delta) - P(0)) / delta with a cancellation guard.

    When the numerator sits below 100 machine epsilons the difference is
    dominated by roundoff; the result is flagged and a larger step suggested.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    diff = p_plus - p_zero
    if abs(diff) < 100 * _EPS:
        return FdSlope(diff / step, True, step * 100)
    return FdSlope(diff / step, False)


def central_difference_slope(p_plus, p_minus, step):
    if step <= 0:
        raise ValueError("step must be positive")
    return (p_plus - p_minus) / (2 * step)


def ideal_survival(hz, n_qubits, t_sense):
    """cos^2(h^z N T_int), the survival probability of the lossless protocol."""
    return np.cos(hz * n_qubits * t_sense) ** 2


def ideal_survival_slope(hz, n_qubits, t_sense):
    """d/dh^z of the ideal survival probability."""
    return -n_qubits * t_sense * np.sin(2 * hz * n_qubits * t_sense)


def calibrate_offset(h_known, n_qubits, t_sense, branch=None):
    """Offset h^z_0 placing the interferometer phase at maximum slope.

    Solves 2 (h_k + h_0) N T_int = (2n + 1) pi/2.  With branch None the
    smallest n >= 0 keeping h_0 >= -h_k is used; since the resulting total
    field is positive that is n = 0.  Larger branches pick higher odd
    multiples of pi/2.
    """
    if t_sense <= 0:
        raise ValueError("t_sense must be positive")
    n = 0 if branch is None else int(branch)
    if n < 0:
        raise ValueError("branch must be nonnegative")
    return (2 * n + 1) * np.pi / (4 * n_qubits * t_sense) - h_known


# ---------------------------------------------------------------------------
# Reference limits (omega convention; divide by 2 for h^z).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitSet:
    hl: float
    sql: float
    hl_min: float | None
    sql_min: float | None
    hl_min_star: float | None


def metrology_limits(n_qubits, shots=1, t_sense=1.0, total_time=None):
    """Heisenberg and standard quantum limits for a phase omega.

    hl = 1/(N sqrt(M) T_int) and sql = 1/sqrt(NM)/T_int.  When a total time
    is supplied the minimized variants 1/(NT), 1/(sqrt(N) T) and the
    statistically honest 1/(N sqrt(T_int T)) are filled in as well.
    """
    if n_qubits < 1 or shots < 1 or t_sense <= 0:
        raise ValueError("need n_qubits >= 1, shots >= 1, t_sense > 0")
    hl = 1.0 / (n_qubits * np.sqrt(shots) * t_sense)
    sql = 1.0 / (np.sqrt(n_qubits * shots) * t_sense)
    if total_time is None:
        return LimitSet(hl, sql, None, None, None)
    return LimitSet(
        hl,
        sql,
        1.0 / (n_qubits * total_time),
        1.0 / (np.sqrt(n_qubits) * total_time),
        1.0 / (n_qubits * np.sqrt(t_sense * total_time)),
    )


# ---------------------------------------------------------------------------
# Dephasing (quadratic-in-time phase noise with rate Gamma).
# ---------------------------------------------------------------------------


def ghz_dephasing_uncertainty(n_qubits, gamma, t_sense, total_time, t_prep=0.0, t_read=0.0):
    """GHZ-scheme h^z uncertainty under dephasing for a given sensing time.

    sqrt(T_prep + T_int + T_read) e^{Gamma^2 N T_int^2 / 2} / (2 N T_int sqrt(T)).
    """
    cycle = t_prep + t_sense + t_read
    return (
        np.sqrt(cycle)
        * np.exp(gamma**2 * n_qubits * t_sense**2 / 2)
        / (2 * n_qubits * t_sense * np.sqrt(total_time))
    )


def sql_dephasing_uncertainty(n_qubits, gamma, t_sense, total_time):
    """Uncorrelated-ensemble reference with negligible prep/read time."""
    return np.exp(gamma**2 * t_sense**2 / 2) / (
        2 * np.sqrt(n_qubits * t_sense * total_time)
    )


def sql_dephasing_min(n_qubits, gamma, total_time):
    """(2 e Gamma^2)^{1/4} / (2 sqrt(NT)), the minimized dephased SQL."""
    return (2 * np.e * gamma**2) ** 0.25 / (2 * np.sqrt(n_qubits * total_time))


def zeno_limit(n_qubits, gamma, total_time):
    """(2 e Gamma^2)^{1/4} / (2 N^{3/4} sqrt(T))."""
    return (2 * np.e * gamma**2) ** 0.25 / (
        2 * n_qubits**0.75 * np.sqrt(total_time)
    )


def optimal_sense_time(n_qubits, gamma, prep_read_negligible=True):
    """Sensing time minimizing the GHZ-scheme dephased uncertainty.

    T_int^2 = 1/(2 Gamma^2 N) when preparation and readout are negligible;
    T_int^2 = 1/(Gamma^2 N) when they dominate the cycle time.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive for a finite optimum")
    scale = 2.0 if prep_read_negligible else 1.0
    return 1.0 / (gamma * np.sqrt(scale * n_qubits))


@dataclass(frozen=True)
class DephasingAnalysis:
    regime: str  # "zeno", "slow-prep", or "noiseless"
    sql_deph_min: float
    t_sense_opt: float
    ghz_min: float
    zeno: float
    t_sense_grid: np.ndarray | None = None
    delta_h_curve: np.ndarray | None = None


def dephasing_analysis(
    n_qubits, gamma, total_time, t_prep=0.0, t_read=0.0, t_sense_grid=None
):
    """Dephased uncertainty analysis of the GHZ scheme against the SQL.

    With gamma = 0 the analysis degenerates to the noiseless minimized
    limits (sensing fills the whole budget).
    """
    if gamma < 0 or total_time <= 0:
        raise ValueError("need gamma >= 0 and total_time > 0")
    if gamma == 0:
        hl_min_h = 1.0 / (2 * n_qubits * total_time)
        sql_min_h = 1.0 / (2 * np.sqrt(n_qubits) * total_time)
        return DephasingAnalysis("noiseless", sql_min_h, total_time, hl_min_h, hl_min_h)
    fast = (t_prep + t_read) == 0
    t_opt = optimal_sense_time(n_qubits, gamma, prep_read_negligible=fast)
    ghz_min = ghz_dephasing_uncertainty(n_qubits, gamma, t_opt, total_time, t_prep, t_read)
    curve = None
    grid = None
    if t_sense_grid is not None:
        grid = np.asarray(t_sense_grid, dtype=float)
        curve = np.array(
            [
                ghz_dephasing_uncertainty(n_qubits, gamma, t, total_time, t_prep, t_read)
                for t in grid
            ]
        )
    return DephasingAnalysis(
        "zeno" if fast else "slow-prep",
        sql_dephasing_min(n_qubits, gamma, total_time),
        t_opt,
        ghz_min,
        zeno_limit(n_qubits, gamma, total_time),
        grid,
        curve,
    )


@dataclass(frozen=True)
class WindowResult:
    gamma_c: float
    n_values: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    window: np.ndarray  # N values where the entangled scheme beats the SQL


def sql_beating_window(gamma_c, n_values=None):
    """Even system sizes where Gamma C N^{7/6} < (sqrt(2)/e) N^{1/2} - 1.

    This is the condition for the dephased GHZ scheme with adiabatic-scaling
    prep/read time to beat the minimized dephased SQL.
    """
    if gamma_c < 0:
        raise ValueError("gamma_c must be nonnegative")
    if n_values is None:
        n_values = np.arange(2, 2001, 2)
    n_values = np.asarray(n_values)
    lhs = gamma_c * n_values ** (7.0 / 6.0)
    rhs = (np.sqrt(2) / np.e) * np.sqrt(n_values) - 1.0
    return WindowResult(gamma_c, n_values, lhs, rhs, n_values[lhs < rhs])


# ---------------------------------------------------------------------------
# Finite-duration time budgets.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TimeBudget:
    variant: str
    n_qubits: int
    t_ramp: float  # T_a; prep and read each take one T_a
    total_time: float
    t_sense: float
    eta: float  # improvement over the minimized SQL
    eta_prime: float  # fraction of the relevant minimized Heisenberg limit
    tint_threshold: float  # sensing time needed to beat the minimized SQL
    beats_sql: bool


def time_budget(n_qubits, c, epsilon, c_tilde=None, variant="main"):
    """Scaling budget with adiabatic prep/read time 2 T_a = C N^{2/3}.

    variant "main" uses a total time T = C~ N^{2/3} densely repeated
    (M = T / (T_int + 2 T_a)), sensing time sqrt(C C~) N^{1/6 + eps}, and

        eta  = sqrt(N T_int^2 / (T (T_int + 2 T_a))),
        eta' = sqrt(T_int / (T_int + 2 T_a)).

    variant "single-shot" spends the whole budget once (T_int = T - 2 T_a,
    M = 1) with sensing time C N^{1/6 + eps} and the unsquared ratios
    eta = sqrt(N) T_int / (T_int + 2 T_a), eta' = T_int / (T_int + 2 T_a).
    eta > 1 marks beating the minimized SQL; eps = 1/2 reaches the
    Heisenberg-limit scaling (eta' = 1/2 exactly in the single-shot
    accounting).
    """
    if not 0 <= epsilon <= 0.5:
        raise ValueError("epsilon must lie in [0, 1/2]")
    if c <= 0:
        raise ValueError("C must be positive")
    t_ramp = c * n_qubits ** (2.0 / 3.0) / 2
    if variant == "main":
        if c_tilde is None or c_tilde <= 0:
            raise ValueError("main variant needs a positive C~")
        total = c_tilde * n_qubits ** (2.0 / 3.0)
        t_sense = np.sqrt(c * c_tilde) * n_qubits ** (1.0 / 6.0 + epsilon)
        eta = np.sqrt(n_qubits * t_sense**2 / (total * (t_sense + 2 * t_ramp)))
        eta_prime = np.sqrt(t_sense / (t_sense + 2 * t_ramp))
        threshold = total / (2 * n_qubits) + np.sqrt(
            2 * t_ramp * total / n_qubits + (total / (2 * n_qubits)) ** 2
        )
    elif variant == "single-shot":
        t_sense = c * n_qubits ** (1.0 / 6.0 + epsilon)
        total = t_sense + 2 * t_ramp
        eta = np.sqrt(n_qubits) * t_sense / (t_sense + 2 * t_ramp)
        eta_prime = t_sense / (t_sense + 2 * t_ramp)
        root_n = np.sqrt(n_qubits)
        threshold = 2 * t_ramp / root_n / (1 - 1 / root_n)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return TimeBudget(
        variant,
        n_qubits,
        float(t_ramp),
        float(total),
        float(t_sense),
        float(eta),
        float(eta_prime),
        float(threshold),
        bool(eta > 1),
    )


# ---------------------------------------------------------------------------
# Adiabatic time scale of the prep/read ramps.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdiabaticEstimate:
    cbar: float  # dimensionless ramp constant
    jn_c: float  # JN C = (h0x/JN) cbar
    t_prep: float  # from 2 JN T_prep ~ eps^{-4/3} (h0x/JN) N^{2/3}


def adiabatic_ramp_constant(ground_probability):
    """Dimensionless ramp constant C-bar = eps^{-4/3} / 2.

    eps^2 is the excited-state weight tolerated at the end of a linear ramp,
    so requiring 95% ground-state probability gives C-bar ~ 3.68 and 99%
    gives ~ 10.8.
    """
    if not 0 <= ground_probability < 1:
        raise ValueError("ground-state probability must lie in [0, 1)")
    eps = np.sqrt(1 - ground_probability)
    return eps ** (-4.0 / 3.0) / 2


def adiabatic_time_estimate(h0x_over_jn, ground_probability, n_qubits, jn=1.0):
    """Ramp constant and preparation-time estimate for a linear ramp."""
    cbar = adiabatic_ramp_constant(ground_probability)
    eps = np.sqrt(1 - ground_probability)
    t_prep = eps ** (-4.0 / 3.0) * h0x_over_jn * n_qubits ** (2.0 / 3.0) / (2 * jn)
    return AdiabaticEstimate(float(cbar), float(h0x_over_jn * cbar), float(t_prep))


# ---------------------------------------------------------------------------
# Global-magnetization (S_Z) readout of the two-level protocol state.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SzReadout:
    expectation: float
    deviation: float
    delta_h: float
    delta_h_closed: float | None = None


def ideal_readout_state(n_qubits, hz, t_sense, alpha=0.0):
    """The post-protocol state cos(theta)|psi0(inf)> + e^{i alpha} sin(theta)|phi0(inf)>.

    theta = h^z N T_int.  alpha is quoted in the gauge where alpha = 0
    maximizes <S_Z>; relative phases are convention dependent while all
    probabilities are not.
    """
    theta = hz * n_qubits * t_sense
    amp = np.zeros(n_qubits + 1, dtype=complex)
    amp[0] = np.cos(theta)
    # the sign makes <S_Z> = +(sqrt(N)/2) cos(alpha) sin(2 theta) at alpha = 0
    amp[1] = -np.exp(1j * alpha) * np.sin(theta)
    return DickeState(DickeBasis(n_qubits, "X"), amp)


def sz_readout_ideal(n_qubits, hz, t_sense, alpha=0.0, shots=1):
    """Closed-form S_Z readout statistics of the ideal two-level state.

    The exact matrix elements between the top two X eigenstates give
    <S_Z> = (sqrt(N)/2) cos(alpha) sin(2 h N T) and second moment
    cos^2(theta) N/4 + sin^2(theta) (3N - 2)/4.  ``delta_h_closed`` is the
    two-level reference form 1/(2 N sqrt(M) T |cos(alpha) cos(2 h N T)|),
    which exposes the limited dynamic range: the slope carries cos(2hNT),
    so the estimator diverges at the phase quadrature points and whenever
    the ramp phase alpha is not compensated.
    """
    theta = hz * n_qubits * t_sense
    root_n = np.sqrt(n_qubits)
    exp_sz = (root_n / 2) * np.cos(alpha) * np.sin(2 * theta)
    second = (
        np.cos(theta) ** 2 * n_qubits / 4
        + np.sin(theta) ** 2 * (3 * n_qubits - 2) / 4
    )
    std = np.sqrt(max(second - exp_sz**2, 0.0))
    slope = (root_n / 2) * np.cos(alpha) * 2 * n_qubits * t_sense * np.cos(2 * theta)
    delta_h = error_propagation(std, slope, shots)
    denom = abs(np.cos(alpha) * np.cos(2 * theta))
    closed = (
        np.inf
        if denom == 0
        else 1.0 / (2 * n_qubits * np.sqrt(shots) * t_sense * denom)
    )
    return SzReadout(float(exp_sz), float(std), float(delta_h), float(closed))


def sz_readout_state(state, slope=None, shots=1):
    """Numerically exact S_Z statistics of an arbitrary DickeState.

    S_Z is diagonal in the Z basis, so moments are plain weighted sums.  A
    known d<S_Z>/dh^z must be supplied to turn the deviation into an
    uncertainty; otherwise ``delta_h`` is reported as infinite.
    """
    state_z = rotate_basis(state, "Z")
    m = state_z.basis.m_values
    w = np.abs(state_z.amplitudes) ** 2
    exp_sz = float(np.sum(m * w))
    second = float(np.sum(m**2 * w))
    std = np.sqrt(max(second - exp_sz**2, 0.0))
    delta_h = np.inf if slope is None else error_propagation(std, slope, shots)
    return SzReadout(exp_sz, float(std), float(delta_h))


# ---------------------------------------------------------------------------
# Survival probability from sector overlaps and the slope lower bound.
# ---------------------------------------------------------------------------


def _check_overlaps(overlaps):
    g = np.asarray(overlaps, dtype=complex)
    total = np.sum(np.abs(g) ** 2)
    if abs(total - 1) > 1e-8:
        raise ValueError(f"overlap weights must sum to 1, got {total}")
    return g


def survival_from_overlaps(overlaps, hz, n_qubits, t_sense):
    """P = |sum_n |g_n|^2 e^{i gamma_n} cos(h^z (N - 2n) T_int)|^2.

    ``overlaps`` are the complex amplitudes g_n of the initial state on the
    even-sector eigenstates; their phases are the gamma_n.
    """
    g = _check_overlaps(overlaps)
    n_idx = np.arange(len(g))
    w = np.abs(g) * g  # |g_n|^2 e^{i gamma_n}
    phases = np.cos(hz * (n_qubits - 2 * n_idx) * t_sense)
    return float(abs(np.sum(w * phases)) ** 2)


def survival_slope_from_overlaps(overlaps, hz, n_qubits, t_sense):
    """Analytic d/dh^z of survival_from_overlaps."""
    g = _check_overlaps(overlaps)
    n_idx = np.arange(len(g))
    w = np.abs(g) * g
    freq = (n_qubits - 2 * n_idx) * t_sense
    s = np.sum(w * np.cos(hz * freq))
    ds = np.sum(w * (-freq * np.sin(hz * freq)))
    return float(2 * np.real(np.conj(s) * ds))


def slope_lower_bound(g0_sq, hz, n_qubits, t_sense):
    """N T_int (2|g_0|^4 - 1) sin(2 h^z N T_int); meaningful for |g_0|^4 > 1/2."""
    return (
        n_qubits
        * t_sense
        * (2 * g0_sq**2 - 1)
        * np.sin(2 * hz * n_qubits * t_sense)
    )


@dataclass(frozen=True)
class BoundCheck:
    slope_abs: float
    bound: float
    satisfied: bool
    trivial: bool  # |g_0|^4 <= 1/2: only the vacuous bound delta_h <= inf holds
    delta_h_bound: float


def check_uncertainty_bound(overlaps, hz, n_qubits, t_sense, shots=1):
    """Verify |dP/dh^z| >= N T (2|g_0|^4 - 1) sin(2 h N T) on one instance.

    Requires 0 <= 2 h^z N T_int <= pi/2.  When |g_0|^4 <= 1/2 the bound is
    reported as trivial (infinite uncertainty bound) and counts as satisfied.
    """
    phase = 2 * hz * n_qubits * t_sense
    if not 0 <= phase <= np.pi / 2 + 1e-12:
        raise ValueError(f"need 0 <= 2 h N T <= pi/2, got {phase}")
    g = _check_overlaps(overlaps)
    g0_sq = abs(g[0]) ** 2
    slope = abs(survival_slope_from_overlaps(g, hz, n_qubits, t_sense))
    bound = slope_lower_bound(g0_sq, hz, n_qubits, t_sense)
    trivial = g0_sq**2 <= 0.5
    if trivial or bound <= 0:
        return BoundCheck(slope, bound, True, trivial, np.inf)
    delta_h = 1.0 / (2 * np.sqrt(shots) * bound)  # uses sqrt(P(1-P)) <= 1/2
    return BoundCheck(slope, bound, bool(slope >= bound - 1e-12), trivial, delta_h)


def delta_h_bound_cooled(g0_sq, hz, n_qubits, t_sense, shots=1):
    """Upper uncertainty bound 1/(2 N sqrt(M) T |g_0|^2 |sin(2 h N T)|).

    This is the cooled-preparation variant, where the probe starts in the
    finite-field ground state and P = |g_0|^2 cos^2(h N T).
    """
    denom = (
        2
        * n_qubits
        * np.sqrt(shots)
        * t_sense
        * g0_sq
        * abs(np.sin(2 * hz * n_qubits * t_sense))
    )
    return np.inf if denom == 0 else 1.0 / denom


def random_overlap_instances(n_qubits, count, seed):
    """Seeded random (overlaps, h^z, T_int) triples satisfying the bound's
    preconditions: |g_0|^4 > 1/2, unit weight, and 0 <= 2 h N T <= pi/2."""
    rng = np.random.default_rng(seed)
    n_levels = n_qubits // 2 + 1
    out = []
    for _ in range(count):
        g0_sq = rng.uniform(2**-0.5, 1.0)
        rest = rng.dirichlet(np.ones(n_levels - 1)) * (1 - g0_sq)
        weights = np.concatenate([[g0_sq], rest])
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, n_levels))
        overlaps = np.sqrt(weights) * phases
        t_sense = rng.uniform(0.1, 10.0)
        theta = rng.uniform(0, np.pi / 2)
        hz = theta / (2 * n_qubits * t_sense)
        out.append((overlaps, hz, t_sense))
    return out


@dataclass(frozen=True)
class BoundSample:
    checked: int
    violations: int
    min_margin: float  # smallest slope_abs - bound over nontrivial draws


def verify_bound_samples(n_qubits, count, seed):
    """Monte-Carlo check of the slope lower bound on seeded random instances."""
    violations = 0
    min_margin = np.inf
    for overlaps, hz, t_sense in random_overlap_instances(n_qubits, count, seed):
        res = check_uncertainty_bound(overlaps, hz, n_qubits, t_sense)
        if not res.satisfied:
            violations += 1
        if not res.trivial:
            min_margin = min(min_margin, res.slope_abs - res.bound)
    return BoundSample(count, violations, float(min_margin))


# ---------------------------------------------------------------------------
# Sensing-time sweep of the simulated protocol.
# ---------------------------------------------------------------------------


def time_unit(n_qubits, interaction):
    """(2 J N^2)^(-1), the paper-style time unit."""
    return 1.0 / (2 * interaction * n_qubits**2)


def default_sense_grid(n_qubits, interaction):
    """Sensing times (2 J N^2) T_int = 1, 3, ..., 199."""
    return np.arange(1, 200, 2) * time_unit(n_qubits, interaction)


@dataclass(frozen=True)
class TintSweep:
    n_qubits: int
    interaction: float
    t_ramp: float
    t_sense: np.ndarray
    offsets: np.ndarray  # total longitudinal field per point
    survival: np.ndarray
    slope: np.ndarray
    delta_h: np.ndarray
    hl: np.ndarray  # Heisenberg limit for h^z, 1/(2 N sqrt(M) T_int)
    sql: np.ndarray  # SQL for h^z, 1/(2 sqrt(NM) T_int)
    p_values: np.ndarray  # 1 / (2 N T_int delta_h), nan where excluded
    p_mean: float
    p_std: float
    excluded: int  # divergent (zero-slope) points left out of the average
    cancellation_flags: int


def tint_sweep(
    n_qubits,
    t_ramp,
    tint_grid=None,
    interaction=None,
    h0x=None,
    offset_policy="paper",
    h_known=0.0,
    fd_step=1e-10,
    ramp_steps=4000,
    kind="cosine-sine",
    shots=None,
):
    """Estimation uncertainty of the simulated protocol over sensing times.

    For each T_int the longitudinal offset is applied, the protocol survival
    probability is evaluated at h^z_u = 0 and h^z_u = fd_step, and the
    uncertainty follows from error propagation with Bernoulli readout noise.
    With shots None the per-shot convention is used (sqrt(M) omitted).

    offset_policy "paper" holds the total field at (pi/2) JN, which sits at
    an odd multiple of pi/2 in interferometer phase for every odd grid point
    (2 J N^2) T_int = 1, 3, ...; "calibrated" re-solves the offset per point
    on the lowest branch.  The index p = 1/(2 N T_int delta_h) measures the
    distance to the Heisenberg limit (p = 1).

    Divergent points (vanishing slope) are excluded from the p average and
    counted in ``excluded``.
    """
    interaction = 1.0 / n_qubits if interaction is None else interaction
    jn = interaction * n_qubits
    h0x = jn if h0x is None else h0x
    grid = (
        default_sense_grid(n_qubits, interaction)
        if tint_grid is None
        else np.asarray(tint_grid, dtype=float)
    )
    if grid.size == 0 or np.any(grid <= 0):
        raise ValueError("sensing-time grid must be positive and nonempty")
    m_shots = 1 if shots is None else shots

    kernel = dynamics.protocol_kernel(
        n_qubits, interaction, h0x, t_ramp, kind=kind, ramp_steps=ramp_steps
    )
    offsets = np.empty_like(grid)
    survival = np.empty_like(grid)
    slope = np.empty_like(grid)
    delta_h = np.empty_like(grid)
    p_values = np.full_like(grid, np.nan)
    excluded = 0
    cancellations = 0
    for i, t in enumerate(grid):
        if offset_policy == "paper":
            h_tot = (np.pi / 2) * jn
        elif offset_policy == "calibrated":
            h_tot = h_known + calibrate_offset(h_known, n_qubits, t)
        else:
            raise ValueError(f"unknown offset policy {offset_policy!r}")
        offsets[i] = h_tot
        p0 = kernel.survival(t, h_tot)
        p1 = kernel.survival(t, h_tot + fd_step)
        fd = finite_difference_slope(p1, p0, fd_step)
        if fd.cancellation:
            cancellations += 1
        survival[i] = p0
        slope[i] = fd.value
        dh = error_propagation(projection_noise(p0), fd.value, m_shots)
        delta_h[i] = dh
        if np.isfinite(dh) and dh > 0:
            p_values[i] = 1.0 / (2 * n_qubits * t * dh)
        else:
            excluded += 1
    included = p_values[np.isfinite(p_values)]
    if excluded:
        warnings.warn(
            f"{excluded} divergent grid points excluded from the p average",
            stacklevel=2,
        )
    hl = 1.0 / (2 * n_qubits * np.sqrt(m_shots) * grid)
    sql = 1.0 / (2 * np.sqrt(n_qubits * m_shots) * grid)
    return TintSweep(
        n_qubits=n_qubits,
        interaction=interaction,
        t_ramp=t_ramp,
        t_sense=grid,
        offsets=offsets,
        survival=survival,
        slope=slope,
        delta_h=delta_h,
        hl=hl,
        sql=sql,
        p_values=p_values,
        p_mean=float(np.mean(included)) if included.size else np.nan,
        p_std=float(np.std(included)) if included.size else np.nan,
        excluded=excluded,
        cancellation_flags=cancellations,
    )
