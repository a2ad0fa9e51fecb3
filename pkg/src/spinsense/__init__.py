"""Collective-spin simulation of GHZ-state metrology with symmetry-protected
adiabatic transverse-field ramps in the infinite-range Ising model."""

from .dicke import (
    CollectiveOperator,
    DickeBasis,
    DickeState,
    basis_state,
    collective_operators,
    ghz_state,
    parity_operator,
    rotate_basis,
    rotation_matrix,
    x_polarized_state,
)
from .dynamics import (
    ConvergenceError,
    ProtocolKernel,
    ProtocolResult,
    RampScan,
    Schedule,
    Segment,
    cosine_ramp_down,
    hold,
    linear_ramp,
    local_maxima,
    propagate,
    propagate_converged,
    protocol_kernel,
    run_protocol,
    scan_ramp_time,
    select_optimum,
    sine_ramp_up,
)
from .metrology import (
    AdiabaticEstimate,
    BoundCheck,
    DephasingAnalysis,
    LimitSet,
    MetrologyBudget,
    SzReadout,
    TargetField,
    TimeBudget,
    TintSweep,
    WindowResult,
    adiabatic_ramp_constant,
    adiabatic_time_estimate,
    calibrate_offset,
    check_uncertainty_bound,
    default_sense_grid,
    dephasing_analysis,
    error_propagation,
    finite_difference_slope,
    ghz_dephasing_uncertainty,
    ideal_readout_state,
    ideal_survival,
    ideal_survival_slope,
    metrology_limits,
    optimal_sense_time,
    projection_noise,
    sql_beating_window,
    sql_dephasing_min,
    survival_from_overlaps,
    survival_slope_from_overlaps,
    sz_readout_ideal,
    sz_readout_state,
    time_budget,
    time_unit,
    tint_sweep,
    verify_bound_samples,
    zeno_limit,
)
from .model import (
    GapMinimum,
    GapScaling,
    ModelParams,
    SpectrumData,
    build_hamiltonian,
    critical_gap,
    even_gap_at,
    gap_scaling,
    ground_overlap,
    minimum_gap,
    parity_resolved_spectrum,
)

__version__ = "0.1.0"
