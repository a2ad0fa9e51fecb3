"""Propagator correctness, symmetry protection, and protocol dynamics."""

import numpy as np
import pytest

from spinsense import (
    ConvergenceError,
    DickeBasis,
    DickeState,
    ModelParams,
    Schedule,
    basis_state,
    cosine_ramp_down,
    ghz_state,
    hold,
    linear_ramp,
    local_maxima,
    parity_operator,
    parity_resolved_spectrum,
    propagate,
    propagate_converged,
    protocol_kernel,
    run_protocol,
    scan_ramp_time,
    select_optimum,
    sine_ramp_up,
    x_polarized_state,
)
from spinsense.metrology import time_unit

from conftest import brute_force_ramp, symmetric_isometry


def test_segment_validation():
    with pytest.raises(ValueError):
        cosine_ramp_down(1.0, 0.0)
    with pytest.raises(ValueError):
        Schedule(())
    with pytest.raises(ValueError):
        # discontinuous field across the boundary
        Schedule((cosine_ramp_down(1.0, 1.0), hold(0.5, 1.0)))
    sched = Schedule((cosine_ramp_down(2.0, 4.0), hold(0.0, 1.0), sine_ramp_up(2.0, 4.0)))
    assert sched.total_duration == pytest.approx(9.0)
    assert sched.field(0.0) == pytest.approx(2.0)
    assert sched.field(4.5) == pytest.approx(0.0)
    assert sched.field(9.0) == pytest.approx(2.0)


def test_segment_profiles():
    ta = 3.0
    down = cosine_ramp_down(1.5, ta)
    up = sine_ramp_up(1.5, ta)
    t = 1.234
    assert down.field_at(t) == pytest.approx(1.5 * np.cos(np.pi * t / (2 * ta)))
    assert up.field_at(t) == pytest.approx(1.5 * np.sin(np.pi * t / (2 * ta)))
    lin = linear_ramp(2.0, 1.0, 4.0)
    assert lin.field_at(1.0) == pytest.approx(1.75)


def test_stationary_state_picks_up_phase_only():
    # h^x = 0 keeps the Hamiltonian diagonal: |N/2, N/2>_Z is stationary.
    n, j = 4, 0.25
    state = basis_state(DickeBasis(n, "Z"), 0)
    out = propagate(state, Schedule((hold(0.0, 2.3),)), j)
    overlap = state.overlap(out)
    assert abs(abs(overlap) - 1) < 1e-12
    # e^{-iEt} with E = -2J (N/2)^2
    expected = np.exp(-1j * (-2 * j * (n / 2) ** 2) * 2.3)
    assert abs(overlap - expected) < 1e-12


def test_sensing_phase_accumulation_matches_closed_form():
    # At h^x = 0 with h^z on, the GHZ pair turns into the two-component
    # readout superposition with relative weight cos/sin(h N T).
    n, j, hz, t = 6, 1.0 / 6, 0.37, 1.9
    psi0 = ghz_state(n, +1)
    out = propagate(psi0, Schedule((hold(0.0, t),)), j, hz=hz)
    c_even = out.overlap(ghz_state(n, +1))
    c_odd = out.overlap(ghz_state(n, -1))
    assert abs(c_even) == pytest.approx(abs(np.cos(hz * n * t)), abs=1e-12)
    assert abs(c_odd) == pytest.approx(abs(np.sin(hz * n * t)), abs=1e-12)


def test_integrator_matches_exact_sensing():
    # The stepped integrator agrees with the exact diagonal evolution.
    n, j, hz, t = 4, 0.25, 0.21, 1.3
    amp = np.arange(1.0, n + 2) + 0.3j
    state = DickeState(DickeBasis(n, "Z"), amp / np.linalg.norm(amp))
    exact = propagate(state, Schedule((hold(0.0, t),)), j, hz=hz)
    # force stepped evolution through a linear "ramp" at zero field
    stepped = propagate(state, Schedule((linear_ramp(0.0, 0.0, t),)), j, hz=hz,
                        steps_per_unit=2000 / t)
    assert np.abs(exact.amplitudes - stepped.amplitudes).max() < 1e-12


@pytest.mark.parametrize("n", [2, 4])
def test_brute_force_oracle_agreement(n):
    # Full 2^N propagation of the symmetric initial state vs the collective
    # propagator, through half a cosine ramp with the longitudinal field on.
    j, h0, hz, duration, steps = 1.0 / n, 1.0, 0.15, 2.0, 3000
    q = symmetric_isometry(n)
    psi_full = q @ x_polarized_state(n, axis="Z").amplitudes
    ref = brute_force_ramp(
        n, j, lambda t: h0 * np.cos(np.pi * t / (2 * duration)), duration, hz,
        psi_full, steps,
    )
    ours = propagate(
        x_polarized_state(n, axis="Z"),
        Schedule((cosine_ramp_down(h0, duration),)),
        j,
        hz=hz,
        steps_per_unit=steps / duration,
    )
    fidelity = abs(np.vdot(q @ ours.amplitudes, ref)) ** 2
    assert fidelity > 1 - 1e-8


def test_norm_and_parity_conservation():
    n = 10
    sched = Schedule(
        (cosine_ramp_down(1.0, 5.0), hold(0.0, 1.0), sine_ramp_up(1.0, 5.0))
    )
    pi = parity_operator(DickeBasis(n, "Z"))
    rng = np.random.default_rng(7)
    amp = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    state = DickeState(DickeBasis(n, "Z"), amp / np.linalg.norm(amp))
    out = propagate(state, sched, 1.0 / n, steps_per_unit=500)
    assert abs(out.norm - 1) < 1e-12
    assert abs(out.expectation(pi) - state.expectation(pi)) < 1e-12


def test_propagate_rejects_unnormalized_input():
    n = 4
    state = DickeState(DickeBasis(n, "Z"), np.ones(n + 1))
    with pytest.raises(ValueError):
        propagate(state, Schedule((hold(0.0, 1.0),)), 0.25)


def test_step_halving_convergence():
    # survival probability settles monotonically under step doubling
    n, j = 8, 1.0 / 8
    sched = Schedule((cosine_ramp_down(1.0, 3.0),))
    state = x_polarized_state(n, axis="Z")
    ref = x_polarized_state(n, axis="Z")
    steps = [200, 400, 800, 1600, 3200]
    surv = [
        propagate(state, sched, j, steps_per_unit=s / 3.0).fidelity(ref) for s in steps
    ]
    deltas = np.abs(np.diff(surv))
    assert np.all(np.diff(deltas) < 0)
    out, info = propagate_converged(state, sched, j, tol=1e-9,
                                    base_steps_per_unit=2000 / 3.0)
    assert info.survival_delta < 1e-9
    assert abs(out.fidelity(ref) - surv[-1]) < 1e-6


def test_propagate_converged_reports_failure():
    n, j = 8, 1.0 / 8
    sched = Schedule((cosine_ramp_down(1.0, 3.0),))
    state = x_polarized_state(n, axis="Z")
    with pytest.raises(ConvergenceError):
        propagate_converged(state, sched, j, tol=1e-16,
                            base_steps_per_unit=10.0, max_doublings=2)


def test_protocol_headline_fidelities():
    # N=10, JN=1, cosine/sine ramps at T_a = 150 (2JN^2)^-1.
    n, j = 10, 0.1
    ta = 150 * time_unit(n, j)
    res = run_protocol(n, j, 1.0, ta, 0.0, 0.0, steps_per_ramp=3000)
    assert res.fidelity_to_ghz == pytest.approx(0.97, abs=0.01)
    assert res.fidelity_to_initial == pytest.approx(0.91, abs=0.01)
    assert res.survival_probability == pytest.approx(res.fidelity_to_initial, abs=1e-12)


def test_adiabatic_round_trip():
    # Cooled preparation: ramps from the finite-field ground state return to
    # it.  (With the projected strong-field start the return probability
    # saturates near |g_0|^4 instead; that imperfection is the point of the
    # finite-field analysis.)
    n, j = 4, 0.25
    ta = 2400 * time_unit(n, j)
    cooled = parity_resolved_spectrum(ModelParams(n, j, 2.0)).even_states[0]
    res = run_protocol(n, j, 2.0, ta, 0.0, 0.0, initial_state=cooled,
                       steps_per_ramp=20000)
    assert res.fidelity_to_initial >= 1 - 1e-3


def test_ideal_protocol_survival_cosine_squared():
    # In the adiabatic limit the matched ground-state interferometer shows
    # the full-contrast fringe P = cos^2(h^z N T_int).
    n, j = 4, 0.25
    unit = time_unit(n, j)
    cooled = parity_resolved_spectrum(ModelParams(n, j, 2.0)).even_states[0]
    kernel = protocol_kernel(n, j, 2.0, 2400 * unit, ramp_steps=20000,
                             initial_state=cooled, readout_state=cooled)
    for hz, tu in [(0.4, 3), (0.7, 11)]:
        t_sense = tu * unit
        assert kernel.survival(t_sense, hz) == pytest.approx(
            np.cos(hz * n * t_sense) ** 2, abs=1e-3
        )


def test_cooled_start_strong_field_survival_is_damped_fringe():
    # Projecting the cooled-start protocol back onto |N/2, N/2>_X gives the
    # reduced-contrast fringe |g_0|^2 cos^2(h N T).
    from spinsense import ground_overlap

    n, j = 4, 0.25
    unit = time_unit(n, j)
    cooled = parity_resolved_spectrum(ModelParams(n, j, 2.0)).even_states[0]
    g0_sq = ground_overlap(n, [2.0])[0]
    hz, t_sense = 0.5, 7 * unit
    res = run_protocol(n, j, 2.0, 2400 * unit, t_sense, hz,
                       initial_state=cooled, steps_per_ramp=20000)
    assert res.survival_probability == pytest.approx(
        g0_sq * np.cos(hz * n * t_sense) ** 2, abs=2e-3
    )


def test_protocol_parity_protection_and_cooled_start():
    n, j = 8, 1.0 / 8
    ta = 50 * time_unit(n, j)
    # cooled first-approach start: the finite-field ground state
    start = parity_resolved_spectrum(ModelParams(n, j, 1.0)).even_states[0]
    res = run_protocol(n, j, 1.0, ta, 0.0, 0.0, initial_state=start,
                       steps_per_ramp=2000)
    pi = parity_operator(DickeBasis(n, "Z"))
    assert res.final_state.expectation(pi) == pytest.approx(
        start.expectation(pi), abs=1e-12
    )
    assert res.fidelity_to_initial == pytest.approx(res.survival_probability, abs=0.2)


def test_protocol_sx_observable():
    n, j = 4, 0.25
    res = run_protocol(n, j, 1.0, 10 * time_unit(n, j), 0.0, 0.0,
                       steps_per_ramp=500, observable="sx")
    assert res.expectation <= n / 2 + 1e-9
    assert res.variance >= -1e-9


def test_scan_ramp_time_headline_and_oscillations():
    n, j = 10, 0.1
    unit = time_unit(n, j)
    taus = np.arange(120.0, 200.0)
    scan = scan_ramp_time(n, j, 1.0, taus * unit, ramp_steps=2000)
    # a local optimum sits at T_a = 150 (2JN^2)^-1 with ~0.97 GHZ fidelity
    ta_opt, fid = select_optimum(scan, 150 * unit)
    assert ta_opt / unit == pytest.approx(150, abs=2)
    assert fid == pytest.approx(0.967, abs=0.005)
    # interference makes the curves oscillate: several local maxima
    wide = scan_ramp_time(n, j, 1.0, np.arange(1.0, 301.0) * unit, ramp_steps=1500)
    assert len(wide.optima) >= 3
    with pytest.raises(ValueError):
        scan_ramp_time(n, j, 1.0, np.array([]))


def test_scan_matches_run_protocol():
    n, j = 6, 1.0 / 6
    unit = time_unit(n, j)
    taus = np.array([40.0, 80.0])
    scan = scan_ramp_time(n, j, 1.0, taus * unit, ramp_steps=2000)
    for i, tau in enumerate(taus):
        res = run_protocol(n, j, 1.0, tau * unit, 0.0, 0.0, steps_per_ramp=2000)
        assert scan.ghz_fidelity[i] == pytest.approx(res.fidelity_to_ghz, abs=1e-9)
        assert scan.return_fidelity[i] == pytest.approx(
            res.fidelity_to_initial, abs=1e-9
        )


def test_local_maxima_detection():
    y = np.array([0.0, 1.0, 0.5, 0.7, 0.2])
    opts = local_maxima(np.arange(5.0), y)
    assert opts == ((1.0, 1.0), (3.0, 0.7))


def test_kernel_matches_run_protocol():
    n, j = 8, 1.0 / 8
    unit = time_unit(n, j)
    ta = 100 * unit
    kernel = protocol_kernel(n, j, 1.0, ta, ramp_steps=2000)
    for tau, hz in [(5.0, 0.3), (27.0, np.pi / 2)]:
        res = run_protocol(n, j, 1.0, ta, tau * unit, hz, steps_per_ramp=2000)
        assert kernel.survival(tau * unit, hz) == pytest.approx(
            res.survival_probability, abs=1e-8
        )


def test_kernel_analytic_slope_matches_finite_difference():
    n, j = 6, 1.0 / 6
    unit = time_unit(n, j)
    kernel = protocol_kernel(n, j, 1.0, 60 * unit, ramp_steps=1500)
    t, hz, eps = 11 * unit, 0.8, 1e-7
    fd = (kernel.survival(t, hz + eps) - kernel.survival(t, hz - eps)) / (2 * eps)
    assert kernel.survival_slope(t, hz) == pytest.approx(fd, rel=1e-5)


def test_linear_schedule_kind():
    n, j = 6, 1.0 / 6
    res = run_protocol(n, j, 1.0, 30 * time_unit(n, j), 0.0, 0.0,
                       kind="linear", steps_per_ramp=1500)
    assert 0 <= res.fidelity_to_ghz <= 1
    with pytest.raises(ValueError):
        run_protocol(n, j, 1.0, 1.0, 0.0, 0.0, kind="bogus")
