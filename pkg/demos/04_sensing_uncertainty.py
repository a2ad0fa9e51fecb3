"""Estimating the longitudinal field: offsets, slopes, and the index p.

The survival probability is an interference fringe in h^z.  A known offset
parks the fringe at maximum slope, a finite difference extracts the slope,
and error propagation with Bernoulli readout noise gives the uncertainty.
The index p = 1/(2 N T_int delta-h) measures the distance to the Heisenberg
limit (p = 1); uncorrelated probes sit at p = 1/sqrt(N).
"""

import numpy as np

from spinsense import (
    calibrate_offset,
    error_propagation,
    ideal_survival,
    ideal_survival_slope,
    projection_noise,
    time_unit,
    tint_sweep,
)

n = 10
j = 1.0 / n
unit = time_unit(n, j)

# Offset calibration: 2 (h_k + h_0) N T_int = (2n+1) pi/2.
t_sense = unit
h0 = calibrate_offset(0.0, n, t_sense)
print(f"offset for T_int = 1 unit: h_0/JN = {h0:.6f} (pi/2 = {np.pi / 2:.6f})")

# At the offset the ideal fringe sits at P = 1/2 with slope N T_int, giving
# the Heisenberg-limit uncertainty 1/(2 N T_int).
p = ideal_survival(h0, n, t_sense)
slope = ideal_survival_slope(h0, n, t_sense)
dh = error_propagation(projection_noise(p), slope)
print(f"ideal: P = {p:.3f}, |dP/dh| = {abs(slope):.3f}, "
      f"delta-h * 2NT = {dh * 2 * n * t_sense:.6f}")

# The simulated protocol at the locally optimal ramp time T_a = 150 units:
# averaged over the standard sensing grid the uncertainty stays within ~7%
# of the Heisenberg limit.
sweep = tint_sweep(n, 150 * unit, ramp_steps=4000)
print(f"\nsimulated protocol, T_a = 150 units:")
print(f"  p = {sweep.p_mean:.4f} +- {sweep.p_std:.4f} over "
      f"{len(sweep.t_sense)} sensing times")
print(f"  divergent points excluded: {sweep.excluded}")
print(f"  SQL reference: p = {1 / np.sqrt(n):.4f}")

worst = np.nanmin(sweep.p_values)
best = np.nanmax(sweep.p_values)
print(f"  per-point p ranges over [{worst:.4f}, {best:.4f}]")
