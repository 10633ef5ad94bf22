"""
Two-time-scale approximation
============================

For shrinking epsilon, compare the full solution with the reduced wave
solution plus the boundary-layer correction. The errors should shrink like
eps^{3/2} (wave) and eps (heat) at least.
"""

import numpy as np

from waveheat import DEFAULT_PARAMS
from waveheat.analysis import tikhonov_sweep
from waveheat.solvers import SimulationConfig

cfg = SimulationConfig.default(DEFAULT_PARAMS, nx=200, t_final=10.0)
eps = [0.1, 0.05, 0.025, 0.0125]
sweep = tikhonov_sweep(cfg, eps, workers=4)

print(f"{'eps':>8s} {'sup e_u':>12s} {'sup e_p':>12s}")
for p in sweep.points:
    print(f"{p.epsilon:8.4f} {p.e_u_max_weighted:12.4e} {p.e_p_max_weighted:12.4e}")
print(f"log-log slopes: e_u {sweep.slope_u:.3f}, e_p {sweep.slope_p:.3f}")

# where in time does the heat error peak?
p = sweep.points[-1]
print("e_p peaks at t =", p.t_grid[np.argmax(p.e_p)])
