"""
The fast heat transient
=======================

In stretched time the heat equation with a Robin end at x=0 and an insulated
end at x=1 decays like exp(-2 k^2 tau) in the squared L2 norm, with k the root of
k tan k = c. Compare that to the rate pi^2/2.
"""

import numpy as np

from waveheat import DEFAULT_PARAMS, SpatialGrid
from waveheat.analysis import boundary_layer_trace_check, fit_decay_rate, robin_neumann_wavenumber
from waveheat.core import h1_norm_sq
from waveheat.solvers import SimulationConfig, simulate_boundary_layer

for c in (2.5, 4.0, 10.0, 100.0):
    params = DEFAULT_PARAMS.replace(c=c)
    g = SpatialGrid(200)
    run = simulate_boundary_layer(SimulationConfig(params, g, 0.5 * g.h, 6.0), np.ones(g.size))
    fit = fit_decay_rate(run.column("t"), run.column("W2"), 0.2)
    k = robin_neumann_wavenumber(c)
    print(f"c={c:6.1f}  measured={fit.rate:.4f}  2k^2={2 * k * k:.4f}  pi^2/2={np.pi**2 / 2:.4f}")

# the pointwise trace bound at tau = 0 fails for a constant datum
g = SpatialGrid(200)
run = simulate_boundary_layer(SimulationConfig(DEFAULT_PARAMS, g, 0.5 * g.h, 2.0), np.ones(g.size))
tc = boundary_layer_trace_check(run, 4.0, h1_norm_sq(np.ones(g.size), g))
print(f"trace bound violated at {tc.n_violated} of {len(tc.verdicts)} steps;"
      f" at tau=0: {tc.trace_sq[0]:.3f} vs {tc.bound[0]:.3f}")
