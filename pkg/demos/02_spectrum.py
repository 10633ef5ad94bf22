"""
Spectrum of the semi-discrete generator
=======================================

The rightmost eigenvalue tells how fast the slowest mode of the method-of-lines
system decays. Under the admissibility conditions it sits left of the
imaginary axis.
"""

import numpy as np

from waveheat import DEFAULT_PARAMS, SpatialGrid
from waveheat.analysis import spectral_abscissa
from waveheat.solvers import assemble_discrete_generator
from waveheat.validator import check_theorem_1_1, random_admissible_parameters

g = SpatialGrid(60)
absc, ev = spectral_abscissa(assemble_discrete_generator(DEFAULT_PARAMS, g))
print("default parameters, abscissa:", absc)
print("five rightmost eigenvalues:")
for z in ev[:5]:
    print(f"   {z.real: .6f} {z.imag:+.4f}i")

# low-frequency modes are damped much harder than the grid-scale ones
low = ev[np.abs(ev.imag) < 10]
print("rightmost eigenvalue with |Im| < 10:", low[0])

rng = np.random.default_rng(1)
for _ in range(5):
    p = random_admissible_parameters(rng)
    a, _ = spectral_abscissa(assemble_discrete_generator(p, g))
    print(f"a={p.a:.3f} b={p.b:+.3f} c={p.c:.2f} d={p.d:+.3f} mu={p.mu:.3f}  "
          f"admissible={check_theorem_1_1(p).all_satisfied}  abscissa={a:.3e}")
