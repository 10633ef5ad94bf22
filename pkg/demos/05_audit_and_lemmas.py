"""
Claim audit and inequality fuzzing
==================================

Run every measurable claim against a simulation, then hunt for counterexamples
to the auxiliary inequalities.
"""

from waveheat import DEFAULT_PARAMS
from waveheat.analysis import claim_audit
from waveheat.inequalities import TestFunction, check_lemma, fuzz_lemmas
from waveheat.solvers import SimulationConfig
from waveheat.validator import check_theorem_1_1, mu_star

print(check_theorem_1_1(DEFAULT_PARAMS).format_table())
print(mu_star(0.5))
print()

report = claim_audit(DEFAULT_PARAMS, SimulationConfig.default(DEFAULT_PARAMS, nx=100))
print(report.format_table())
print()

# w = 1 + x breaks the Wirtinger-type bound with constant 1, not the doubled one
c = check_lemma("A4_i0", TestFunction.build(1.0, 1.0))
print("w = 1 + x:", c.variants)

summary = fuzz_lemmas(300, seed=0)
print(summary.format_table())
