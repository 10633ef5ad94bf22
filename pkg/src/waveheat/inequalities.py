"""Randomised checks of the trace and Wirtinger-type inequalities.

Test functions are short Fourier-polynomial mixes with exact derivatives, so
both sides of each inequality can be evaluated to near machine precision with
composite Gauss-Legendre quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import WaveHeatError

LEMMAS = ("A1", "A2", "A3", "A4_i0", "A4_i1")
CONSTRAINTS = ("none", "vanish_at_0")
MIN_CELLS = 400
A3_MUS = (0.1, 0.5, 1.0)
# relative slack absorbing rounding in equality cases (e.g. linear p in A2)
ROUNDING = 1e-12


class PreconditionError(WaveHeatError, ValueError):
    pass


@dataclass(frozen=True)
class TestFunction:
    """w(x) = a0 + lin x + sum_k sin_k sin(k pi x) + cos_k cos(k pi x) - shift."""

    __test__ = False  # keep pytest from collecting this class

    a0: float
    lin: float
    sin_coeffs: tuple[float, ...]
    cos_coeffs: tuple[float, ...]
    constraint: str = "none"
    shift: float = 0.0

    def __post_init__(self):
        if self.constraint not in CONSTRAINTS:
            raise ValueError(f"unknown constraint {self.constraint!r}")
        if len(self.sin_coeffs) != len(self.cos_coeffs):
            raise ValueError("sin and cos coefficient lists differ in length")

    @classmethod
    def build(cls, a0, lin, sin_coeffs=(), cos_coeffs=(), constraint="none") -> "TestFunction":
        sin_coeffs = tuple(float(s) for s in sin_coeffs)
        cos_coeffs = tuple(float(c) for c in cos_coeffs)
        shift = 0.0
        if constraint == "vanish_at_0":
            shift = float(a0) + math.fsum(cos_coeffs)
        return cls(float(a0), float(lin), sin_coeffs, cos_coeffs, constraint, shift)

    @property
    def degree(self) -> int:
        return len(self.sin_coeffs)

    @property
    def coefficients(self) -> np.ndarray:
        return np.concatenate(([self.a0, self.lin], self.sin_coeffs, self.cos_coeffs))

    def _k(self):
        return np.arange(1, self.degree + 1) * np.pi

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        kx = np.multiply.outer(x, self._k())
        return (self.a0 - self.shift + self.lin * x
                + np.sin(kx) @ np.asarray(self.sin_coeffs)
                + np.cos(kx) @ np.asarray(self.cos_coeffs))

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        k = self._k()
        kx = np.multiply.outer(x, k)
        return (self.lin + np.cos(kx) @ (k * np.asarray(self.sin_coeffs))
                - np.sin(kx) @ (k * np.asarray(self.cos_coeffs)))


def random_test_function(seed, degree: int, constraint: str = "none") -> TestFunction:
    """Coefficients uniform in [-1, 1], drawn from ``np.random.default_rng(seed)``."""
    if not 1 <= degree <= 16:
        raise ValueError(f"degree must lie in [1, 16], got {degree}")
    rng = np.random.default_rng(seed)
    c = rng.uniform(-1.0, 1.0, size=2 + 2 * degree)
    return TestFunction.build(c[0], c[1], c[2:2 + degree], c[2 + degree:], constraint)


class _Quadrature:
    """Composite 4-point Gauss-Legendre rule on ``cells`` equal cells of [0, 1]."""

    _cache: dict = {}

    def __new__(cls, cells: int):
        if cells not in cls._cache:
            obj = super().__new__(cls)
            xg, wg = np.polynomial.legendre.leggauss(4)
            h = 1.0 / cells
            left = np.arange(cells) * h
            obj.x = (left[:, None] + 0.5 * h * (xg + 1)).ravel()
            obj.w = np.tile(0.5 * h * wg, cells)
            cls._cache[cells] = obj
        return cls._cache[cells]

    def __call__(self, values) -> float:
        return float(np.dot(self.w, values))


@dataclass(frozen=True)
class LemmaCheck:
    lemma_id: str
    lhs: float
    rhs: float
    satisfied: bool
    variants: dict = field(default_factory=dict)  # name -> (lhs, rhs, satisfied)

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


def _cmp(lhs, rhs):
    lhs, rhs = float(lhs), float(rhs)
    return lhs, rhs, bool(lhs <= rhs + ROUNDING * max(abs(lhs), abs(rhs), 1.0))


def _require_vanishing(f: TestFunction, name: str, lemma_id: str):
    if f.constraint != "vanish_at_0":
        raise PreconditionError(f"{lemma_id} requires {name} with constraint vanish_at_0")


def check_lemma(lemma_id: str, f: TestFunction, g: TestFunction | None = None,
                mu: float | None = None, cells: int = MIN_CELLS) -> LemmaCheck:
    """Evaluate one inequality for the given test function(s).

    A2 asserts the squared form |p(1)|^2 <= int p_x^2 and also reports the
    printed form against the unsquared norm. A3 takes ``f`` as u, ``g`` as v.
    A4 asserts the printed form and reports the doubled variant
    int w^2 <= 2|w(i)|^2 + (8/pi^2) int w_x^2.
    """
    if lemma_id not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma_id!r}; expected one of {LEMMAS}")
    q = _Quadrature(max(int(cells), MIN_CELLS))
    x = q.x
    if lemma_id == "A1":
        lhs, rhs, ok = _cmp(f(1.0) ** 2, 2 * f(0.0) ** 2 + 2 * q(f.derivative(x) ** 2))
        return LemmaCheck("A1", lhs, rhs, ok)
    if lemma_id == "A2":
        _require_vanishing(f, "p", "A2")
        dx2 = q(f.derivative(x) ** 2)
        squared = _cmp(f(1.0) ** 2, dx2)
        printed = _cmp(f(1.0) ** 2, math.sqrt(dx2))
        return LemmaCheck("A2", *squared, variants={"printed": printed, "squared": squared})
    if lemma_id == "A3":
        _require_vanishing(f, "u", "A3")
        if g is None:
            raise PreconditionError("A3 needs a velocity test function v")
        if mu is None or not mu > 0:
            raise PreconditionError(f"A3 needs mu > 0, got {mu}")
        ux, v = f.derivative(x), g(x)
        integral = q(np.exp(mu * x) * (ux + v) ** 2 + np.exp(-mu * x) * (ux - v) ** 2)
        lhs, rhs, ok = _cmp(-mu * integral, -2 * mu * math.exp(-mu) * f(1.0) ** 2)
        return LemmaCheck("A3", lhs, rhs, ok)
    end = 0.0 if lemma_id == "A4_i0" else 1.0
    l2 = q(f(x) ** 2)
    dx2 = q(f.derivative(x) ** 2)
    wi2 = f(end) ** 2
    printed = _cmp(l2, wi2 + 4 / math.pi**2 * dx2)
    doubled = _cmp(l2, 2 * wi2 + 8 / math.pi**2 * dx2)
    return LemmaCheck(lemma_id, *printed, variants={"printed": printed, "doubled": doubled})


# --------------------------------------------------------------------- fuzzing

#: summary keys and whether a counterexample to each is a failure of the harness
FUZZ_KEYS = {
    "A1": True,
    "A2_printed": False,
    "A2_squared": True,
    "A3": True,
    "A4_i0": False,
    "A4_i1": False,
    "A4_i0_doubled": True,
    "A4_i1_doubled": True,
}


@dataclass
class Counterexample:
    key: str
    trial: int
    lhs: float
    rhs: float
    coefficients: tuple[float, ...]
    extra: dict = field(default_factory=dict)


@dataclass
class FuzzSummary:
    trials: int
    seed: int
    passes: dict
    witnesses: dict  # key -> (margin, trial, coefficients) of the tightest satisfied case
    counterexamples: list

    def count(self, key: str) -> int:
        return sum(1 for c in self.counterexamples if c.key == key)

    def format_table(self) -> str:
        lines = [f"trials={self.trials} seed={self.seed}",
                 f"{'check':<16s} {'pass':>6s} {'fail':>6s} {'min margin':>14s}  asserted"]
        for key, asserted in FUZZ_KEYS.items():
            w = self.witnesses.get(key)
            m = f"{w[0]:.6e}" if w else "n/a"
            lines.append(f"{key:<16s} {self.passes[key]:>6d} {self.count(key):>6d} {m:>14s}  "
                         f"{'yes' if asserted else 'no'}")
        return "\n".join(lines)


def fuzz_lemmas(trials: int, seed: int = 0) -> FuzzSummary:
    """Run every check on ``trials`` random functions, deterministically per seed.

    Trial 0 of the A4 checks uses the linear family (1 + x for i = 0,
    2 - x for i = 1) before switching to random functions.
    """
    if int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    trials = int(trials)
    passes = {k: 0 for k in FUZZ_KEYS}
    witnesses: dict = {}
    found: list[Counterexample] = []

    def record(key, trial, lhs, rhs, ok, coeffs, **extra):
        if ok:
            passes[key] += 1
            margin = rhs - lhs
            if key not in witnesses or margin < witnesses[key][0]:
                witnesses[key] = (margin, trial, coeffs)
        else:
            found.append(Counterexample(key, trial, lhs, rhs, coeffs, extra))

    children = np.random.SeedSequence(seed).spawn(trials)
    for trial, ss in enumerate(children):
        rng = np.random.default_rng(ss)
        s_free, s_u, s_v = rng.integers(0, 2**63, size=3)
        deg_free, deg_u, deg_v = (int(d) for d in rng.integers(1, 17, size=3))
        w = random_test_function(int(s_free), deg_free)
        u = random_test_function(int(s_u), deg_u, "vanish_at_0")
        v = random_test_function(int(s_v), deg_v)
        mu = A3_MUS[trial % len(A3_MUS)]

        c = check_lemma("A1", w)
        record("A1", trial, c.lhs, c.rhs, c.satisfied, tuple(w.coefficients))
        c = check_lemma("A2", u)
        for name in ("printed", "squared"):
            record(f"A2_{name}", trial, *c.variants[name], tuple(u.coefficients))
        c = check_lemma("A3", u, v, mu=mu)
        record("A3", trial, c.lhs, c.rhs, c.satisfied, tuple(u.coefficients),
               v=tuple(v.coefficients), mu=mu)
        for lemma, linear in (("A4_i0", (1.0, 1.0)), ("A4_i1", (2.0, -1.0))):
            f = TestFunction.build(*linear) if trial == 0 else w
            c = check_lemma(lemma, f)
            record(lemma, trial, *c.variants["printed"], tuple(f.coefficients))
            record(f"{lemma}_doubled", trial, *c.variants["doubled"], tuple(f.coefficients))
    return FuzzSummary(trials, seed, passes, witnesses, found)
