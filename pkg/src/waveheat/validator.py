"""Closed-form admissibility quantities and hypothesis checks.

Each ``check_*`` function returns a :class:`ConditionReport` with one labelled
entry per inequality. Comparisons are exact floating point with no slack, and
equality counts as satisfied.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Parameters, ParameterError

PI2 = math.pi**2


@dataclass(frozen=True)
class Condition:
    label: str
    lhs: float
    rhs: float
    satisfied: bool


@dataclass(frozen=True)
class ConditionReport:
    theorem_id: str
    conditions: tuple[Condition, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def all_satisfied(self) -> bool:
        return all(c.satisfied for c in self.conditions)

    def __getitem__(self, label: str) -> Condition:
        for c in self.conditions:
            if c.label == label:
                return c
        raise KeyError(label)

    def format_table(self) -> str:
        lines = [f"[{self.theorem_id}] all_satisfied={self.all_satisfied}"]
        for c in self.conditions:
            flag = "PASS" if c.satisfied else "FAIL"
            lines.append(f"  {flag}  {c.label:<34s} lhs={c.lhs:.10g}  rhs={c.rhs:.10g}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def _le(label, lhs, rhs) -> Condition:
    return Condition(label, float(lhs), float(rhs), bool(lhs <= rhs))


def _ge(label, lhs, rhs) -> Condition:
    return Condition(label, float(lhs), float(rhs), bool(lhs >= rhs))


def eta() -> float:
    """(sqrt 3 - 1)/(sqrt 3 + 1), which equals 2 - sqrt 3."""
    s3 = math.sqrt(3.0)
    return (s3 - 1.0) / (s3 + 1.0)


def admissible_a_interval() -> tuple[float, float]:
    e = eta()
    return min(e, 1 / e), max(e, 1 / e)


def q_of(a: float, mu: float) -> float:
    return -1.5 * math.exp(mu) * (1 - a) ** 2 + 0.5 * math.exp(-mu) * (1 + a) ** 2


def big_f(mu: float) -> float:
    return 2 * math.sinh(mu) + 10 * math.cosh(mu)


@dataclass(frozen=True)
class MuStar:
    """Upper bound on mu, in two versions.

    ``closed_form`` is ln(|1+a| / (sqrt2 |1-a|)); ``q_root`` is the positive
    root of q(a, .) = ln(|1+a| / (sqrt3 |1-a|)) found by bisection. Either is
    None when no positive value exists.
    """

    a: float
    closed_form: float | None
    q_root: float | None

    @property
    def agree(self) -> bool:
        if self.closed_form is None or self.q_root is None:
            return self.closed_form is self.q_root
        return math.isclose(self.closed_form, self.q_root, rel_tol=1e-9)


def _bisect(f, lo, hi, tol=1e-12, max_iter=200):
    flo = f(lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or hi - lo < tol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mu_star(a: float) -> MuStar:
    if a == 1 or a == -1:
        raise ParameterError(f"mu* is undefined for a = {a}")
    arg = abs(1 + a) / (math.sqrt(2) * abs(1 - a))
    closed = math.log(arg) if arg > 1 else None
    root = None
    if q_of(a, 0.0) > 0:
        hi = 10.0
        if q_of(a, hi) > 0:
            root = None  # root beyond the bracket (0, 10]
        else:
            root = _bisect(lambda m: q_of(a, m), 0.0, hi)
    return MuStar(a, closed, root)


def _theorem_1_1_conditions(p: Parameters) -> tuple[list[Condition], list[str]]:
    lo, hi = admissible_a_interval()
    conds = [
        Condition("(i) a in [2-sqrt3, 2+sqrt3]", p.a, hi if p.a > hi else lo,
                  bool(lo <= p.a <= hi)),
        Condition("(i) a != 1", p.a, 1.0, p.a != 1.0),
        _le("(ii) |bd/c| <= 1", abs(p.b * p.d / p.c) if p.c != 0 else math.inf, 1.0),
        _ge("(iii) c >= pi^2/8", p.c, PI2 / 8),
        _le("(iv) 1+2(sinh mu+2cosh mu)b^2 <= c",
            1 + 2 * (math.sinh(p.mu) + 2 * math.cosh(p.mu)) * p.b**2, p.c),
    ]
    notes = []
    if p.a in (1.0, -1.0):
        conds.append(Condition("(iv) mu <= mu* (q-root)", p.mu, math.nan, False))
        notes.append("mu* undefined for a = +-1")
    else:
        ms = mu_star(p.a)
        bound = ms.q_root if ms.q_root is not None else -math.inf
        conds.append(_le("(iv) mu <= mu* (q-root)", p.mu, bound))
        cf = "none" if ms.closed_form is None else f"{ms.closed_form:.12g}"
        qr = "none" if ms.q_root is None else f"{ms.q_root:.12g}"
        notes.append(f"mu* closed form (sqrt2) = {cf}, q-root (sqrt3) = {qr}")
        if not ms.agree:
            notes.append("mu* closed form and q-root disagree; verdict uses q-root")
            if ms.closed_form is not None:
                notes.append(f"q(a, mu* closed form) = {q_of(p.a, ms.closed_form):.12g}")
    conds += [
        _le("(v) |d| <= 2 sqrt(mu e^-mu)", abs(p.d), 2 * math.sqrt(p.mu * math.exp(-p.mu))),
        _ge("stability: c >= pi^2/4", p.c, PI2 / 4),
        _le("stability: |d| <= sqrt(mu e^-mu)", abs(p.d), math.sqrt(p.mu * math.exp(-p.mu))),
    ]
    return conds, notes


def check_theorem_1_1(params: Parameters) -> ConditionReport:
    conds, notes = _theorem_1_1_conditions(params)
    return ConditionReport("T1_1", tuple(conds), tuple(notes))


def check_theorem_1_3(params: Parameters, variant: str) -> ConditionReport:
    """Decay hypotheses; ``variant`` 'i' is the L^2 case, 'ii' the H^1 case."""
    if variant not in ("i", "ii"):
        raise ValueError(f"variant must be 'i' or 'ii', got {variant!r}")
    p = params
    conds, notes = _theorem_1_1_conditions(p)
    F = big_f(p.mu)
    coupling = abs(p.b * p.d) / p.c if p.c != 0 else math.inf
    conds.append(_le("|bd|/c <= sqrt(mu e^-mu / F(mu))", coupling,
                     math.sqrt(p.mu * math.exp(-p.mu) / F)))
    if variant == "i":
        conds.append(_le("(i) pi^2/4 + F(mu) b^2 <= c", PI2 / 4 + F * p.b**2, p.c))
    else:
        conds.append(_le("(ii) 3 F(mu) b^2 <= c", 3 * F * p.b**2, p.c))
    return ConditionReport(f"T1_3_{variant}", tuple(conds), tuple(notes))


def check_theorem_1_4(params: Parameters) -> ConditionReport:
    p = params
    conds, notes = _theorem_1_1_conditions(p)
    F = big_f(p.mu)
    conds += [
        _ge("(1) c >= pi^2/4", p.c, PI2 / 4),
        _le("(2) (pi^2+2)/4 + F(mu) b^2 <= c", (PI2 + 2) / 4 + F * p.b**2, p.c),
        _le("(3) |d| <= sqrt(mu e^-mu)", abs(p.d), math.sqrt(p.mu * math.exp(-p.mu))),
    ]
    return ConditionReport("T1_4", tuple(conds), tuple(notes))


def check_all(params: Parameters) -> list[ConditionReport]:
    return [
        check_theorem_1_1(params),
        check_theorem_1_3(params, "i"),
        check_theorem_1_3(params, "ii"),
        check_theorem_1_4(params),
    ]


def random_admissible_parameters(rng: np.random.Generator, theorem: str = "T1_1",
                                 max_tries: int = 10_000) -> Parameters:
    """Draw parameters passing every condition of ``theorem`` by rejection."""
    checks = {"T1_1": check_theorem_1_1, "T1_4": check_theorem_1_4,
              "T1_3_i": lambda p: check_theorem_1_3(p, "i"),
              "T1_3_ii": lambda p: check_theorem_1_3(p, "ii")}
    check = checks[theorem]
    lo, hi = admissible_a_interval()
    for _ in range(max_tries):
        a = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
        if a == 1.0:
            continue
        root = mu_star(a).q_root
        if root is None or root <= 0:
            continue
        mu = float(rng.uniform(0.02, 1.0) * root)
        c = float(rng.uniform(PI2 / 4, 12.0))
        bmax = math.sqrt(max(c - 1, 0.0) / (2 * (math.sinh(mu) + 2 * math.cosh(mu))))
        b = float(rng.uniform(-bmax, bmax))
        dmax = math.sqrt(mu * math.exp(-mu))
        d = float(rng.uniform(-dmax, dmax))
        eps = float(10 ** rng.uniform(-3, 0))
        p = Parameters(a, b, c, d, eps, mu)
        if check(p).all_satisfied:
            return p
    raise RuntimeError(f"no admissible parameters found for {theorem}")
