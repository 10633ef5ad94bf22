"""Domain types, quadrature, discrete norms and the Lyapunov functionals.

Everything here works on node samples of a uniform grid on [0, 1]. Integrals
use the trapezoid rule and derivatives use second-order finite differences
(one-sided at the end points), so linear and quadratic fields are
differentiated exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class WaveHeatError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(WaveHeatError, ValueError):
    """A physical or numerical parameter is outside its valid range."""


class NumericalError(WaveHeatError, ArithmeticError):
    """A linear solve failed or a field became non-finite."""


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Parameters:
    """Coefficients of the coupled wave-heat system.

    ``a`` damps the wave at x=1, ``b`` feeds p(0) into the wave boundary,
    ``c`` is the Robin coefficient of the heat equation at x=0, ``d`` feeds
    u(1) into the heat flux at x=1, ``epsilon`` is the time-scale ratio and
    ``mu`` the exponent of the Lyapunov weights.
    """

    a: float
    b: float
    c: float
    d: float
    epsilon: float
    mu: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "epsilon", "mu"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.epsilon <= 0:
            raise ParameterError(f"epsilon must be > 0, got {self.epsilon}")
        if self.mu <= 0:
            raise ParameterError(f"mu must be > 0, got {self.mu}")

    def replace(self, **changes) -> "Parameters":
        values = {k: getattr(self, k) for k in ("a", "b", "c", "d", "epsilon", "mu")}
        values.update(changes)
        return Parameters(**values)


DEFAULT_PARAMS = Parameters(a=0.5, b=0.1, c=4.0, d=0.2, epsilon=0.01, mu=0.1)


@dataclass(frozen=True, eq=False)
class SpatialGrid:
    """Uniform grid with ``nx`` cells on [0, 1] and trapezoid weights."""

    nx: int
    h: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False)
    quad_weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if int(self.nx) != self.nx or self.nx < 8:
            raise ParameterError(f"nx must be an integer >= 8, got {self.nx!r}")
        nx = int(self.nx)
        object.__setattr__(self, "nx", nx)
        h = 1.0 / nx
        w = np.full(nx + 1, h)
        w[0] = w[-1] = 0.5 * h
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "nodes", _frozen(np.arange(nx + 1) * h))
        object.__setattr__(self, "quad_weights", _frozen(w))

    def __eq__(self, other):
        return isinstance(other, SpatialGrid) and other.nx == self.nx

    def __hash__(self):
        return hash(("SpatialGrid", self.nx))

    @property
    def size(self) -> int:
        return self.nx + 1


@dataclass(frozen=True, eq=False)
class WaveField:
    """Displacement ``u`` and velocity ``v = u_t`` at the grid nodes."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u, v = _frozen(self.u), _frozen(self.v)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("u and v must be 1-D arrays of equal length")
        if u[0] != 0.0:
            raise ValueError(f"u must vanish at x=0, got u[0]={u[0]!r}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @classmethod
    def zeros(cls, g: SpatialGrid) -> "WaveField":
        return cls(np.zeros(g.size), np.zeros(g.size))


@dataclass(frozen=True, eq=False)
class HeatField:
    """Temperature samples ``p`` at the grid nodes."""

    p: np.ndarray

    def __post_init__(self):
        p = _frozen(self.p)
        if p.ndim != 1:
            raise ValueError("p must be a 1-D array")
        if not np.all(np.isfinite(p)):
            raise ValueError("p must be finite")
        object.__setattr__(self, "p", p)

    @classmethod
    def zeros(cls, g: SpatialGrid) -> "HeatField":
        return cls(np.zeros(g.size))


@dataclass(frozen=True, eq=False)
class CoupledState:
    wave: WaveField
    heat: HeatField
    t: float = 0.0

    def __post_init__(self):
        if self.wave.u.shape != self.heat.p.shape:
            raise ValueError("wave and heat fields must live on the same grid")

    @classmethod
    def zeros(cls, g: SpatialGrid, t: float = 0.0) -> "CoupledState":
        return cls(WaveField.zeros(g), HeatField.zeros(g), t)


@dataclass(frozen=True)
class EnergyRecord:
    """One sample of the energies and boundary traces along a trajectory."""

    t: float
    E: float
    V1: float
    W2: float
    V2: float
    u1: float
    ut1: float
    p0: float
    p1: float

    FIELDS = ("t", "E", "V1", "W2", "V2", "u1", "ut1", "p0", "p1")

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f) for f in self.FIELDS)


def _check_len(f, g: SpatialGrid) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (g.size,):
        raise ValueError(f"expected {g.size} node samples, got shape {f.shape}")
    return f


def integrate(f, g: SpatialGrid) -> float:
    """Trapezoid quadrature of node samples over [0, 1]."""
    return float(np.dot(g.quad_weights, _check_len(f, g)))


def l2_norm_sq(f, g: SpatialGrid) -> float:
    f = _check_len(f, g)
    return float(np.dot(g.quad_weights, f * f))


def derivative(f, g: SpatialGrid) -> np.ndarray:
    """Second-order derivative samples: centred inside, one-sided at the ends."""
    return np.gradient(_check_len(f, g), g.h, edge_order=2)


def h1_norm_sq(f, g: SpatialGrid) -> float:
    """Full H^1 norm squared, int f^2 + int f_x^2."""
    return l2_norm_sq(f, g) + l2_norm_sq(derivative(f, g), g)


def _riemann_pair(w: WaveField, g: SpatialGrid):
    ux = derivative(w.u, g)
    return ux + w.v, ux - w.v


def h_inner_product_wave(w1: WaveField, w2: WaveField, mu: float, g: SpatialGrid) -> float:
    """Weighted inner product on H^1 x L^2.

    Computes 2 * int e^{mu x}(u_x+v)(u~_x+v~) + e^{-mu x}(u_x-v)(u~_x-v~) dx,
    with the factor 2 applied to the whole integral.
    """
    p1, m1 = _riemann_pair(w1, g)
    p2, m2 = _riemann_pair(w2, g)
    x = g.nodes
    integrand = np.exp(mu * x) * p1 * p2 + np.exp(-mu * x) * m1 * m2
    return 2.0 * integrate(integrand, g)


def v1(w: WaveField, mu: float, g: SpatialGrid) -> float:
    """Wave Lyapunov functional, 1/2 int e^{mu x}(v+u_x)^2 + e^{-mu x}(v-u_x)^2."""
    plus, minus = _riemann_pair(w, g)
    x = g.nodes
    return 0.5 * integrate(np.exp(mu * x) * plus**2 + np.exp(-mu * x) * minus**2, g)


def w2(p: HeatField, g: SpatialGrid) -> float:
    return 0.5 * l2_norm_sq(p.p, g)


def v2(p: HeatField, c: float, g: SpatialGrid) -> float:
    """Heat H^1 functional, 1/2 int p_x^2 + (c/2) p(0)^2. Requires c > 0."""
    if not c > 0:
        raise ParameterError(f"v2 requires c > 0, got {c}")
    px = derivative(p.p, g)
    return 0.5 * l2_norm_sq(px, g) + 0.5 * c * p.p[0] ** 2


def total_energy(s: CoupledState, params: Parameters, g: SpatialGrid) -> float:
    wave = h_inner_product_wave(s.wave, s.wave, params.mu, g)
    return 0.5 * (wave + params.epsilon * l2_norm_sq(s.heat.p, g))


def quasi_steady_state(u1_trace: float, c: float, d: float, g: SpatialGrid) -> HeatField:
    """Equilibrium heat profile (d/c + d x) u(1) for a frozen wave trace."""
    if c == 0:
        raise ParameterError("quasi-steady state is undefined for c = 0")
    return HeatField((d / c + d * g.nodes) * u1_trace)


def energy_record(s: CoupledState, params: Parameters, g: SpatialGrid) -> EnergyRecord:
    """Evaluate every functional of a coupled state."""
    p = s.heat
    return EnergyRecord(
        t=float(s.t),
        E=total_energy(s, params, g),
        V1=v1(s.wave, params.mu, g),
        W2=w2(p, g),
        V2=v2(p, params.c, g) if params.c > 0 else float("nan"),
        u1=float(s.wave.u[-1]),
        ut1=float(s.wave.v[-1]),
        p0=float(p.p[0]),
        p1=float(p.p[-1]),
    )
