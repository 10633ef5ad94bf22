"""Decay-rate fits, spectra, the epsilon sweep and the claim audit."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize
from scipy.integrate import cumulative_trapezoid

from .core import (
    CoupledState,
    HeatField,
    NumericalError,
    Parameters,
    SpatialGrid,
    WaveField,
    WaveHeatError,
    derivative,
    h1_norm_sq,
    h_inner_product_wave,
    l2_norm_sq,
    quasi_steady_state,
    v1,
    w2,
)
from .solvers import (
    ConfigError,
    DiscreteGenerator,
    InitialConditionSpec,
    SimulationConfig,
    SimulationResult,
    make_initial_state,
    simulate_boundary_layer,
    simulate_coupled,
    simulate_reduced,
)
from .validator import check_theorem_1_4, mu_star, q_of

PI2 = math.pi**2

#: relative slack on claimed decay rates
RATE_TOLERANCE = 0.05
#: relative agreement required between the layer rate and its eigenvalue oracle
ORACLE_TOLERANCE = 0.02


class FitError(WaveHeatError, ValueError):
    """Too few usable samples for a decay-rate fit."""


class PreconditionError(WaveHeatError, ValueError):
    pass


# ------------------------------------------------------------------ rate fits

@dataclass(frozen=True)
class RateFit:
    rate: float
    intercept: float
    r_squared: float
    window: tuple[float, float]


def fit_decay_rate(t, values, burn_in_fraction: float = 0.0, min_samples: int = 10) -> RateFit:
    """Least-squares fit of log(value) = intercept - rate * t.

    Samples before ``t0 + burn_in_fraction * span`` are skipped, as are
    samples that are not above ``1e-12 * values[0]``.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.shape != y.shape or t.ndim != 1 or t.size == 0:
        raise FitError("t and values must be 1-D arrays of equal, non-zero length")
    if not 0 <= burn_in_fraction < 1:
        raise FitError("burn_in_fraction must lie in [0, 1)")
    t_start = t[0] + burn_in_fraction * (t[-1] - t[0])
    floor = 1e-12 * y[0] if y[0] > 0 else 0.0
    mask = (t >= t_start) & (y > floor) & (y > 0) & np.isfinite(y)
    if mask.sum() < min_samples:
        raise FitError(f"only {int(mask.sum())} positive samples after burn-in, need {min_samples}")
    tw, ly = t[mask], np.log(y[mask])
    slope, intercept = np.polyfit(tw, ly, 1)
    resid = ly - (slope * tw + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    if ss_tot == 0:
        slope = 0.0
    return RateFit(float(-slope), float(intercept), r2, (float(tw[0]), float(tw[-1])))


def robin_neumann_wavenumber(c: float) -> float:
    """Root k of k tan k = c in (0, pi/2); the slowest layer mode is cos-like with -k^2."""
    if not c > 0:
        raise ValueError("c must be positive")
    return float(scipy.optimize.brentq(lambda k: k * math.tan(k) - c, 1e-12, math.pi / 2 - 1e-12,
                                       xtol=1e-15))


def spectral_abscissa(gen: DiscreteGenerator) -> tuple[float, np.ndarray]:
    """Largest real part of the generator spectrum, plus all eigenvalues.

    Eigenvalues are sorted by descending real part, then descending
    imaginary part.
    """
    m = np.asarray(gen.matrix)
    if m.shape[0] > 2000:
        raise ValueError(f"dense eigensolve limited to dimension 2000, got {m.shape[0]}")
    try:
        ev = scipy.linalg.eigvals(m)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from None
    order = np.lexsort((-ev.imag, -ev.real))
    ev = ev[order]
    return float(ev[0].real), ev


# ------------------------------------------------------------ epsilon sweep

def default_profiles(g: SpatialGrid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """phi, psi = sin(pi x/2) normalised in H^1 and L^2; chi = cos(pi x) in H^1."""
    x = np.asarray(g.nodes)
    s = np.sin(np.pi * x / 2)
    chi = np.cos(np.pi * x)
    return (s / math.sqrt(h1_norm_sq(s, g)), s / math.sqrt(l2_norm_sq(s, g)),
            chi / math.sqrt(h1_norm_sq(chi, g)))


@dataclass(frozen=True)
class TikhonovData:
    full: CoupledState
    reduced_u0: np.ndarray
    reduced_u1: np.ndarray
    layer_p0: np.ndarray


def tikhonov_initial_data(params: Parameters, g: SpatialGrid, profiles) -> TikhonovData:
    """Initial data meeting the smallness conditions with equality.

    Reduced data are eps^{3/2} (phi, psi), the layer datum is eps chi, and the
    full system starts from u0 = ubar0, u1 = ubar1,
    p0 = pbar0 + d (1 + c x)/c * u0(1).
    """
    phi, psi, chi = (np.asarray(p, dtype=float) for p in profiles)
    eps = params.epsilon
    ub0 = eps**1.5 * phi
    ub1 = eps**1.5 * psi
    pb0 = eps * chi
    ub0 = ub0 - ub0[0]
    qss = quasi_steady_state(ub0[-1], params.c, params.d, g).p
    full = CoupledState(WaveField(ub0, ub1), HeatField(pb0 + qss), 0.0)
    return TikhonovData(full, ub0, ub1, pb0)


@dataclass
class ErrorTrajectory:
    """Differences between the full solution and its two-time-scale approximation.

    ``alpha`` is u - ubar (with velocity) and ``beta`` is
    p - pbar(., t/eps) - (d/c + x d) ubar(1, t) at the comparison instants.
    """

    t: np.ndarray
    alpha: list[WaveField]
    beta: list[np.ndarray]
    layer_stop_time: float | None
    grid: SpatialGrid
    params: Parameters

    def e_u(self) -> np.ndarray:
        g = self.grid
        return np.array([math.sqrt(h1_norm_sq(a.u, g)) + math.sqrt(l2_norm_sq(a.v, g))
                         for a in self.alpha])

    def e_p(self) -> np.ndarray:
        return np.array([math.sqrt(l2_norm_sq(b, self.grid)) for b in self.beta])


def error_trajectory(cfg: SimulationConfig, profiles=None, n_samples: int = 50) -> ErrorTrajectory:
    """Run the full, reduced and boundary-layer systems and collect errors.

    Comparison instants are ``n_samples`` equal intervals of [0, t_final]
    (n_samples + 1 instants including t = 0) when the step count allows it.
    The layer runs with tau-step dt/eps so its samples land exactly on t/eps;
    past its early-stop time the layer solution is taken as zero.
    """
    g, params = cfg.grid, cfg.params
    if profiles is None:
        profiles = default_profiles(g)
    stride = max(1, cfg.n_steps // n_samples)
    cfg = cfg.replace(record_stride=stride)
    data = tikhonov_initial_data(params, g, profiles)
    full = simulate_coupled(cfg, data.full, keep_states=True)
    red = simulate_reduced(cfg, data.reduced_u0, data.reduced_u1, keep_states=True)
    eps = params.epsilon
    layer_cfg = cfg.replace(dt=cfg.step / eps, t_final=cfg.t_final / eps)
    layer = simulate_boundary_layer(layer_cfg, data.layer_p0, keep_states=True)
    zero = np.zeros(g.size)
    ts, alphas, betas = [], [], []
    for k, (sf, sr) in enumerate(zip(full.states, red.states)):
        pl = layer.states[k].heat.p if k < len(layer.states) else zero
        ts.append(sf.t)
        alphas.append(WaveField(sf.wave.u - sr.wave.u, sf.wave.v - sr.wave.v))
        betas.append(sf.heat.p - pl - sr.heat.p)  # sr.heat is the quasi-steady profile of ubar(1)
    return ErrorTrajectory(np.array(ts), alphas, betas, layer.stop_time, g, params)


@dataclass(frozen=True)
class TikhonovPoint:
    epsilon: float
    e_u_max_weighted: float
    e_p_max_weighted: float
    t_grid: np.ndarray = field(repr=False)
    e_u: np.ndarray = field(repr=False)
    e_p: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class TikhonovSweep:
    points: list[TikhonovPoint]
    slope_u: float
    slope_p: float


def tikhonov_point(cfg: SimulationConfig, profiles=None, n_samples: int = 50) -> TikhonovPoint:
    traj = error_trajectory(cfg, profiles, n_samples)
    weight = np.exp(cfg.params.mu * traj.t / 8)
    eu, ep = traj.e_u(), traj.e_p()
    return TikhonovPoint(cfg.params.epsilon, float(np.max(weight * eu)), float(np.max(weight * ep)),
                         traj.t, eu, ep)


def _sweep_job(args):
    cfg, profiles, n_samples = args
    return tikhonov_point(cfg, profiles, n_samples)


def _loglog_slope(eps, values) -> float:
    values = np.asarray(values, dtype=float)
    if np.any(values <= 0):
        return float("nan")
    return float(np.polyfit(np.log(eps), np.log(values), 1)[0])


def tikhonov_sweep(base: SimulationConfig, eps_list, ic_profiles=None, workers: int | None = None,
                   n_samples: int = 50) -> TikhonovSweep:
    """Errors of the two-time-scale approximation for each epsilon.

    Slopes are least-squares fits of log(sup error) against log(eps), so a
    value of 1.5 means the error scales like eps^{3/2}.
    """
    eps_list = [float(e) for e in eps_list]
    if len(eps_list) < 3:
        raise ConfigError("eps_list needs at least 3 values")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ConfigError("eps_list must be strictly decreasing")
    if not check_theorem_1_4(base.params).all_satisfied:
        raise ConfigError("parameters do not satisfy the approximation hypotheses")
    profiles = ic_profiles if ic_profiles is not None else default_profiles(base.grid)
    jobs = [(base.replace(params=base.params.replace(epsilon=e)), profiles, n_samples)
            for e in eps_list]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_sweep_job, jobs))
    else:
        points = [_sweep_job(j) for j in jobs]
    points.sort(key=lambda p: -p.epsilon)
    eps = [p.epsilon for p in points]
    return TikhonovSweep(points,
                         _loglog_slope(eps, [p.e_u_max_weighted for p in points]),
                         _loglog_slope(eps, [p.e_p_max_weighted for p in points]))


# ------------------------------------------------------- trace inequalities

@dataclass(frozen=True)
class ObservabilityReport:
    kappa: float
    q: float
    bounded: bool
    t: np.ndarray = field(repr=False)
    integral: np.ndarray = field(repr=False)


def observability_integral(run: SimulationResult, params: Parameters, g: SpatialGrid,
                           flat_tolerance: float = 1e-2) -> ObservabilityReport:
    """Weighted boundary-velocity integral of a reduced run.

    ``integral[k]`` is int_0^t e^{-mu (t-s)/2} |ubar_t(1,s)|^2 ds at
    ``t[k]``; ``kappa`` is sup_t integral * e^{mu t/2} / ||(ubar0, ubar1)||^2,
    and ``bounded`` says the scaled integral grew by less than
    ``flat_tolerance`` (relative) over the last 20% of the horizon.
    """
    q = q_of(params.a, params.mu)
    if not q > 0:
        raise PreconditionError(f"q(a, mu) must be positive, got {q}")
    t = np.asarray(run.trace_t)
    half_mu = 0.5 * params.mu
    scaled = cumulative_trapezoid(np.exp(half_mu * t) * run.trace**2, t, initial=0.0)
    integral = np.exp(-half_mu * t) * scaled
    w0 = run.initial.wave
    norm0 = h1_norm_sq(w0.u, g) + l2_norm_sq(w0.v, g)
    kappa = float(scaled.max() / norm0) if norm0 > 0 else 0.0
    tail = scaled[t >= t[0] + 0.8 * (t[-1] - t[0])]
    end = scaled[-1]
    bounded = bool(end == 0 or (end - tail[0]) / end <= flat_tolerance)
    return ObservabilityReport(kappa, q, bounded, t, integral)


@dataclass(frozen=True)
class TraceCheck:
    tau: np.ndarray = field(repr=False)
    trace_sq: np.ndarray = field(repr=False)
    bound: np.ndarray = field(repr=False)
    verdicts: tuple[str, ...] = field(repr=False)

    @property
    def n_violated(self) -> int:
        return sum(v == "VIOLATED" for v in self.verdicts)

    @property
    def all_confirmed(self) -> bool:
        return self.n_violated == 0


def boundary_layer_trace_check(run: SimulationResult, c: float, p0_h1_norm_sq: float) -> TraceCheck:
    """Compare |pbar(0,tau)|^2 with c^{-1} e^{-pi^2 tau/4} ||pbar0||^2_{H^1} per step."""
    tau = np.asarray(run.trace_t)
    trace_sq = np.asarray(run.trace) ** 2
    bound = np.exp(-PI2 * tau / 4) * p0_h1_norm_sq / c
    verdicts = tuple("CONFIRMED" if a <= b else "VIOLATED" for a, b in zip(trace_sq, bound))
    return TraceCheck(tau, trace_sq, bound, verdicts)


# ------------------------------------------------------------------- audit

CLAIMS = {
    "E_monotone": "total energy is non-increasing along the full trajectory",
    "E_differential": "dE/dt <= -min(mu/2, pi^2/8) E at every sample",
    "E_rate": "fitted decay rate of E >= min(mu/2, pi^2/8)",
    "dE_inequality": "dE/dt <= right side of the energy dissipation inequality at every sample",
    "dE_inequality_unit": "same comparison with the wave norm taken without its leading factor 2",
    "full_L2_rate": "H1 x L2 x L2 norm decays at rate >= mu/4",
    "full_H1_rate": "H1 x L2 x H1 norm decays at rate >= mu/4",
    "reduced_rate": "reduced-system V1 decays at rate >= mu/2",
    "observability": "weighted boundary-velocity integral bounded by kappa e^{-mu t/2}",
    "layer_L2_rate": "boundary-layer ||p||^2 decays at rate >= pi^2/2",
    "layer_L2_oracle": "boundary-layer ||p||^2 rate equals 2 k(c)^2, k tan k = c",
    "layer_H1_rate": "boundary-layer ||p||^2_{H1} decays at rate >= pi^2/4",
    "layer_trace": "|p(0,tau)|^2 <= c^{-1} e^{-pi^2 tau/4} ||p0||^2_{H1} at every step",
    "mu_star_root": "q(a, mu*) = 0 for the closed-form mu*",
    "W_tilde_beta": "V1(alpha) + eps W2(beta) >= O(eps) ||beta||^2 along the error trajectory",
    "W_tilde_alpha": "e^-mu (|alpha_x|^2+|alpha_t|^2) <= V1(alpha) <= e^mu (...) at every sample",
}

CONFIRMED, VIOLATED, INCONCLUSIVE = "CONFIRMED", "VIOLATED", "INCONCLUSIVE"


@dataclass(frozen=True)
class AuditEntry:
    claim_id: str
    measured: float
    bound: float
    verdict: str
    notes: str = ""

    def __post_init__(self):
        if self.claim_id not in CLAIMS:
            raise ValueError(f"unknown claim id {self.claim_id!r}")
        if self.verdict not in (CONFIRMED, VIOLATED, INCONCLUSIVE):
            raise ValueError(f"bad verdict {self.verdict!r}")


@dataclass(frozen=True)
class AuditReport:
    entries: tuple[AuditEntry, ...]

    def __getitem__(self, claim_id: str) -> AuditEntry:
        for e in self.entries:
            if e.claim_id == claim_id:
                return e
        raise KeyError(claim_id)

    @property
    def has_violations(self) -> bool:
        return any(e.verdict == VIOLATED for e in self.entries)

    def format_table(self) -> str:
        lines = [f"{'claim':<16s} {'verdict':<12s} {'measured':>16s} {'bound':>16s}  notes"]
        for e in self.entries:
            lines.append(f"{e.claim_id:<16s} {e.verdict:<12s} {e.measured:>16.9e} "
                         f"{e.bound:>16.9e}  {e.notes}")
        return "\n".join(lines)


def _rate_entry(claim_id, t, values, claimed, burn_in, notes=""):
    try:
        fit = fit_decay_rate(t, values, burn_in)
    except FitError as exc:
        return AuditEntry(claim_id, float("nan"), claimed, INCONCLUSIVE, str(exc))
    if fit.rate <= 0:
        verdict = INCONCLUSIVE if np.allclose(values, values[0]) else VIOLATED
    else:
        verdict = CONFIRMED if fit.rate >= claimed * (1 - RATE_TOLERANCE) else VIOLATED
    extra = f"r2={fit.r_squared:.4f}"
    return AuditEntry(claim_id, fit.rate, claimed, verdict, f"{extra} {notes}".strip())


def _default_ic(g: SpatialGrid) -> CoupledState:
    return make_initial_state([InitialConditionSpec("sine", "u0", (1.0,)),
                               InitialConditionSpec("zero", "u1"),
                               InitialConditionSpec("zero", "p0_field")], g)


def dissipation_bound(s: CoupledState, params: Parameters, g: SpatialGrid,
                      wave_factor: float = 1.0) -> float:
    """Right side of the energy dissipation inequality for one state.

    The wave norm enters squared, -(mu/2) ||(u, u_t)||_H^2, scaled by
    ``wave_factor`` (0.5 drops the leading 2 of the weighted inner product).
    """
    p = s.heat.p
    mu, b, c, d = params.mu, params.b, params.c, params.d
    k = d * d * math.exp(mu) / (2 * mu)
    wave = wave_factor * h_inner_product_wave(s.wave, s.wave, mu, g)
    px = derivative(p, g)
    return (-0.5 * mu * wave - PI2 / 8 * l2_norm_sq(p, g) + (k - 0.5) * l2_norm_sq(px, g)
            + (PI2 / 8 - c / 2) * p[0] ** 2
            + (k + (2 * math.sinh(mu) + 4 * math.cosh(mu)) * b * b - c / 2) * p[0] ** 2)


def claim_audit(params: Parameters, cfg: SimulationConfig, ic: CoupledState | None = None,
                burn_in: float = 0.2) -> AuditReport:
    """Run the standard simulations and compare measured behaviour with each claim.

    The reduced system starts from the wave part of ``ic`` and the boundary
    layer from p0 - (d/c + x d) u0(1). Verdicts never raise: a failed claimed
    bound is reported as VIOLATED.
    """
    cfg = cfg.replace(params=params)
    g = cfg.grid
    if ic is None:
        ic = _default_ic(g)
    mu, c = params.mu, params.c
    entries = []

    # full system
    full = simulate_coupled(cfg, ic, keep_states=True)
    t = full.column("t")
    E = full.column("E")
    E0 = E[0]
    slack = 1e-10 * E0
    incr = float(np.max(np.diff(E))) if E.size > 1 else 0.0
    entries.append(AuditEntry("E_monotone", incr, slack,
                              CONFIRMED if incr <= slack else VIOLATED,
                              "max increase between records"))
    rate_E = min(mu / 2, PI2 / 8)
    dE = np.gradient(E, t) if E.size > 2 else np.zeros_like(E)
    inner = slice(1, -1)
    excess_diff = float(np.max(dE[inner] + rate_E * E[inner])) if E.size > 2 else 0.0
    tol = 1e-6 * max(E0, 1e-300)
    entries.append(AuditEntry("E_differential", excess_diff, 0.0,
                              CONFIRMED if excess_diff <= tol else VIOLATED,
                              "max of dE/dt + min(mu/2, pi^2/8) E (finite differences)"))
    entries.append(_rate_entry("E_rate", t, E, rate_E, burn_in))
    rhs = np.array([dissipation_bound(s, params, g) for s in full.states])
    excess = float(np.max(dE[inner] - rhs[inner])) if E.size > 2 else 0.0
    entries.append(AuditEntry("dE_inequality", excess, 0.0,
                              CONFIRMED if excess <= tol else VIOLATED,
                              "max of dE/dt minus bound; wave norm taken squared"))
    rhs_unit = np.array([dissipation_bound(s, params, g, 0.5) for s in full.states])
    excess_unit = float(np.max(dE[inner] - rhs_unit[inner])) if E.size > 2 else 0.0
    entries.append(AuditEntry("dE_inequality_unit", excess_unit, 0.0,
                              CONFIRMED if excess_unit <= tol else VIOLATED,
                              "wave norm without the leading 2"))
    l2_norm = np.array([math.sqrt(h1_norm_sq(s.wave.u, g) + l2_norm_sq(s.wave.v, g)
                                  + l2_norm_sq(s.heat.p, g)) for s in full.states])
    h1_norm = np.array([math.sqrt(h1_norm_sq(s.wave.u, g) + l2_norm_sq(s.wave.v, g)
                                  + h1_norm_sq(s.heat.p, g)) for s in full.states])
    entries.append(_rate_entry("full_L2_rate", t, l2_norm, mu / 4, burn_in))
    entries.append(_rate_entry("full_H1_rate", t, h1_norm, mu / 4, burn_in))

    # reduced system
    red = simulate_reduced(cfg, ic.wave.u, ic.wave.v)
    entries.append(_rate_entry("reduced_rate", red.column("t"), red.column("V1"), mu / 2, burn_in))
    if q_of(params.a, mu) > 0:
        obs = observability_integral(red, params, g)
        entries.append(AuditEntry("observability", obs.kappa, float("inf"),
                                  CONFIRMED if obs.bounded and np.isfinite(obs.kappa) else VIOLATED,
                                  f"empirical kappa, q={obs.q:.6g}"))
    else:
        entries.append(AuditEntry("observability", float("nan"), float("inf"), INCONCLUSIVE,
                                  "q(a, mu) <= 0"))

    # boundary layer, tau units
    pb0 = ic.heat.p - quasi_steady_state(ic.wave.u[-1], c, params.d, g).p
    if c > 0:
        layer_cfg = cfg.replace(dt=0.5 * g.h, t_final=40.0, record_stride=1)
        layer = simulate_boundary_layer(layer_cfg, pb0)
        tau = layer.column("t")
        l2sq = 2 * layer.column("W2")
        k = robin_neumann_wavenumber(c)
        oracle = 2 * k * k
        claimed = _rate_entry("layer_L2_rate", tau, l2sq, PI2 / 2, burn_in,
                            f"oracle 2k^2={oracle:.6f}")
        entries.append(claimed)
        if np.isfinite(claimed.measured):
            rel = abs(claimed.measured - oracle) / oracle
            entries.append(AuditEntry("layer_L2_oracle", claimed.measured, oracle,
                                      CONFIRMED if rel <= ORACLE_TOLERANCE else VIOLATED,
                                      f"relative deviation {rel:.3e}"))
        else:
            entries.append(AuditEntry("layer_L2_oracle", float("nan"), oracle, INCONCLUSIVE,
                                      claimed.notes))
        h1sq = np.array([l2sq_i + 2 * (v2_i - 0.5 * c * p0_i**2) for l2sq_i, v2_i, p0_i in
                         zip(l2sq, layer.column("V2"), layer.column("p0"))])
        entries.append(_rate_entry("layer_H1_rate", tau, h1sq, PI2 / 4, burn_in))
        tc = boundary_layer_trace_check(layer, c, h1_norm_sq(pb0, g))
        entries.append(AuditEntry("layer_trace", float(tc.n_violated), 0.0,
                                  CONFIRMED if tc.all_confirmed else VIOLATED,
                                  f"violated at {tc.n_violated} of {len(tc.verdicts)} steps"))

    # closed-form mu*
    if params.a not in (1.0, -1.0):
        ms = mu_star(params.a)
        if ms.closed_form is None:
            entries.append(AuditEntry("mu_star_root", float("nan"), 0.0, INCONCLUSIVE,
                                      "closed-form mu* not positive"))
        else:
            qv = q_of(params.a, ms.closed_form)
            entries.append(AuditEntry("mu_star_root", qv, 0.0,
                                      CONFIRMED if abs(qv) <= 1e-9 else VIOLATED,
                                      f"q-root is {ms.q_root}"))

    # error system of the two-time-scale approximation
    entries.extend(_error_system_entries(cfg))
    return AuditReport(tuple(entries))


def _error_system_entries(cfg: SimulationConfig) -> list[AuditEntry]:
    params, g = cfg.params, cfg.grid
    if not (params.c > 0 and params.c != 0):
        return []
    traj = error_trajectory(cfg)
    mu, eps = params.mu, params.epsilon
    lo_ok, hi_ok = True, True
    beta_ratio = math.inf
    for a, b in zip(traj.alpha, traj.beta):
        v = v1(a, mu, g)
        s = l2_norm_sq(derivative(a.u, g), g) + l2_norm_sq(a.v, g)
        lo_ok &= math.exp(-mu) * s <= v * (1 + 1e-12) + 1e-300
        hi_ok &= v <= math.exp(mu) * s * (1 + 1e-12) + 1e-300
        bb = l2_norm_sq(b, g)
        if bb > 0:
            beta_ratio = min(beta_ratio, (v + eps * w2(HeatField(b), g)) / (eps * bb))
    out = [AuditEntry("W_tilde_alpha", float(lo_ok and hi_ok), 1.0,
                      CONFIRMED if lo_ok and hi_ok else VIOLATED, "V1 sandwich on alpha")]
    if math.isinf(beta_ratio):
        out.append(AuditEntry("W_tilde_beta", float("nan"), 0.5, INCONCLUSIVE, "beta identically 0"))
    else:
        out.append(AuditEntry("W_tilde_beta", beta_ratio, 0.5,
                              CONFIRMED if beta_ratio >= 0.5 * (1 - 1e-12) else VIOLATED,
                              "min of W~ / (eps ||beta||^2)"))
    return out


__all__ = [
    "AuditEntry", "AuditReport", "CLAIMS", "ErrorTrajectory", "FitError", "ObservabilityReport",
    "PreconditionError", "RateFit", "TikhonovPoint", "TikhonovSweep", "TraceCheck",
    "boundary_layer_trace_check", "claim_audit", "default_profiles",
    "dissipation_bound", "error_trajectory", "fit_decay_rate", "observability_integral",
    "robin_neumann_wavenumber", "spectral_abscissa", "tikhonov_initial_data", "tikhonov_point",
    "tikhonov_sweep",
]
