import math

import numpy as np
import pytest

from waveheat.analysis import (
    CLAIMS, AuditEntry, FitError, PreconditionError, boundary_layer_trace_check, claim_audit,
    default_profiles, fit_decay_rate, observability_integral, robin_neumann_wavenumber,
    spectral_abscissa, tikhonov_point, tikhonov_sweep,
)
from waveheat.core import DEFAULT_PARAMS, CoupledState, SpatialGrid, h1_norm_sq
from waveheat.solvers import (
    ConfigError, SimulationConfig, assemble_discrete_generator, simulate_boundary_layer,
    simulate_coupled, simulate_reduced, vector_to_state,
)

T = np.linspace(0, 20, 201)


def test_fit_exact_exponential():
    fit = fit_decay_rate(T, 5 * np.exp(-0.3 * T))
    assert abs(fit.rate - 0.3) < 1e-10 and fit.r_squared == pytest.approx(1.0)
    scaled = fit_decay_rate(T, 1e-5 * np.exp(-0.3 * T))
    assert abs(scaled.rate - fit.rate) < 1e-10


def test_fit_constant_and_two_mode():
    assert abs(fit_decay_rate(T, np.full(T.size, 2.0)).rate) < 1e-12
    fit = fit_decay_rate(T, 5 * np.exp(-0.3 * T) + 0.01 * np.exp(-3 * T), 0.2)
    assert fit.rate == pytest.approx(0.3, rel=0.01)
    assert 0 <= fit.r_squared <= 1 and T[0] <= fit.window[0] < fit.window[1] <= T[-1]


def test_fit_errors():
    with pytest.raises(FitError):
        fit_decay_rate(T[:5], np.exp(-T[:5]))
    with pytest.raises(FitError):
        fit_decay_rate(T, np.zeros(T.size))
    # samples below 1e-12 of the start are dropped
    with pytest.raises(FitError):
        fit_decay_rate(T, np.exp(-10 * T), 0.5)


def test_wavenumber():
    k = robin_neumann_wavenumber(4.0)
    assert k * math.tan(k) == pytest.approx(4.0, rel=1e-12)
    assert k == pytest.approx(1.2646, abs=1e-4)
    assert 2 * k * k == pytest.approx(3.198, abs=1e-3)


def test_spectrum_decoupled():
    g = SpatialGrid(40)
    gen = assemble_discrete_generator(DEFAULT_PARAMS.replace(a=0.0, b=0.0, d=0.0), g)
    wave = np.linalg.eigvals(gen.matrix[:80, :80])
    assert np.all(np.abs(wave.real) <= 1e-8 * np.maximum(1, np.abs(wave)))
    heat = np.linalg.eigvals(gen.block("p", "p"))
    assert np.all(np.abs(heat.imag) < 1e-9) and np.all(heat.real < 0)


def test_spectrum_heat_block():
    g = SpatialGrid(100)
    gen = assemble_discrete_generator(DEFAULT_PARAMS.replace(b=0.0, d=0.0, epsilon=1.0), g)
    heat = np.linalg.eigvals(gen.block("p", "p")).real
    k = robin_neumann_wavenumber(4.0)
    assert heat.max() == pytest.approx(-k * k, rel=0.02)


def test_spectrum_admissible_and_sorted():
    g = SpatialGrid(40)
    absc, ev = spectral_abscissa(assemble_discrete_generator(DEFAULT_PARAMS, g))
    assert absc < 0 and absc == ev[0].real
    assert np.all(np.diff(ev.real) <= 0)


def test_energy_rate_matches_spectrum():
    params = DEFAULT_PARAMS
    g = SpatialGrid(40)
    gen = assemble_discrete_generator(params, g)
    ev, vec = np.linalg.eig(gen.matrix)
    low = np.where(np.abs(ev.imag) < 5)[0]
    j = low[np.argmax(ev.real[low])]
    lam = ev[j]
    cfg = SimulationConfig(params, g, 1e-3, 5.0, record_stride=50)
    E = 0
    for part in (vec[:, j].real, vec[:, j].imag):
        r = simulate_coupled(cfg, vector_to_state(part, g.nx))
        E = E + r.column("E")
    fit = fit_decay_rate(r.column("t"), E, 0.2)
    assert fit.rate == pytest.approx(-2 * lam.real, rel=0.05)


def _sweep_cfg(nx=50, t_final=2.0):
    return SimulationConfig.default(DEFAULT_PARAMS, nx=nx, t_final=t_final)


def test_tikhonov_zero_profiles():
    cfg = _sweep_cfg()
    z = np.zeros(cfg.grid.size)
    pt = tikhonov_point(cfg, (z, z, z))
    assert pt.e_u_max_weighted == 0 and pt.e_p_max_weighted == 0
    assert len(pt.t_grid) == 51


def test_tikhonov_homogeneity():
    cfg = _sweep_cfg()
    prof = default_profiles(cfg.grid)
    a = tikhonov_point(cfg, prof)
    b = tikhonov_point(cfg, tuple(2 * p for p in prof))
    assert np.allclose(b.e_u, 2 * a.e_u, rtol=1e-9, atol=0)
    assert np.allclose(b.e_p, 2 * a.e_p, rtol=1e-9, atol=0)


def test_default_profiles_normalised():
    g = SpatialGrid(50)
    phi, psi, chi = default_profiles(g)
    assert h1_norm_sq(phi, g) == pytest.approx(1.0)
    assert h1_norm_sq(chi, g) == pytest.approx(1.0)
    assert phi[0] == 0


def test_tikhonov_preconditions():
    cfg = _sweep_cfg()
    with pytest.raises(ConfigError):
        tikhonov_sweep(cfg, [0.1, 0.05])
    with pytest.raises(ConfigError):
        tikhonov_sweep(cfg, [0.05, 0.1, 0.01])
    bad = cfg.replace(params=DEFAULT_PARAMS.replace(c=3.0))
    with pytest.raises(ConfigError):
        tikhonov_sweep(bad, [0.1, 0.05, 0.025])


def test_tikhonov_parallel_matches_serial():
    cfg = _sweep_cfg(nx=30, t_final=1.0)
    eps = [0.1, 0.05, 0.025]
    s1 = tikhonov_sweep(cfg, eps)
    s2 = tikhonov_sweep(cfg, eps, workers=2)
    assert [p.e_u_max_weighted for p in s1.points] == [p.e_u_max_weighted for p in s2.points]
    assert s1.slope_u == s2.slope_u and s1.slope_p == s2.slope_p


def test_observability():
    cfg = SimulationConfig.default(DEFAULT_PARAMS, nx=60, t_final=10.0)
    g = cfg.grid
    zero = simulate_reduced(cfg, np.zeros(g.size), np.zeros(g.size))
    rep = observability_integral(zero, DEFAULT_PARAMS, g)
    assert rep.kappa == 0 and rep.integral[0] == 0
    run = simulate_reduced(cfg, np.sin(np.pi * g.nodes / 2), np.zeros(g.size))
    rep = observability_integral(run, DEFAULT_PARAMS, g)
    assert rep.integral[0] == 0 and math.isfinite(rep.kappa) and rep.kappa > 0 and rep.bounded
    with pytest.raises(PreconditionError):
        observability_integral(run, DEFAULT_PARAMS.replace(a=3.0, mu=1.0), g)


def test_trace_check_examples():
    g = SpatialGrid(50)
    cfg = SimulationConfig(DEFAULT_PARAMS, g, 0.01, 1.0)
    tc = boundary_layer_trace_check(simulate_boundary_layer(cfg, np.zeros(g.size)), 4.0, 0.0)
    assert tc.all_confirmed
    ones = np.ones(g.size)
    tc = boundary_layer_trace_check(simulate_boundary_layer(cfg, ones), 4.0, h1_norm_sq(ones, g))
    assert tc.verdicts[0] == "VIOLATED"
    assert tc.bound[0] == pytest.approx(0.25) and tc.trace_sq[0] == 1.0


def test_audit_zero_data():
    cfg = SimulationConfig.default(DEFAULT_PARAMS, nx=30, t_final=2.0)
    rep = claim_audit(DEFAULT_PARAMS, cfg, CoupledState.zeros(cfg.grid))
    for cid in ("E_rate", "full_L2_rate", "full_H1_rate", "reduced_rate", "layer_L2_rate"):
        assert rep[cid].verdict == "INCONCLUSIVE"
    for cid in ("E_monotone", "dE_inequality", "dE_inequality_unit", "E_differential"):
        assert rep[cid].verdict == "CONFIRMED"
    assert all(e.claim_id in CLAIMS for e in rep.entries)


def test_audit_default():
    cfg = SimulationConfig.default(DEFAULT_PARAMS, nx=100, t_final=10.0)
    rep = claim_audit(DEFAULT_PARAMS, cfg)
    assert rep["E_monotone"].verdict == "CONFIRMED"
    assert rep["E_rate"].verdict == "CONFIRMED"
    assert rep["layer_L2_rate"].verdict == "VIOLATED"
    assert rep["layer_L2_oracle"].verdict == "CONFIRMED"
    assert rep["mu_star_root"].verdict == "VIOLATED"
    assert rep["W_tilde_alpha"].verdict == "CONFIRMED"
    assert rep.has_violations
    assert "layer_L2_oracle" in rep.format_table()


def test_audit_entry_validation():
    with pytest.raises(ValueError):
        AuditEntry("no_such_claim", 0, 0, "CONFIRMED")
    with pytest.raises(ValueError):
        AuditEntry("E_rate", 0, 0, "MAYBE")
