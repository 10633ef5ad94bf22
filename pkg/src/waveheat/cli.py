"""Command-line front end: config parsing, subcommand dispatch and CSV output.

Config files are line based::

    [params]
    a = 0.5
    ...
    [grid]
    nx = 100

Exit codes: 0 success, 1 config or usage error, 2 numerical failure,
3 audit reported VIOLATED entries (outputs are still written).
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .analysis import claim_audit, spectral_abscissa, tikhonov_sweep
from .core import EnergyRecord, NumericalError, Parameters, ParameterError, SpatialGrid, quasi_steady_state
from .inequalities import fuzz_lemmas
from .solvers import (
    ConfigError,
    InitialConditionSpec,
    SimulationConfig,
    assemble_discrete_generator,
    make_initial_state,
    simulate_boundary_layer,
    simulate_coupled,
    simulate_reduced,
)
from .validator import check_all

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_VIOLATED = 0, 1, 2, 3

PARAM_KEYS = ("a", "b", "c", "d", "epsilon", "mu")
GRID_KEYS = ("nx", "dt", "t_final", "record_stride")
IC_KEYS = ("u0", "u1", "p0")
EXPERIMENT_KEYS = ("eps_list", "trials", "seed", "burn_in")
SECTIONS = {"params": PARAM_KEYS, "grid": GRID_KEYS, "ic": IC_KEYS, "experiment": EXPERIMENT_KEYS}

DEFAULT_IC = {"u0": "sine 1", "u1": "zero", "p0": "zero"}
DEFAULT_EPS_LIST = (0.1, 0.05, 0.025, 0.0125)


@dataclass(frozen=True)
class RunConfig:
    params: Parameters
    nx: int = 100
    dt: float | None = None
    t_final: float = 10.0
    record_stride: int = 1
    ic: dict = field(default_factory=lambda: dict(DEFAULT_IC))
    eps_list: tuple[float, ...] = DEFAULT_EPS_LIST
    trials: int = 1000
    seed: int = 0
    burn_in: float = 0.2

    @property
    def grid(self) -> SpatialGrid:
        return SpatialGrid(self.nx)

    def simulation(self) -> SimulationConfig:
        dt = self.dt if self.dt is not None else 0.5 / self.nx
        return SimulationConfig(self.params, self.grid, dt, self.t_final, self.record_stride)

    def initial_state(self):
        specs = [InitialConditionSpec.parse(self.ic["u0"], "u0"),
                 InitialConditionSpec.parse(self.ic["u1"], "u1"),
                 InitialConditionSpec.parse(self.ic["p0"], "p0_field")]
        return make_initial_state(specs, self.grid)


def _number(text, lineno, key, kind=float):
    try:
        value = kind(text)
    except ValueError:
        raise ConfigError(f"line {lineno}: malformed value for {key!r}: {text!r}") from None
    if kind is float and not math.isfinite(value):
        raise ConfigError(f"line {lineno}: {key!r} must be finite, got {text!r}")
    return value


def _int(text, lineno, key):
    value = _number(text, lineno, key)
    if value != int(value):
        raise ConfigError(f"line {lineno}: {key!r} must be an integer, got {text!r}")
    return int(value)


def parse_config_text(text: str) -> RunConfig:
    raw: dict[str, dict[str, tuple[str, int]]] = {s: {} for s in SECTIONS}
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside of any section")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in SECTIONS[section]:
            raise ConfigError(f"line {lineno}: unknown key {key!r} in [{section}]")
        if key in raw[section]:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} in [{section}]")
        raw[section][key] = (value, lineno)

    missing = [k for k in PARAM_KEYS if k not in raw["params"]]
    if missing:
        raise ConfigError(f"missing required key(s) in [params]: {', '.join(missing)}")
    values = {k: _number(v, ln, k) for k, (v, ln) in raw["params"].items()}
    for k in ("epsilon", "mu"):
        if values[k] <= 0:
            raise ConfigError(f"line {raw['params'][k][1]}: {k} must be > 0, got {values[k]}")
    params = Parameters(**values)

    kw: dict = {}
    grid = raw["grid"]
    if "nx" in grid:
        kw["nx"] = _int(*grid["nx"], "nx")
        if kw["nx"] < 8:
            raise ConfigError(f"line {grid['nx'][1]}: nx must be >= 8")
    for key in ("dt", "t_final"):
        if key in grid:
            kw[key] = _number(*grid[key], key)
            if kw[key] <= 0:
                raise ConfigError(f"line {grid[key][1]}: {key} must be > 0")
    if "record_stride" in grid:
        kw["record_stride"] = _int(*grid["record_stride"], "record_stride")
        if kw["record_stride"] < 1:
            raise ConfigError(f"line {grid['record_stride'][1]}: record_stride must be >= 1")

    ic = dict(DEFAULT_IC)
    target = {"u0": "u0", "u1": "u1", "p0": "p0_field"}
    for key, (value, lineno) in raw["ic"].items():
        try:
            InitialConditionSpec.parse(value, target[key])
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
        ic[key] = value
    kw["ic"] = ic

    exp = raw["experiment"]
    if "eps_list" in exp:
        kw["eps_list"] = _eps_list(*exp["eps_list"])
    if "trials" in exp:
        kw["trials"] = _int(*exp["trials"], "trials")
    if "seed" in exp:
        kw["seed"] = _int(*exp["seed"], "seed")
    if "burn_in" in exp:
        kw["burn_in"] = _number(*exp["burn_in"], "burn_in")
        if not 0 <= kw["burn_in"] < 1:
            raise ConfigError(f"line {exp['burn_in'][1]}: burn_in must lie in [0, 1)")
    return RunConfig(params, **kw)


def _eps_list(text: str, lineno: int | None = None) -> tuple[float, ...]:
    where = f"line {lineno}: " if lineno else ""
    try:
        eps = tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise ConfigError(f"{where}malformed eps_list {text!r}") from None
    if not eps or any(not (math.isfinite(e) and e > 0) for e in eps):
        raise ConfigError(f"{where}eps_list needs positive finite values, got {text!r}")
    return eps


def parse_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text)


# ---------------------------------------------------------------- output

def _fmt(x) -> str:
    return f"{float(x):.16e}"


def _write(out, text: str):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def records_csv(records) -> str:
    lines = [",".join(EnergyRecord.FIELDS)]
    lines += [",".join(_fmt(v) for v in r.as_tuple()) for r in records]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ subcommands

def cmd_validate(cfg: RunConfig, args) -> int:
    text = "\n".join(r.format_table() for r in check_all(cfg.params)) + "\n"
    _write(args.out, text)
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, args) -> int:
    sim = cfg.simulation()
    ic = cfg.initial_state()
    if args.system == "full":
        result = simulate_coupled(sim, ic)
    elif args.system == "reduced":
        result = simulate_reduced(sim, ic.wave.u, ic.wave.v)
    else:
        qss = quasi_steady_state(ic.wave.u[-1], cfg.params.c, cfg.params.d, sim.grid)
        result = simulate_boundary_layer(sim, ic.heat.p - qss.p)
    _write(args.out, records_csv(result.records))
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, args) -> int:
    gen = assemble_discrete_generator(cfg.params, cfg.grid)
    _, ev = spectral_abscissa(gen)
    lines = ["re,im"] + [f"{_fmt(z.real)},{_fmt(z.imag)}" for z in ev]
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_tikhonov(cfg: RunConfig, args) -> int:
    eps = _eps_list(args.eps_list) if args.eps_list else cfg.eps_list
    workers = min(len(eps), os.cpu_count() or 1)
    sweep = tikhonov_sweep(cfg.simulation(), eps, workers=workers)
    summary = ["epsilon,e_u_sup,e_p_sup"] + [
        f"{_fmt(p.epsilon)},{_fmt(p.e_u_max_weighted)},{_fmt(p.e_p_max_weighted)}"
        for p in sweep.points]
    slopes = f"slope_e_u {_fmt(sweep.slope_u)}\nslope_e_p {_fmt(sweep.slope_p)}\n"
    if args.out is None:
        sys.stdout.write("\n".join(summary) + "\n" + slopes)
        return EXIT_OK
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for p in sweep.points:
        rows = ["t,e_u,e_p"] + [f"{_fmt(t)},{_fmt(u)},{_fmt(q)}"
                                for t, u, q in zip(p.t_grid, p.e_u, p.e_p)]
        _write(out / f"eps_{p.epsilon:.6g}.csv", "\n".join(rows) + "\n")
    _write(out / "summary.csv", "\n".join(summary) + "\n")
    _write(out / "slopes.txt", slopes)
    return EXIT_OK


def cmd_audit(cfg: RunConfig, args) -> int:
    report = claim_audit(cfg.params, cfg.simulation(), cfg.initial_state(), burn_in=cfg.burn_in)
    _write(args.out, report.format_table() + "\n")
    return EXIT_VIOLATED if report.has_violations else EXIT_OK


def cmd_inequalities(cfg: RunConfig, args) -> int:
    trials = args.trials if args.trials is not None else cfg.trials
    seed = args.seed if args.seed is not None else cfg.seed
    summary = fuzz_lemmas(trials, seed)
    lines = [summary.format_table(), "", "key,trial,lhs,rhs,coefficients"]
    for c in summary.counterexamples:
        coeffs = " ".join(_fmt(x) for x in c.coefficients)
        lines.append(f"{c.key},{c.trial},{_fmt(c.lhs)},{_fmt(c.rhs)},{coeffs}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "simulate": cmd_simulate,
    "spectrum": cmd_spectrum,
    "tikhonov": cmd_tikhonov,
    "audit": cmd_audit,
    "inequalities": cmd_inequalities,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="waveheat", description="Coupled wave-heat verification suite")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--out", default=None)
        if name == "simulate":
            p.add_argument("--system", choices=("full", "reduced", "layer"), default="full")
        if name == "tikhonov":
            p.add_argument("--eps-list", default=None)
        if name == "inequalities":
            p.add_argument("--trials", type=int, default=None)
            p.add_argument("--seed", type=int, default=None)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = parse_config(args.config)
        return COMMANDS[args.command](cfg, args)
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParameterError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
