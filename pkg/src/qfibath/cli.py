"""Command-line front end: evaluate, sweep, grid and optimize, then serialize.

Subcommands
-----------
point      one (estimand, T, t, r, theta, s) evaluation
sweep      1-D sweep of qfi over T | t | r | theta | alpha
grid       (t, T) density grid of qfi
opt-time   optimal interaction time per temperature

Examples
--------
    qfibath point --estimand T --temp 0.5 --time 1 --r 0.1 --theta 1 --s 0.5
    qfibath sweep --estimand T --axis T --range 0.01:3 --points 200 \
        --time 1 --theta 1 --r 0.1 --s 0.5 --out sweep.csv
    qfibath sweep --recipe fig1a --out fig1a.csv
    qfibath opt-time --T-range 0.2:2 --T-points 40 --theta 1.5708 --r 0.5 \
        --s 0.5 --t-max 20 --out opt.csv

Numbers are serialized as shortest round-trip decimals; identical invocations
produce identical data sections (only the timestamp metadata line varies).
Exit codes: 0 success, 2 usage/validation failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import NoReturn

import numpy as np

from . import __version__
from .decoherence import DEFAULT_QUADRATURE, ConvergenceError, QuadratureConfig
from .probe_state import ProbeInit
from .qfi_engine import Estimand, qfi_point
from .spectral_bath import BathPoint, SpectralParams, SqueezeParams
from .sweep_optimize import GridSpec, SweepSpec, density_grid, optimal_time, sweep

__all__ = ["main", "build_parser", "RECIPES", "EXIT_OK", "EXIT_USAGE", "EXIT_NUMERICAL"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# environment override for the default relative quadrature tolerance;
# an explicit --rel-tol flag wins over it
ENV_REL_TOL = "QFIBATH_REL_TOL"

ESTIMANDS = {
    "T": Estimand.TEMPERATURE,
    "r": Estimand.SQUEEZE_AMPLITUDE,
    "theta": Estimand.SQUEEZE_PHASE,
}

# sweep axis -> flag that would otherwise fix that variable
AXIS_FLAG = {"T": "temp", "t": "time", "r": "r", "theta": "theta", "alpha": "alpha"}

SWEEP_AXES_CHOICES = ("T", "t", "r", "theta", "alpha")

POINT_COLUMNS = [
    "estimand", "T", "t", "r", "theta", "s", "omega_c", "alpha",
    "gamma", "dgamma", "qfi", "cfi_term", "quantum_term",
]
SWEEP_COLUMNS = ["axis", "value", "gamma", "dgamma", "qfi"]
GRID_COLUMNS = ["T", "t", "gamma", "dgamma", "qfi"]
OPT_TIME_COLUMNS = ["T", "t_star", "qfi_star"]


def _build_recipes() -> dict[str, dict]:
    """Documented flag sets reproducing each published panel, one curve per run."""

    def sweep_recipe(estimand, axis, lo, hi, s, **fixed):
        flags = {"estimand": estimand, "axis": axis, "range": (lo, hi), "points": 200, "s": s}
        flags.update(fixed)
        return {"subcommand": "sweep", "flags": flags}

    recipes: dict[str, dict] = {}
    # information about T vs temperature (a, b) and vs time (c, d),
    # one figure per ohmicity regime
    for prefix, s in (("fig1", 0.5), ("fig3", 1.0), ("fig5", 3.0)):
        recipes[f"{prefix}a"] = sweep_recipe("T", "T", 0.01, 3.0, s, time=1.0, theta=1.0, r=0.1)
        recipes[f"{prefix}b"] = sweep_recipe("T", "T", 0.01, 3.0, s, time=1.0, r=0.1, theta=1.0)
        recipes[f"{prefix}c"] = sweep_recipe("T", "t", 0.0, 10.0, s, temp=0.5, theta=1.0, r=0.1)
        recipes[f"{prefix}d"] = sweep_recipe("T", "t", 0.0, 10.0, s, temp=0.5, r=0.1, theta=1.0)
    # information about r vs r (a, b) and about theta vs theta (c, d)
    for prefix, s in (("fig2", 0.5), ("fig4", 1.0), ("fig6", 3.0)):
        recipes[f"{prefix}a"] = sweep_recipe("r", "r", 0.0, 3.0, s, time=1.0, theta=1.0, temp=0.1)
        recipes[f"{prefix}b"] = sweep_recipe("r", "r", 0.0, 3.0, s, time=1.0, temp=0.5, theta=1.0)
        recipes[f"{prefix}c"] = sweep_recipe(
            "theta", "theta", 0.0, 6.2832, s, temp=0.5, time=1.0, r=1.5
        )
        recipes[f"{prefix}d"] = sweep_recipe(
            "theta", "theta", 0.0, 6.2832, s, time=1.0, r=0.1, temp=0.5
        )
    # (t, T) density grids per regime
    for name, s in (("fig7", 0.5), ("fig8", 1.0), ("fig9", 3.0)):
        recipes[name] = {
            "subcommand": "grid",
            "flags": {
                "estimand": "T",
                "t_range": (0.0, 10.0),
                "T_range": (0.01, 3.0),
                "t_points": 50,
                "T_points": 50,
                "s": s,
                "r": 0.1,
                "theta": 1.0,
            },
        }
    # optimal time vs temperature; rerun with --s 1 and --s 3 for the other curves
    recipes["fig10"] = {
        "subcommand": "opt-time",
        "flags": {
            "estimand": "T",
            "T_range": (0.2, 2.0),
            "T_points": 40,
            "t_max": 20.0,
            "theta": 0.5 * math.pi,
            "r": 0.5,
            "s": 0.5,
        },
    }
    return recipes


RECIPES = _build_recipes()


def _fail(flag: str, message: str) -> NoReturn:
    print(f"error: {flag}: {message}", file=sys.stderr)
    raise SystemExit(EXIT_USAGE)


def _fmt(value) -> str:
    """Shortest decimal that round-trips the binary float (locale-independent)."""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _range_arg(text: str) -> tuple[float, float]:
    try:
        lo_text, hi_text = text.split(":")
        lo, hi = float(lo_text), float(hi_text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise argparse.ArgumentTypeError("range endpoints must be finite")
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"lower bound must be strictly below upper, got {text!r}")
    return lo, hi


def _add_shared_arguments(parser: argparse.ArgumentParser, with_recipe: bool) -> None:
    parser.add_argument("--estimand", choices=sorted(ESTIMANDS), default=None,
                        help="parameter the information is taken with respect to")
    parser.add_argument("--temp", type=float, default=None, help="bath temperature (k_B = 1)")
    parser.add_argument("--time", type=float, default=None, help="interaction time")
    parser.add_argument("--r", type=float, default=None, help="bath squeezing amplitude, r >= 0")
    parser.add_argument("--theta", type=float, default=None,
                        help="bath squeezing phase in radians")
    parser.add_argument("--s", type=float, default=None, help="ohmicity exponent, s > 0")
    parser.add_argument("--omega-c", type=float, default=None,
                        help="spectral-density cutoff frequency (default 1)")
    parser.add_argument("--alpha", type=float, default=None,
                        help="initial superposition angle in [0, pi] (default pi/2)")
    parser.add_argument("--omega-0", type=float, default=None,
                        help="qubit transition frequency; recorded in metadata only, "
                             "pure dephasing leaves it out of every result")
    parser.add_argument("--rel-tol", type=float, default=None,
                        help=f"relative quadrature tolerance (default 1e-8; env {ENV_REL_TOL})")
    parser.add_argument("--abs-tol", type=float, default=None,
                        help="absolute quadrature tolerance (default 1e-12)")
    parser.add_argument("--max-subdivisions", type=int, default=None,
                        help="adaptive subdivision budget per panel (default 200)")
    parser.add_argument("--omega-max-factor", type=float, default=None,
                        help="upper integration limit in units of omega_c * max(1, s), >= 10")
    parser.add_argument("--out", default="-", help="output path, '-' for stdout (default)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    if with_recipe:
        parser.add_argument("--recipe", default=None, metavar="figN",
                            help="expand the documented flag set of a published panel "
                                 "(fig1a..fig9, fig10); explicit flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfibath",
        description="Quantum Fisher information of a dephasing qubit in a squeezed thermal bath",
    )
    parser.add_argument("--version", action="version", version=f"qfibath {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    point = subparsers.add_parser("point", help="evaluate one sample")
    _add_shared_arguments(point, with_recipe=False)
    point.set_defaults(handler=cmd_point)

    sweep_parser = subparsers.add_parser("sweep", help="1-D sweep over one axis")
    _add_shared_arguments(sweep_parser, with_recipe=True)
    sweep_parser.add_argument("--axis", choices=SWEEP_AXES_CHOICES, default=None)
    sweep_parser.add_argument("--range", type=_range_arg, default=None, metavar="lo:hi")
    sweep_parser.add_argument("--points", type=int, default=None)
    sweep_parser.set_defaults(handler=cmd_sweep)

    grid = subparsers.add_parser("grid", help="(t, T) density grid")
    _add_shared_arguments(grid, with_recipe=True)
    grid.add_argument("--t-range", type=_range_arg, default=None, metavar="lo:hi")
    grid.add_argument("--T-range", type=_range_arg, default=None, metavar="lo:hi")
    grid.add_argument("--t-points", type=int, default=None)
    grid.add_argument("--T-points", type=int, default=None)
    grid.set_defaults(handler=cmd_grid)

    opt = subparsers.add_parser("opt-time", help="optimal interaction time per temperature")
    _add_shared_arguments(opt, with_recipe=True)
    opt.add_argument("--T-range", type=_range_arg, default=None, metavar="lo:hi")
    opt.add_argument("--T-points", type=int, default=None)
    opt.add_argument("--t-max", type=float, default=None, help="upper end of the time search")
    opt.set_defaults(handler=cmd_opt_time)

    return parser


def _apply_recipe(args: argparse.Namespace) -> None:
    name = getattr(args, "recipe", None)
    if name is None:
        return
    recipe = RECIPES.get(name)
    if recipe is None:
        _fail("--recipe", f"unknown recipe {name!r}; known: {', '.join(sorted(RECIPES))}")
    if recipe["subcommand"] != args.subcommand:
        _fail("--recipe", f"{name} belongs to the {recipe['subcommand']!r} subcommand")
    for dest, value in recipe["flags"].items():
        if getattr(args, dest, None) is None:
            setattr(args, dest, value)


def _require(args: argparse.Namespace, dests: list[str]) -> None:
    for dest in dests:
        if getattr(args, dest) is None:
            _fail("--" + dest.replace("_", "-"), "is required")


def _quadrature_config(args: argparse.Namespace) -> QuadratureConfig:
    rel_tol = args.rel_tol
    if rel_tol is None:
        env_value = os.environ.get(ENV_REL_TOL)
        if env_value is not None:
            try:
                rel_tol = float(env_value)
            except ValueError:
                _fail(ENV_REL_TOL, f"must be a float, got {env_value!r}")
    if rel_tol is None:
        rel_tol = DEFAULT_QUADRATURE.rel_tol
    elif not rel_tol > 0.0:
        _fail("--rel-tol", "must be > 0")
    abs_tol = DEFAULT_QUADRATURE.abs_tol if args.abs_tol is None else args.abs_tol
    if not abs_tol > 0.0:
        _fail("--abs-tol", "must be > 0")
    subdivisions = (
        DEFAULT_QUADRATURE.max_subdivisions
        if args.max_subdivisions is None
        else args.max_subdivisions
    )
    if subdivisions < 1:
        _fail("--max-subdivisions", "must be >= 1")
    factor = (
        DEFAULT_QUADRATURE.omega_max_factor
        if args.omega_max_factor is None
        else args.omega_max_factor
    )
    if not factor >= 10.0:
        _fail("--omega-max-factor", "must be >= 10")
    return QuadratureConfig(
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        max_subdivisions=subdivisions,
        omega_max_factor=factor,
    )


def _spectral_params(args: argparse.Namespace) -> SpectralParams:
    if not args.s > 0.0:
        _fail("--s", "must be > 0")
    omega_c = 1.0 if args.omega_c is None else args.omega_c
    if not omega_c > 0.0:
        _fail("--omega-c", "must be > 0")
    return SpectralParams(s=args.s, omega_c=omega_c)


def _squeeze_params(args: argparse.Namespace, *, r: float | None = None,
                    theta: float | None = None) -> SqueezeParams:
    r = args.r if r is None else r
    theta = args.theta if theta is None else theta
    if not r >= 0.0:
        _fail("--r", "must be >= 0")
    if not math.isfinite(theta):
        _fail("--theta", "must be finite")
    return SqueezeParams(r=r, theta=theta)


def _probe_init(args: argparse.Namespace, *, alpha: float | None = None) -> ProbeInit:
    if alpha is None:
        alpha = 0.5 * math.pi if args.alpha is None else args.alpha
    if not 0.0 <= alpha <= math.pi:
        _fail("--alpha", "must lie in [0, pi]")
    return ProbeInit(alpha=alpha)


def _metadata(args: argparse.Namespace, qc: QuadratureConfig, columns: list[str]) -> dict:
    metadata = {
        "tool": "qfibath",
        "version": __version__,
        "columns": columns,
        "quadrature": {
            "rel_tol": qc.rel_tol,
            "abs_tol": qc.abs_tol,
            "max_subdivisions": qc.max_subdivisions,
            "omega_max_factor": qc.omega_max_factor,
        },
    }
    if args.omega_0 is not None:
        metadata["omega_0"] = args.omega_0
    metadata["timestamp"] = datetime.now(timezone.utc).isoformat()
    return metadata


def _csv_text(spec: dict, metadata: dict, columns: list[str], rows: list[list]) -> str:
    lines = [f"# tool = {metadata['tool']} {metadata['version']}"]
    for key, value in spec.items():
        if key == "fixed":
            for fixed_key, fixed_value in value.items():
                lines.append(f"# {fixed_key} = {_fmt(fixed_value)}")
        elif isinstance(value, (tuple, list)):
            lines.append(f"# {key} = {_fmt(value[0])}:{_fmt(value[1])}")
        else:
            lines.append(f"# {key} = {_fmt(value)}")
    for key, value in metadata["quadrature"].items():
        lines.append(f"# {key} = {_fmt(value)}")
    if "omega_0" in metadata:
        lines.append(f"# omega_0 = {_fmt(metadata['omega_0'])}")
    # the timestamp is the only line that varies between identical invocations;
    # the data section (header onward) is byte-deterministic
    lines.append(f"# timestamp = {metadata['timestamp']}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _json_text(spec: dict, metadata: dict, rows: list[list]) -> str:
    return json.dumps({"spec": spec, "metadata": metadata, "rows": rows}, indent=2) + "\n"


def _emit(args: argparse.Namespace, spec: dict, metadata: dict,
          columns: list[str], rows: list[list]) -> None:
    if args.format == "json":
        text = _json_text(spec, metadata, rows)
    else:
        text = _csv_text(spec, metadata, columns, rows)
    if args.out == "-":
        sys.stdout.write(text)
        return
    path = Path(args.out)
    try:
        path.write_text(text, encoding="utf-8")
    except BaseException:
        path.unlink(missing_ok=True)  # never leave partial files behind
        raise


def _check_fixed_domains(args: argparse.Namespace, needed: list[str]) -> None:
    if "temp" in needed and not args.temp >= 0.0:
        _fail("--temp", "must be >= 0")
    if "time" in needed and not args.time >= 0.0:
        _fail("--time", "must be >= 0")


def cmd_point(args: argparse.Namespace) -> int:
    _require(args, ["estimand", "temp", "time", "r", "theta", "s"])
    _check_fixed_domains(args, ["temp", "time"])
    estimand = ESTIMANDS[args.estimand]
    if estimand is Estimand.TEMPERATURE and not args.temp > 0.0:
        _fail("--temp", "must be > 0 when estimating T")
    qc = _quadrature_config(args)
    sp = _spectral_params(args)
    sq = _squeeze_params(args)
    init = _probe_init(args)
    point = BathPoint(temperature=args.temp, time=args.time)

    sample = qfi_point(estimand, point, sq, sp, init, qc)
    row = [
        args.estimand, point.temperature, point.time, sq.r, sq.theta, sp.s,
        sp.omega_c, init.alpha, sample.gamma, sample.dgamma, sample.qfi,
        sample.cfi_term, sample.quantum_term,
    ]
    spec = {
        "subcommand": "point",
        "estimand": args.estimand,
        "fixed": {
            "temp": point.temperature, "time": point.time, "r": sq.r,
            "theta": sq.theta, "s": sp.s, "omega_c": sp.omega_c, "alpha": init.alpha,
        },
    }
    _emit(args, spec, _metadata(args, qc, POINT_COLUMNS), POINT_COLUMNS, [row])
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    _apply_recipe(args)
    _require(args, ["estimand", "axis", "range", "points"])
    axis = args.axis
    fixed_needed = [flag for ax, flag in AXIS_FLAG.items() if ax != axis and flag != "alpha"]
    _require(args, fixed_needed + ["s"])
    _check_fixed_domains(args, fixed_needed)
    if args.points < 2:
        _fail("--points", "must be >= 2")
    lo, hi = args.range
    estimand = ESTIMANDS[args.estimand]
    if estimand is Estimand.TEMPERATURE:
        if axis == "T" and lo <= 0.0:
            _fail("--range", "T sweeps estimating T must start above 0")
        if axis != "T" and not args.temp > 0.0:
            _fail("--temp", "must be > 0 when estimating T")
    qc = _quadrature_config(args)
    sp = _spectral_params(args)
    # the swept variable takes its placeholder from the range start; each row
    # overrides it anyway
    sq = _squeeze_params(
        args,
        r=lo if axis == "r" else args.r,
        theta=lo if axis == "theta" else args.theta,
    )
    init = _probe_init(args, alpha=lo if axis == "alpha" else None)
    point = BathPoint(
        temperature=lo if axis == "T" else args.temp,
        time=lo if axis == "t" else args.time,
    )
    try:
        spec_obj = SweepSpec(
            estimand=estimand, axis=axis, lo=lo, hi=hi, points=args.points,
            point=point, sq=sq, sp=sp, init=init,
        )
    except ValueError as exc:
        _fail("--range", str(exc))

    table = sweep(spec_obj, qc)
    rows = [[axis, value, g, dg, q] for value, g, dg, q in table.rows]
    fixed = {}
    if axis != "t":
        fixed["time"] = point.time
    if axis != "T":
        fixed["temp"] = point.temperature
    if axis != "r":
        fixed["r"] = sq.r
    if axis != "theta":
        fixed["theta"] = sq.theta
    fixed.update({"s": sp.s, "omega_c": sp.omega_c})
    if axis != "alpha":
        fixed["alpha"] = init.alpha
    spec = {
        "subcommand": "sweep",
        "estimand": args.estimand,
        "axis": axis,
        "range": [lo, hi],
        "points": args.points,
        "fixed": fixed,
    }
    _emit(args, spec, _metadata(args, qc, SWEEP_COLUMNS), SWEEP_COLUMNS, rows)
    return EXIT_OK


def cmd_grid(args: argparse.Namespace) -> int:
    _apply_recipe(args)
    _require(args, ["estimand", "t_range", "T_range", "t_points", "T_points", "r", "theta", "s"])
    if args.t_points < 2:
        _fail("--t-points", "must be >= 2")
    if args.T_points < 2:
        _fail("--T-points", "must be >= 2")
    estimand = ESTIMANDS[args.estimand]
    if estimand is Estimand.TEMPERATURE and args.T_range[0] <= 0.0:
        _fail("--T-range", "must start above 0 when estimating T")
    qc = _quadrature_config(args)
    sp = _spectral_params(args)
    sq = _squeeze_params(args)
    init = _probe_init(args)
    try:
        spec_obj = GridSpec(
            estimand=estimand,
            t_lo=args.t_range[0], t_hi=args.t_range[1],
            T_lo=args.T_range[0], T_hi=args.T_range[1],
            t_points=args.t_points, T_points=args.T_points,
            sq=sq, sp=sp, init=init,
        )
    except ValueError as exc:
        _fail("--t-range/--T-range", str(exc))

    table = density_grid(spec_obj, qc)
    rows = [
        [s.point.temperature, s.point.time, s.gamma, s.dgamma, s.qfi] for s in table.samples
    ]
    spec = {
        "subcommand": "grid",
        "estimand": args.estimand,
        "t_range": list(args.t_range),
        "T_range": list(args.T_range),
        "t_points": args.t_points,
        "T_points": args.T_points,
        "fixed": {
            "r": sq.r, "theta": sq.theta, "s": sp.s,
            "omega_c": sp.omega_c, "alpha": init.alpha,
        },
    }
    _emit(args, spec, _metadata(args, qc, GRID_COLUMNS), GRID_COLUMNS, rows)
    return EXIT_OK


def cmd_opt_time(args: argparse.Namespace) -> int:
    _apply_recipe(args)
    if args.estimand is None:
        args.estimand = "T"
    _require(args, ["T_range", "T_points", "t_max", "r", "theta", "s"])
    if args.T_points < 1:
        _fail("--T-points", "must be >= 1")
    if not args.t_max > 0.0:
        _fail("--t-max", "must be > 0")
    estimand = ESTIMANDS[args.estimand]
    if estimand is Estimand.TEMPERATURE and args.T_range[0] <= 0.0:
        _fail("--T-range", "must start above 0 when estimating T")
    qc = _quadrature_config(args)
    sp = _spectral_params(args)
    sq = _squeeze_params(args)
    init = _probe_init(args)

    rows = []
    for temperature in np.linspace(args.T_range[0], args.T_range[1], args.T_points):
        result = optimal_time(
            float(temperature), estimand, sq, sp, init, t_max=args.t_max, qc=qc
        )
        rows.append([result.temperature, result.t_star, result.qfi_star])
    spec = {
        "subcommand": "opt-time",
        "estimand": args.estimand,
        "T_range": list(args.T_range),
        "T_points": args.T_points,
        "t_max": args.t_max,
        "fixed": {
            "r": sq.r, "theta": sq.theta, "s": sp.s,
            "omega_c": sp.omega_c, "alpha": init.alpha,
        },
    }
    _emit(args, spec, _metadata(args, qc, OPT_TIME_COLUMNS), OPT_TIME_COLUMNS, rows)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
