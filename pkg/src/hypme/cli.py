"""Command-line entry point: runs, sweeps, closed-form tables, validation.

Exit codes: 0 success, 1 a validation check failed, 2 usage or config
error, 3 the solver failed to converge.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import analysis, catalog, io, plots
from .checks import evaluate_checks
from .config import ConfigError, RunConfig, config_hash, load_config, parse_config
from .geometry import transform_table
from .io import CONFIG_FILE, REPORT_FILE, TRACE_FILE, format_number
from .problem import build_problem
from .solver import SolverError, dirac_init, run

USAGE_ERROR = 2
CHECK_FAILED = 1
SOLVER_FAILED = 3

_PERTURB_AMPLITUDE = 1e-2  # relative, applied only under --seed


def _argv_hash(parts: list[str]) -> str:
    """Outputs not tied to a config file hash their canonical arguments."""
    return config_hash(" ".join(parts))


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"{text!r}: expected start:stop:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"{text!r}: {err}") from err
    if count < 2 or not lo < hi:
        raise argparse.ArgumentTypeError(f"{text!r}: need start < stop and count >= 2")
    return lo, hi, count


def _initial_state(cfg: RunConfig, problem, seed: int | None) -> np.ndarray:
    if cfg.init == "barenblatt":
        u0 = catalog.barenblatt(problem.grid.centers, cfg.t0, cfg.params)
    else:
        u0 = dirac_init(problem, cfg.width)
    if seed is not None:
        rng = np.random.default_rng(seed)
        bumps = 1.0 + _PERTURB_AMPLITUDE * rng.uniform(-1.0, 1.0, u0.size)
        u0 = np.maximum(u0 * bumps, 0.0)
        u0 *= cfg.params.M / problem.mass(u0)
    return u0


def _execute_run(cfg: RunConfig, out_dir: str, seed: int | None) -> None:
    problem = build_problem(cfg.kind, cfg.params, cfg.grid)
    u0 = _initial_state(cfg, problem, seed)
    result = run(problem, u0, cfg.t0, cfg.checkpoints, cfg.solver)
    io.write_run(
        out_dir, result, cfg.text, cfg.hash,
        extra_meta={"seed": "none" if seed is None else seed},
    )


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config)
    except (ConfigError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    if not cfg.runnable:
        print("error: config has no [grid]/[checkpoints]; nothing to run", file=sys.stderr)
        return USAGE_ERROR
    try:
        _execute_run(cfg, args.out, args.seed)
    except SolverError as err:
        print(f"solver error: {err}", file=sys.stderr)
        return SOLVER_FAILED
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    config_path = args.config or os.path.join(args.run_dir, CONFIG_FILE)
    try:
        cfg = load_config(config_path)
    except (ConfigError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    if not cfg.checks:
        print("error: config has no [validate] section", file=sys.stderr)
        return USAGE_ERROR
    try:
        report = evaluate_checks(cfg, args.run_dir)
    except (ValueError, OSError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    os.makedirs(args.run_dir, exist_ok=True)
    io.write_report(os.path.join(args.run_dir, REPORT_FILE), report.rows(), cfg.hash)
    for check in report.checks:
        verdict = "pass" if check.passed else "FAIL"
        print(
            f"{verdict} {check.name}: measured {format_number(check.measured)} "
            f"target {format_number(check.target)} tol {format_number(check.tolerance)}"
        )
    return 0 if report.passed else CHECK_FAILED


def _cmd_exact(args: argparse.Namespace) -> int:
    try:
        params = _exact_params(args)
        extra = {}
        if args.c is not None:
            extra["c"] = args.c
        if args.b is not None:
            extra["b"] = args.b
        if args.amplitude is not None:
            extra["A"] = args.amplitude
        solution = catalog.ClosedFormSolution(args.kind, params, extra)
        lo, hi, count = args.grid
        x = np.linspace(lo, hi, count)
        u = np.asarray(solution.evaluate(x, args.time), dtype=float)
        p = np.asarray(solution.pressure_of(u), dtype=float)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    salt = _argv_hash([
        "exact", args.kind, repr(params), repr(sorted(extra.items())),
        f"{lo}:{hi}:{count}", str(args.time),
    ])
    with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# config={salt}\n")
        handle.write("coord,u,pressure\n")
        for i in range(count):
            handle.write(
                f"{format_number(x[i])},{format_number(u[i])},{format_number(p[i])}\n"
            )
    return 0


def _exact_params(args: argparse.Namespace):
    from .params import ModelParams

    if args.p is not None:
        return ModelParams(n=args.n, p=args.p, M=args.mass)
    # the linear kernels ignore the exponent; a default keeps params valid
    return ModelParams(n=args.n, m=args.m if args.m is not None else 2.0, M=args.mass)


def _cmd_transform_table(args: argparse.Namespace) -> int:
    if args.n < 3:
        print("error: the coordinate map needs n >= 3", file=sys.stderr)
        return USAGE_ERROR
    lo, hi, count = args.grid
    if lo <= 0:
        print("error: grid start must be positive", file=sys.stderr)
        return USAGE_ERROR
    r = np.geomspace(lo, hi, count)
    table = transform_table(args.n, r)
    salt = _argv_hash(["transform-table", str(args.n), f"{lo}:{hi}:{count}"])
    with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# config={salt}\n")
        handle.write("r,s,rho,mu\n")
        for row in table:
            handle.write(",".join(format_number(value) for value in row) + "\n")
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    try:
        _, trace = io.read_trace(args.trace)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    if args.window is not None:
        t_min, t_max = args.window
    else:
        t_max = float(trace.t[-1])
        t_min = t_max / 10.0**1.5
    try:
        fit = analysis.fit_log_growth(trace, t_min, t_max)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    print(f"slope={format_number(fit.slope)}")
    print(f"intercept={format_number(fit.intercept)}")
    print(f"max_deviation={format_number(fit.max_deviation)}")
    print(f"points={fit.points}")
    print(f"window={format_number(t_min)},{format_number(t_max)}")
    return 0


def _sweep_variants(base_text: str, vary: list[str]) -> list[tuple[str, str]]:
    """Cartesian product of section.key=v1,v2 overrides as (name, text)."""
    axes: list[tuple[str, str, list[str]]] = []
    for spec in vary:
        target, _, values = spec.partition("=")
        section, _, key = target.partition(".")
        if not (section and key and values):
            raise ConfigError(f"--vary {spec!r}: expected section.key=v1,v2,...")
        axes.append((section, key, [v.strip() for v in values.split(",")]))
    variants = []
    for combo in itertools.product(*(axis[2] for axis in axes)):
        text = base_text
        name_parts = []
        for (section, key, _), value in zip(axes, combo):
            text = _override(text, section, key, value)
            name_parts.append(f"{key}={value}")
        variants.append(("_".join(name_parts), text))
    return variants


def _override(text: str, section: str, key: str, value: str) -> str:
    """Set section.key in config text, appending the section if absent."""
    import configparser
    import io as _io

    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    parser.read_string(text)
    if not parser.has_section(section):
        parser.add_section(section)
    parser.set(section, key, value)
    buffer = _io.StringIO()
    parser.write(buffer)
    return buffer.getvalue()


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            base_text = handle.read()
        variants = _sweep_variants(base_text, args.vary)
        configs = [(name, parse_config(text)) for name, text in variants]
    except (ConfigError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    for name, cfg in configs:
        if not cfg.runnable:
            print(f"error: variant {name} is not runnable", file=sys.stderr)
            return USAGE_ERROR

    workers = int(os.environ.get("HYPME_THREADS", "0")) or min(4, len(configs))

    def one(item: tuple[str, RunConfig]) -> tuple[str, str]:
        name, cfg = item
        out_dir = os.path.join(args.out_root, name)
        try:
            _execute_run(cfg, out_dir, args.seed)
        except SolverError as err:
            return name, f"solver-failed: {err}"
        return name, "ok"

    os.makedirs(args.out_root, exist_ok=True)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(one, configs))

    index_path = os.path.join(args.out_root, "sweep_index.csv")
    with open(index_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# config={config_hash(base_text)}\n")
        handle.write("name,status\n")
        for name, status in results:
            handle.write(f"{name},{status}\n")
    failed = [name for name, status in results if status != "ok"]
    for name in failed:
        print(f"solver error in variant {name}", file=sys.stderr)
    return SOLVER_FAILED if failed else 0


def _cmd_plot(args: argparse.Namespace) -> int:
    try:
        if len(args.inputs) == 1 and _is_trace(args.inputs[0]):
            plots.plot_trace(args.inputs[0], args.out)
        else:
            plots.plot_profiles(args.inputs, args.out, column=args.column, log_x=args.log_x)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    return 0


def _is_trace(path: str) -> bool:
    with open(path, "r", encoding="utf-8") as handle:
        handle.readline()
        return handle.readline().strip() == "t,mass,sup,R"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypme",
        description="Radial degenerate-diffusion runs and asymptotic-law validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured simulation")
    p_run.add_argument("config", help="config file path")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--seed", type=int, default=None,
                       help="perturb initial data reproducibly (recorded in meta)")

    p_val = sub.add_parser("validate", help="evaluate [validate] checks, write report.csv")
    p_val.add_argument("run_dir", help="run directory (or target directory for closed-form checks)")
    p_val.add_argument("--config", default=None,
                       help="config path (default: config.cfg inside run_dir)")

    p_exact = sub.add_parser("exact", help="tabulate a closed-form solution")
    p_exact.add_argument("--kind", required=True, choices=catalog.SOLUTION_KINDS)
    p_exact.add_argument("--grid", required=True, type=_parse_range, metavar="START:STOP:COUNT")
    p_exact.add_argument("--time", required=True, type=float)
    p_exact.add_argument("--m", type=float, default=None)
    p_exact.add_argument("--p", type=float, default=None)
    p_exact.add_argument("--n", type=int, required=True)
    p_exact.add_argument("--mass", type=float, default=1.0)
    p_exact.add_argument("--c", type=float, default=None, help="half-space wave constant")
    p_exact.add_argument("--b", type=float, default=None, help="cone intercept")
    p_exact.add_argument("--amplitude", type=float, default=None,
                         help="singular-source front amplitude")
    p_exact.add_argument("--out", required=True)

    p_table = sub.add_parser("transform-table", help="tabulate the coordinate change")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--grid", type=_parse_range, default=(1e-2, 15.0, 200),
                         metavar="START:STOP:COUNT")
    p_table.add_argument("--out", required=True)

    p_fit = sub.add_parser("fit", help="fit front = slope log t + intercept on a trace")
    p_fit.add_argument("trace", help="trace.csv path")
    p_fit.add_argument("--window", type=_parse_pair, default=None, metavar="TMIN,TMAX")

    p_sweep = sub.add_parser("sweep", help="run a Cartesian grid of config variants")
    p_sweep.add_argument("config", help="base config file")
    p_sweep.add_argument("--vary", action="append", default=[],
                         metavar="SECTION.KEY=V1,V2", required=True)
    p_sweep.add_argument("--out-root", required=True)
    p_sweep.add_argument("--seed", type=int, default=None)

    p_plot = sub.add_parser("plot", help="render trace or profile CSVs to SVG")
    p_plot.add_argument("inputs", nargs="+")
    p_plot.add_argument("--out", required=True)
    p_plot.add_argument("--column", default="u", choices=("u", "pressure"))
    p_plot.add_argument("--log-x", action="store_true")

    return parser


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{text!r}: expected TMIN,TMAX")
    lo, hi = float(parts[0]), float(parts[1])
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"{text!r}: need TMIN < TMAX")
    return lo, hi


_COMMANDS = {
    "run": _cmd_run,
    "validate": _cmd_validate,
    "exact": _cmd_exact,
    "transform-table": _cmd_transform_table,
    "fit": _cmd_fit,
    "sweep": _cmd_sweep,
    "plot": _cmd_plot,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        # argparse has already printed usage/help; preserve its exit code
        return int(exit_.code) if exit_.code is not None else 0
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
