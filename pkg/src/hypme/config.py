"""Run configuration: strict INI parsing into validated runtime objects.

A config is flat ``key = value`` text with sections ``[problem]``,
``[grid]``, ``[checkpoints]``, ``[solver]``, ``[validate]``.  Unknown
sections or keys are rejected by name, semantic errors name the offending
key, and syntax errors carry line numbers.  A config with ``[grid]`` and
``[checkpoints]`` describes a solver run; one with only ``[problem]`` and
``[validate]`` describes closed-form checks that need no trace.

Verdict thresholds live exclusively in ``[validate]`` so a report is
reproducible from the config text alone; the 12-hex-digit hash of that
text is stamped into every emitted file.
"""

from __future__ import annotations

import configparser
import dataclasses
import hashlib
import io
import typing
from dataclasses import dataclass

import numpy as np

from .grid import Grid1D
from .params import ModelParams
from .problem import PROBLEM_KINDS
from .solver import SolverConfig

INIT_KINDS = ("dirac", "barenblatt")

# [validate] registry: key -> value shape.  "pair" is two comma-separated
# floats, "path" is a companion run directory resolved at validation time.
VALIDATE_KEYS: dict[str, str] = {
    "fit_window": "pair",
    "gamma_range": "pair",
    "mass_drift_max": "float",
    "profile_window": "pair",
    "profile_ratio_max": "float",
    "supnorm_window": "pair",
    "supnorm_ratio_max": "float",
    "benilan_coeff": "float",
    "retention": "bool",
    "darcy_window": "pair",
    "darcy_max_mismatch": "float",
    "smalltime_pair": "pair",
    "smalltime_ratio_max": "float",
    "weighted_window": "pair",
    "weighted_variation_max": "float",
    "mass_shift_companion": "path",
    "mass_shift_tol": "float",
    "transform_companion": "path",
    "transform_t": "float",
    "transform_max_rel": "float",
    "convergence_companion": "path",
    "convergence_time": "float",
    "convergence_ratio_range": "pair",
    "gtw_residual_max": "float",
    "logcone_min_residual": "float",
    "subsolution_max_residual": "float",
    "map_rel_tol": "float",
    "map_roundtrip_tol": "float",
    "kernel_mass_tol_h3": "float",
    "kernel_mass_tol_h2": "float",
    "kernel_residual_max": "float",
    "plap_residual_max": "float",
}

_PROBLEM_KEYS = ("kind", "m", "p", "n", "mass", "width", "init")
_GRID_KEYS = ("spacing", "x_max", "cells", "first_face")
_CHECKPOINT_KEYS = ("t0", "first", "last", "count", "times")


class ConfigError(ValueError):
    """Rejected config text: syntax, unknown key, or bad value."""


def config_hash(text: str) -> str:
    """12 hex digits identifying the config text, stamped into outputs."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration for one run and/or one validation pass."""

    kind: str
    params: ModelParams
    width: float
    init: str
    grid: Grid1D | None
    t0: float | None
    checkpoints: np.ndarray | None
    solver: SolverConfig
    checks: dict[str, object]
    text: str

    @property
    def hash(self) -> str:
        return config_hash(self.text)

    @property
    def runnable(self) -> bool:
        """True when the config describes a solver run, not just checks."""
        return self.grid is not None


def _fail(section: str, key: str, value: str, why: str) -> typing.NoReturn:
    raise ConfigError(f"[{section}] {key} = {value}: {why}")


def _parse_float(section: str, key: str, value: str) -> float:
    try:
        out = float(value)
    except ValueError:
        _fail(section, key, value, "not a number")
    if not np.isfinite(out):
        _fail(section, key, value, "must be finite")
    return out


def _parse_int(section: str, key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        _fail(section, key, value, "not an integer")


def _parse_bool(section: str, key: str, value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    _fail(section, key, value, "not a boolean")


def _parse_pair(section: str, key: str, value: str) -> tuple[float, float]:
    parts = [part.strip() for part in value.split(",")]
    if len(parts) != 2:
        _fail(section, key, value, "expected two comma-separated numbers")
    lo = _parse_float(section, key, parts[0])
    hi = _parse_float(section, key, parts[1])
    if not lo < hi:
        _fail(section, key, value, "first entry must be smaller")
    return lo, hi


def _check_known(section: str, present: typing.Iterable[str], known: typing.Iterable[str]) -> None:
    for key in present:
        if key not in known:
            raise ConfigError(
                f"[{section}] unknown key {key!r}; expected one of "
                + ", ".join(sorted(known))
            )


def _parse_problem(sec: configparser.SectionProxy) -> tuple[str, ModelParams, float, str]:
    _check_known("problem", sec, _PROBLEM_KEYS)
    kind = sec.get("kind", "").strip()
    if kind not in PROBLEM_KINDS:
        _fail("problem", "kind", kind or "<missing>", "expected one of " + ", ".join(PROBLEM_KINDS))
    n = _parse_int("problem", "n", sec.get("n", "<missing>"))
    mass = _parse_float("problem", "mass", sec.get("mass", "1.0"))
    if "m" in sec and "p" in sec:
        raise ConfigError("[problem] give m or p, not both")
    try:
        if "p" in sec:
            params = ModelParams(n=n, p=_parse_float("problem", "p", sec["p"]), M=mass)
        elif "m" in sec:
            params = ModelParams(n=n, m=_parse_float("problem", "m", sec["m"]), M=mass)
        else:
            raise ConfigError("[problem] missing exponent: give m (power law) or p (gradient law)")
    except ValueError as err:
        raise ConfigError(f"[problem] {err}") from err
    if kind == "weighted-euclidean" and n < 3:
        _fail("problem", "n", str(n), "weighted-euclidean needs n >= 3")
    if (kind == "plap-hyperbolic") != params.is_plap:
        _fail("problem", "kind", kind, "exponent family does not match the kind")
    width = _parse_float("problem", "width", sec.get("width", "0.05"))
    if width <= 0:
        _fail("problem", "width", sec["width"], "must be positive")
    init = sec.get("init", "dirac").strip()
    if init not in INIT_KINDS:
        _fail("problem", "init", init, "expected one of " + ", ".join(INIT_KINDS))
    if init == "barenblatt" and kind != "euclidean":
        _fail("problem", "init", init, "exact self-similar data needs kind = euclidean")
    return kind, params, width, init


def _parse_grid(sec: configparser.SectionProxy) -> Grid1D:
    _check_known("grid", sec, _GRID_KEYS)
    spacing = sec.get("spacing", "uniform").strip()
    if spacing not in ("uniform", "log"):
        _fail("grid", "spacing", spacing, "expected uniform or log")
    x_max = _parse_float("grid", "x_max", sec.get("x_max", "<missing>"))
    cells = _parse_int("grid", "cells", sec.get("cells", "<missing>"))
    try:
        if spacing == "uniform":
            if "first_face" in sec:
                _fail("grid", "first_face", sec["first_face"], "only meaningful for log spacing")
            return Grid1D.uniform(x_max, cells)
        first = _parse_float("grid", "first_face", sec.get("first_face", "<missing>"))
        return Grid1D.logarithmic(first, x_max, cells)
    except ValueError as err:
        raise ConfigError(f"[grid] {err}") from err


def _parse_checkpoints(sec: configparser.SectionProxy) -> tuple[float, np.ndarray]:
    _check_known("checkpoints", sec, _CHECKPOINT_KEYS)
    t0 = _parse_float("checkpoints", "t0", sec.get("t0", "<missing>"))
    if t0 <= 0:
        _fail("checkpoints", "t0", sec["t0"], "must be positive")
    if "times" in sec:
        if any(key in sec for key in ("first", "last", "count")):
            raise ConfigError("[checkpoints] give times or first/last/count, not both")
        times = np.array(
            [_parse_float("checkpoints", "times", part) for part in sec["times"].split(",")]
        )
    else:
        first = _parse_float("checkpoints", "first", sec.get("first", "<missing>"))
        last = _parse_float("checkpoints", "last", sec.get("last", "<missing>"))
        count = _parse_int("checkpoints", "count", sec.get("count", "<missing>"))
        if count < 1:
            _fail("checkpoints", "count", sec["count"], "must be at least 1")
        if not 0 < first <= last:
            _fail("checkpoints", "first", sec["first"], "need 0 < first <= last")
        times = np.geomspace(first, last, count)
    if times[0] <= t0:
        _fail("checkpoints", "t0", str(t0), "first checkpoint must come after t0")
    if np.any(np.diff(times) <= 0):
        _fail("checkpoints", "times", "<list>", "must be strictly increasing")
    return t0, times


def _parse_solver(sec: configparser.SectionProxy) -> SolverConfig:
    hints = typing.get_type_hints(SolverConfig)
    fields = {field.name: hints[field.name] for field in dataclasses.fields(SolverConfig)}
    _check_known("solver", sec, fields)
    values: dict[str, object] = {}
    for key in sec:
        if fields[key] is int:
            values[key] = _parse_int("solver", key, sec[key])
        else:
            values[key] = _parse_float("solver", key, sec[key])
    try:
        return SolverConfig(**values)
    except ValueError as err:
        raise ConfigError(f"[solver] {err}") from err


def _parse_validate(sec: configparser.SectionProxy) -> dict[str, object]:
    _check_known("validate", sec, VALIDATE_KEYS)
    parsers = {
        "float": _parse_float,
        "pair": _parse_pair,
        "bool": _parse_bool,
        "path": lambda _s, _k, value: value.strip(),
    }
    return {key: parsers[VALIDATE_KEYS[key]]("validate", key, sec[key]) for key in sec}


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate config text; raise ConfigError otherwise."""
    parser = configparser.ConfigParser(
        interpolation=None, delimiters=("=",), comment_prefixes=("#", ";")
    )
    try:
        parser.read_file(io.StringIO(text))
    except configparser.Error as err:
        raise ConfigError(str(err)) from err

    known_sections = ("problem", "grid", "checkpoints", "solver", "validate")
    for section in parser.sections():
        if section not in known_sections:
            raise ConfigError(
                f"unknown section [{section}]; expected one of "
                + ", ".join(known_sections)
            )
    if not parser.has_section("problem"):
        raise ConfigError("missing required section [problem]")

    kind, params, width, init = _parse_problem(parser["problem"])

    has_grid = parser.has_section("grid")
    has_cps = parser.has_section("checkpoints")
    if has_grid != has_cps:
        raise ConfigError("[grid] and [checkpoints] must appear together")
    grid = _parse_grid(parser["grid"]) if has_grid else None
    t0, checkpoints = _parse_checkpoints(parser["checkpoints"]) if has_cps else (None, None)

    solver = _parse_solver(parser["solver"]) if parser.has_section("solver") else SolverConfig()
    checks = _parse_validate(parser["validate"]) if parser.has_section("validate") else {}

    return RunConfig(
        kind=kind,
        params=params,
        width=width,
        init=init,
        grid=grid,
        t0=t0,
        checkpoints=checkpoints,
        solver=solver,
        checks=checks,
        text=text,
    )


def load_config(path: str) -> RunConfig:
    """Read and parse a config file."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())
