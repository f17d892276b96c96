"""Deterministic CSV and key=value emission for runs and reports.

Every file starts with a ``# config=<hash>`` comment tying it to the exact
config text that produced it.  Numbers are written with 17 significant
digits so round-trips are bit-exact and outputs diff cleanly across runs.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

from .catalog import model_pressure
from .params import ModelParams
from .solver import RunResult, RunTrace, Snapshot

_FMT = "%.17g"

TRACE_FILE = "trace.csv"
META_FILE = "meta"
REPORT_FILE = "report.csv"
CONFIG_FILE = "config.cfg"


def format_number(value: float) -> str:
    return _FMT % float(value)


def _write_csv(path: str, cfg_hash: str, header: str, columns: list[np.ndarray]) -> None:
    rows = len(columns[0])
    if any(len(col) != rows for col in columns):
        raise ValueError("column lengths differ")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# config={cfg_hash}\n")
        handle.write(header + "\n")
        for i in range(rows):
            handle.write(",".join(format_number(col[i]) for col in columns) + "\n")


def _read_csv(path: str, header: str) -> tuple[str, np.ndarray]:
    with open(path, "r", encoding="utf-8") as handle:
        first = handle.readline().strip()
        match = re.fullmatch(r"# config=([0-9a-f]{12})", first)
        if match is None:
            raise ValueError(f"{path}: missing config-hash header")
        found = handle.readline().strip()
        if found != header:
            raise ValueError(f"{path}: expected columns {header!r}, found {found!r}")
        data = np.loadtxt(handle, delimiter=",", ndmin=2)
    if data.shape[1] != len(header.split(",")):
        raise ValueError(f"{path}: wrong column count")
    return match.group(1), data


def write_trace(path: str, trace: RunTrace, cfg_hash: str) -> None:
    """Emit t,mass,sup,R rows, one per accepted time step."""
    _write_csv(path, cfg_hash, "t,mass,sup,R", [trace.t, trace.mass, trace.sup, trace.front])


def read_trace(path: str) -> tuple[str, RunTrace]:
    cfg_hash, data = _read_csv(path, "t,mass,sup,R")
    return cfg_hash, RunTrace(t=data[:, 0], mass=data[:, 1], sup=data[:, 2], front=data[:, 3])


def profile_name(index: int) -> str:
    return f"profile_{index}.csv"


def write_profile(path: str, snapshot: Snapshot, params: ModelParams, cfg_hash: str) -> None:
    """Emit x,u,pressure at one checkpoint."""
    _write_csv(
        path,
        cfg_hash,
        "x,u,pressure",
        [snapshot.x, snapshot.u, model_pressure(snapshot.u, params)],
    )


def read_profile(path: str) -> tuple[str, np.ndarray, np.ndarray]:
    """Return (hash, x, u); the pressure column is derivable so not loaded."""
    cfg_hash, data = _read_csv(path, "x,u,pressure")
    return cfg_hash, data[:, 0], data[:, 1]


def write_meta(path: str, entries: dict[str, object], cfg_hash: str) -> None:
    """Emit key=value lines in the given order."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# config={cfg_hash}\n")
        for key, value in entries.items():
            if isinstance(value, float):
                value = format_number(value)
            handle.write(f"{key}={value}\n")


def read_meta(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            entries[key] = value
    return entries


def write_run(out_dir: str, result: RunResult, config_text: str, cfg_hash: str,
              extra_meta: dict[str, object] | None = None) -> None:
    """Emit the full artifact set for one run into out_dir.

    Files: config.cfg (verbatim input), trace.csv, profile_<k>.csv per
    checkpoint, and meta.  Deterministic: same config, same bytes.
    """
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, CONFIG_FILE), "w", encoding="utf-8", newline="\n") as handle:
        handle.write(config_text)
    write_trace(os.path.join(out_dir, TRACE_FILE), result.trace, cfg_hash)
    params = result.problem.params
    for index, snapshot in enumerate(result.snapshots):
        write_profile(os.path.join(out_dir, profile_name(index)), snapshot, params, cfg_hash)
    meta: dict[str, object] = {
        "kind": result.problem.kind,
        "n": params.n,
        "exponent": ("p=" + format_number(params.p)) if params.is_plap
        else ("m=" + format_number(params.m)),
        "mass": params.M,
        "steps": result.steps,
        "newton_iterations": result.newton_iterations,
        "grid_extensions": result.extensions,
        "cells": result.problem.grid.num_cells,
        "backend": result.backend,
        "checkpoints": len(result.snapshots),
        "checkpoint_times": ",".join(format_number(s.t) for s in result.snapshots),
    }
    meta.update(extra_meta or {})
    write_meta(os.path.join(out_dir, META_FILE), meta, cfg_hash)


@dataclass(frozen=True)
class LoadedRun:
    """Trace, checkpoint profiles, and metadata read back from a run directory."""

    cfg_hash: str
    trace: RunTrace
    snapshots: list[Snapshot]
    meta: dict[str, str]

    def snapshot_at(self, t: float) -> Snapshot:
        for snapshot in self.snapshots:
            if np.isclose(snapshot.t, t, rtol=1e-12, atol=0.0):
                return snapshot
        raise KeyError(f"no stored profile at t = {t:g}")


def read_run(out_dir: str) -> LoadedRun:
    """Load what write_run emitted; checkpoint times come from meta."""
    cfg_hash, trace = read_trace(os.path.join(out_dir, TRACE_FILE))
    meta = read_meta(os.path.join(out_dir, META_FILE))
    count = int(meta["checkpoints"])
    checkpoint_times = [float(part) for part in meta["checkpoint_times"].split(",")] if count else []
    snapshots = []
    for index in range(count):
        file_hash, x, u = read_profile(os.path.join(out_dir, profile_name(index)))
        if file_hash != cfg_hash:
            raise ValueError(f"{profile_name(index)}: config hash differs from trace.csv")
        snapshots.append(Snapshot(t=checkpoint_times[index], x=x, u=u))
    return LoadedRun(cfg_hash=cfg_hash, trace=trace, snapshots=snapshots, meta=meta)


def write_report(path: str, rows: list[tuple[str, float, float, float, bool]], cfg_hash: str) -> None:
    """Emit check,measured,target,tolerance,pass rows."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"# config={cfg_hash}\n")
        handle.write("check,measured,target,tolerance,pass\n")
        for name, measured, target, tolerance, ok in rows:
            handle.write(
                f"{name},{format_number(measured)},{format_number(target)},"
                f"{format_number(tolerance)},{str(ok).lower()}\n"
            )


def read_report(path: str) -> tuple[str, list[tuple[str, float, float, float, bool]]]:
    rows: list[tuple[str, float, float, float, bool]] = []
    with open(path, "r", encoding="utf-8") as handle:
        first = handle.readline().strip()
        match = re.fullmatch(r"# config=([0-9a-f]{12})", first)
        if match is None:
            raise ValueError(f"{path}: missing config-hash header")
        header = handle.readline().strip()
        if header != "check,measured,target,tolerance,pass":
            raise ValueError(f"{path}: unexpected report header {header!r}")
        for line in handle:
            name, measured, target, tolerance, ok = line.strip().split(",")
            rows.append((name, float(measured), float(target), float(tolerance), ok == "true"))
    return match.group(1), rows
