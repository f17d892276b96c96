"""Standalone SVG charts of emitted CSV artifacts.

Rendering is deterministic: the SVG hash salt is pinned to the config hash
found in the input file and no timestamps are written, so the same inputs
give byte-identical output.
"""

from __future__ import annotations

import os
import re

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _read_table(path: str) -> tuple[str, list[str], np.ndarray]:
    """CSV with '# config=<hash>' then a header row; returns all columns."""
    with open(path, "r", encoding="utf-8") as handle:
        first = handle.readline().strip()
        match = re.fullmatch(r"# config=([0-9a-f]{12})", first)
        if match is None:
            raise ValueError(f"{path}: missing config-hash header")
        names = handle.readline().strip().split(",")
        data = np.loadtxt(handle, delimiter=",", ndmin=2)
    return match.group(1), names, data


def _finish(fig, out_path: str, salt: str) -> None:
    with plt.rc_context({"svg.hashsalt": salt}):
        fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_trace(trace_path: str, out_path: str) -> None:
    """Mass, sup norm, and front radius against time, one panel each."""
    salt, names, data = _read_table(trace_path)
    t = data[:, names.index("t")]
    fig, axes = plt.subplots(3, 1, figsize=(7.0, 8.0), sharex=True)

    axes[0].plot(t, data[:, names.index("mass")], color="tab:blue", label="mass")
    axes[0].set_ylabel("mass")
    axes[0].legend(loc="best")

    axes[1].loglog(t, data[:, names.index("sup")], color="tab:orange", label="sup u")
    axes[1].set_ylabel("sup u")
    axes[1].legend(loc="best")

    axes[2].semilogx(t, data[:, names.index("R")], color="tab:green", label="front R")
    axes[2].set_ylabel("front radius")
    axes[2].set_xlabel("t")
    axes[2].legend(loc="best")

    fig.tight_layout()
    _finish(fig, out_path, salt)


def plot_profiles(profile_paths: list[str], out_path: str,
                  column: str = "u", log_x: bool = False) -> None:
    """Overlay stored profiles; legend entries are the file names."""
    if not profile_paths:
        raise ValueError("no profile files given")
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    salt = ""
    for path in profile_paths:
        salt, names, data = _read_table(path)
        if column not in names:
            raise ValueError(f"{path}: no column {column!r}")
        label = os.path.splitext(os.path.basename(path))[0]
        ax.plot(data[:, names.index("x")], data[:, names.index(column)], label=label)
    if log_x:
        ax.set_xscale("log")
    ax.set_xlabel("x")
    ax.set_ylabel(column)
    ax.legend(loc="best")
    fig.tight_layout()
    _finish(fig, out_path, salt)
