"""Compare the compiled and pure-numpy implicit-step kernels.

Times the residual assembly and the assemble-and-solve Newton direction on
synthetic states of increasing size, for both flux families, then runs one
short end-to-end simulation per backend.  Invoke as

    python benchmarks/bench_kernels.py [--sizes 600,3500,20000] [--repeats N]
"""

from __future__ import annotations

import argparse
import time
import types

import numpy as np

from hypme import Grid1D, ModelParams, SolverConfig, build_problem, dirac_init
from hypme import _kernels_py
from hypme import solver as solver_module
from hypme.solver import run

try:
    from hypme import _kernels
except ImportError:
    _kernels = None


def _state(n: int, rng: np.random.Generator):
    u = np.abs(rng.standard_normal(n)) * 1e-2
    return {
        "u": u,
        "u_old": u * 0.99,
        "avdx": np.abs(rng.standard_normal(n)) + 0.1,
        "bface": np.abs(rng.standard_normal(n - 1)) + 0.05,
        "invdelta": np.full(n - 1, 100.0),
    }


def _time_call(fn, args, repeats: int) -> float:
    fn(*args)
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats * 1e6


def bench_kernels(sizes: list[int], repeats: int) -> None:
    rng = np.random.default_rng(20240817)
    backends = [("numpy", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    # The fractional exponent is a deliberate off-road case: numpy's
    # vectorized pow beats the scalar libc pow there, while the compiled
    # loop wins for the small-integer exponents the committed runs use.
    flavors = [("power m=2", 0, 2.0), ("power m=2.5", 0, 2.5), ("gradient p=3", 1, 3.0)]
    print(f"{'kernel':<17} {'flux':<13} {'n':>7}  " + "  ".join(f"{b:>10}" for b, _ in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for name, model, expo in flavors:
        for n in sizes:
            state = _state(n, rng)
            args = (state["u"], state["u_old"], state["avdx"], state["bface"],
                    state["invdelta"], 1e-3, model, expo)
            for kernel_name in ("residual", "newton_direction"):
                reps = max(10, repeats // max(1, n // 600))
                times = [_time_call(getattr(mod, kernel_name), args, reps) for _, mod in backends]
                line = f"{kernel_name:<17} {name:<13} {n:>7}  " + "  ".join(
                    f"{t:>8.1f}us" for t in times)
                if len(times) == 2:
                    line += f"   {times[0] / times[1]:>6.2f}x"
                print(line)


def bench_run() -> None:
    params = ModelParams(n=3, m=2.0)
    grid = Grid1D.uniform(6.0, 600)
    checkpoints = np.geomspace(1e-4, 1e2, 13)
    dispatch = solver_module.kernels
    print("\nend-to-end run (curved radial, m=2, n=3, 600 cells, t -> 1e2):")
    try:
        for backend_name, module in (("numpy", _kernels_py), ("cython", _kernels)):
            if module is None:
                continue
            # Route the solver through one backend regardless of the default.
            solver_module.kernels = types.SimpleNamespace(
                residual=module.residual,
                newton_direction=module.newton_direction,
                MODEL_POWER=module.MODEL_POWER,
                MODEL_GRADIENT=module.MODEL_GRADIENT,
                backend_name=backend_name,
            )
            problem = build_problem("hyperbolic-radial", params, grid)
            u0 = dirac_init(problem, 0.05)
            start = time.perf_counter()
            result = run(problem, u0, 1e-5, checkpoints, SolverConfig())
            elapsed = time.perf_counter() - start
            print(f"  {backend_name:>6}: {elapsed:.3f}s for {result.steps} steps "
                  f"({result.newton_iterations} Newton iterations)")
    finally:
        solver_module.kernels = dispatch


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="600,3500,20000",
                        help="comma-separated state sizes")
    parser.add_argument("--repeats", type=int, default=300)
    args = parser.parse_args()
    sizes = [int(part) for part in args.sizes.split(",")]
    if _kernels is None:
        print("compiled backend unavailable; timing numpy only")
    bench_kernels(sizes, args.repeats)
    bench_run()


if __name__ == "__main__":
    main()
