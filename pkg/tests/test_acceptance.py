"""Verification gate: every committed quantitative claim, one test each.

Each numbered test prints one PASS/FAIL line with the measured numbers, so
the suite output doubles as the verification report.  All measurements go
through the public pipeline (``run`` then ``validate`` on the committed
configs); nothing here calls solver internals directly.  Solver runs are
shared across tests through session fixtures; run directories are named
after the config stems so that relative companion paths resolve.
"""

import math
from pathlib import Path

import pytest

from hypme.cli import main
from hypme.io import read_report

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"

RUN_STEMS = (
    "euc_bar_h",
    "euc_bar_h2",
    "hyp_m2_n2",
    "hyp_m2_n3",
    "hyp_m2_n3_M4",
    "hyp_m2_n3_fine",
    "plap_p3_n3",
    "wei_m2_n3_long",
    "wei_m2_n3_t10",
)

ALL_STEMS = ("catalog_checks",) + RUN_STEMS


@pytest.fixture(scope="session")
def run_root(tmp_path_factory):
    """Execute every committed runnable config once, into sibling directories."""
    root = tmp_path_factory.mktemp("committed_runs")
    for stem in RUN_STEMS:
        code = main(["run", str(CONFIG_DIR / f"{stem}.cfg"), "--out", str(root / stem)])
        if code != 0:
            pytest.fail(f"run failed for {stem} (exit {code})")
    return root


@pytest.fixture(scope="session")
def reports(run_root):
    """Validate every run directory; map stem -> {check name -> report row}."""
    table = {}
    for stem in ALL_STEMS:
        target = run_root / stem
        argv = ["validate", str(target)]
        if stem == "catalog_checks":
            target.mkdir()
            argv += ["--config", str(CONFIG_DIR / "catalog_checks.cfg")]
        code = main(argv)
        if code not in (0, 1):
            pytest.fail(f"validate errored for {stem} (exit {code})")
        _, rows = read_report(str(target / "report.csv"))
        table[stem] = {
            name: {"measured": measured, "target": tgt, "tol": tol, "ok": ok}
            for name, measured, tgt, tol, ok in rows
        }
    return table


def _row(reports, stem, name):
    rows = reports[stem]
    if name not in rows:
        pytest.fail(f"{stem}: report has no check named {name!r}")
    return rows[name]


def _verdict(label, entries):
    """Print one PASS/FAIL line for the criterion and assert it."""
    ok = all(row["ok"] for _, row in entries)
    detail = "; ".join(
        f"{name}: measured={row['measured']:.6g} target={row['target']:.6g} "
        f"tol={row['tol']:.6g}"
        for name, row in entries
    )
    print(f"{'PASS' if ok else 'FAIL'} {label} :: {detail}")
    assert ok, f"{label} :: {detail}"


def test_01_wave_solves_curved_flow_exactly(reports):
    row = _row(reports, "catalog_checks", "gtw-residual")
    assert row["tol"] == 1e-8
    _verdict("01 half-space wave residual < 1e-8 (m in {2,3}, n in {2,3})",
             [("gtw-residual", row)])


def test_02_log_cone_is_a_supersolution(reports):
    row = _row(reports, "catalog_checks", "log-cone-sign")
    assert row["tol"] == 1e-10
    _verdict("02 log-cone residual >= -1e-10", [("log-cone-sign", row)])


def test_03_coordinate_map_matches_closed_form(reports):
    closed = _row(reports, "catalog_checks", "map-closed-form")
    roundtrip = _row(reports, "catalog_checks", "map-roundtrip")
    assert closed["tol"] == 1e-8 and roundtrip["tol"] == 1e-10
    _verdict("03 n=3 map vs (e^{2r}-1)/2 and inverse round-trip",
             [("map-closed-form", closed), ("map-roundtrip", roundtrip)])


def test_04_flat_space_second_order_convergence(reports):
    row = _row(reports, "euc_bar_h2", "convergence-ratio")
    assert math.isclose(row["target"], 4.0, rel_tol=1e-12)
    assert math.isclose(row["tol"], 0.8, rel_tol=1e-12)
    _verdict("04 L1-error ratio h vs h/2 in [3.2, 4.8] on exact flat-space data",
             [("convergence-ratio", row)])


def test_05_mass_conserved_to_1e4(reports):
    row = _row(reports, "hyp_m2_n3", "mass-drift")
    assert row["tol"] == 1e-8
    _verdict("05 relative mass drift < 1e-8 over the m=2, n=3 run to t=1e4",
             [("mass-drift", row)])


def test_06_front_grows_logarithmically(reports):
    row = _row(reports, "hyp_m2_n3", "front-log-slope")
    assert math.isclose(row["target"], 0.5, rel_tol=1e-12)
    assert math.isclose(row["tol"], 0.05, rel_tol=1e-12)
    _verdict("06 fitted front slope in [0.45, 0.55] over t in [1e2, 1e4]",
             [("front-log-slope", row)])


def test_07_pressure_profile_converges_to_cone(reports):
    row = _row(reports, "hyp_m2_n3", "profile-shrink")
    assert row["tol"] == 0.5
    _verdict("07 cone-profile error at t=1e4 < 0.5x its value at t=1e2",
             [("profile-shrink", row)])


def test_08_sup_norm_follows_log_over_t(reports):
    row = _row(reports, "hyp_m2_n3", "sup-norm-ratio")
    assert row["target"] == 1.0 and row["tol"] == 1.0
    _verdict("08 max/min of sup^{m-1} t/log t < 2 over t in [1e3, 1e4]",
             [("sup-norm-ratio", row)])


def test_09_two_routes_agree_after_time_rescale(reports):
    row = _row(reports, "wei_m2_n3_t10", "transform-agreement")
    assert row["tol"] == 0.01
    _verdict("09 curved vs weighted-flat relative L1 gap < 1% at t=10",
             [("transform-agreement", row)])


def test_10_small_time_flat_space_limit(reports):
    row = _row(reports, "hyp_m2_n3", "small-time-order")
    assert row["tol"] == 1.0
    _verdict("10 flat-space profile distance smaller at t=1e-3 than at t=1e-1",
             [("small-time-order", row)])


def test_11_weighted_front_settles_on_power_law(reports):
    row = _row(reports, "wei_m2_n3_long", "weighted-front-variation")
    assert row["tol"] == 0.15
    _verdict("11 rescaled weighted front varies < 15% over the last decade",
             [("weighted-front-variation", row)])


def test_12_time_monotonicity_and_retention_everywhere(reports):
    entries = []
    for stem in RUN_STEMS:
        entries.append((f"{stem}/retention", _row(reports, stem, "retention")))
        if "benilan-margin" in reports[stem]:
            entries.append((f"{stem}/benilan-margin",
                            _row(reports, stem, "benilan-margin")))
    assert sum(1 for name, _ in entries if name.endswith("benilan-margin")) == 7
    _verdict("12 one-sided time-derivative margin >= -10 h^2 and no support loss",
             entries)


def test_13_heat_kernels_integrate_to_unit_mass(reports):
    entries = [
        ("kernel-mass-h3", _row(reports, "catalog_checks", "kernel-mass-h3")),
        ("kernel-mass-h2", _row(reports, "catalog_checks", "kernel-mass-h2")),
        ("kernel-residual", _row(reports, "catalog_checks", "kernel-residual")),
        ("kernel-positive-h2", _row(reports, "catalog_checks", "kernel-positive-h2")),
    ]
    assert entries[0][1]["tol"] == 1e-6
    assert entries[1][1]["tol"] == 1e-4
    assert entries[2][1]["tol"] == 1e-6
    _verdict("13 curved-space heat kernels: unit mass, equation residual, sign",
             entries)


def test_14_gradient_flux_front_matches_its_cone(reports):
    residual = _row(reports, "catalog_checks", "plap-cone-residual")
    slope = _row(reports, "plap_p3_n3", "front-log-slope")
    assert residual["tol"] == 1e-8
    assert math.isclose(slope["target"], 0.5, rel_tol=1e-12)
    assert math.isclose(slope["tol"], 0.1, rel_tol=1e-12)
    _verdict("14 p=3 cone profile residual < 1e-8 and run slope in [0.4, 0.6]",
             [("plap-cone-residual", residual), ("front-log-slope", slope)])


def test_15_two_dimensional_front_slope(reports):
    row = _row(reports, "hyp_m2_n2", "front-log-slope")
    assert math.isclose(row["target"], 1.0, rel_tol=1e-12)
    assert math.isclose(row["tol"], 0.15, rel_tol=1e-12)
    _verdict("15 m=2, n=2 fitted front slope in [0.85, 1.15]",
             [("front-log-slope", row)])


def test_16_front_intercept_shifts_with_mass(reports):
    row = _row(reports, "hyp_m2_n3_M4", "mass-shift")
    assert math.isclose(row["target"], 0.5 * math.log(4.0), rel_tol=1e-12)
    assert row["tol"] == 0.1
    _verdict("16 intercept(M=4) - intercept(M=1) = gamma (m-1) log 4 +- 0.1",
             [("mass-shift", row)])
