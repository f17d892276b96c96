"""Strict config parsing: acceptance of good text, named rejection of bad."""

import numpy as np
import pytest

from hypme.config import (
    VALIDATE_KEYS,
    ConfigError,
    config_hash,
    load_config,
    parse_config,
)

GOOD = """\
[problem]
kind = hyperbolic-radial
m = 2.0
n = 3
mass = 1.0
width = 0.05

[grid]
spacing = uniform
x_max = 6.0
cells = 600

[checkpoints]
t0 = 1e-5
first = 1e-4
last = 1e4
count = 33

[solver]
dt_rel_cap = 0.05

[validate]
fit_window = 1e2, 1e4
gamma_range = 0.45, 0.55
mass_drift_max = 1e-8
retention = true
"""


def test_good_config_parses():
    cfg = parse_config(GOOD)
    assert cfg.kind == "hyperbolic-radial"
    assert cfg.params.m == 2.0 and cfg.params.n == 3 and cfg.params.M == 1.0
    assert cfg.width == 0.05
    assert cfg.init == "dirac"
    assert cfg.runnable
    assert cfg.grid.num_cells == 600 and cfg.grid.x_max == 6.0
    assert cfg.t0 == 1e-5
    assert cfg.checkpoints.size == 33
    np.testing.assert_allclose(cfg.checkpoints[[0, -1]], [1e-4, 1e4], rtol=1e-12)
    assert cfg.solver.dt_rel_cap == 0.05
    assert cfg.checks["gamma_range"] == (0.45, 0.55)
    assert cfg.checks["retention"] is True
    assert cfg.text == GOOD


def test_hash_tracks_text_exactly():
    cfg = parse_config(GOOD)
    assert cfg.hash == config_hash(GOOD)
    assert len(cfg.hash) == 12
    assert parse_config(GOOD + "\n# trailing comment\n").hash != cfg.hash


def test_checks_only_config_is_not_runnable():
    text = "[problem]\nkind = hyperbolic-radial\nm = 2\nn = 3\n\n[validate]\ngtw_residual_max = 1e-8\n"
    cfg = parse_config(text)
    assert not cfg.runnable
    assert cfg.grid is None and cfg.checkpoints is None
    assert cfg.checks == {"gtw_residual_max": 1e-8}


def test_explicit_checkpoint_times():
    text = GOOD.replace("first = 1e-4\nlast = 1e4\ncount = 33", "times = 0.1, 1.0, 10.0")
    cfg = parse_config(text)
    np.testing.assert_allclose(cfg.checkpoints, [0.1, 1.0, 10.0])


@pytest.mark.parametrize(
    "mangle,needle",
    [
        (lambda s: s.replace("m = 2.0", "m = 0.5"), "m must exceed 1"),
        (lambda s: s.replace("m = 2.0", "m = 2.0\np = 3.0"), "not both"),
        (lambda s: s.replace("m = 2.0\n", ""), "missing exponent"),
        (lambda s: s.replace("kind = hyperbolic-radial", "kind = spherical"), "kind"),
        (lambda s: s.replace("mass = 1.0", "mass = -2"), "mass"),
        (lambda s: s.replace("width = 0.05", "width = 0"), "must be positive"),
        (lambda s: s.replace("cells = 600", "cells = 600\nfirst_face = 0.1"),
         "only meaningful for log spacing"),
        (lambda s: s.replace("x_max = 6.0", "x_max = oops"), "not a number"),
        (lambda s: s.replace("cells = 600", "cells = 2.5"), "not an integer"),
        (lambda s: s.replace("t0 = 1e-5", "t0 = 1e-3"),
         "first checkpoint must come after t0"),
        (lambda s: s.replace("dt_rel_cap = 0.05", "dt_rel_cap = 2.0"), "dt_rel_cap"),
        (lambda s: s.replace("retention = true", "retention = maybe"), "not a boolean"),
        (lambda s: s.replace("gamma_range = 0.45, 0.55", "gamma_range = 0.55"),
         "two comma-separated"),
        (lambda s: s.replace("gamma_range = 0.45, 0.55", "gamma_range = 0.55, 0.45"),
         "first entry must be smaller"),
        (lambda s: s.replace("mass_drift_max", "mass_drift_maximum"), "unknown key"),
        (lambda s: s + "\n[extras]\nfoo = 1\n", "unknown section"),
    ],
)
def test_named_rejections(mangle, needle):
    with pytest.raises(ConfigError) as err:
        parse_config(mangle(GOOD))
    assert needle in str(err.value)


def test_syntax_error_carries_line_number():
    bad = GOOD.replace("m = 2.0", "m 2.0")
    with pytest.raises(ConfigError) as err:
        parse_config(bad)
    assert "line" in str(err.value)


def test_grid_requires_checkpoints_and_vice_versa():
    no_cps = GOOD.split("[checkpoints]")[0]
    with pytest.raises(ConfigError, match="must appear together"):
        parse_config(no_cps)


def test_missing_problem_section():
    with pytest.raises(ConfigError, match=r"missing required section \[problem\]"):
        parse_config("[validate]\nretention = true\n")


def test_kind_exponent_family_mismatch():
    text = GOOD.replace("m = 2.0", "p = 3.0")
    with pytest.raises(ConfigError, match="exponent family does not match"):
        parse_config(text)
    plap = GOOD.replace("kind = hyperbolic-radial", "kind = plap-hyperbolic")
    with pytest.raises(ConfigError, match="exponent family does not match"):
        parse_config(plap)


def test_barenblatt_init_needs_euclidean_kind():
    text = GOOD.replace("width = 0.05", "width = 0.05\ninit = barenblatt")
    with pytest.raises(ConfigError, match="needs kind = euclidean"):
        parse_config(text)
    ok = text.replace("kind = hyperbolic-radial", "kind = euclidean")
    assert parse_config(ok).init == "barenblatt"


def test_weighted_euclidean_needs_n3():
    text = GOOD.replace("kind = hyperbolic-radial", "kind = weighted-euclidean").replace(
        "n = 3", "n = 2"
    )
    with pytest.raises(ConfigError, match="n >= 3"):
        parse_config(text)


def test_times_and_geomspace_are_exclusive():
    text = GOOD.replace("count = 33", "count = 33\ntimes = 1.0, 2.0")
    with pytest.raises(ConfigError, match="not both"):
        parse_config(text)


def test_validate_registry_shapes_are_exercised():
    # every registered key must parse with a plausible value: guards against
    # a key added to the registry without a parser shape
    samples = {"pair": "1.0, 2.0", "float": "0.5", "bool": "true", "path": "../other"}
    lines = [f"{key} = {samples[shape]}" for key, shape in VALIDATE_KEYS.items()]
    text = (
        "[problem]\nkind = hyperbolic-radial\nm = 2\nn = 3\n\n[validate]\n"
        + "\n".join(lines)
        + "\n"
    )
    cfg = parse_config(text)
    assert set(cfg.checks) == set(VALIDATE_KEYS)


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(GOOD, encoding="utf-8")
    cfg = load_config(str(path))
    assert cfg.hash == parse_config(GOOD).hash
