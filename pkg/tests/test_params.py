"""Parameter validation and derived constants."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypme import ModelParams


def test_rejects_inconsistent_exponents():
    with pytest.raises(ValueError):
        ModelParams(n=3)  # neither flux exponent
    with pytest.raises(ValueError):
        ModelParams(n=3, m=2.0, p=3.0)  # both
    with pytest.raises(ValueError):
        ModelParams(n=3, m=1.0)
    with pytest.raises(ValueError):
        ModelParams(n=3, p=2.0)
    with pytest.raises(ValueError):
        ModelParams(n=1, m=2.0)
    with pytest.raises(ValueError):
        ModelParams(n=3, m=2.0, M=0.0)


def test_porous_medium_constants_m2_n3():
    params = ModelParams(n=3, m=2.0)
    assert not params.is_plap
    assert params.slope_a == pytest.approx(0.25, rel=1e-15)
    assert params.gamma == pytest.approx(0.5, rel=1e-15)
    assert params.alpha == pytest.approx(1.0, rel=1e-15)
    assert params.front_exponent == pytest.approx(1.0, rel=1e-15)
    assert params.beta_euclid == pytest.approx(0.2, rel=1e-15)
    assert params.profile_k == pytest.approx(0.05, rel=1e-15)
    assert params.beta_weighted == pytest.approx(1.0, rel=1e-15)


def test_porous_medium_constants_m2_n2():
    params = ModelParams(n=2, m=2.0)
    assert params.gamma == pytest.approx(1.0, rel=1e-15)
    assert params.slope_a == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(ValueError):
        params.beta_weighted  # the weighted form needs n >= 3


def test_plap_constants_p3_n3():
    params = ModelParams(n=3, p=3.0)
    assert params.is_plap
    assert params.gamma == pytest.approx(0.5, rel=1e-15)
    assert params.slope_a == pytest.approx(0.125, rel=1e-15)
    assert params.alpha == pytest.approx(1.0, rel=1e-15)
    assert params.front_exponent == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(ValueError):
        params.beta_euclid
    with pytest.raises(ValueError):
        params.profile_k


def test_with_mass_replaces_only_mass():
    params = ModelParams(n=3, m=2.0)
    scaled = params.with_mass(4.0)
    assert scaled.M == 4.0
    assert scaled.m == params.m and scaled.n == params.n
    assert params.M == 1.0  # frozen original untouched


@settings(max_examples=50, deadline=None)
@given(
    m=st.floats(min_value=1.05, max_value=6.0),
    n=st.integers(min_value=2, max_value=6),
)
def test_cone_constants_algebra(m, n):
    # gamma = m a / (m-1) ties the front rate to the cone slope, and the
    # decay and front exponents multiply to alpha * (m-1) = 1.
    params = ModelParams(n=n, m=m)
    assert params.gamma == pytest.approx(m * params.slope_a / (m - 1.0), rel=1e-12)
    assert params.alpha * params.front_exponent == pytest.approx(1.0, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    p=st.floats(min_value=2.05, max_value=6.0),
    n=st.integers(min_value=2, max_value=6),
)
def test_plap_slope_solves_front_balance(p, n):
    # The cone a xi^q with q = (p-1)/(p-2) balances |(u)'|^{p-2} growth
    # against linear transport exactly when (a q)^{p-1} q = a q gamma + a/(p-2) * xi-free
    # form; equivalently a^{p-2} = (p-2)^{p-2} / ((n-1)(p-1)^{p-1}).
    params = ModelParams(n=n, p=p)
    a = params.slope_a
    assert a ** (p - 2) == pytest.approx(
        (p - 2) ** (p - 2) / ((n - 1) * (p - 1) ** (p - 1)), rel=1e-10
    )
