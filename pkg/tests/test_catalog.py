"""Closed-form solution catalog against independently frozen values.

The ORACLES dict is the verbatim output of gen_oracles.py, which computes
every entry with mpmath at 50 digits through routes independent of this
package (Beta/Gamma identities, tanh-sinh quadrature of the raw integral
formulas).  Regenerate with `python tests/gen_oracles.py` only if a
definition legitimately changes.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypme import ModelParams, catalog
from hypme.catalog import (
    ClosedFormSolution,
    MatchedSubsolution,
    barenblatt,
    barenblatt_support_radius,
    gtw,
    gtw_front_position,
    heat_kernel,
    heat_kernel_mass,
    log_cone,
    log_cone_edge,
    log_cone_mass,
    log_cone_mass_finite,
    mass_rescale,
    model_pressure,
    plap_cone,
    pressure,
    singular_barenblatt,
    singular_barenblatt_energy,
    subsolution_matched,
)

ORACLES = {
    "barenblatt_height_m2_n3": 0.13481014081935863,
    "barenblatt_height_m3_n2": 0.088943166629406809,
    "barenblatt_u_m2_n3_x07_t13": 0.096328403281076031,
    "barenblatt_edge_m2_n3_t1": 1.6420118198073888,
    "h3_kernel_r15_t07": 0.0060034923934925525,
    "h2_kernel_r12_t08": 0.043768501899086436,
    "h2_kernel_r0_t05": 0.13505600024041982,
    "gtw_u_m2_n3_y03_t2_c1": 0.0,
    "gtw_u_m2_n3_y15_t2_c1": 0.09400483729851713,
    "gtw_u_m3_n2_y05_t4_c2": 0.2403378144334805,
    "log_cone_mass_m2_n3": 0.19634954084936208,
    "log_cone_mass_m3_n2": 1.6074378339534581,
    "singular_energy_m2_n3": 0.5,
    "singular_energy_m2_n4": 0.0625,
}

M2N3 = ModelParams(n=3, m=2.0)
M3N2 = ModelParams(n=2, m=3.0)
P3N3 = ModelParams(n=3, p=3.0)


# ---------------------------------------------------------------------------
# Flat-space source solution
# ---------------------------------------------------------------------------


def test_barenblatt_height_frozen():
    assert catalog._barenblatt_height(2.0, 3, 1.0) == pytest.approx(
        ORACLES["barenblatt_height_m2_n3"], rel=1e-11
    )
    assert catalog._barenblatt_height(3.0, 2, 1.0) == pytest.approx(
        ORACLES["barenblatt_height_m3_n2"], rel=1e-11
    )


def test_barenblatt_pointwise_frozen():
    assert barenblatt(0.7, 1.3, M2N3) == pytest.approx(
        ORACLES["barenblatt_u_m2_n3_x07_t13"], rel=1e-11
    )
    edge = ORACLES["barenblatt_edge_m2_n3_t1"]
    assert barenblatt_support_radius(1.0, M2N3) == pytest.approx(edge, rel=1e-11)
    assert barenblatt(edge * 1.0001, 1.0, M2N3) == 0.0
    assert barenblatt(edge * 0.9999, 1.0, M2N3) > 0.0


def test_barenblatt_mass_is_calibrated():
    from hypme.geometry import sphere_area

    for params in (M2N3, M3N2, ModelParams(n=3, m=2.0, M=4.0)):
        radius = barenblatt_support_radius(2.0, params)
        r = np.linspace(0.0, radius, 20001)
        u = barenblatt(r, 2.0, params)
        mass = sphere_area(params.n) * np.trapezoid(u * r ** (params.n - 1), r)
        assert mass == pytest.approx(params.M, rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(
    mass=st.floats(min_value=0.1, max_value=30.0),
    x=st.floats(min_value=0.0, max_value=3.0),
    t=st.floats(min_value=0.2, max_value=8.0),
)
def test_barenblatt_obeys_mass_rescaling(mass, x, t):
    # u_M(x, t) = M u_1(x, M^{m-1} t) maps the unit-mass member onto mass M.
    scaled = mass_rescale(lambda xx, tt: barenblatt(xx, tt, M2N3), mass, 2.0)
    direct = barenblatt(x, t, M2N3.with_mass(mass))
    assert scaled(x, t) == pytest.approx(direct, rel=1e-9, abs=1e-12)


# ---------------------------------------------------------------------------
# Linear-flow kernels
# ---------------------------------------------------------------------------


def test_heat_kernel_frozen_values():
    assert heat_kernel(1.5, 0.7, 3) == pytest.approx(
        ORACLES["h3_kernel_r15_t07"], rel=1e-12
    )
    assert heat_kernel(1.2, 0.8, 2) == pytest.approx(
        ORACLES["h2_kernel_r12_t08"], rel=1e-9
    )
    assert heat_kernel(0.0, 0.5, 2) == pytest.approx(
        ORACLES["h2_kernel_r0_t05"], rel=1e-9
    )


def test_heat_kernel_mass_is_one():
    for n in (2, 3):
        for t in (0.5, 2.0):
            assert heat_kernel_mass(t, n) == pytest.approx(1.0, abs=2e-7)


def test_heat_kernel_positive_and_decreasing():
    r = np.linspace(0.0, 8.0, 81)
    for n in (2, 3):
        u = heat_kernel(r, 0.8, n)
        assert np.all(u > 0)
        assert np.all(np.diff(u) < 0)


def test_heat_kernel_rejects_bad_arguments():
    with pytest.raises(ValueError):
        heat_kernel(1.0, 0.0, 3)
    with pytest.raises(ValueError):
        heat_kernel(-1.0, 1.0, 2)
    with pytest.raises(ValueError):
        heat_kernel(1.0, 1.0, 4)


# ---------------------------------------------------------------------------
# Half-space wave
# ---------------------------------------------------------------------------


def test_gtw_frozen_values():
    assert gtw(0.3, 2.0, M2N3) == ORACLES["gtw_u_m2_n3_y03_t2_c1"]
    assert gtw(1.5, 2.0, M2N3) == pytest.approx(
        ORACLES["gtw_u_m2_n3_y15_t2_c1"], rel=1e-12
    )
    assert gtw(0.5, 4.0, M3N2, c=2.0) == pytest.approx(
        ORACLES["gtw_u_m3_n2_y05_t4_c2"], rel=1e-12
    )


def test_gtw_front_position_cuts_support():
    t = 3.0
    y_f = gtw_front_position(t, M2N3, c=1.5)
    assert gtw(y_f * (1.0 - 1e-9), t, M2N3, c=1.5) == 0.0
    assert gtw(y_f * (1.0 + 1e-6), t, M2N3, c=1.5) > 0.0


# ---------------------------------------------------------------------------
# Log-cone and its mass
# ---------------------------------------------------------------------------


def test_log_cone_shape_and_edge():
    t = 100.0
    edge = log_cone_edge(t, M2N3, b=0.3)
    assert edge == pytest.approx(0.5 * math.log(t) + 0.3, rel=1e-14)
    assert log_cone(edge + 1e-9, t, M2N3, b=0.3) == 0.0
    # pressure is exactly conical with slope gamma inside the support
    r = np.linspace(0.1, edge - 0.1, 50)
    p = pressure(log_cone(r, t, M2N3, b=0.3), 2.0)
    slope = np.polyfit(r, p, 1)[0]
    assert slope == pytest.approx(-M2N3.gamma / t, rel=1e-9)


def test_log_cone_mass_frozen():
    assert log_cone_mass(M2N3) == pytest.approx(
        ORACLES["log_cone_mass_m2_n3"], rel=1e-10
    )
    assert log_cone_mass(M2N3) == pytest.approx(math.pi / 16.0, rel=1e-10)
    assert log_cone_mass(M3N2) == pytest.approx(
        ORACLES["log_cone_mass_m3_n2"], rel=1e-10
    )
    # intercept b enters only through the e^{b(n-1)} factor
    assert log_cone_mass(M2N3, b=0.7) == pytest.approx(
        math.exp(1.4) * math.pi / 16.0, rel=1e-10
    )


def test_log_cone_finite_mass_increases_to_limit():
    limit = log_cone_mass(M2N3, b=0.5)
    masses = [log_cone_mass_finite(M2N3, 0.5, t) for t in (10.0, 100.0, 1000.0)]
    assert masses[0] < masses[1] < masses[2] < limit
    assert masses[2] == pytest.approx(limit, rel=0.05)


def test_hidden_wave_pressure_translates():
    # after w = t^{1/(m-1)} u and tau = log t the cone is a travelling wave:
    # the profile at tau + d equals the profile at tau shifted by gamma d
    r = np.linspace(0.0, 4.0, 200)
    tau, d = 5.0, 0.8
    first = catalog.hidden_wave_pressure(r, tau, M2N3, b=0.1)
    second = catalog.hidden_wave_pressure(r + M2N3.gamma * d, tau + d, M2N3, b=0.1)
    np.testing.assert_allclose(second, first, atol=1e-14)


# ---------------------------------------------------------------------------
# p-flux cone
# ---------------------------------------------------------------------------


def test_plap_cone_front_linear_pressure():
    t = 50.0
    edge = P3N3.gamma * math.log(t)
    r = np.linspace(0.5, edge - 0.05, 80)
    u = plap_cone(r, t, P3N3)
    # u^{(p-2)/(p-1)} is linear in r with slope a * t^{-...}: check linearity
    w = u ** P3N3.front_exponent
    resid = np.polyfit(r, w, 1, full=True)[1]
    assert float(resid[0]) < 1e-20
    assert plap_cone(edge + 1e-9, t, P3N3) == 0.0
    with pytest.raises(ValueError):
        plap_cone(1.0, 1.0, M2N3)


# ---------------------------------------------------------------------------
# Weighted-model singular source solution
# ---------------------------------------------------------------------------


def test_singular_energy_frozen():
    assert singular_barenblatt_energy(M2N3) == pytest.approx(
        ORACLES["singular_energy_m2_n3"], rel=1e-9
    )
    assert singular_barenblatt_energy(ModelParams(n=4, m=2.0)) == pytest.approx(
        ORACLES["singular_energy_m2_n4"], rel=1e-9
    )


@settings(max_examples=30, deadline=None)
@given(amp=st.floats(min_value=0.2, max_value=5.0))
def test_singular_energy_scales_as_amplitude_power(amp):
    base = singular_barenblatt_energy(M2N3, A=1.0)
    assert singular_barenblatt_energy(M2N3, A=amp) == pytest.approx(
        base * amp ** (M2N3.n - 2), rel=1e-8
    )


def test_singular_energy_conserved_in_time():
    for t in (0.5, 1.0, 7.0):
        assert singular_barenblatt_energy(M2N3, A=1.3, t=t) == pytest.approx(
            0.5 * 1.3, rel=1e-8
        )


def test_singular_barenblatt_support_edge():
    t = 2.0
    edge = 1.0 * t**M2N3.beta_weighted
    assert singular_barenblatt(edge * 1.001, t, M2N3) == 0.0
    assert singular_barenblatt(edge * 0.9, t, M2N3) > 0.0
    with pytest.raises(ValueError):
        singular_barenblatt(1.0, 1.0, ModelParams(n=2, m=2.0))


# ---------------------------------------------------------------------------
# Matched lower barrier
# ---------------------------------------------------------------------------


def test_subsolution_defaults_m2_n3():
    sub = subsolution_matched(M2N3)
    assert sub.a == pytest.approx(0.05, rel=1e-15)
    assert sub.b == pytest.approx(0.025, rel=1e-15)
    assert sub.gamma == pytest.approx(0.1, rel=1e-15)
    assert sub.t_min == pytest.approx(math.exp(5.0), rel=1e-12)


def test_subsolution_rejects_bad_parameters():
    with pytest.raises(ValueError):
        subsolution_matched(M2N3, a=1.0)  # above the coth(1) bound
    with pytest.raises(ValueError):
        subsolution_matched(M2N3, a=0.05, b=-0.1)
    with pytest.raises(ValueError):
        subsolution_matched(P3N3)
    sub = subsolution_matched(M2N3)
    with pytest.raises(ValueError):
        sub(1.0, sub.t_min * 0.5)  # cone not yet positive at the gluing radius


@pytest.mark.parametrize("factor", [10.0, 100.0, 1000.0])
def test_subsolution_is_a_subsolution(factor):
    sub = subsolution_matched(M2N3)
    report = sub.verify(sub.t_min * factor)
    assert report["max_outer_residual"] <= 1e-12
    assert report["max_inner_residual"] <= 1e-12
    assert report["continuity_gap"] <= 1e-12
    assert report["flux_match_gap"] <= 1e-12
    assert report["sufficient_condition_margin"] >= 0.0


def test_subsolution_glues_continuously():
    sub = subsolution_matched(ModelParams(n=2, m=3.0))
    t = sub.t_min * 50.0
    edge = sub.gamma * math.log(t) + sub.b / sub.a
    r = np.linspace(0.2, edge - 0.05, 401)
    u = sub(r, t)
    assert np.all(u > 0)
    # values straddling the gluing radius differ only by slope * gap
    assert abs(sub(1.0 - 1e-8, t) - sub(1.0 + 1e-8, t)) < 1e-9


# ---------------------------------------------------------------------------
# Pressure conventions and the uniform front-end
# ---------------------------------------------------------------------------


def test_pressure_conventions():
    u = np.array([0.0, 0.25, 1.0])
    np.testing.assert_allclose(pressure(u, 2.0), 2.0 * u)
    np.testing.assert_allclose(model_pressure(u, M2N3), 2.0 * u)
    np.testing.assert_allclose(model_pressure(u, P3N3), u**0.5)


def test_closed_form_solution_dispatch():
    sol = ClosedFormSolution("barenblatt", M2N3)
    assert sol.evaluate(0.7, 1.3) == pytest.approx(
        ORACLES["barenblatt_u_m2_n3_x07_t13"], rel=1e-11
    )
    wave = ClosedFormSolution("gtw", M2N3, extra={"c": 1.0})
    assert wave.evaluate(1.5, 2.0) == pytest.approx(
        ORACLES["gtw_u_m2_n3_y15_t2_c1"], rel=1e-12
    )
    cone = ClosedFormSolution("log-cone", M2N3, extra={"b": 0.3})
    assert cone.evaluate(0.5, 100.0) == pytest.approx(
        log_cone(0.5, 100.0, M2N3, b=0.3), rel=1e-14
    )
    kern = ClosedFormSolution("heat-kernel-h2", M3N2)
    np.testing.assert_allclose(kern.pressure_of([0.3]), [0.3])
    pcone = ClosedFormSolution("plap-cone", P3N3)
    np.testing.assert_allclose(pcone.pressure_of([0.25]), [0.5])
    with pytest.raises(ValueError):
        ClosedFormSolution("unknown-kind", M2N3)
