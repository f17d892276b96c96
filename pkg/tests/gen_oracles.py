"""Regenerate the frozen constants used by the test suite.

Every value here is computed with mpmath at 50 digits through a route
independent of the package (Beta/Gamma identities and tanh-sinh quadrature
instead of scipy quadrature; the raw half-space/cone formulas instead of the
catalog's vectorised implementations).  Run

    python tests/gen_oracles.py

and paste the printed block over the ORACLES dict in test_catalog.py if a
definition legitimately changes.
"""

import mpmath as mp

mp.mp.dps = 50


def barenblatt_height(m, n, M):
    # u = t^{-n b}(C - k xi^2)_+^{1/(m-1)}, b = 1/(n(m-1)+2), k = (m-1)b/(2m);
    # M = area(S^{n-1}) k^{-n/2} C^{1/(m-1)+n/2} * B(n/2, m/(m-1)) / 2.
    m, M = mp.mpf(m), mp.mpf(M)
    beta = 1 / (n * (m - 1) + 2)
    k = (m - 1) * beta / (2 * m)
    area = 2 * mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2)
    I = mp.beta(mp.mpf(n) / 2, 1 / (m - 1) + 1) / 2
    scale = area * k ** (-mp.mpf(n) / 2) * I
    return (M / scale) ** (1 / (1 / (m - 1) + mp.mpf(n) / 2))


def barenblatt_value(x, t, m, n, M):
    m, x, t = mp.mpf(m), mp.mpf(x), mp.mpf(t)
    beta = 1 / (n * (m - 1) + 2)
    k = (m - 1) * beta / (2 * m)
    C = barenblatt_height(m, n, M)
    xi = x * t ** (-beta)
    body = max(C - k * xi * xi, mp.mpf(0))
    return t ** (-n * beta) * body ** (1 / (m - 1))


def h3_kernel(r, t):
    r, t = mp.mpf(r), mp.mpf(t)
    return (4 * mp.pi * t) ** mp.mpf("-1.5") * (r / mp.sinh(r)) * mp.e ** (
        -t - r * r / (4 * t)
    )


def h2_kernel(r, t):
    # sqrt(2) (4 pi t)^{-3/2} e^{-t/4} int_r^inf s e^{-s^2/4t} (cosh s - cosh r)^{-1/2} ds
    # evaluated directly; tanh-sinh quadrature absorbs the endpoint singularity.
    r, t = mp.mpf(r), mp.mpf(t)
    pref = mp.sqrt(2) * (4 * mp.pi * t) ** mp.mpf("-1.5") * mp.e ** (-t / 4)
    f = lambda s: s * mp.e ** (-s * s / (4 * t)) / mp.sqrt(mp.cosh(s) - mp.cosh(r))
    return pref * mp.quad(f, [r, r + 1, r + 40 * mp.sqrt(t) + 5])


def h2_kernel_origin(t):
    # r = 0: cosh s - 1 = 2 sinh(s/2)^2 removes the singularity entirely.
    t = mp.mpf(t)
    pref = mp.sqrt(2) * (4 * mp.pi * t) ** mp.mpf("-1.5") * mp.e ** (-t / 4)
    f = lambda s: s * mp.e ** (-s * s / (4 * t)) / (mp.sqrt(2) * mp.sinh(s / 2))
    return pref * mp.quad(f, [0, 1, 40 * mp.sqrt(t) + 5])


def gtw_value(y, t, m, n, c):
    y, t, m = mp.mpf(y), mp.mpf(t), mp.mpf(m)
    a = 1 / (m * (n - 1))
    gam = 1 / ((m - 1) * (n - 1))
    w = mp.log(c) + gam * mp.log(t) + mp.log(y)
    return (a * max(w, mp.mpf(0)) / t) ** (1 / (m - 1))


def log_cone_mass_limit(m, n):
    # area(S^{n-1}) 2^{1-n} a^{1/(m-1)} Gamma(1/(m-1)+1) / (n-1)^{1/(m-1)+1}
    m = mp.mpf(m)
    al = 1 / (m - 1)
    a = 1 / (m * (n - 1))
    area = 2 * mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2)
    return area * 2 ** (1 - n) * a**al * mp.gamma(al + 1) / (n - 1) ** (al + 1)


def singular_energy(m, n):
    # int_0^1 [log(1/s)/(m(n-2))]^{1/(m-1)} s^{n-3} ds at t = 1, A = 1;
    # substituting s = e^{-v} gives Gamma(1/(m-1)+1)/((m(n-2))^{1/(m-1)} (n-2)^{1/(m-1)+1}).
    m = mp.mpf(m)
    al = 1 / (m - 1)
    return mp.gamma(al + 1) / ((m * (n - 2)) ** al * (n - 2) ** (al + 1))


def main():
    vals = {
        "barenblatt_height_m2_n3": barenblatt_height(2, 3, 1),
        "barenblatt_height_m3_n2": barenblatt_height(3, 2, 1),
        "barenblatt_u_m2_n3_x07_t13": barenblatt_value("0.7", "1.3", 2, 3, 1),
        "barenblatt_edge_m2_n3_t1": mp.sqrt(
            barenblatt_height(2, 3, 1) / (mp.mpf(1) / 20)
        ),
        "h3_kernel_r15_t07": h3_kernel("1.5", "0.7"),
        "h2_kernel_r12_t08": h2_kernel("1.2", "0.8"),
        "h2_kernel_r0_t05": h2_kernel_origin("0.5"),
        "gtw_u_m2_n3_y03_t2_c1": gtw_value("0.3", "2", 2, 3, 1),
        "gtw_u_m2_n3_y15_t2_c1": gtw_value("1.5", "2", 2, 3, 1),
        "gtw_u_m3_n2_y05_t4_c2": gtw_value("0.5", "4", 3, 2, 2),
        "log_cone_mass_m2_n3": log_cone_mass_limit(2, 3),
        "log_cone_mass_m3_n2": log_cone_mass_limit(3, 2),
        "singular_energy_m2_n3": singular_energy(2, 3),
        "singular_energy_m2_n4": singular_energy(2, 4),
    }
    print("ORACLES = {")
    for key, val in vals.items():
        print(f'    "{key}": {mp.nstr(val, 17)},')
    print("}")
    # sanity: the m=2, n=3 cone-mass limit collapses to pi/16
    assert mp.almosteq(vals["log_cone_mass_m2_n3"], mp.pi / 16)
    assert mp.almosteq(vals["singular_energy_m2_n3"], mp.mpf(1) / 2)


if __name__ == "__main__":
    main()
