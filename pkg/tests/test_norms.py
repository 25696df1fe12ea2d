import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hmtk import (DiskWindow, HarmonicPolynomial, Majorant, PreconditionError, QuadratureSpec,
                  bloch_seminorm, bmo_norm, center_oscillation, circle_mean_Mp, disk_mean_Ip,
                  dMp_dr_green, evaluate, finite_difference, green_identity_check, norm_report,
                  poisson_quadratic)
from hmtk.norms import (_window_oscillation, center_oscillation_batch, chart_oscillation,
                        poisson_gap_field, poisson_gap_sup)

from conftest import disk_points, random_poly

Z2 = HarmonicPolynomial([0, 0, 1], [0])
CONST = HarmonicPolynomial.constant(0.4 - 2j)


def zn(n):
    return HarmonicPolynomial([0] * n + [1], [0])


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
def test_circle_means(ident, ext_z, r):
    assert circle_mean_Mp(ident, r, 2) == pytest.approx(r)
    assert circle_mean_Mp(ext_z, r, 2) == pytest.approx(math.sqrt(2) * r)
    assert circle_mean_Mp(CONST, r, 3) == pytest.approx(abs(0.4 - 2j))


@pytest.mark.parametrize("r", [0.2, 0.8])
def test_disk_means(ident, ext_z, r):
    assert disk_mean_Ip(ident, r, 2) == pytest.approx(r / math.sqrt(2))
    assert disk_mean_Ip(CONST, r, 5) == pytest.approx(abs(0.4 - 2j))
    # mean of 2 rho |cos t| over the disk of radius r
    assert disk_mean_Ip(ext_z, r, 1) == pytest.approx(8 * r / (3 * math.pi), rel=1e-8)
    assert circle_mean_Mp(ident, r, 2) >= disk_mean_Ip(ident, r, 2)


def test_disk_mean_matches_2d_quadrature():
    from hmtk import disk_integral
    f = HarmonicPolynomial([0, 0, 0, 1, 2j], [0, 0.3, 1])
    r, p = 0.7, 3
    direct = disk_integral(lambda z: np.abs(evaluate(f, z)) ** p, DiskWindow(0, r)).value
    assert disk_mean_Ip(f, r, p) == pytest.approx((direct / (math.pi * r * r)) ** (1 / p), rel=1e-8)


@pytest.mark.parametrize("r", [0.3, 0.5, 0.8])
def test_green_derivative_examples(ident, ext_z, r):
    assert dMp_dr_green(ident, r, 2) == pytest.approx(2 * r, rel=1e-10)
    assert dMp_dr_green(CONST, r, 4) == 0
    assert dMp_dr_green(ext_z, r, 2) == pytest.approx(4 * r, rel=1e-10)


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("p", [2, 3, 4])
def test_green_derivative_matches_finite_difference(seed, p):
    f = random_poly(np.random.default_rng(seed), 5)
    for r in (0.3, 0.7):
        fd = finite_difference(lambda s: circle_mean_Mp(f, s, p) ** p, r)
        assert dMp_dr_green(f, r, p) == pytest.approx(fd, rel=1e-6)


def test_green_identity_examples():
    sq = lambda z: np.abs(z) ** 2
    for r in (0.25, 0.5, 0.9):
        lhs, rhs = green_identity_check(sq, lambda z: 4 + 0 * z.real, r)
        assert lhs == pytest.approx(r * r, rel=1e-10) and rhs == pytest.approx(r * r, rel=1e-8)
    harm = lambda z: (z ** 3 + 0.2).real
    lhs, rhs = green_identity_check(harm, lambda z: 0 * z.real, 0.6)
    assert lhs == pytest.approx(0.2) and rhs == pytest.approx(0.2)
    lhs, rhs = green_identity_check(lambda z: np.abs(z) ** 4, lambda z: 16 * np.abs(z) ** 2, 1.0)
    assert lhs == pytest.approx(1, rel=1e-12) and rhs == pytest.approx(1, rel=1e-8)


def test_bloch_examples(ident, ext_z):
    assert bloch_seminorm(ident).value == pytest.approx(1, abs=1e-12)
    assert bloch_seminorm(ext_z).value == pytest.approx(2, abs=1e-12)
    assert bloch_seminorm(Z2).value == pytest.approx(4 / (3 * math.sqrt(3)), abs=1e-9)
    assert bloch_seminorm(HarmonicPolynomial.c_z_plus_zbar(3j)).value == pytest.approx(6, abs=1e-9)


@pytest.mark.parametrize("n", [3, 7])
def test_bloch_of_power_matches_calculus(n):
    rho = math.sqrt((n - 1) / (n + 1))
    assert bloch_seminorm(zn(n)).value == pytest.approx((1 - rho * rho) * n * rho ** (n - 1), abs=1e-9)


def test_bmo_examples(ident, ext_z):
    b = bmo_norm(ext_z, 2)
    assert b.norm == pytest.approx(1.0, abs=1e-12) and abs(b.argmax) < 1e-6
    b = bmo_norm(ident, 2)
    assert b.norm == pytest.approx(1 / math.sqrt(2), abs=1e-12) and abs(b.argmax) < 1e-6
    assert bmo_norm(CONST, 2).norm == 0


def test_chart_moments_match_quadrature():
    f = HarmonicPolynomial([0.1, 0.5j, -0.3, 0.2], [0, 0.4, 0.1j])
    a = np.array([0, 0.3 + 0.4j, -0.8, 0.95j])
    exact = chart_oscillation(f, a, 2, inner="moments")
    quad = chart_oscillation(f, a, 2, inner="quadrature")
    np.testing.assert_allclose(quad, exact, rtol=1e-8)


def test_bmo_routes_agree():
    f = HarmonicPolynomial([0, 0.5j, -0.3, 0.2], [0, 0.4, 0.1j])
    m = bmo_norm(f, 2, inner="moments").norm
    q = bmo_norm(f, 2, inner="quadrature").norm
    assert q == pytest.approx(m, rel=1e-6)


def test_bmo_direct_below_chart():
    f = HarmonicPolynomial([0, 0.5j, -0.3, 0.2], [0, 0.4, 0.1j])
    chart = bmo_norm(f, 2)
    direct = bmo_norm(f, 2, mode="direct", samples=256)
    assert direct.norm <= chart.norm + 1e-6 * (1 + chart.norm)
    # the maximizing chart window, with its area mean subtracted, gives the chart value back
    win = DiskWindow(chart.argmax, 1 - abs(chart.argmax))
    assert _window_oscillation(f, win, 2, QuadratureSpec(), subtract="mean") == pytest.approx(chart.norm, rel=1e-6)


@pytest.mark.parametrize("n", [10, 20])
def test_powers_exceed_two_to_one_chain(n):
    # Independent of the moment formula: rotation invariance of z^n reduces the
    # chart sup to |a| in [0, 1), scanned with adaptive window quadrature.
    f = zn(n)
    rs = np.linspace(0, 0.95, 96)
    brute = max(_window_oscillation(f, DiskWindow(r, 1 - r), 2, QuadratureSpec()) for r in rs)
    bmo = bmo_norm(f, 2).norm
    assert bmo == pytest.approx(brute, rel=2e-3)
    assert bmo >= brute * (1 - 1e-9)
    ratio = bloch_seminorm(f).value / bmo
    assert 2.0 < ratio < 4.0


def test_bmo_p1_extremal(ext_z):
    b = bmo_norm(ext_z, 1)
    # chart at a = 0: mean of 2|x| over the unit disk
    assert b.norm == pytest.approx(8 / (3 * math.pi), rel=1e-5)


@pytest.mark.parametrize("r", [0.2, 0.9])
def test_center_oscillation_examples(ident, ext_z, r):
    win = DiskWindow(0, r)
    assert center_oscillation(CONST, win) == 0
    assert center_oscillation(ident, win) == pytest.approx(2 * r / 3, rel=1e-6)
    assert center_oscillation(ext_z, win) == pytest.approx(8 * r / (3 * math.pi), rel=1e-6)


def test_center_oscillation_batch_matches_adaptive(ext_z):
    c = np.array([0, 0.5, 0.2j])
    r = np.array([0.9, 0.3, 0.1])
    batch = center_oscillation_batch(ext_z, c, r)
    single = [center_oscillation(ext_z, DiskWindow(ci, ri)) for ci, ri in zip(c, r)]
    np.testing.assert_allclose(batch, single, rtol=1e-3)


def _poisson_closed_form(f, z):
    """Harmonic extension of |h|^2 from the circle: sum a_j conj(a_k) z^(j-k) or conj(z)^(k-j)."""
    a = f.h
    tot = 0j
    for j in range(len(a)):
        for k in range(len(a)):
            tot += a[j] * np.conj(a[k]) * (z ** (j - k) if j >= k else np.conj(z) ** (k - j))
    return tot.real - abs(evaluate(f, z)) ** 2


def test_poisson_examples(ident):
    assert poisson_quadratic(ident, 0.6) == pytest.approx(0.64, rel=1e-10)
    assert poisson_quadratic(CONST.analytic_part(), 0.3j) == pytest.approx(0, abs=1e-12)
    assert poisson_quadratic(Z2, 0) == pytest.approx(1, rel=1e-10)
    with pytest.raises(PreconditionError):
        poisson_quadratic(HarmonicPolynomial.c_z_plus_zbar(1), 0.1)


@given(st.lists(st.builds(complex, st.floats(-1, 1), st.floats(-1, 1)), min_size=1, max_size=8),
       disk_points(0.99))
@settings(max_examples=40)
def test_poisson_gap_matches_closed_form(h, z):
    f = HarmonicPolynomial(h, [0])
    oracle = _poisson_closed_form(f, z)
    assert poisson_gap_field(f, np.array([z]))[0] == pytest.approx(oracle, abs=1e-11)
    assert oracle >= -1e-12


def test_poisson_gap_sup_dyakonov_example(ident):
    res = poisson_gap_sup(ident, Majorant.power(0.5))
    assert res.value == pytest.approx(2.0, rel=5e-3)


def test_norm_report_contents(ext_z):
    rep = norm_report(ext_z, ps=(2,), r_grid=[0.25, 0.5], majorant=Majorant.power(1))
    d = rep.to_dict()
    assert d["bloch"] == pytest.approx(2) and d["bmo"]["2"] == pytest.approx(1)
    assert d["lipschitz"]["constant"] == pytest.approx(2, rel=1e-3)
    assert "poisson_gap" not in d or d["poisson_gap"] is None
    assert [r for r, _ in d["mp_curve"]["2"]] == [0.25, 0.5]


def test_norm_report_constant_all_zero():
    d = norm_report(CONST, ps=(1, 2), r_grid=[0.5]).to_dict()
    assert d["bloch"] == 0 and d["bmo"] == {"1": 0.0, "2": 0.0}
