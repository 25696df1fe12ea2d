import math

import numpy as np
import pytest
from hypothesis import given

from hmtk import (HarmonicPolynomial, Majorant, PairSampler, is_regular, is_valid_majorant,
                  lipschitz_fit, regularity_condition_I, regularity_condition_II)

from conftest import maps


@pytest.mark.parametrize("w,valid", [
    (Majorant.power(0.5), True),
    (Majorant.power(1, 3), True),
    (Majorant.power(1.5), False),
    (Majorant.power_log(0.5, 1.0), True),
])
def test_valid_majorant_examples(w, valid):
    ok, worst = is_valid_majorant(w)
    assert ok is valid
    assert (worst <= 1e-12) is valid


def test_majorant_construction_errors():
    for bad in (lambda: Majorant.power(-0.5), lambda: Majorant.power(0.5, 0),
                lambda: Majorant("cubic", {}), lambda: Majorant.tabulated([1, 0.5], [1, 2])):
        with pytest.raises(ValueError):
            bad()


def test_majorant_values():
    w = Majorant.power(0.5, 2.0)
    assert w(0) == 0 and w(4.0) == pytest.approx(4.0)
    assert w.squared()(3.0) == pytest.approx(w(3.0) ** 2)
    tab = Majorant.tabulated([0.01, 1.0], [0.1, 1.0])
    assert tab(0.1) == pytest.approx(0.1 ** 0.5)
    assert tab(100.0) == pytest.approx(10.0)  # end slope extension
    assert tab.local_slope(0.5) == pytest.approx(0.5, rel=1e-6)


@pytest.mark.parametrize("alpha,delta,expected", [(0.5, 0.25, 2.0), (1.0, 0.5, 1.0), (0.5, 1e-4, 2.0)])
def test_condition_I_examples(alpha, delta, expected):
    r = regularity_condition_I(Majorant.power(alpha), delta)
    assert not r.divergent
    assert r.ratio == pytest.approx(expected, rel=1e-6)


def test_condition_II_examples():
    assert regularity_condition_II(Majorant.power(0.5), 0.25).ratio == pytest.approx(2.0, rel=1e-6)
    for delta in (1e-3, 0.5, 1.0):
        assert regularity_condition_II(Majorant.power(1.0), delta).divergent
    assert regularity_condition_II(Majorant.power(0.9), 0.5).ratio == pytest.approx(10.0, rel=1e-6)


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.75, 0.9])
def test_pure_power_closed_forms(alpha):
    reg = is_regular(Majorant.power(alpha))
    assert reg.regular
    assert reg.M_I == pytest.approx(1 / alpha, rel=1e-6)
    assert reg.M_II == pytest.approx(1 / (1 - alpha), rel=1e-6)


@pytest.mark.parametrize("alpha", [1.0, 1.2])
def test_non_regular_powers(alpha):
    assert not is_regular(Majorant.power(alpha)).regular


def test_is_regular_examples():
    reg = is_regular(Majorant.power(0.5))
    assert reg.regular and reg.M_I == pytest.approx(2) and reg.M_II == pytest.approx(2)
    assert isinstance(reg.M_II, float)
    assert not is_regular(Majorant.power(1.0)).regular
    assert is_regular(Majorant.power(0.25)).regular


def test_sampler_prefix_and_range():
    big = PairSampler(n_pairs=2000, seed=3, boundary_fraction=0.25).sample()
    small = PairSampler(n_pairs=500, seed=3, boundary_fraction=0.25).sample()
    np.testing.assert_array_equal(big[0][:500], small[0])
    np.testing.assert_array_equal(big[1][:500], small[1])
    z, w = big
    assert np.all(np.abs(z) <= 1 + 1e-12) and np.all(np.abs(w) <= 1 + 1e-12)
    assert np.any(np.isclose(np.abs(w), 1.0))
    sep = np.abs(z - w)
    assert sep.min() < 1e-3 and sep.max() > 1.0


@pytest.mark.parametrize("f,w,expected,rel", [
    (HarmonicPolynomial.identity(), Majorant.power(1), 1.0, 1e-12),
    (HarmonicPolynomial.c_z_plus_zbar(1), Majorant.power(1), 2.0, 1e-3),
    (HarmonicPolynomial.constant(0.3 + 1j), Majorant.power(0.5), 0.0, 0),
    # sup over the closed disk of |z - w|^{1/2} is reached at |z - w| = 2
    (HarmonicPolynomial.identity(), Majorant.power(0.5), math.sqrt(2), 1e-2),
])
def test_lipschitz_fit_examples(f, w, expected, rel):
    fit = lipschitz_fit(f, w)
    assert fit.constant == pytest.approx(expected, rel=rel, abs=1e-12)
    assert fit.constant <= expected * (1 + 1e-12)


def test_lipschitz_fit_monotone_in_sample_count():
    f = HarmonicPolynomial([0, 0.3, 1j, -0.5], [0, 0, 0.2])
    w = Majorant.power(0.5)
    fits = [lipschitz_fit(f, w, PairSampler(n_pairs=n, seed=1)).constant for n in (100, 1000, 10000)]
    assert fits == sorted(fits)


@given(maps)
def test_lipschitz_triangle_inequalities(f):
    w = Majorant.power(0.5)
    pairs = PairSampler(n_pairs=2000, seed=5).sample()
    lf = lipschitz_fit(f, w, pairs=pairs).constant
    lh = lipschitz_fit(f.analytic_part(), w, pairs=pairs).constant
    lg = lipschitz_fit(f.coanalytic_part(), w, pairs=pairs).constant
    assert lf <= lh + lg + 1e-9
    from hmtk import evaluate
    labs = lipschitz_fit(lambda z: np.abs(evaluate(f, z)), w, pairs=pairs).constant
    assert labs <= lf + 1e-9
