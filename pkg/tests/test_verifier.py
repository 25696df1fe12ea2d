import json
import math

import numpy as np
import pytest

from hmtk import DiskWindow, HarmonicPolynomial, Majorant, PreconditionError
from hmtk.io import dumps
from hmtk.verifier import (CHECKS, FuzzConfig, SuiteOptions, check_bloch_lipschitz,
                           check_bmo1_corollary, check_bmo_bloch_chain, check_decomposition,
                           check_dyakonov_gap, check_extremal, check_interior_gradient_bound,
                           check_khavinson, check_lemma_gradient, check_mean_value,
                           check_modulus_equivalence, check_mp_ip_monotone, check_pointwise,
                           check_schwarz_pick_affine, check_theorem1_constants, fuzz, run_check,
                           run_suite)

CONST = HarmonicPolynomial.constant(0.7 - 0.1j)
Z2 = HarmonicPolynomial([0, 0, 1], [0])


def test_verdict_invariants():
    v = check_bmo_bloch_chain(HarmonicPolynomial.c_z_plus_zbar(1), constant=1.9)[1]
    assert v.passed == (v.margin >= 0)
    assert not v.passed and v.witness
    d = v.to_dict()
    assert set(d) >= {"check", "pass", "lhs", "rhs", "margin", "witness", "slack"}
    json.loads(dumps(d))


def test_pointwise_examples(ident, ext_z):
    assert check_pointwise(ident).passed
    v = check_pointwise(ext_z)
    assert v.passed and v.margin == pytest.approx(0, abs=1e-9)
    assert check_pointwise(Z2, grid=[0.5]).passed


def test_lemma_gradient_examples(ident, ext_z):
    v = check_lemma_gradient(ident, 0, 0.5)
    assert (v.lhs, v.rhs) == pytest.approx((1, 4), rel=1e-6) and v.passed
    v = check_lemma_gradient(ext_z, 0, 0.5)
    assert (v.lhs, v.rhs) == pytest.approx((2, 16 / math.pi), rel=1e-6) and v.passed
    v = check_lemma_gradient(CONST, 0.1, 0.5)
    assert v.lhs == 0 and v.rhs == 0 and v.passed
    with pytest.raises(PreconditionError):
        check_lemma_gradient(ident, 0.5, 0.6)


def test_khavinson_examples():
    assert check_khavinson(HarmonicPolynomial.c_z_plus_zbar(0.25), grid=[0]).passed
    assert check_khavinson(HarmonicPolynomial.constant(0), grid=[0]).passed
    assert check_khavinson(HarmonicPolynomial([0, 0, 0.9j], [0])).passed


def test_interior_gradient_examples():
    u = HarmonicPolynomial.c_z_plus_zbar(0.5)  # Re f = Re z
    v = check_interior_gradient_bound(u, grid=[0, 0.5])
    assert v.passed
    assert check_interior_gradient_bound(CONST).passed


@pytest.mark.parametrize("a,z,lhs,rhs", [
    (0, 0.3, None, None),
    (0.5, 0, 0.5, 0.75),
    (0.5, -0.5, 0.5, 1.25),
])
def test_schwarz_pick_affine_examples(a, z, lhs, rhs):
    v = check_schwarz_pick_affine(a, z)
    assert v.passed
    if lhs is not None:
        assert (v.lhs, v.rhs) == pytest.approx((lhs, rhs))


def test_schwarz_pick_affine_vectorized():
    rng = np.random.default_rng(1)
    a = 0.99 * np.sqrt(rng.uniform(size=300)) * np.exp(2j * np.pi * rng.uniform(size=300))
    z = 0.99 * np.sqrt(rng.uniform(size=300)) * np.exp(2j * np.pi * rng.uniform(size=300))
    assert check_schwarz_pick_affine(a, z).passed


def test_oscillation_constants_examples(ident, ext_z):
    assert all(v.passed for v in check_theorem1_constants(CONST))
    assert all(v.passed for v in check_theorem1_constants(ident, Majorant.power(0.5)))
    fwd, bwd = check_theorem1_constants(ext_z, Majorant.power(1))
    assert fwd.passed and bwd.passed
    assert bwd.details["M_osc"] >= 8 / (3 * math.pi) * (1 - 1e-3)


def test_chain_examples(ident, ext_z):
    lo, hi = check_bmo_bloch_chain(CONST)
    assert lo.passed and hi.passed and lo.margin == 0
    lo, hi = check_bmo_bloch_chain(ext_z)
    assert (lo.lhs, lo.rhs, hi.rhs) == pytest.approx((1, 2, 2))
    assert lo.passed and hi.passed
    # tightness: with the slack removed the upper margin is (numerically) zero
    tight = check_bmo_bloch_chain(ext_z, slack=0.0)[1]
    assert tight.passed and tight.margin <= 0.01 * tight.rhs
    lo, hi = check_bmo_bloch_chain(ident)
    assert (lo.lhs, lo.rhs, hi.rhs) == pytest.approx((1 / math.sqrt(2), 1, math.sqrt(2)))
    assert lo.passed and hi.passed


def test_chain_negative_controls(ext_z):
    assert not check_bmo_bloch_chain(ext_z, constant=1.9)[1].passed
    assert not check_bmo_bloch_chain(ext_z, slack=-0.01)[1].passed


def test_chain_upper_fails_on_high_powers():
    # beta(z^10) / BMO2(z^10) ~ 2.43, so the two-to-one upper bound is violated;
    # the factor-four bound that the chart argument supports still holds
    f = HarmonicPolynomial([0] * 10 + [1], [0])
    assert not check_bmo_bloch_chain(f)[1].passed
    assert all(v.passed for v in check_bmo_bloch_chain(f, constant=4.0))


@pytest.mark.parametrize("C,expected", [(1, (2, 1)), (0, (0, 0)), (3j, (6, 3))])
def test_extremal_examples(C, expected):
    v = check_extremal(C)
    assert v.passed
    assert (v.details["bloch"], v.details["bmo2"]) == pytest.approx(expected, abs=1e-9 + 5e-3 * abs(C))


def test_bmo1_equivalence_examples(ident, ext_z):
    assert all(v.passed for v in check_bmo1_corollary(CONST))
    fwd, _ = check_bmo1_corollary(ident)
    assert fwd.details["S"] == pytest.approx(1, abs=1e-9) and fwd.passed
    fwd, bwd = check_bmo1_corollary(ext_z)
    assert fwd.details["S"] == pytest.approx(2, abs=1e-9) and fwd.passed and bwd.passed


def test_modulus_equivalence_examples():
    assert check_modulus_equivalence(HarmonicPolynomial.c_z_plus_zbar(0.5), Majorant.power(1)).passed
    assert check_modulus_equivalence(CONST).passed
    assert check_modulus_equivalence(HarmonicPolynomial([0, 0, 0.5], [0, 0, 0.5]), Majorant.power(0.5)).passed


def test_decomposition_examples(ext_z, ident):
    v = check_decomposition(ext_z, Majorant.power(1))
    assert v.passed
    assert check_decomposition(ident, Majorant.power(1)).passed
    assert check_decomposition(HarmonicPolynomial([0, 0, 1], [0, 1j]), Majorant.power(1)).passed


def test_dyakonov_examples(ident):
    v = check_dyakonov_gap(ident, Majorant.power(0.5))
    assert v.passed
    assert v.details["G_sup"] == pytest.approx(2, rel=5e-3)
    assert v.details["L"] == pytest.approx(math.sqrt(2), rel=1e-2)
    assert v.details["omega_regular"] and not v.details["omega2_regular"]
    assert check_dyakonov_gap(CONST.analytic_part()).passed
    assert check_dyakonov_gap(Z2).passed
    with pytest.raises(PreconditionError):
        check_dyakonov_gap(HarmonicPolynomial.c_z_plus_zbar(1))


def test_mp_ip_and_mean_value(ext_z):
    assert check_mp_ip_monotone(ext_z).passed
    wins = [DiskWindow(0, 1), DiskWindow(0.3, 0.2), DiskWindow(-0.5j, 0.5)]
    assert check_mean_value(HarmonicPolynomial([0.2, 1, -1j, 0.5], [0, 0.3]), wins).passed


def test_bloch_lipschitz(ext_z, ident):
    assert check_bloch_lipschitz(ext_z).passed
    assert check_bloch_lipschitz(Z2).passed


def test_run_suite_all_on_extremal(ext_z):
    verdicts = run_suite(ext_z, "all")
    assert {v.check_name for v in verdicts} >= {"chain_upper", "extremal", "bmo1_forward"}
    assert all(v.passed for v in verdicts)


def test_run_suite_constant():
    assert all(v.passed for v in run_suite(CONST, "all"))


def test_run_check_unknown():
    with pytest.raises(ValueError):
        run_check("nope", CONST)
    assert len(CHECKS) == 15


def test_slack_monotonicity(ext_z, ident):
    for f in (ext_z, ident, HarmonicPolynomial([0] * 10 + [1], [0])):
        prev = None
        for s in (-0.05, -0.01, 0.0, 0.02, 0.5, 1.0):
            passed = check_bmo_bloch_chain(f, slack=s)[1].passed
            assert not (prev and not passed)
            prev = passed


def test_fuzz_forced_constant_and_empty():
    s = fuzz(FuzzConfig(trials=1, force_map=CONST))
    assert s["pass"] and s["trials_passed"] == 1
    s = fuzz(FuzzConfig(trials=0))
    assert s["pass"] and s["trials"] == 0 and s["failures"] == []


def test_fuzz_deterministic_and_witnessed():
    cfg = FuzzConfig(trials=6, max_degree=4, seed=7, checks=("pointwise", "chain", "mean_value"))
    a, b = dumps(fuzz(cfg)), dumps(fuzz(cfg))
    assert a == b
    summary = json.loads(a)
    for failure in summary["failures"]:
        assert failure["verdict"]["witness"] and "map" in failure


def test_fuzz_negative_control_slack():
    opts = SuiteOptions(slack={"chain": -0.01})
    s = fuzz(FuzzConfig(trials=1, force_map=HarmonicPolynomial.c_z_plus_zbar(0.5), checks=("chain",)), opts)
    assert not s["pass"]
