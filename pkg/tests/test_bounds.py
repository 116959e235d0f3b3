"""Tests for parameter derivation, envelopes, and the explicit constant chain.

Every pinned constant below was recomputed independently in 50-digit
arithmetic (series evaluation of the envelope, golden-section minimization
at 1e-30 bracket width) and rounded to double; the package must match to
~5e-14 relative.
"""

import math

import numpy as np
import pytest

from trcq_kit.bounds import (
    CONSTANTS_CSV_HEADER,
    SmoothCausalFunction,
    TheoremParams,
    apply_Pm,
    bound_rhs,
    const_Cm1,
    const_Cmu1,
    const_chain,
    derivative_shift,
    derive_params,
    params_csv_row,
    theta1,
    theta2,
    theta3,
)
from trcq_kit.functions import poly_exp
from trcq_kit.symbols import CFModel, make_delay

D_AT_ONE = 0.09260497968758102

# mu -> (m, alpha, beta, epsilon, delta_shift)
PARAM_TABLE = {
    0.0: (0, 5, 5, 3.0, 1.0),
    0.25: (1, 4, 6, 2.75, 0.75),
    0.5: (1, 4, 6, 2.5, 0.5),
    1.0: (1, 5, 6, 3.0, 1.0),
    1.5: (2, 4, 8, 3.5, 0.5),
    2.0: (2, 5, 8, 3.0, 1.0),
    3.0: (3, 5, 10, 4.0, 1.0),
}

# mu -> (Cm1, Cmu1, Cm, Cmu2, Cmu3, Cmu), 50-digit chain rounded to double
CHAIN_TABLE = {
    0.0: (
        0.0,
        1.7115017345609548217,
        0.0,
        0.74044355481877977301,
        0.0,
        0.74044355481877977301,
    ),
    0.5: (
        1.6312623571634567761,
        5.4162327645792753024,
        0.70572975427922611048,
        2.3432138927745828516,
        0.99805258987191337742,
        2.3432138927745828516,
    ),
    1.0: (
        1.6312623571634567761,
        1.7115017345609548217,
        0.70572975427922611048,
        0.74044355481877977301,
        0.70572975427922611048,
        0.74044355481877977301,
    ),
    2.0: (
        6.7087495178513277561,
        1.7115017345609548217,
        2.9023928174170933848,
        0.74044355481877977301,
        2.9023928174170933848,
        2.9023928174170933848,
    ),
}


# --------------------------------------------------------------------------
# smooth causal inputs and the P_m operator
# --------------------------------------------------------------------------


class TestSmoothCausalFunction:
    def test_causal_extension(self):
        g = poly_exp(3)
        np.testing.assert_array_equal(g.deriv(-1.0, 2), np.zeros(1))
        assert float(g(-0.1)[0]) == 0.0

    def test_order_validation(self):
        g = poly_exp(3, max_order=8)
        with pytest.raises(ValueError):
            g.deriv(1.0, 9)
        with pytest.raises(ValueError):
            g.deriv(1.0, -1)


class TestDerivativeShift:
    def test_shift_semantics(self):
        """The j-th derivative of the shifted function is g^(k+j)."""
        g = poly_exp(5)
        h = derivative_shift(g, 3)
        assert h.max_order == g.max_order - 3
        np.testing.assert_allclose(h.deriv(0.7, 2), g.deriv(0.7, 5), rtol=0, atol=0)

    def test_overshift_rejected(self):
        g = poly_exp(5, max_order=6)
        with pytest.raises(ValueError):
            derivative_shift(g, 7)


class TestApplyPm:
    def test_leibniz_identity_order_one(self):
        """P_1 h = h + h' pinned on the 5-shift of t^5 e^-t at t = 0.7."""
        h = derivative_shift(poly_exp(5), 5)
        val = apply_Pm(h, 1, 0.7)
        assert complex(val[0]).real == pytest.approx(
            -10.37888114189235456209, rel=5e-15
        )
        assert complex(val[0]).imag == 0.0

    def test_leibniz_identity_order_two(self):
        """P_2 g = g + 2 g' + g'' from the binomial expansion."""
        g = poly_exp(3)
        val = apply_Pm(g, 2, 1.3)
        ref = g.deriv(1.3, 0) + 2.0 * g.deriv(1.3, 1) + g.deriv(1.3, 2)
        np.testing.assert_allclose(val.real, ref, rtol=1e-15)

    def test_order_zero_is_identity(self):
        g = poly_exp(4)
        np.testing.assert_allclose(apply_Pm(g, 0, 0.9).real, g.deriv(0.9, 0), rtol=0)

    def test_validation(self):
        g = poly_exp(3, max_order=4)
        with pytest.raises(ValueError):
            apply_Pm(g, -1, 1.0)
        with pytest.raises(ValueError, match="orders up to 4"):
            apply_Pm(g, 5, 1.0)


# --------------------------------------------------------------------------
# parameter derivation
# --------------------------------------------------------------------------


class TestDeriveParams:
    def test_parameter_table(self):
        """(m, alpha, beta, epsilon, delta_shift) across representative mu."""
        for mu, (m, alpha, beta, eps, shift) in PARAM_TABLE.items():
            p = derive_params(mu, with_constants=False)
            assert (p.m, p.alpha, p.beta) == (m, alpha, beta), f"mu={mu}"
            assert p.epsilon == pytest.approx(eps, rel=0, abs=0), f"mu={mu}"
            assert p.delta_shift == pytest.approx(shift, rel=0, abs=0), f"mu={mu}"

    def test_epsilon_bracket(self):
        """epsilon always lies in [1 + max(m,1), 2 + max(m,1)]."""
        rng = np.random.default_rng(20260814)
        for mu in 6.0 * rng.random(200):
            p = derive_params(float(mu), with_constants=False)
            lo = 1.0 + max(p.m, 1)
            hi = 2.0 + max(p.m, 1)
            assert lo - 1e-12 <= p.epsilon <= hi + 1e-12, f"mu={mu}"

    def test_integer_mu_gives_alpha_five(self):
        for mu in (0.0, 1.0, 2.0, 5.0):
            assert derive_params(mu, with_constants=False).alpha == 5

    def test_fractional_mu_gives_alpha_four(self):
        for mu in (0.1, 0.9, 1.5, 3.25):
            assert derive_params(mu, with_constants=False).alpha == 4

    def test_negative_mu_rejected(self):
        with pytest.raises(ValueError):
            derive_params(-0.5)
        with pytest.raises(ValueError):
            derive_params(float("nan"))

    def test_bad_constants_rejected(self):
        with pytest.raises(ValueError, match="finite and non-negative"):
            TheoremParams(
                mu=0.0,
                m=0,
                alpha=5,
                beta=5,
                epsilon=3.0,
                delta_shift=1.0,
                constants={"Cmu": -1.0},
            )


# --------------------------------------------------------------------------
# envelopes
# --------------------------------------------------------------------------


class TestThetas:
    def test_theta1_formula(self):
        cf = CFModel(2.0, 1.0)
        # sigma = 0.5: y = 0.25, mu = -1 -> 0.25**-1 * cf(0.25) = 4 * 8 = 32
        assert theta1(0.5, -1.0, cf) == pytest.approx(32.0, rel=1e-14)
        # sigma >= 1 clamps to y = 0.5
        assert theta1(3.0, -1.0, cf) == pytest.approx(2.0 * 4.0, rel=1e-14)

    def test_theta2_formula(self):
        cf = CFModel(1.0, 0.0)
        # 2**(1-mu)/sigma * cf(sigma/2) with mu = 0: 2/sigma
        assert theta2(4.0, 0.0, cf) == pytest.approx(0.5, rel=1e-14)

    def test_theta3_matches_envelope_value(self):
        """At mu = 0 the approximation envelope reduces to D(sigma)."""
        assert theta3(1.0, 0.0) == pytest.approx(D_AT_ONE, rel=1e-13)

    def test_theta3_negative_mu(self):
        ref = D_AT_ONE / (1.0 - D_AT_ONE)
        assert theta3(1.0, -1.0) == pytest.approx(ref, rel=1e-12)

    def test_domain_errors(self):
        cf = CFModel(1.0, 0.0)
        with pytest.raises(ValueError):
            theta1(0.0, 0.0, cf)
        with pytest.raises(ValueError):
            theta1(1.0, 0.5, cf)
        with pytest.raises(ValueError):
            theta2(-1.0, 0.0, cf)
        with pytest.raises(ValueError):
            theta3(1.0, 0.5)
        with pytest.raises(ValueError):
            theta3(3.0, 0.0)  # beyond the envelope's positive-mass interval


# --------------------------------------------------------------------------
# constant chain
# --------------------------------------------------------------------------


class TestConstantChain:
    def test_pinned_chain_values(self):
        """Full chain at mu in {0, 0.5, 1, 2} against 50-digit references."""
        for mu, refs in CHAIN_TABLE.items():
            chain = const_chain(mu)
            got = tuple(chain[k] for k in ("Cm1", "Cmu1", "Cm", "Cmu2", "Cmu3", "Cmu"))
            np.testing.assert_allclose(got, refs, rtol=5e-14, atol=1e-300)

    def test_chain_relations(self):
        """Cm, Cmu2, Cmu3, Cmu follow from Cm1/Cmu1 by fixed algebra."""
        chain = const_chain(1.5)
        scale = math.e / (2.0 * math.pi)
        assert chain["Cm"] == pytest.approx(scale * chain["Cm1"], rel=1e-15)
        assert chain["Cmu2"] == pytest.approx(scale * chain["Cmu1"], rel=1e-15)
        assert chain["Cmu3"] == pytest.approx(chain["Cm"] * 2.0**0.5, rel=1e-15)
        assert chain["Cmu"] == max(chain["Cmu2"], chain["Cmu3"])

    def test_cm1_order_zero_vanishes(self):
        assert const_Cm1(0) == 0.0

    def test_cm1_negative_order_rejected(self):
        with pytest.raises(ValueError):
            const_Cm1(-1)

    def test_cmu1_domain(self):
        with pytest.raises(ValueError):
            const_Cmu1(0.5)
        with pytest.raises(ValueError):
            const_Cmu1(-1.0)

    def test_all_constants_positive_for_positive_mu(self):
        chain = const_chain(0.75)
        for key, val in chain.items():
            assert val > 0.0, key


# --------------------------------------------------------------------------
# right-hand side of the bound
# --------------------------------------------------------------------------


class TestBoundRhs:
    def test_pinned_value_delay_poly5exp(self):
        """kappa = 0.1, t = 2: product of pinned Cmu and pinned kink integrals."""
        val = bound_rhs(make_delay(1.0), poly_exp(5), 0.1, 2.0)
        assert val == pytest.approx(3.4515644891089559, rel=1e-8)

    def test_kappa_squared_scaling(self):
        """Halving kappa divides the bound by exactly four."""
        a = bound_rhs(make_delay(1.0), poly_exp(5), 0.1, 2.0)
        b = bound_rhs(make_delay(1.0), poly_exp(5), 0.05, 2.0)
        assert a / b == pytest.approx(4.0, rel=1e-15)

    def test_explicit_params_match_default(self):
        p = derive_params(0.0)
        a = bound_rhs(make_delay(1.0), poly_exp(5), 0.1, 1.0, params=p)
        b = bound_rhs(make_delay(1.0), poly_exp(5), 0.1, 1.0)
        assert a == b

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            bound_rhs(make_delay(1.0), poly_exp(5), 0.0, 1.0)
        with pytest.raises(ValueError):
            bound_rhs(make_delay(1.0), poly_exp(5), 1.5, 1.0)
        with pytest.raises(ValueError):
            bound_rhs(make_delay(1.0), poly_exp(5), 0.1, 0.0)

    def test_insufficient_smoothness_rejected(self):
        g = poly_exp(5, max_order=4)
        with pytest.raises(ValueError, match="orders up to 4"):
            bound_rhs(make_delay(1.0), g, 0.1, 1.0)


# --------------------------------------------------------------------------
# CSV export
# --------------------------------------------------------------------------


class TestParamsCsv:
    def test_header_and_row_agree(self):
        assert CONSTANTS_CSV_HEADER.count(",") == 10
        p = derive_params(1.0)
        row = params_csv_row(p)
        fields = row.split(",")
        assert len(fields) == 11
        assert float(fields[0]) == 1.0
        assert int(fields[1]) == 1
        assert int(fields[2]) == 5
        assert int(fields[3]) == 6
        assert float(fields[4]) == 3.0
        assert float(fields[10]) == pytest.approx(
            CHAIN_TABLE[1.0][5], rel=5e-14
        )
