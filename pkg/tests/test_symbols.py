"""Tests for symbol construction, operator norms, and growth certificates."""

import numpy as np
import pytest

from trcq_kit import (
    CFModel,
    Symbol,
    builtin_zoo,
    from_spec,
    make_decay,
    make_delay,
    make_power,
    make_resolvent,
    s_kappa,
    sample_cplus,
    symbol_product,
    tr_symbol,
    validate_growth,
    value_norm,
)


class TestCFModel:
    """Envelope x -> scale * min(x, 1)^(-exponent)."""

    def test_values(self):
        cf = CFModel(scale=2.0, exponent=3.0)
        np.testing.assert_allclose(cf(0.5), 2.0 * 0.5**-3)
        np.testing.assert_allclose(cf(4.0), 2.0)  # clamped above 1
        np.testing.assert_allclose(cf(np.array([0.25, 2.0])), [2.0 * 4.0**3, 2.0])

    def test_domain_and_validation(self):
        cf = CFModel(scale=1.0, exponent=0.0)
        with pytest.raises(ValueError):
            cf(0.0)
        with pytest.raises(ValueError):
            CFModel(scale=-1.0, exponent=0.0)
        with pytest.raises(ValueError):
            CFModel(scale=1.0, exponent=-0.5)


class TestValueNorm:
    """Operator 2-norm of matrix stacks; closed forms must match LAPACK."""

    def test_scalar_blocks(self):
        vals = np.array([[[3.0 + 4.0j]]])
        np.testing.assert_allclose(value_norm(vals), [5.0])

    def test_2x2_matches_svd(self):
        rng = np.random.default_rng(21)
        mats = rng.standard_normal((500, 2, 2)) + 1j * rng.standard_normal((500, 2, 2))
        ref = np.linalg.svd(mats, compute_uv=False)[..., 0]
        np.testing.assert_allclose(value_norm(mats), ref, rtol=1e-12)

    def test_larger_blocks_use_svd(self):
        rng = np.random.default_rng(22)
        mats = rng.standard_normal((20, 3, 3)) + 1j * rng.standard_normal((20, 3, 3))
        ref = np.linalg.svd(mats, compute_uv=False)[..., 0]
        np.testing.assert_allclose(value_norm(mats), ref, rtol=1e-12)

    def test_plain_vector_input(self):
        np.testing.assert_allclose(value_norm(np.array(2.0 + 0j)), 2.0)


class TestZoo:
    """Shipped symbols evaluate to their defining formulas."""

    def test_power_values(self):
        s = np.array([4.0 + 0j, 0.5 + 1.0j, 2.0 + 3.0j])
        np.testing.assert_allclose(
            make_power(0.5)(s)[..., 0, 0], np.exp(0.5 * np.log(s)), rtol=1e-15
        )
        np.testing.assert_allclose(make_power(1.0)(s)[..., 0, 0], s, rtol=1e-15)
        np.testing.assert_allclose(make_power(-1.0)(s)[..., 0, 0], 1.0 / s, rtol=1e-15)
        np.testing.assert_allclose(make_power(0.0)(s)[..., 0, 0], 1.0)

    def test_delay_and_decay(self):
        s = np.array([1.0 + 2.0j])
        np.testing.assert_allclose(
            make_delay(1.5)(s)[..., 0, 0], np.exp(-1.5 * s), rtol=1e-15
        )
        np.testing.assert_allclose(
            make_decay(2.0)(s)[..., 0, 0], 1.0 / (s + 2.0), rtol=1e-15
        )

    def test_resolvent_matches_inv(self):
        rng = np.random.default_rng(23)
        A = np.array([[0.0, 1.0], [-1.0, 0.0]])
        F = make_resolvent(A)
        s = sample_cplus(200, rng)
        vals = F(s)
        ref = np.linalg.inv(s[:, None, None] * np.eye(2) - A)
        np.testing.assert_allclose(vals, ref, rtol=1e-12)

    def test_domain_guard(self):
        with pytest.raises(ValueError):
            make_power(1.0)(np.array([-1.0 + 0j]))
        with pytest.raises(ValueError):
            make_delay(0.0)
        with pytest.raises(ValueError):
            make_decay(-1.0)

    def test_builtin_zoo_contents(self):
        zoo = builtin_zoo()
        assert {"power:0", "power:1", "power:-1", "power:0.5", "delay:1.0",
                "decay:1.0", "resolvent:skew2"} <= set(zoo)
        for F in zoo.values():
            rep = validate_growth(F, samples=2000, seed=99)
            assert rep.violations == 0


class TestGrowthValidation:
    """validate_growth must accept true certificates and flag false ones."""

    def test_detects_wrong_certificate(self):
        bad = Symbol(
            name="bad",
            evaluator=lambda s: np.ones(s.shape + (1, 1), dtype=complex),
            mu=0.0,
            cf=CFModel(scale=0.1, exponent=0.0),  # claims ||F|| <= 0.1, false
        )
        rep = validate_growth(bad, samples=1000, seed=5)
        assert rep.violations == 1000

    def test_passes_correct_certificate(self):
        rep = validate_growth(make_delay(1.0), samples=5000, seed=6)
        assert rep.violations == 0


class TestTrSymbol:
    """Substituted symbol F(s_kappa(s)) and its transformed certificate."""

    def test_evaluation(self):
        F = make_decay(1.0)
        kappa = 0.2
        Fk = tr_symbol(F, kappa)
        rng = np.random.default_rng(31)
        s = sample_cplus(300, rng)
        np.testing.assert_allclose(Fk(s), F(np.asarray(s_kappa(s, kappa))), rtol=1e-14)

    def test_certificate_mu_nonpositive(self):
        F = make_decay(1.0)  # mu = -1, cf = (1, 0)
        Fk = tr_symbol(F, 0.5)
        assert Fk.mu == 0.0
        # scale *= 2^(exp - mu) = 2^(0-(-1)) = 2; exponent = exp - mu = 1
        np.testing.assert_allclose(Fk.cf.scale, 2.0)
        np.testing.assert_allclose(Fk.cf.exponent, 1.0)

    def test_certificate_mu_positive(self):
        F = make_power(1.0)  # mu = 1, cf = (1, 0)
        kappa = 0.25
        Fk = tr_symbol(F, kappa)
        assert Fk.mu == 0.0
        # scale *= 2^exp * 8^mu * kappa^(-2mu); exponent += mu
        np.testing.assert_allclose(Fk.cf.scale, 8.0 / kappa**2)
        np.testing.assert_allclose(Fk.cf.exponent, 1.0)

    def test_transformed_certificate_validates(self):
        for F in (make_delay(1.0), make_power(1.0), make_decay(1.0)):
            for kappa in (0.5, 0.1):
                rep = validate_growth(tr_symbol(F, kappa), samples=3000, seed=8)
                assert rep.violations == 0, (F.name, kappa)


class TestSymbolProduct:
    """Products multiply values and certificates, and add growth exponents."""

    def test_values_and_metadata(self):
        F, G = make_decay(1.0), make_delay(0.5)
        P = symbol_product(F, G)
        rng = np.random.default_rng(41)
        s = sample_cplus(100, rng)
        np.testing.assert_allclose(P(s), F(s) @ G(s), rtol=1e-14)
        assert P.mu == F.mu + G.mu
        rep = validate_growth(P, samples=2000, seed=9)
        assert rep.violations == 0


class TestFromSpec:
    """String registry for the CLI."""

    def test_round_trips(self):
        assert from_spec("power:0.5").mu == 0.5
        assert from_spec("delay:2.0").name == "delay:2"
        assert from_spec("decay:1.0").mu == -1.0

    def test_resolvent_files(self, tmp_path):
        A = np.array([[0.0, 1.0], [-1.0, 0.0]])
        npy = tmp_path / "mat.npy"
        np.save(npy, A)
        txt = tmp_path / "mat.txt"
        np.savetxt(txt, A)
        s = np.array([1.0 + 1.0j])
        np.testing.assert_allclose(
            from_spec(f"resolvent:{npy}")(s), from_spec(f"resolvent:{txt}")(s), rtol=1e-14
        )

    def test_errors(self):
        with pytest.raises(ValueError):
            from_spec("power:")
        with pytest.raises(ValueError):
            from_spec("banana:1")
        with pytest.raises(FileNotFoundError):
            from_spec("resolvent:/no/such/file.npy")
