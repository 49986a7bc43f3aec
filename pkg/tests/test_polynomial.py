import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlecheb import polynomial
from circlecheb.polynomial import (
    ComplexRootSet,
    ConjugateClosureError,
    MonicPoly,
    cheb_first_kind,
    cheb_third_kind,
    from_roots,
    reciprocal,
    roots,
)

SQRT2 = math.sqrt(2.0)


class TestEval:
    def test_linear(self):
        assert MonicPoly((-1.0,)).eval(-1.0) == -2.0

    def test_quadratic(self):
        assert MonicPoly((-0.5, 0.0)).eval(1.0) == 0.5

    def test_pipeline_constant_term(self):
        # hand expansion of the derivative pipeline at s=1, n=2
        p = MonicPoly((3 - 2 * SQRT2, 6 * SQRT2 - 8))
        assert p.eval(0.0) == pytest.approx(3 - 2 * SQRT2, abs=1e-15)

    def test_vectorized(self):
        p = MonicPoly((-0.5, 0.0))
        z = np.array([1.0, 2.0, 1j])
        np.testing.assert_allclose(p.eval(z), z**2 - 0.5)


class TestDerivative:
    def test_simple(self):
        lead, monic, raw = MonicPoly((-1.0, 0.0)).derivative()
        assert lead == 2.0
        assert monic.coeffs == (0.0,)
        np.testing.assert_allclose(raw, [0.0, 2.0])

    def test_cubic(self):
        _, _, raw = MonicPoly((1.0, -1.0, -1.0)).derivative()
        np.testing.assert_allclose(raw, [-1.0, -2.0, 3.0])

    def test_derived_case(self):
        c = 5 - 4 * SQRT2
        _, _, raw = MonicPoly((1.0, -2 * c)).derivative()
        np.testing.assert_allclose(raw, [-2 * c, 2.0])

    def test_degree_zero_signal(self):
        lead, monic, raw = MonicPoly(()).derivative()
        assert lead == 0.0 and monic is None
        np.testing.assert_allclose(raw, [0.0])

    def test_linearity(self):
        rng = np.random.default_rng(3)
        a = MonicPoly(tuple(rng.normal(size=4)))
        b = MonicPoly(tuple(rng.normal(size=4)))
        # derivative of (a + b as coefficient arrays) is the coefficient sum
        da = polynomial.polyder(a.full_coeffs())
        db = polynomial.polyder(b.full_coeffs())
        dsum = polynomial.polyder(a.full_coeffs() + b.full_coeffs())
        np.testing.assert_allclose(dsum, da + db, atol=1e-14)


class TestFromRoots:
    def test_single(self):
        assert from_roots([1.0]).coeffs == (-1.0,)

    def test_conjugate_pair(self):
        p = from_roots([1j, -1j], conjugate_closed=True)
        assert p.coeffs == (1.0, 0.0)

    def test_cos_alpha_pair(self):
        c = 5 - 4 * SQRT2
        alpha = math.acos(c)
        p = from_roots([cmath.exp(1j * alpha), cmath.exp(-1j * alpha)], conjugate_closed=True)
        np.testing.assert_allclose(p.coeffs, (1.0, -2 * c), atol=1e-15)

    def test_closure_violation(self):
        with pytest.raises(ConjugateClosureError):
            from_roots([1j, 0.5j], conjugate_closed=True)


class TestRoots:
    def test_pure_imaginary_pair(self):
        rs = sorted(roots(MonicPoly((1.0, 0.0))).roots, key=lambda z: z.imag)
        np.testing.assert_allclose(rs, [-1j, 1j], atol=1e-12)

    def test_monomial(self):
        rs = roots(MonicPoly((0.0,) * 5)).roots
        assert rs == (0.0,) * 5

    def test_conjugate_pair_modulus(self):
        # product of the roots equals the constant term (sqrt(2)-1)^2
        p = MonicPoly((3 - 2 * SQRT2, 6 * SQRT2 - 8))
        rs = roots(p)
        np.testing.assert_allclose(rs.moduli(), SQRT2 - 1, atol=1e-12)
        assert rs.roots[0] == pytest.approx(rs.roots[1].conjugate(), abs=1e-12)

    def test_residual_invariant(self):
        rng = np.random.default_rng(11)
        p = MonicPoly(tuple(rng.normal(size=12)))
        rs = roots(p)
        for z in rs.roots:
            assert abs(p.eval(z)) <= rs.tolerance * (1 + abs(z)) ** p.degree * 10

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            roots(MonicPoly(()))

    def test_roundtrip_well_separated(self):
        rng = np.random.default_rng(5)
        for deg in (6, 14, 30):
            angles = np.sort(rng.uniform(0, math.pi, size=deg // 2))
            angles += np.arange(deg // 2) * 1e-2  # enforce separation
            radii = rng.uniform(0.3, 1.2, size=deg // 2)
            rts = [r * cmath.exp(1j * a) for r, a in zip(radii, angles)]
            rts = rts + [z.conjugate() for z in rts]
            p = from_roots(rts, conjugate_closed=True)
            back = from_roots(roots(p).roots, conjugate_closed=True)
            scale = np.maximum(np.abs(p.full_coeffs()), 1.0)
            np.testing.assert_allclose(
                back.full_coeffs() / scale, p.full_coeffs() / scale, atol=1e-8
            )


class TestReciprocal:
    def test_linear(self):
        np.testing.assert_allclose(reciprocal(MonicPoly((-2.0,))), [1.0, -2.0])

    def test_self_reciprocal(self):
        np.testing.assert_allclose(reciprocal(MonicPoly((1.0, 0.0))), [1.0, 0.0, 1.0])

    def test_same_modulus_on_circle(self):
        p = MonicPoly((-2.0,))
        pr = reciprocal(p)
        for t in (0.0, 1.0, 2.0):
            z = cmath.exp(1j * t)
            assert abs(polynomial.polyval(pr, z)) == pytest.approx(abs(p.eval(z)), abs=1e-14)

    @given(st.lists(st.floats(-2, 2), min_size=1, max_size=8), st.floats(0, 2 * math.pi))
    @settings(max_examples=50, deadline=None)
    def test_modulus_identity_property(self, coeffs, t):
        p = MonicPoly(tuple(coeffs))
        z = cmath.exp(1j * t)
        lhs = abs(polynomial.polyval(reciprocal(p), z))
        rhs = abs(p.eval(z))
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


class TestChebyshevFamilies:
    def test_first_kind_small(self):
        assert cheb_first_kind(1).coeffs == (0.0,)
        assert cheb_first_kind(2).coeffs == (-0.5, 0.0)
        np.testing.assert_allclose(cheb_first_kind(3).coeffs, (0.0, -0.75, 0.0))

    @pytest.mark.parametrize("k", [1, 2, 5, 9, 14])
    def test_first_kind_equioscillates(self, k):
        p = cheb_first_kind(k)
        pts = np.cos(np.pi * np.arange(k + 1) / k)
        vals = np.array([p.eval(x) for x in pts])
        # Horner noise is eps relative to the O(1) coefficients, not the value
        np.testing.assert_allclose(np.abs(vals), 2.0 ** (1 - k), rtol=1e-11)
        assert np.all(np.sign(vals[1:]) != np.sign(vals[:-1]))

    def test_third_kind_small(self):
        assert cheb_third_kind(0).coeffs == ()
        assert cheb_third_kind(1).coeffs == (-0.5,)
        np.testing.assert_allclose(cheb_third_kind(2).coeffs, (-0.25, -0.5))

    @pytest.mark.parametrize("k", [1, 2, 3, 6, 10])
    def test_third_kind_matches_trig_quotient(self, k):
        p = cheb_third_kind(k)
        assert p.eval(1.0) == pytest.approx(2.0 ** (-k), rel=1e-13)
        theta = np.linspace(0.1, math.pi - 0.1, 23)
        expected = 2.0 ** (-k) * np.cos((k + 0.5) * theta) / np.cos(theta / 2.0)
        got = np.array([p.eval(x) for x in np.cos(theta)])
        np.testing.assert_allclose(got, expected, atol=1e-12)
