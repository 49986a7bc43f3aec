import math

import numpy as np
import pytest

from circlecheb import polynomial
from circlecheb.remez import (
    GeneralizedWeight,
    RemezError,
    bernstein_prediction,
    interval_roots,
    remez_solve,
    verify_alternation,
)

SQRT2 = math.sqrt(2.0)


def dense_norm(weight, poly, npts=200001):
    """Independent recomputation of max |w P| by dense sampling."""
    x = np.cos(np.linspace(0.0, math.pi, npts))
    return float(np.max(weight(x) * np.abs(poly.eval(x))))


class TestClassicalCases:
    def test_unweighted_degree2(self):
        r = remez_solve(GeneralizedWeight(), 2)
        np.testing.assert_allclose(r.minimizer.coeffs, (-0.5, 0.0), atol=1e-14)
        assert r.norm == pytest.approx(0.5, rel=1e-13)

    @pytest.mark.parametrize("m", range(1, 16))
    def test_reproduces_monic_chebyshev(self, m):
        r = remez_solve(GeneralizedWeight(), m)
        expected = polynomial.cheb_first_kind(m)
        np.testing.assert_allclose(r.minimizer.coeffs, expected.coeffs, atol=1e-10)

    def test_single_boundary_zero(self):
        # closed form: minimizer x - (5 - 4 sqrt 2), norm 12 - 8 sqrt 2
        r = remez_solve(GeneralizedWeight.jacobi(1.0, 0.0), 1)
        assert r.minimizer.coeffs[0] == pytest.approx(-(5 - 4 * SQRT2), abs=1e-12)
        assert r.norm == pytest.approx(12 - 8 * SQRT2, rel=1e-12)

    def test_degree_zero(self):
        # single-variable calculus: max (1-x)(1+x)^(1/2) at x = -1/3
        r = remez_solve(GeneralizedWeight.jacobi(1.0, 0.5), 0)
        assert r.minimizer.coeffs == ()
        assert r.norm == pytest.approx((4.0 / 3.0) * math.sqrt(2.0 / 3.0), rel=1e-13)


class TestAlternation:
    def test_count_and_interior(self):
        w = GeneralizedWeight.jacobi(1.5, 0.5)
        r = remez_solve(w, 5)
        pts = r.alternation.points
        assert len(pts) == 6
        assert r.alternation.alternates()
        # weight vanishes at both endpoints, so no alternation point touches them
        assert -1.0 < pts[0] and pts[-1] < 1.0

    def test_endpoint_included_when_weight_positive(self):
        r = remez_solve(GeneralizedWeight(), 3)
        assert r.alternation.points[0] == pytest.approx(-1.0)
        assert r.alternation.points[-1] == pytest.approx(1.0)

    def test_verify_clean(self):
        w = GeneralizedWeight.jacobi(0.5, 0.0)
        r = remez_solve(w, 4)
        rep = verify_alternation(r, w)
        assert rep["alternating"]
        assert rep["max_relative_defect"] <= 1e-10

    def test_verify_detects_perturbation(self):
        from dataclasses import replace

        w = GeneralizedWeight.jacobi(1.0, 0.0)
        r = remez_solve(w, 3)
        bad_coeffs = list(r.minimizer.coeffs)
        bad_coeffs[1] += 1e-3
        bad = replace(r, minimizer=polynomial.MonicPoly(tuple(bad_coeffs)))
        rep = verify_alternation(bad, w)
        assert rep["max_relative_defect"] > 1e-4


class TestMinimality:
    @pytest.mark.parametrize("alpha,beta,m", [(1.0, 0.0, 3), (0.5, 0.5, 4), (1.7, 0.0, 2)])
    def test_no_coefficient_perturbation_improves(self, alpha, beta, m):
        w = GeneralizedWeight.jacobi(alpha, beta)
        r = remez_solve(w, m)
        base = dense_norm(w, r.minimizer)
        for j in range(m):
            for sign in (-1.0, 1.0):
                c = list(r.minimizer.coeffs)
                c[j] += sign * 1e-6
                assert dense_norm(w, polynomial.MonicPoly(tuple(c))) >= base - 1e-13


class TestRoots:
    def test_roots_bracketed(self):
        w = GeneralizedWeight.jacobi(1.0, 0.5)
        r = remez_solve(w, 6)
        xk = interval_roots(r)
        assert len(xk) == 6
        assert np.all(np.diff(xk) > 0)
        assert np.all((-1 < xk) & (xk < 1))
        for x in xk:
            assert abs(r.eval_cheb(x)) < 1e-13


class TestWeightHandling:
    def test_interior_zero_flagged(self):
        w = GeneralizedWeight([(0.3, 2.0)])
        r = remez_solve(w, 2)
        assert r.diagnostics.get("interior_weight_zero") is True
        assert r.defect <= 1e-12

    def test_identically_zero_weight_rejected(self):
        with pytest.raises(ValueError):
            remez_solve(GeneralizedWeight([(0.0, 1.0)], smooth=lambda x: 0.0 * x), 1)

    def test_smooth_factor(self):
        w = GeneralizedWeight(smooth=lambda x: 2.0 + x)
        r = remez_solve(w, 2)
        assert r.defect <= 1e-12


class TestBernstein:
    def test_unweighted(self):
        assert bernstein_prediction(GeneralizedWeight(), 7) == pytest.approx(2.0**-6)

    def test_jacobi(self):
        w = GeneralizedWeight.jacobi(1.0, 0.5)
        assert bernstein_prediction(w, 5) == pytest.approx(2.0 ** (1 - 5 - 1.5), rel=1e-14)

    def test_interior_factor(self):
        w = GeneralizedWeight([(0.3, 2.0)])
        assert bernstein_prediction(w, 3) == pytest.approx(2.0 ** (1 - 3 - 2), rel=1e-14)

    def test_smooth_quadrature(self):
        # constant smooth factor c contributes log c to the exponent
        w = GeneralizedWeight(smooth=lambda x: 3.0 + 0.0 * x)
        assert bernstein_prediction(w, 4) == pytest.approx(3.0 * 2.0**-3, rel=1e-10)

    @pytest.mark.parametrize("alpha,beta", [(1.0, 0.0), (1.0, 1.0), (1.5, 1.5)])
    def test_error_shrinks_with_degree(self, alpha, beta):
        w = GeneralizedWeight.jacobi(alpha, beta)
        limit = 2.0 ** (-(alpha + beta))
        errs = []
        for m in (10, 20, 40):
            r = remez_solve(w, m)
            errs.append(abs(2.0 ** (m - 1) * r.norm - limit) / limit)
        assert errs[0] > errs[1] > errs[2]

    def test_half_zero_saturates_exactly(self):
        # the (1/2, 0) weight hits the limit at every degree, a hidden
        # consequence of the unweighted circle problem being trivial
        w = GeneralizedWeight.jacobi(0.5, 0.0)
        for m in (5, 17, 40):
            r = remez_solve(w, m)
            assert 2.0 ** (m - 1) * r.norm == pytest.approx(2.0**-0.5, rel=1e-11)


class TestFailureModes:
    def test_unreachable_tolerance(self):
        with pytest.raises(RemezError):
            remez_solve(GeneralizedWeight.jacobi(1.5, 0.5), 80, tol=1e-15)
