import cmath
import math

import numpy as np
import pytest

from circlecheb import circle, polynomial
from circlecheb.circle import (
    ClosedFormParams,
    closed_form_s1,
    convergence_lower_bound,
    halasz_mu_lambda,
    joukowski,
    norm_table,
    recognize_rational,
    solve_constrained,
    solve_free,
)

SQRT2 = math.sqrt(2.0)


class TestJoukowski:
    def test_fixed_point(self):
        assert joukowski(1.0) == 1.0

    def test_circle_to_interval(self):
        for t in (0.3, 1.1, 2.9):
            assert joukowski(cmath.exp(1j * t)) == pytest.approx(math.cos(t), abs=1e-15)

    def test_exterior(self):
        assert joukowski(2.0) == 1.25

    def test_origin_rejected(self):
        with pytest.raises(ValueError):
            joukowski(0.0)


class TestConstrained:
    def test_degree_one(self):
        c = solve_constrained(2.0, 1)
        assert c.poly.coeffs == (1.0,)  # z + 1
        assert c.norm == pytest.approx(16.0 / (3.0 * math.sqrt(3.0)), rel=1e-12)
        assert c.angles == (math.pi,)

    def test_degree_two_closed_form(self):
        c = solve_constrained(2.0, 2)
        np.testing.assert_allclose(c.poly.coeffs, (1.0, -2 * (5 - 4 * SQRT2)), atol=1e-12)
        assert c.norm == pytest.approx(2.0 * math.cos(math.pi / 8.0) ** -4, rel=1e-12)

    def test_degree_zero(self):
        c = solve_constrained(1.0, 0)
        assert c.poly.coeffs == ()
        assert c.norm == pytest.approx(2.0, rel=1e-13)

    def test_s_below_one_rejected(self):
        with pytest.raises(ValueError):
            solve_constrained(0.5, 2)

    @pytest.mark.parametrize("s,n", [(1.5, 5), (2.0, 6), (3.0, 7)])
    def test_structure(self, s, n):
        c = solve_constrained(s, n)
        angles = np.array(c.angles)
        assert len(angles) == n
        # conjugate pairs: the multiset is symmetric under a -> 2pi - a
        sym = np.sort(np.mod(2.0 * math.pi - angles, 2.0 * math.pi))
        np.testing.assert_allclose(np.sort(angles), sym, atol=1e-12)
        if n % 2:
            assert sum(1 for a in angles if abs(a - math.pi) < 1e-12) == 1


class TestFree:
    def test_unweighted_is_monomial(self):
        for n in (1, 3, 5):
            r = solve_free(0.0, n)
            np.testing.assert_allclose(r.free.coeffs, np.zeros(n), atol=1e-13)
            assert r.free_norm == pytest.approx(1.0, rel=1e-12)

    def test_blatt_degree_one(self):
        r = solve_free(1.0, 1)
        assert r.free.coeffs[0] == pytest.approx(1.0 / 3.0, abs=1e-13)
        assert r.free_norm == pytest.approx(8.0 / (3.0 * math.sqrt(3.0)), rel=1e-12)

    def test_blatt_degree_two(self):
        r = solve_free(1.0, 2)
        np.testing.assert_allclose(
            r.free.coeffs, (3 - 2 * SQRT2, 6 * SQRT2 - 8), atol=1e-12
        )
        assert r.free_norm == pytest.approx(math.cos(math.pi / 8.0) ** -4, rel=1e-12)

    def test_monic_lead_exact(self):
        # the combination (s+1)Q + (z-1)Q' has leading coefficient (s+1)+n
        for s, n in [(0.5, 3), (1.7, 4), (3.0, 5)]:
            con = solve_constrained(s + 1.0, n)
            q = con.poly.full_coeffs()
            dq = polynomial.polyder(q)
            comb = (s + 1.0) * q
            comb[1:] += dq
            comb[:-1] -= dq
            assert comb[-1] == (s + 1.0) + n

    @pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
    def test_zeros_strictly_inside(self, s):
        for n in (1, 4, 9):
            r = solve_free(s, n)
            for z in polynomial.roots(r.free).roots:
                assert abs(z) <= 1.0 - 1e-9

    def test_halving(self):
        for s, n in [(0.5, 4), (1.7, 7), (3.0, 2)]:
            r = solve_free(s, n)
            assert r.free_norm * 2.0 == pytest.approx(r.constrained_norm, rel=1e-14)
            v1 = r.diagnostics["free_verified_norm"]
            v2 = r.diagnostics["constrained_verified_norm"]
            assert v1 == pytest.approx(v2 / 2.0, rel=1e-9)

    def test_negative_s_rejected(self):
        with pytest.raises(ValueError):
            solve_free(-1.0, 2)


class TestHalasz:
    def test_small_values(self):
        lam1, mu1 = halasz_mu_lambda(1)
        assert lam1 == pytest.approx(0.5, rel=1e-15)
        assert mu1 == pytest.approx(2.0, rel=1e-15)
        lam2, mu2 = halasz_mu_lambda(2)
        assert lam2 == pytest.approx(3.0 * math.sqrt(3.0) / 8.0, rel=1e-15)
        assert mu2 == pytest.approx(8.0 / (3.0 * math.sqrt(3.0)), rel=1e-15)

    def test_asymptotic_expansion(self):
        _, mu100 = halasz_mu_lambda(100)
        assert abs(mu100 - (1.0 + math.pi**2 / 800.0)) < 2e-4

    def test_consistency_with_solver(self):
        for n in range(1, 9):
            _, mu = halasz_mu_lambda(n)
            r = solve_free(1.0, n - 1)
            assert r.free_norm == pytest.approx(mu, rel=1e-11)


class TestClosedForms:
    def test_n1(self):
        cf = closed_form_s1(1)
        assert cf.params.eta0 == pytest.approx(0.5, rel=1e-15)
        assert cf.params.b_m == pytest.approx(-1.0, rel=1e-12)
        assert cf.value_at_zero == pytest.approx(1.0 / 3.0, rel=1e-14)

    def test_n2(self):
        cf = closed_form_s1(2)
        assert cf.params.xi0 == pytest.approx(math.cos(math.pi / 4.0), rel=1e-15)
        assert cf.value_at_zero == pytest.approx(3 - 2 * SQRT2, rel=1e-14)

    def test_n20(self):
        cf = closed_form_s1(20)
        xi0 = math.cos(math.pi / 22.0)
        assert cf.value_at_zero == pytest.approx((1 - xi0) / (1 + xi0), rel=1e-14)

    def test_params_invariants(self):
        for n in (0, 1, 2, 7, 12):
            p = closed_form_s1(n).params
            assert isinstance(p, ClosedFormParams)
            assert 0.0 < p.xi0 < 1.0 and 0.0 < p.eta0 < 1.0
            assert p.a_m < 0.0 and p.b_m < 0.0

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 8, 13])
    def test_witness_matches_interval_minimizer(self, n):
        # the witness polynomial equals (x-1) times the interval minimizer
        from circlecheb import remez

        cf = closed_form_s1(n)
        m = n // 2
        beta = 0.0 if n % 2 == 0 else 0.5
        r = remez.remez_solve(remez.GeneralizedWeight.jacobi(1.0, beta), m)
        lifted = np.convolve(r.minimizer.full_coeffs(), [-1.0, 1.0])
        np.testing.assert_allclose(cf.witness.full_coeffs(), lifted, atol=1e-9)

    def test_cross_validation_constant_term(self):
        for n in (1, 2, 5, 10, 17):
            r = solve_free(1.0, n)
            cf = closed_form_s1(n)
            assert r.free.coeffs[0] == pytest.approx(cf.value_at_zero, abs=1e-11)


class TestNormTable:
    def test_s1_matches_mu(self):
        rows = norm_table(1.0, 6)
        for row in rows:
            _, mu = halasz_mu_lambda(row.n + 1)
            assert row.norm == pytest.approx(mu, rel=1e-9)
            assert row.lower_bound == pytest.approx(mu, rel=1e-12)

    def test_s0_all_ones(self):
        rows = norm_table(0.0, 4)
        for row in rows:
            assert row.norm == pytest.approx(1.0, rel=1e-12)

    def test_half_bound(self):
        # (w_{1/2} T_n)^2 comparison gives mu_{2n+1}^{1/2}
        b = convergence_lower_bound(0.5, 10)
        expected = math.cos(math.pi / 44.0) ** -11
        assert b == pytest.approx(expected, rel=1e-13)
        rows = norm_table(0.5, 10)
        for row in rows[1:]:
            assert row.norm >= row.lower_bound - 1e-12

    def test_rational_recognition(self):
        assert recognize_rational(0.5) == pytest.approx(0.5)
        assert recognize_rational(1.0 / 3.0).denominator == 3
        assert recognize_rational(math.pi / 3.0) is None
