import cmath
import math

import numpy as np
import pytest

from circlecheb import rootfn
from circlecheb.rootfn import (
    CircleNorm,
    UnboundedDerivativeError,
    WeightedRootFn,
    derivative_modulus,
    modulus,
    reciprocal_fn,
    sup_norm,
)

# calculus oracle for |z-1||z+1/3| on the circle: with u = cos(theta) maximise
# (2-2u)(10/9 + 2u/3); the optimum sits at u = -1/3 with value 64/27
PEAK_LINEAR = math.sqrt(64.0 / 27.0)
# calculus oracle for |z-1|^2 |z+1|: maximise (2-2u)^2 (2+2u) at u = -1/3
PEAK_QUADRATIC = math.sqrt((8.0 / 3.0) ** 2 * (4.0 / 3.0))


class TestModulus:
    def test_linear(self):
        assert modulus(WeightedRootFn(1.0, ((1.0, 1.0),)), -1.0) == 2.0

    def test_fractional_at_pi(self):
        for s in (0.5, 1.5, 2.7):
            f = WeightedRootFn(1.0, ((1.0, s),))
            assert modulus(f, -1.0) == pytest.approx(2.0**s, rel=1e-14)

    def test_two_factor_peak(self):
        f = WeightedRootFn(1.0, ((1.0, 1.0), (-1.0 / 3.0, 1.0)))
        theta = math.acos(-1.0 / 3.0)
        assert modulus(f, cmath.exp(1j * theta)) == pytest.approx(PEAK_LINEAR, rel=1e-14)

    def test_zero_at_root(self):
        f = WeightedRootFn(1.0, ((1.0, 0.5),))
        assert modulus(f, 1.0) == 0.0

    def test_log_space_stability(self):
        # intermediate underflow times overflow with a representable result:
        # at z = 1 the factors are 0.1^500 and 10^500, product exactly 1
        f = WeightedRootFn(1.0, ((0.9, 500.0), (-9.0, 500.0)))
        val = modulus(f, 1.0)
        assert val == pytest.approx(1.0, rel=1e-9)


class TestDerivativeModulus:
    def test_polynomial_square(self):
        f = WeightedRootFn(1.0, ((1.0, 2.0),))
        assert derivative_modulus(f, -1.0) == pytest.approx(4.0, rel=1e-14)

    def test_fractional_power(self):
        f = WeightedRootFn(1.0, ((1.0, 1.5),))
        assert derivative_modulus(f, -1.0) == pytest.approx(1.5 * 2.0**0.5, rel=1e-14)

    def test_removable_limit(self):
        f = WeightedRootFn(1.0, ((1j, 1.0), (-1j, 1.0)))
        assert derivative_modulus(f, 1j) == pytest.approx(2.0, rel=1e-14)

    def test_zero_for_higher_multiplicity(self):
        f = WeightedRootFn(1.0, ((1.0, 2.0),))
        assert derivative_modulus(f, 1.0) == 0.0

    def test_unbounded_flag(self):
        f = WeightedRootFn(1.0, ((1.0, 0.5),))
        with pytest.raises(UnboundedDerivativeError):
            derivative_modulus(f, cmath.exp(1e-10j))


class TestSupNorm:
    def test_single_boundary_root(self):
        for s in (0.5, 1.0, 2.3):
            f = WeightedRootFn(1.0, ((1.0, s),))
            cn = sup_norm(f)
            assert cn.value == pytest.approx(2.0**s, rel=1e-13)
            assert cn.theta == pytest.approx(math.pi, abs=1e-6)
            assert cn.residual <= 1e-12 * cn.value

    def test_two_factor(self):
        f = WeightedRootFn(1.0, ((1.0, 1.0), (-1.0 / 3.0, 1.0)))
        assert sup_norm(f).value == pytest.approx(PEAK_LINEAR, rel=1e-13)

    def test_double_root_factor(self):
        f = WeightedRootFn(1.0, ((1.0, 2.0), (-1.0, 1.0)))
        assert sup_norm(f).value == pytest.approx(PEAK_QUADRATIC, rel=1e-13)

    def test_branch_freeness(self):
        f = WeightedRootFn(1.0, ((1.0, 1.3), (cmath.exp(2j), 2.1)))
        g = WeightedRootFn(cmath.exp(0.7j), f.factors)
        assert sup_norm(f).value == pytest.approx(sup_norm(g).value, rel=1e-14)

    def test_scaling(self):
        rng = np.random.default_rng(9)
        f = WeightedRootFn(1.0, ((cmath.exp(0.3j), 1.5), (cmath.exp(2.2j), 1.0)))
        for lam in rng.normal(size=3) + 1j * rng.normal(size=3):
            g = WeightedRootFn(lam, f.factors)
            assert sup_norm(g).value == pytest.approx(abs(lam) * sup_norm(f).value, rel=1e-13)

    def test_grid_doubling_stable(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            nfac = int(rng.integers(1, 7))
            facs = tuple(
                (cmath.exp(1j * rng.uniform(0, 2 * math.pi)), rng.uniform(1.0, 3.0))
                for _ in range(nfac)
            )
            f = WeightedRootFn(1.0, facs)
            v1 = sup_norm(f, grid=8192).value
            v2 = sup_norm(f, grid=16384).value
            assert abs(v1 - v2) <= 1e-10 * v1

    def test_derivative_norm(self):
        f = WeightedRootFn(1.0, ((1.0, 2.0),))
        # |f'| = 2|z-1| has maximum 4
        assert sup_norm(f, "derivative").value == pytest.approx(4.0, rel=1e-13)

    def test_derivative_precondition(self):
        f = WeightedRootFn(1.0, ((1.0, 0.7),))
        with pytest.raises(UnboundedDerivativeError):
            sup_norm(f, "derivative")


class TestHalfSumIdentity:
    def test_unimodular_roots(self):
        # Re sum s_k z/(z - a_k) = (sum s_k)/2 on the circle, off the roots
        rng = np.random.default_rng(4)
        for _ in range(10):
            nfac = int(rng.integers(1, 6))
            facs = tuple(
                (cmath.exp(1j * rng.uniform(0, 2 * math.pi)), rng.uniform(0.5, 3.0))
                for _ in range(nfac)
            )
            f = WeightedRootFn(1.0, facs)
            z = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            acc = sum(s * z / (z - a) for a, s in facs)
            assert acc.real == pytest.approx(f.total_exponent / 2.0, abs=1e-11)


class TestReciprocal:
    def test_exterior_root(self):
        f = WeightedRootFn(1.0, ((2.0, 1.0),))
        fr = reciprocal_fn(f)
        assert fr.factors[0][0] == pytest.approx(0.5)
        assert modulus(fr, 1.0) == pytest.approx(modulus(f, 1.0), rel=1e-14)

    def test_unimodular_fixed(self):
        f = WeightedRootFn(1.0, ((1.0, 1.5),))
        fr = reciprocal_fn(f)
        for t in np.linspace(0.1, 2 * math.pi, 16):
            z = cmath.exp(1j * t)
            assert modulus(fr, z) == pytest.approx(modulus(f, z), rel=1e-12)

    def test_derivative_dominates(self):
        # reciprocal of an exterior-root function has the larger derivative
        f = WeightedRootFn(1.0, ((2.0, 1.0),))
        fr = reciprocal_fn(f)
        for t in np.linspace(0.0, 2 * math.pi, 64, endpoint=False):
            z = cmath.exp(1j * t)
            assert derivative_modulus(fr, z) >= derivative_modulus(f, z) - 1e-12

    def test_origin_rejected(self):
        with pytest.raises(ValueError):
            reciprocal_fn(WeightedRootFn(1.0, ((0.0, 1.0),)))


class TestValidation:
    def test_positive_exponents_required(self):
        with pytest.raises(ValueError):
            WeightedRootFn(1.0, ((1.0, 0.0),))

    def test_norm_type(self):
        cn = sup_norm(WeightedRootFn(3.0, ()))
        assert isinstance(cn, CircleNorm)
        assert cn.value == 3.0
