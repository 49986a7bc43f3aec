"""Derivative-norm checks for root-power products on the unit circle.

For f = c * prod (z - a_k)^{s_k} with exponents s_k >= 1 the classical
Erdos-Lax/Turan circle of results extends beyond polynomials:

  * all roots unimodular          ->  ||f'|| = (sum s_k / 2) ||f||  (equality)
  * all roots outside the disk,
    integer exponents off circle  ->  ||f'|| <= (sum s_k / 2) ||f||, strict
                                      unless every root is unimodular
  * all roots inside the disk     ->  ||f'|| >= (sum s_k / 2) ||f||

plus the maximal-point identity (|f'| peaks where |f| does, with
|sum s_k/(z-a_k)| = sum s_k / 2 there) and a zero-location lemma for the
combination f + zeta z^l f*.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polynomial, rootfn
from .rootfn import WeightedRootFn

EQUALITY = "equality-within-tol"
STRICT = "strict-inequality"
VIOLATION = "violation"

_UNIT_TOL = 1e-12
DEFAULT_TOL = 1e-8


class PreconditionError(ValueError):
    """The function is outside the theorem's domain of validity."""


@dataclass(frozen=True)
class InequalityReport:
    lhs: float  # ||f'||
    rhs: float  # (sum s_k / 2) ||f||
    ratio: float
    verdict: str
    tol: float


def _classify(lhs: float, rhs: float, tol: float) -> str:
    scale = max(lhs, rhs)
    if abs(lhs - rhs) <= tol * scale:
        return EQUALITY
    if lhs < rhs - tol * scale:
        return STRICT
    return VIOLATION


def _both_norms(f: WeightedRootFn) -> tuple[float, float]:
    lhs = rootfn.sup_norm(f, "derivative").value
    rhs = 0.5 * f.total_exponent * rootfn.sup_norm(f, "fn").value
    return lhs, rhs


def check_equality_unimodular(f: WeightedRootFn, tol: float = DEFAULT_TOL) -> InequalityReport:
    """Equality case: every root on the circle, every exponent >= 1."""
    for a, s in f.factors:
        if abs(abs(a) - 1.0) > _UNIT_TOL:
            raise PreconditionError(f"root {a} is not unimodular")
        if s < 1.0:
            raise PreconditionError(f"exponent {s} < 1 makes |f'| unbounded")
    lhs, rhs = _both_norms(f)
    return InequalityReport(lhs, rhs, lhs / rhs, _classify(lhs, rhs, tol), tol)


def check_generalized_inequality(f: WeightedRootFn, tol: float = DEFAULT_TOL) -> InequalityReport:
    """Upper bound for roots outside the open disk.

    Exterior roots must carry integer exponents; the verdict is strict
    inequality as soon as one root leaves the circle.
    """
    for a, s in f.factors:
        r = abs(a)
        if r < 1.0 - _UNIT_TOL:
            raise PreconditionError(f"root {a} lies inside the open unit disk")
        if s < 1.0:
            raise PreconditionError(f"exponent {s} < 1")
        if r > 1.0 + _UNIT_TOL and abs(s - round(s)) > _UNIT_TOL:
            raise PreconditionError(
                f"exterior root {a} needs an integer exponent, got {s}"
            )
    lhs, rhs = _both_norms(f)
    return InequalityReport(lhs, rhs, lhs / rhs, _classify(lhs, rhs, tol), tol)


def check_turan_bound(f: WeightedRootFn, tol: float = DEFAULT_TOL) -> InequalityReport:
    """Lower bound for roots in the closed disk: ||f'|| >= (sum s_k/2) ||f||."""
    for a, s in f.factors:
        if abs(a) > 1.0 + _UNIT_TOL:
            raise PreconditionError(f"root {a} lies outside the closed unit disk")
        if s < 1.0:
            raise PreconditionError(f"exponent {s} < 1")
    lhs, rhs = _both_norms(f)
    scale = max(lhs, rhs)
    if abs(lhs - rhs) <= tol * scale:
        verdict = EQUALITY
    elif lhs > rhs + tol * scale:
        verdict = STRICT
    else:
        verdict = VIOLATION
    return InequalityReport(lhs, rhs, lhs / rhs, verdict, tol)


@dataclass(frozen=True)
class MaxPointReport:
    z_star: complex
    fn_norm: float
    deriv_norm: float
    deriv_at_zstar: float
    deriv_gap: float  # | |f'(z*)| - ||f'|| | / ||f'||
    halfsum_gap: float  # | |sum s_k/(z*-a_k)| - sum s_k / 2 | / (sum s_k / 2)
    realness_gap: float  # |Im sum s_k z*/(z*-a_k)| / (sum s_k / 2)
    ok: bool


def _polish_argmax(f: WeightedRootFn, theta: float) -> float:
    """Newton-refine an interior maximum of log|f(e^{i theta})|.

    Golden-section location error is ~sqrt(eps) because the value is flat
    at the top; the stationarity residual g = -Im(z S), S = sum s/(z-a),
    is linear there, so a few Newton steps reach machine precision.
    """
    for _ in range(8):
        z = cmath.exp(1j * theta)
        S = sum(s / (z - a) for a, s in f.factors)
        dS = -sum(s / (z - a) ** 2 for a, s in f.factors)
        g = -(z * S).imag
        dg = -(1j * z * S + 1j * z * z * dS).imag
        if dg == 0.0:
            break
        step = g / dg
        if abs(step) > 1e-3:  # stay inside the golden bracket
            break
        theta -= step
        if abs(step) < 1e-15:
            break
    return theta


def check_maximal_point_identity(f: WeightedRootFn, tol: float = DEFAULT_TOL) -> MaxPointReport:
    """At the argmax of |f| on the circle, |f'| is also maximal and the
    logarithmic-derivative sum has modulus (and real part) sum s_k / 2."""
    for a, s in f.factors:
        if abs(abs(a) - 1.0) > _UNIT_TOL:
            raise PreconditionError(f"root {a} is not unimodular")
        if s < 1.0:
            raise PreconditionError(f"exponent {s} < 1")
    fn_norm = rootfn.sup_norm(f, "fn")
    deriv_norm = rootfn.sup_norm(f, "derivative").value
    theta_star = _polish_argmax(f, fn_norm.theta)
    z_star = cmath.exp(1j * theta_star)
    deriv_here = rootfn.derivative_modulus(f, z_star)
    half = 0.5 * f.total_exponent
    acc = sum(s / (z_star - a) for a, s in f.factors)
    halfsum_gap = abs(abs(acc) - half) / half
    realness_gap = abs((z_star * acc).imag) / half
    deriv_gap = abs(deriv_here - deriv_norm) / deriv_norm
    ok = deriv_gap <= tol and halfsum_gap <= tol and realness_gap <= tol
    return MaxPointReport(
        z_star, fn_norm.value, deriv_norm, deriv_here, deriv_gap, halfsum_gap, realness_gap, ok
    )


@dataclass(frozen=True)
class ZeroLocationReport:
    all_on_circle: bool
    max_modulus_deviation: float
    combination_roots: tuple[complex, ...]
    pinned_roots: tuple[complex, ...]  # the unimodular input roots, shared by g
    interior_min_modulus: float
    degree: int


def _rationalize(s: float, max_den: int = 64) -> Fraction:
    frac = Fraction(s).limit_denominator(max_den)
    if abs(float(frac) - s) > 1e-12:
        raise PreconditionError(f"exponent {s} is not rational with denominator <= {max_den}")
    return frac


def check_polya_szego_zeros(
    f: WeightedRootFn, zeta: complex, l: int, band: float = 1e-8
) -> ZeroLocationReport:
    """All zeros of g = f + zeta z^l f* lie on the unit circle.

    Exponents must be rational (q <= 64) so that, with m their common
    denominator, g^m is a polynomial: the unimodular-root factor u of f
    satisfies u* = omega u with |omega| = 1, hence

        g = u * ( A(z) + zeta omega z^{lm'} A*(z) )

    where A collects the exterior integer-exponent roots.  The bracket is
    the polynomial whose roots are checked here; the unimodular a_k are
    roots of g by construction and are reported as pinned.
    """
    if abs(abs(complex(zeta)) - 1.0) > _UNIT_TOL:
        raise PreconditionError("zeta must be unimodular")
    if l < 0 or int(l) != l:
        raise PreconditionError("l must be a nonnegative integer")
    uni: list[tuple[complex, float]] = []
    ext: list[tuple[complex, int]] = []
    for a, s in f.factors:
        r = abs(a)
        if r < 1e-300:
            raise PreconditionError("roots at the origin have no reciprocal")
        if r < 1.0 - _UNIT_TOL:
            raise PreconditionError(f"root {a} lies inside the open unit disk")
        _rationalize(s)
        if r <= 1.0 + _UNIT_TOL:
            uni.append((a / r, s))
        else:
            if abs(s - round(s)) > _UNIT_TOL:
                raise PreconditionError(
                    f"exterior root {a} needs an integer exponent for the polynomial combination"
                )
            ext.append((a, int(round(s))))

    # A = c * prod over exterior roots (integer multiplicities)
    acoef = np.array([complex(f.scale)])
    for b, t in ext:
        for _ in range(t):
            acoef = np.convolve(acoef, np.array([-b, 1.0]))
    astar = np.conj(acoef[::-1])
    # u* = omega u with omega = prod (-conj(a_k))^{s_k} (principal powers);
    # any branch works, it only rotates which zeta labels which combination
    log_omega = sum(s * cmath.log(-a.conjugate()) for a, s in uni)
    omega = cmath.exp(1j * log_omega.imag)
    zl = np.zeros(int(l) + 1, dtype=complex)
    zl[-1] = complex(zeta) * omega
    combo = np.convolve(zl, astar)
    n = max(len(acoef), len(combo))
    g = np.zeros(n, dtype=complex)
    g[: len(acoef)] += acoef
    g[: len(combo)] += combo
    while len(g) > 1 and abs(g[-1]) < 1e-14 * np.max(np.abs(g)):
        g = g[:-1]

    if len(g) > 1:
        rts = tuple(polynomial.aberth(g))
    else:
        rts = ()
    devs = [abs(abs(r) - 1.0) for r in rts]
    max_dev = max(devs) if devs else 0.0
    pinned = tuple(a for a, _ in uni)

    # zero-freeness diagnostic inside the disk: |bracket| * |u| sampled
    sample = 0.5 * np.exp(1j * np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False))
    gv = np.abs(polynomial.polyval(g, sample))
    uv = np.ones_like(gv)
    for a, s in uni:
        uv = uv * np.abs(sample - a) ** s
    interior_min = float(np.min(gv * uv))

    return ZeroLocationReport(
        max_dev <= band, float(max_dev), rts, pinned, interior_min, len(g) - 1 + len(pinned)
    )


def random_unimodular_fn(rng: np.random.Generator, max_factors: int = 6) -> WeightedRootFn:
    """Random product with all roots on the circle and exponents in [1, 3]."""
    n = int(rng.integers(1, max_factors + 1))
    angles = rng.uniform(0.0, 2.0 * math.pi, size=n)
    exps = rng.uniform(1.0, 3.0, size=n)
    return WeightedRootFn(1.0, tuple((cmath.exp(1j * a), float(s)) for a, s in zip(angles, exps)))


def random_exterior_fn(rng: np.random.Generator, max_factors: int = 6) -> WeightedRootFn:
    """Random product with roots on or outside the circle.

    Exterior roots carry integer exponents, as the generalized inequality
    requires; at least one root is pushed strictly outside.
    """
    n = int(rng.integers(1, max_factors + 1))
    factors = []
    outside = rng.integers(0, n)  # index forced off the circle
    for k in range(n):
        angle = rng.uniform(0.0, 2.0 * math.pi)
        if k == outside or rng.random() < 0.5:
            radius = rng.uniform(1.05, 2.0)
            exp = float(rng.integers(1, 4))
        else:
            radius = 1.0
            exp = float(rng.uniform(1.0, 3.0))
        factors.append((radius * cmath.exp(1j * angle), exp))
    return WeightedRootFn(1.0, tuple(factors))


def random_interior_fn(rng: np.random.Generator, max_factors: int = 6) -> WeightedRootFn:
    """Random product with roots in the closed disk and exponents in [1, 3]."""
    n = int(rng.integers(1, max_factors + 1))
    factors = []
    for _ in range(n):
        angle = rng.uniform(0.0, 2.0 * math.pi)
        radius = math.sqrt(rng.uniform(0.0, 1.0))
        factors.append((radius * cmath.exp(1j * angle), float(rng.uniform(1.0, 3.0))))
    return WeightedRootFn(1.0, tuple(factors))
