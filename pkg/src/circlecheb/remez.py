"""Weighted Chebyshev polynomials on [-1, 1] by Remez exchange.

Solves  min over monic degree-m P of  max_{[-1,1]} |w(x) P(x)|  for
generalised Jacobi weights w(x) = w0(x) * prod |x - b_k|^{gamma_k}.  The
minimiser is characterised by an alternating set of m+1 points.

The candidate polynomial is carried in the Chebyshev basis (the monomial
basis is catastrophically ill-conditioned beyond degree ~25); monomial
coefficients are produced only for the returned result object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import chebyshev as _cheb

from .polynomial import MonicPoly

_GOLDEN_ITERS = 48
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class RemezError(RuntimeError):
    """The exchange iteration failed to reach the requested defect."""


class GeneralizedWeight:
    """w(x) = w0(x) * prod |x - b_k|^{gamma_k} on [-1, 1], nonnegative.

    ``singular`` is a sequence of (b_k, gamma_k) with b_k in [-1, 1] and
    gamma_k >= 0; ``smooth`` is an optional bounded positive callable
    (defaults to the constant 1).
    """

    def __init__(self, singular=(), smooth: Callable | None = None):
        self.singular = tuple((float(b), float(g)) for b, g in singular)
        for b, g in self.singular:
            if not -1.0 <= b <= 1.0:
                raise ValueError(f"singular point {b} outside [-1, 1]")
            if g < 0.0:
                raise ValueError("singular exponents must be >= 0")
        self.smooth = smooth

    @classmethod
    def jacobi(cls, alpha: float, beta: float) -> "GeneralizedWeight":
        """(1 - x)^alpha (1 + x)^beta."""
        sing = []
        if alpha > 0.0:
            sing.append((1.0, alpha))
        if beta > 0.0:
            sing.append((-1.0, beta))
        return cls(sing)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        for b, g in self.singular:
            if g > 0.0:
                out = out * np.abs(x - b) ** g
        if self.smooth is not None:
            out = out * self.smooth(x)
        return out

    def vanishes_at(self, x: float, tol: float = 1e-14) -> bool:
        return any(g > 0.0 and abs(x - b) <= tol for b, g in self.singular)

    def interior_zeros(self) -> tuple[float, ...]:
        return tuple(b for b, g in self.singular if g > 0.0 and abs(b) < 1.0)

    def total_singular_exponent(self) -> float:
        return sum(g for _, g in self.singular)


@dataclass(frozen=True)
class AlternationSet:
    """Ordered points where w*P attains +-h with alternating signs."""

    points: tuple[float, ...]
    signed_values: tuple[float, ...]
    level: float  # |h|
    defect: float

    def alternates(self) -> bool:
        signs = np.sign(self.signed_values)
        return bool(np.all(signs[1:] * signs[:-1] == -1.0))


@dataclass(frozen=True)
class IntervalSolveResult:
    minimizer: MonicPoly
    cheb_coeffs: tuple[float, ...]  # same polynomial, Chebyshev basis
    norm: float
    alternation: AlternationSet
    iterations: int
    defect: float
    diagnostics: dict = field(default_factory=dict)

    def eval_cheb(self, x):
        return _cheb.chebval(x, np.asarray(self.cheb_coeffs))


def _monic_cheb_vector(m: int) -> np.ndarray:
    v = np.zeros(m + 1)
    v[m] = 2.0 ** (1 - m) if m >= 1 else 1.0
    return v


def _initial_reference(weight: GeneralizedWeight, m: int) -> np.ndarray:
    # cos(j*pi/(m+1)), nudged off any weight zero
    pts = np.cos(np.pi * np.arange(m + 1) / (m + 1))
    pts = np.sort(pts)
    spacing = np.min(np.diff(pts)) if m >= 1 else 1.0
    for i, x in enumerate(pts):
        if weight.vanishes_at(x):
            pts[i] = x - math.copysign(1e-3 * spacing, x if x != 0 else 1.0)
    return pts


def _solve_reference_system(weight, m, ref):
    """Levelled system w(x_j) P(x_j) = (-1)^{m-j} h in the Chebyshev basis."""
    w = weight(ref)
    V = _cheb.chebvander(ref, m)  # columns T_0..T_m at the reference
    sigma = (-1.0) ** (m - np.arange(m + 1))
    A = np.empty((m + 1, m + 1))
    A[:, :m] = w[:, None] * V[:, :m]
    A[:, m] = -sigma
    lead = 2.0 ** (1 - m) if m >= 1 else 1.0
    b = -w * lead * V[:, m]
    try:
        sol = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise RemezError(
            f"singular reference system (cond ~ {np.linalg.cond(A):.2e})"
        ) from exc
    coeffs = np.zeros(m + 1)
    coeffs[:m] = sol[:m]
    coeffs[m] = lead
    return coeffs, float(sol[m])


def _golden_max(fun, lo, hi):
    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(_GOLDEN_ITERS):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = fun(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def _local_maxima(weight, coeffs, m):
    """Refined local maxima of |w*P|; uses a theta-uniform scan of x=cos(theta)."""
    npts = max(2048, 40 * (m + 2))
    theta = np.linspace(0.0, math.pi, npts)
    x = np.cos(theta)
    vals = np.abs(weight(x) * _cheb.chebval(x, coeffs))

    def fun(t):
        xx = math.cos(t)
        return abs(float(weight(xx) * _cheb.chebval(xx, coeffs)))

    cands = []
    is_max = np.zeros(npts, dtype=bool)
    is_max[1:-1] = (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    # x = cos(theta): theta=0 is x=1, theta=pi is x=-1
    if vals[0] >= vals[1] and not weight.vanishes_at(1.0):
        cands.append((1.0, vals[0]))
    if vals[-1] >= vals[-2] and not weight.vanishes_at(-1.0):
        cands.append((-1.0, vals[-1]))
    for i in np.nonzero(is_max)[0]:
        if vals[i] == 0.0:
            continue
        t, v = _golden_max(fun, theta[i - 1], theta[i + 1])
        xx = min(1.0, max(-1.0, math.cos(t)))
        cands.append((xx, v))
    cands.sort(key=lambda c: c[0])
    merged = []
    for xx, v in cands:
        if merged and abs(xx - merged[-1][0]) < 1e-12:
            if v > merged[-1][1]:
                merged[-1] = (xx, v)
        else:
            merged.append((xx, v))
    return merged


def _select_alternating(cands_signed, m):
    """Pick m+1 alternating extrema from sorted (x, signed value) candidates.

    Collapses same-sign runs to their largest member, then trims the weaker
    end while keeping the global maximum in the set.
    """
    if not cands_signed:
        return None
    runs = []
    for x, v in cands_signed:
        if runs and math.copysign(1.0, v) == math.copysign(1.0, runs[-1][1]):
            if abs(v) > abs(runs[-1][1]):
                runs[-1] = (x, v)
        else:
            runs.append((x, v))
    if len(runs) < m + 1:
        return None
    while len(runs) > m + 1:
        gmax = max(range(len(runs)), key=lambda i: abs(runs[i][1]))
        drop_first = abs(runs[0][1]) < abs(runs[-1][1])
        if gmax == 0:
            drop_first = False
        elif gmax == len(runs) - 1:
            drop_first = True
        if drop_first:
            runs.pop(0)
        else:
            runs.pop()
    return runs


def remez_solve(
    weight: GeneralizedWeight,
    m: int,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> IntervalSolveResult:
    """Monic degree-m minimiser of max |w*P| on [-1, 1].

    Multi-point exchange: solve the levelled system on the current
    reference, locate all local maxima of |w*P|, replace the reference by
    the m+1 best alternating extrema, and stop once the relative gap
    between the true maximum and the levelled magnitude drops below tol.
    """
    if m < 0:
        raise ValueError("degree must be >= 0")
    probe = weight(np.linspace(-1.0, 1.0, 257))
    if np.max(probe) <= 0.0:
        raise ValueError("weight is identically zero on the sample grid")
    diagnostics = {}
    if weight.interior_zeros():
        diagnostics["interior_weight_zero"] = True

    if m == 0:
        xs, val = _max_of_weight(weight)
        alt = AlternationSet((xs,), (val,), val, 0.0)
        return IntervalSolveResult(MonicPoly(()), (1.0,), val, alt, 0, 0.0, diagnostics)

    ref = _initial_reference(weight, m)
    best_defect = np.inf
    stall = 0
    for it in range(1, max_iter + 1):
        coeffs, h = _solve_reference_system(weight, m, ref)
        maxima = _local_maxima(weight, coeffs, m)
        gmax = max(v for _, v in maxima)
        defect = (gmax - abs(h)) / abs(h)
        if defect <= tol:
            return _package(weight, coeffs, h, ref, it, defect, diagnostics)
        # a defect stuck near its floating-point floor will not recover
        if defect < best_defect * (1.0 - 1e-3):
            best_defect = defect
            stall = 0
        else:
            stall += 1
        if stall >= 8:
            raise RemezError(
                f"exchange stagnated with defect {defect:.3e} (requested {tol:.1e})"
            )
        signed = [(x, float(weight(x) * _cheb.chebval(x, coeffs))) for x, _ in maxima]
        chosen = _select_alternating(signed, m)
        if chosen is None:
            ref = _single_exchange(weight, coeffs, ref, maxima)
        else:
            ref = np.array([x for x, _ in chosen])
    raise RemezError(f"no convergence in {max_iter} exchanges (defect {best_defect:.3e})")


def _single_exchange(weight, coeffs, ref, maxima):
    """Classical one-point exchange fallback preserving alternation."""
    gx, _ = max(maxima, key=lambda c: c[1])
    val = float(weight(gx) * _cheb.chebval(gx, coeffs))
    refv = weight(ref) * _cheb.chebval(ref, coeffs)
    sgn = math.copysign(1.0, val)
    if gx < ref[0]:
        if sgn == math.copysign(1.0, refv[0]):
            new = np.concatenate([[gx], ref[1:]])
        else:
            new = np.concatenate([[gx], ref[:-1]])
    elif gx > ref[-1]:
        if sgn == math.copysign(1.0, refv[-1]):
            new = np.concatenate([ref[:-1], [gx]])
        else:
            new = np.concatenate([ref[1:], [gx]])
    else:
        new = ref.copy()
        j = int(np.searchsorted(ref, gx))
        if sgn == math.copysign(1.0, refv[j - 1]):
            new[j - 1] = gx
        else:
            new[j] = gx
    return np.sort(new)


def _max_of_weight(weight):
    npts = 4097
    theta = np.linspace(0.0, math.pi, npts)
    x = np.cos(theta)
    vals = weight(x)
    i = int(np.argmax(vals))
    lo = theta[max(i - 1, 0)]
    hi = theta[min(i + 1, npts - 1)]
    t, v = _golden_max(lambda tt: float(weight(math.cos(tt))), lo, hi)
    return math.cos(t), float(v)


def _package(weight, coeffs, h, ref, iterations, defect, diagnostics):
    vals = weight(ref) * _cheb.chebval(ref, coeffs)
    alt = AlternationSet(tuple(ref), tuple(vals), abs(h), float(defect))
    mono = _cheb.cheb2poly(coeffs)
    minimizer = MonicPoly(tuple(mono[:-1] / mono[-1]))
    gmax = abs(h) * (1.0 + max(defect, 0.0))
    diagnostics = dict(diagnostics)
    diagnostics["level"] = abs(h)
    return IntervalSolveResult(
        minimizer, tuple(coeffs), float(gmax), alt, iterations, float(defect), diagnostics
    )


def interval_roots(result: IntervalSolveResult) -> np.ndarray:
    """All m roots of the minimiser, bracketed by the alternation points.

    w*P alternates in sign over the reference, and w > 0 there, so P has
    exactly one root between consecutive alternation points; bisection on
    the Chebyshev representation is then exact to machine precision.
    """
    coeffs = np.asarray(result.cheb_coeffs)
    pts = result.alternation.points
    roots = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        flo = float(_cheb.chebval(lo, coeffs))
        fhi = float(_cheb.chebval(hi, coeffs))
        if flo == 0.0:
            roots.append(lo)
            continue
        if fhi == 0.0:
            roots.append(hi)
            continue
        if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
            raise RemezError("alternation points do not bracket a sign change")
        a, b, fa = lo, hi, flo
        for _ in range(100):
            mid = 0.5 * (a + b)
            fm = float(_cheb.chebval(mid, coeffs))
            if fm == 0.0:
                a = b = mid
                break
            if math.copysign(1.0, fm) == math.copysign(1.0, fa):
                a, fa = mid, fm
            else:
                b = mid
        roots.append(0.5 * (a + b))
    return np.asarray(roots)


def verify_alternation(result: IntervalSolveResult, weight: GeneralizedWeight) -> dict:
    """Recompute the alternation residuals from the returned minimizer.

    Uses the monomial representation (Horner), independent of the solver's
    internal Chebyshev state, so a perturbed minimizer is detected.
    """
    pts = np.asarray(result.alternation.points)
    vals = weight(pts) * np.asarray([result.minimizer.eval(x) for x in pts])
    level = float(np.mean(np.abs(vals)))
    defect = float(np.max(np.abs(np.abs(vals) - level)) / level)
    signs = np.sign(vals)
    alternating = bool(np.all(signs[1:] * signs[:-1] == -1.0))
    return {"max_relative_defect": defect, "alternating": alternating, "level": level}


def bernstein_prediction(weight: GeneralizedWeight, m: int) -> float:
    """Norm prediction 2^{1-m} exp((1/pi) int log w / sqrt(1-x^2)).

    The singular factors contribute exactly -log(2) * sum gamma_k each; a
    smooth factor is integrated by Gauss-Legendre quadrature in the
    substituted variable x = cos(t).
    """
    total = -math.log(2.0) * weight.total_singular_exponent()
    if weight.smooth is not None:
        nodes, wts = np.polynomial.legendre.leggauss(256)
        t = 0.5 * math.pi * (nodes + 1.0)
        vals = np.log(weight.smooth(np.cos(t)))
        if not np.all(np.isfinite(vals)):
            raise ValueError("quadrature failed: smooth factor is not positive/bounded")
        total += float(np.sum(wts * vals) * 0.5 * math.pi) / math.pi
    return 2.0 ** (1 - m) * math.exp(total)
