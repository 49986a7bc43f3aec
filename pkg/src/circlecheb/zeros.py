"""Zero-distribution statistics and the lemniscate transport.

The normalised zero counting measure of the circle minimisers migrates
toward uniform measure on the circle; these diagnostics (radial mass,
exact arc discrepancy, minimal modulus) quantify that on finite degrees.
The level set |z^m - 1| = 1 carries its Chebyshev problem onto the circle
with weight exponent l/m, and the transport is reproduced here explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import circle, polynomial, rootfn
from .polynomial import MonicPoly


@dataclass(frozen=True)
class ZeroMeasure:
    """Unit-mass atomic measure on the zeros of a circle minimiser."""

    zeros: tuple[complex, ...]
    n: int
    s: float

    def __post_init__(self):
        if self.n != len(self.zeros):
            raise ValueError("measure must carry one atom per zero")


def zero_measure(s: float, n: int, tol: float = 1e-12) -> ZeroMeasure:
    """Zeros of the free minimiser as a probability measure."""
    if n < 1:
        raise ValueError("need degree >= 1")
    res = circle.solve_free(s, n, tol)
    rts = polynomial.roots(res.free).roots
    return ZeroMeasure(tuple(rts), n, float(s))


def radial_mass(nu: ZeroMeasure, r: float) -> float:
    """Fraction of zeros with |z| <= r."""
    return sum(1 for z in nu.zeros if abs(z) <= r) / nu.n


def min_modulus(nu: ZeroMeasure) -> float:
    return min(abs(z) for z in nu.zeros)


def angular_discrepancy(nu: ZeroMeasure) -> float:
    """Exact sup over circle arcs of |empirical - uniform| mass.

    Computed from the sorted angles: closed arcs [u_i, u_j] give the
    over-coverage candidates, open arcs the under-coverage ones.  O(n^2),
    exact, no binning.
    """
    n = nu.n
    u = np.sort(np.mod(np.angle(np.asarray(nu.zeros)), 2.0 * math.pi)) / (2.0 * math.pi)
    best = 0.0
    for i in range(n):
        for j in range(n):
            length = u[j] - u[i]
            count = j - i + 1
            if length < 0.0:
                length += 1.0
                count += n
            # closed arc [u_i, u_j]: contains count atoms
            best = max(best, count / n - length)
            # open complement (u_j, u_i): length 1 - length, n - count atoms
            best = max(best, (1.0 - length) - (n - count) / n)
    return best


@dataclass(frozen=True)
class LemniscateSpec:
    m: int
    l: int
    n: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if not 0 <= self.l < self.m:
            raise ValueError("l must lie in [0, m)")
        if self.n < 0:
            raise ValueError("n must be >= 0")

    @property
    def degree(self) -> int:
        return self.n * self.m + self.l


@dataclass(frozen=True)
class LemniscateResult:
    spec: LemniscateSpec
    poly: MonicPoly  # degree n*m + l, an l-fold zero at the origin
    zeros: tuple[complex, ...]
    norm: float  # sup over the level set, refined from boundary samples
    circle_norm: float  # the equal circle-problem norm
    boundary: tuple[complex, ...]
    diagnostics: dict = field(default_factory=dict)


def _taylor_shift_plus_one(coeffs: np.ndarray) -> np.ndarray:
    """Coefficients of p(y - 1) from those of p, ascending (Horner shift)."""
    d = len(coeffs) - 1
    out = np.zeros(d + 1)
    for c in coeffs[::-1]:
        for k in range(d, 0, -1):  # out <- out * (y - 1)
            out[k] = out[k - 1] - out[k]
        out[0] = -out[0] + c
    return out


def boundary_points(m: int, per_sheet: int = 4096) -> np.ndarray:
    """Samples of the level set |z^m - 1| = 1.

    Parametrised by z = (1 + e^{it})^{1/m} e^{2 pi i k / m} with the
    principal root.  All sheets join at the origin (t = pi), so that point
    is emitted once rather than per sheet.
    """
    t = np.linspace(-math.pi, math.pi, per_sheet, endpoint=False)[1:]
    base = (1.0 + np.exp(1j * t)) ** (1.0 / m)
    sheets = [base * cmath.exp(2j * math.pi * k / m) for k in range(m)]
    return np.concatenate([[0.0 + 0.0j]] + sheets)


def lemniscate_transport(spec: LemniscateSpec, tol: float = 1e-12) -> LemniscateResult:
    """Chebyshev polynomial of the level set |z^m - 1| = 1 at degree nm + l.

    For l = 0 the answer is (z^m - 1)^n with norm exactly 1.  Otherwise the
    circle problem at weight exponent l/m and degree n transports through
    zeta = z^m - 1, where |z|^l = |zeta + 1|^{l/m}: the transported weight
    vanishes at zeta = -1 while the circle solver pins its weight at +1, so
    the solver's minimiser Q enters reflected.  The minimiser is
    z^l * (-1)^n Q(1 - z^m), the norm is unchanged, and each circle zero a
    pulls back to the m solutions of z^m = 1 - a.
    """
    m, l, n = spec.m, spec.l, spec.n
    if l == 0:
        base = np.zeros(m + 1)
        base[0], base[m] = -1.0, 1.0
        coeffs = np.ones(1)
        for _ in range(n):
            coeffs = np.convolve(coeffs, base)
        poly = MonicPoly(tuple(coeffs[:-1]))
        zeros = tuple(
            cmath.exp(2j * math.pi * k / m) for k in range(m) for _ in range(n)
        )
        bpts = boundary_points(m)
        return LemniscateResult(spec, poly, zeros, 1.0, 1.0, tuple(bpts), {"exact": True})

    s = l / m
    res = circle.solve_free(s, n, tol)
    q = res.free.full_coeffs()
    # reflect (zeta -> -zeta), then shift y -> y - 1 and substitute y = z^m
    q_reflected = q * (-1.0) ** (n - np.arange(n + 1))
    shifted = _taylor_shift_plus_one(q_reflected)
    coeffs = np.zeros(n * m + l + 1)
    coeffs[np.arange(len(shifted)) * m + l] = shifted
    poly = MonicPoly(tuple(coeffs[:-1]))

    circle_zeros = polynomial.roots(res.free).roots if n >= 1 else ()
    zeros = [0.0 + 0.0j] * l
    for a in circle_zeros:
        w = 1.0 - a
        r = abs(w) ** (1.0 / m)
        phi = cmath.phase(w)
        for k in range(m):
            zeros.append(r * cmath.exp(1j * (phi + 2.0 * math.pi * k) / m))
    bpts = boundary_points(m)

    vals = np.abs(polynomial.polyval(poly.full_coeffs(), bpts))
    i = int(np.argmax(vals))
    norm = _refine_boundary_max(poly, m, bpts[i], vals[i])
    return LemniscateResult(
        spec,
        poly,
        tuple(zeros),
        float(norm),
        float(res.free_norm),
        tuple(bpts),
        {"sampled_max": float(np.max(vals))},
    )


def _refine_boundary_max(poly: MonicPoly, m: int, z0: complex, v0: float) -> float:
    """Golden refinement of |T| along the boundary sheet through z0."""
    w = z0**m - 1.0
    t0 = cmath.phase(w)
    sheet = cmath.phase(z0) - cmath.phase((1.0 + w) ** (1.0 / m))

    def val(t):
        z = (1.0 + cmath.exp(1j * t)) ** (1.0 / m) * cmath.exp(1j * sheet)
        return abs(poly.eval(z))

    lo, hi = t0 - 2e-3, t0 + 2e-3
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1, x2 = b - inv * (b - a), a + inv * (b - a)
    f1, f2 = val(x1), val(x2)
    for _ in range(48):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv * (b - a)
            f2 = val(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv * (b - a)
            f1 = val(x1)
    return max(v0, f1, f2)
