"""Weighted Chebyshev polynomials on the unit circle for |z - 1|^s.

The circle-constrained minimiser (all free zeros pinned to the circle) is
obtained by pushing the problem through the Joukowski map to a Jacobi-weight
Remez solve on [-1, 1]; the free minimiser then falls out of the derivative
identity

    (s + n + 1) * w_s * T_n = d/dz ( w_{s+1} * constrained_minimiser ),

whose norm is exactly half the constrained norm.  The s = 1 closed forms
(scaled first/third-kind Chebyshev polynomials) are provided for
cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import polynomial, remez, rootfn
from .polynomial import MonicPoly

_NORM_XCHECK_TOL = 1e-9


class ConsistencyError(RuntimeError):
    """Independent re-verification of a computed quantity failed."""


def joukowski(z) -> complex:
    """(z + 1/z) / 2; maps the unit circle onto [-1, 1]."""
    zc = complex(z)
    if zc == 0:
        raise ValueError("joukowski map undefined at z = 0")
    return (zc + 1.0 / zc) / 2.0


@dataclass(frozen=True)
class ConstrainedSolve:
    """Minimiser over polynomials with all zeros on the unit circle."""

    s: float
    n: int
    poly: MonicPoly
    norm: float
    angles: tuple[float, ...]  # all n root angles in [0, 2pi)
    interval: remez.IntervalSolveResult
    verified_norm: float


@dataclass(frozen=True)
class CircleSolveResult:
    s: float
    n: int
    free: MonicPoly
    constrained: MonicPoly
    angles: tuple[float, ...]
    free_norm: float
    constrained_norm: float
    diagnostics: dict = field(default_factory=dict)


def solve_constrained(s: float, n: int, tol: float = 1e-12) -> ConstrainedSolve:
    """Compute the circle-constrained minimiser for weight |z - 1|^s, s >= 1.

    Even n = 2m reduces to the Jacobi weight (1-x)^{s/2} at degree m, odd
    n = 2m+1 to (1-x)^{s/2} (1+x)^{1/2} with a forced zero at z = -1.  The
    interval roots cos(alpha_k) lift to conjugate root pairs e^{+-i alpha_k}.
    The returned norm 2^{(s+n)/2} * (interval norm) is re-verified against a
    direct sup-norm scan of |z-1|^s |P(z)| on the circle.
    """
    if s < 1.0:
        raise ValueError("constrained solve requires s >= 1")
    if n < 0:
        raise ValueError("degree must be >= 0")
    m = n // 2
    odd = bool(n % 2)
    if odd:
        weight = remez.GeneralizedWeight.jacobi(s / 2.0, 0.5)
    else:
        weight = remez.GeneralizedWeight.jacobi(s / 2.0, 0.0)
    interval = remez.remez_solve(weight, m, tol)
    if m >= 1:
        xk = remez.interval_roots(interval)
        if np.any(xk <= -1.0) or np.any(xk >= 1.0):
            raise ConsistencyError(f"interval roots outside (-1, 1): {xk}")
    else:
        xk = np.empty(0)
    alphas = np.arccos(xk)

    circle_roots = [np.exp(1j * a) for a in alphas] + [np.exp(-1j * a) for a in alphas]
    if odd:
        circle_roots.append(-1.0 + 0.0j)
    poly = polynomial.from_roots(circle_roots, conjugate_closed=True)

    norm = 2.0 ** ((s + n) / 2.0) * interval.norm
    f = rootfn.WeightedRootFn(
        1.0,
        ((1.0, s),)
        + tuple((np.exp(1j * a), 1.0) for a in alphas)
        + tuple((np.exp(-1j * a), 1.0) for a in alphas)
        + (((-1.0 + 0.0j, 1.0),) if odd else ()),
    )
    verified = rootfn.sup_norm(f).value
    if abs(verified - norm) > _NORM_XCHECK_TOL * norm:
        raise ConsistencyError(
            f"constrained norm mismatch: interval route {norm!r}, circle scan {verified!r}"
        )

    angles = sorted(
        [float(a) for a in alphas]
        + [float(2.0 * math.pi - a) for a in alphas]
        + ([math.pi] if odd else [])
    )
    return ConstrainedSolve(float(s), int(n), poly, float(norm), tuple(angles), interval, float(verified))


def solve_free(s: float, n: int, tol: float = 1e-12) -> CircleSolveResult:
    """Compute the free minimiser for weight |z - 1|^s, any s >= 0.

    With Q the constrained minimiser at parameter s + 1,

        T(z) = ((s+1) Q(z) + (z-1) Q'(z)) / (s + n + 1)

    is monic of degree n and is the free minimiser; its weighted norm is
    half the constrained norm.  Both norms are re-verified by direct
    circle scans.
    """
    if s < 0.0:
        raise ValueError("s must be >= 0")
    if n < 0:
        raise ValueError("degree must be >= 0")
    con = solve_constrained(s + 1.0, n, tol)
    q = con.poly.full_coeffs()
    dq = polynomial.polyder(q)
    denom = (s + 1.0) + float(n)
    comb = (s + 1.0) * q
    comb[1:] += dq  # z * Q'
    comb[:-1] -= dq  # -Q'
    lead = comb[-1]
    if lead != denom and abs(lead - denom) > 1e-10 * denom:
        raise ConsistencyError(f"monicity drift: leading coefficient {lead} vs {denom}")
    tcoeffs = comb[:-1] / denom
    free = MonicPoly(tuple(tcoeffs))

    free_norm = con.norm / 2.0
    diagnostics = {
        "interval_defect": con.interval.defect,
        "interval_iterations": con.interval.iterations,
        "constrained_verified_norm": con.verified_norm,
    }
    if n >= 1 and s > 0.0:
        rts = polynomial.roots(free).roots
        f = rootfn.WeightedRootFn(1.0, tuple((r, 1.0) for r in rts) + ((1.0 + 0.0j, s),))
        verified = rootfn.sup_norm(f).value
        if abs(verified - free_norm) > _NORM_XCHECK_TOL * max(free_norm, 1.0):
            raise ConsistencyError(
                f"free norm mismatch: derivative route {free_norm!r}, circle scan {verified!r}"
            )
        diagnostics["free_verified_norm"] = verified
    elif s == 0.0:
        diagnostics["free_verified_norm"] = 1.0
    else:
        f = rootfn.WeightedRootFn(1.0, ((1.0 + 0.0j, s),))
        diagnostics["free_verified_norm"] = rootfn.sup_norm(f).value

    return CircleSolveResult(
        float(s),
        int(n),
        free,
        con.poly,
        con.angles,
        float(free_norm),
        float(con.norm),
        diagnostics,
    )


def halasz_mu_lambda(n: int) -> tuple[float, float]:
    """Closed-form extremal constants: lambda_n = cos(pi/(2(n+1)))^{n+1}, mu_n = 1/lambda_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = math.cos(math.pi / (2.0 * (n + 1))) ** (n + 1)
    return lam, 1.0 / lam


@dataclass(frozen=True)
class ClosedFormParams:
    m: int
    xi0: float  # cos(pi / (2(m+1)))
    eta0: float  # cos(pi / (2m+3))
    a_m: float  # (m+1)(xi0-1)/(xi0+1)
    b_m: float  # (m+1) - (2m+3)/(eta0+1)


@dataclass(frozen=True)
class ClosedFormS1:
    n: int
    witness: MonicPoly  # scaled/translated classical polynomial with a zero at x = 1
    value_at_zero: float  # free minimiser evaluated at the origin
    params: ClosedFormParams


def _affine_compose(p: MonicPoly, a: float, b: float) -> np.ndarray:
    """Coefficients of p(a x + b), ascending."""
    coeffs = p.full_coeffs()
    lin = np.polynomial.polynomial.Polynomial([b, a])
    acc = np.polynomial.polynomial.Polynomial([0.0])
    power = np.polynomial.polynomial.Polynomial([1.0])
    for c in coeffs:
        acc = acc + c * power
        power = power * lin
    return acc.coef


def closed_form_s1(n: int) -> ClosedFormS1:
    """Closed forms for s = 1: witness polynomials and the value at 0.

    Even n = 2m: the interval object (x-1) T_m^{(1,0)} equals a scaled and
    translated monic first-kind Chebyshev polynomial of degree m+1 whose
    largest zero sits at x = 1; then T_{2m}(0) = (1 - xi0)/(1 + xi0) with
    xi0 = cos(pi/(2(m+1))).  Odd n = 2m+1 uses the third-kind family and
    T_{2m+1}(0) = -(1 + 2 b_m)/(2m+3) with b_m = (m+1) - (2m+3)/(eta0+1),
    eta0 = cos(pi/(2m+3)).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    m = n // 2
    xi0 = math.cos(math.pi / (2.0 * (m + 1)))
    eta0 = math.cos(math.pi / (2.0 * m + 3.0))
    a_m = (m + 1) * (xi0 - 1.0) / (xi0 + 1.0)
    b_m = (m + 1) - (2.0 * m + 3.0) / (eta0 + 1.0)
    params = ClosedFormParams(m, xi0, eta0, a_m, b_m)

    if n % 2 == 0:
        base = polynomial.cheb_first_kind(m + 1)
        scale = xi0 + 1.0
        comp = _affine_compose(base, scale / 2.0, (xi0 - 1.0) / 2.0)
        witness = MonicPoly(tuple((comp / comp[-1])[:-1]))
        value = (1.0 - xi0) / (1.0 + xi0)
    else:
        base = polynomial.cheb_third_kind(m + 1)
        scale = eta0 + 1.0
        comp = _affine_compose(base, scale / 2.0, (eta0 - 1.0) / 2.0)
        witness = MonicPoly(tuple((comp / comp[-1])[:-1]))
        value = -(1.0 + 2.0 * b_m) / (2.0 * m + 3.0)
    return ClosedFormS1(int(n), witness, float(value), params)


def recognize_rational(s: float, max_den: int = 16) -> Fraction | None:
    """s as p/q with q <= max_den when within 1e-12, else None."""
    frac = Fraction(s).limit_denominator(max_den)
    if abs(float(frac) - s) <= 1e-12 and frac > 0:
        return frac
    return None


def convergence_lower_bound(s: float, n: int) -> float | None:
    """Closed-form lower bound for the free norm at rational s = p/q.

    (w_s T_n)^q is monic of degree qn + p with a zero of order p at 1, so
    its norm dominates mu_{qn+p}; taking q-th roots gives
    mu_{qn+p}^{1/q} = cos(pi/(2(qn+p+1)))^{-(qn+p+1)/q}.
    """
    frac = recognize_rational(s)
    if frac is None or n < 1:
        return None
    p, q = frac.numerator, frac.denominator
    k = q * n + p
    _, mu = halasz_mu_lambda(k)
    return mu ** (1.0 / q)


@dataclass(frozen=True)
class NormTableRow:
    n: int
    norm: float
    lower_bound: float | None
    asymptotic_bound: float | None


def norm_table(s: float, n_max: int, tol: float = 1e-12) -> list[NormTableRow]:
    """Free norms for n = 0..n_max, with bound curves at recognised rational s."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    frac = recognize_rational(s)
    rows = []
    for n in range(n_max + 1):
        res = solve_free(s, n, tol)
        lb = convergence_lower_bound(s, n)
        asym = None
        if frac is not None and n >= 1:
            asym = 1.0 + math.pi**2 / (8.0 * n * frac.denominator**2)
        rows.append(NormTableRow(n, res.free_norm, lb, asym))
    return rows
