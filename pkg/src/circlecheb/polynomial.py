"""Dense monic polynomials with real coefficients.

Coefficients are stored ascending (constant term first) with the leading
coefficient 1 implicit.  Degrees stay in the low hundreds throughout this
package, so everything is dense double-precision arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ROOT_RESIDUAL_TOL = 1e-10
_ABERTH_MAX_ITER = 500
_ABERTH_STOP = 1e-13
_CONJ_IMAG_TOL = 1e-10


class RootFindingError(RuntimeError):
    """Simultaneous root iteration did not reach the residual target."""

    def __init__(self, message: str, best_residual: float):
        super().__init__(f"{message} (best residual {best_residual:.3e})")
        self.best_residual = best_residual


class ConjugateClosureError(ValueError):
    """A root multiset asserted conjugate-closed is not."""


@dataclass(frozen=True)
class MonicPoly:
    """z^n + c_{n-1} z^{n-1} + ... + c_0 with real c_j; ``coeffs[j]`` is c_j."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(c) for c in self.coeffs)
        if any(not math.isfinite(c) for c in vals):
            raise ValueError("non-finite coefficient")
        object.__setattr__(self, "coeffs", vals)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def eval(self, z):
        """Horner evaluation; accepts scalars or numpy arrays."""
        acc = 1.0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    __call__ = eval

    def full_coeffs(self) -> np.ndarray:
        """Ascending coefficients including the leading 1."""
        return np.asarray(self.coeffs + (1.0,))

    def derivative(self):
        """Differentiate, splitting off the leading coefficient.

        Returns ``(n, monic_part, raw)`` where the derivative equals
        ``n * monic_part`` and ``raw`` is its ascending coefficient array.
        Degree 0 yields the zero-polynomial signal ``(0.0, None, raw)``.
        """
        n = self.degree
        raw = polyder(self.full_coeffs())
        if n == 0:
            return 0.0, None, raw
        return float(n), MonicPoly(tuple(raw[:-1] / float(n))), raw


@dataclass(frozen=True)
class ComplexRootSet:
    """All roots of a polynomial, with multiplicity."""

    roots: tuple[complex, ...]
    tolerance: float

    def moduli(self) -> np.ndarray:
        return np.abs(np.asarray(self.roots))

    def angles(self) -> np.ndarray:
        return np.mod(np.angle(np.asarray(self.roots)), 2.0 * math.pi)


def polyder(coeffs) -> np.ndarray:
    """Ascending-coefficient derivative of an arbitrary coefficient array."""
    c = np.asarray(coeffs)
    if len(c) <= 1:
        return np.zeros(1, dtype=c.dtype)
    return c[1:] * np.arange(1, len(c))


def polyval(coeffs, z):
    """Horner evaluation of an ascending coefficient array."""
    c = np.asarray(coeffs)
    acc = c[-1]
    for k in range(len(c) - 2, -1, -1):
        acc = acc * z + c[k]
    return acc


def leja_order(rts) -> list[complex]:
    """Greedy ordering that keeps partial root products well scaled.

    Multiplying (z - r_k) factors in sorted order lets intermediate
    coefficients grow combinatorially (clustered partial root sets); the
    Leja sweep picks each next root to maximise the distance product to the
    ones already taken, which keeps intermediates O(final size).
    """
    rem = [complex(r) for r in rts]
    if not rem:
        return rem
    out = [max(rem, key=abs)]
    rem.remove(out[0])
    while rem:
        chosen = np.asarray(out)
        with np.errstate(divide="ignore"):
            best = max(
                rem, key=lambda r: float(np.sum(np.log(np.abs(r - chosen) + 1e-300)))
            )
        rem.remove(best)
        out.append(best)
    return out


def from_roots(roots, conjugate_closed: bool = False) -> MonicPoly:
    """Monic polynomial with the given zeros.

    With ``conjugate_closed`` the multiset must be closed under conjugation;
    the (tiny) imaginary parts of the product coefficients are then verified
    and discarded, so the result is exactly real.
    """
    rts = [complex(r) for r in roots]
    if conjugate_closed:
        _assert_conjugate_closed(rts)
    coeffs = np.ones(1, dtype=complex)
    for r in leja_order(rts):
        coeffs = np.convolve(coeffs, np.array([-r, 1.0]))
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    if conjugate_closed:
        drift = float(np.max(np.abs(coeffs.imag)))
        if drift > _CONJ_IMAG_TOL * scale:
            raise ConjugateClosureError(
                f"imaginary drift {drift:.3e} exceeds {_CONJ_IMAG_TOL:.0e} * {scale:.3e}"
            )
        coeffs = coeffs.real
    else:
        if float(np.max(np.abs(coeffs.imag))) > _CONJ_IMAG_TOL * scale:
            raise ValueError(
                "roots produce complex coefficients; pass a conjugate-closed multiset"
            )
        coeffs = coeffs.real
    return MonicPoly(tuple(coeffs[:-1]))


def _assert_conjugate_closed(rts, tol=1e-8):
    unmatched = [r for r in rts if abs(r.imag) > tol]
    used = [False] * len(unmatched)
    for i, r in enumerate(unmatched):
        if used[i]:
            continue
        target = r.conjugate()
        for j in range(i + 1, len(unmatched)):
            if not used[j] and abs(unmatched[j] - target) <= tol * (1.0 + abs(target)):
                used[i] = used[j] = True
                break
        else:
            raise ConjugateClosureError(f"root {r} has no conjugate partner")


def roots(p: MonicPoly, tol: float = ROOT_RESIDUAL_TOL) -> ComplexRootSet:
    """All complex roots of ``p`` via Aberth-Ehrlich simultaneous iteration."""
    if p.degree < 1:
        raise ValueError("degree must be >= 1")
    rts = aberth(p.full_coeffs().astype(complex))
    _check_residuals(p.full_coeffs().astype(complex), rts, tol)
    return ComplexRootSet(tuple(rts), tol)


def _check_residuals(coeffs, rts, tol):
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    for r in rts:
        res = abs(polyval(coeffs, r))
        bound = tol * scale * (1.0 + abs(r)) ** (len(coeffs) - 1)
        if res > bound:
            raise RootFindingError("root residual above tolerance", res)


def aberth(coeffs) -> np.ndarray:
    """Aberth-Ehrlich iteration on an ascending complex coefficient array.

    The leading coefficient must be nonzero.  Exact zero trailing
    coefficients are deflated first so that e.g. z^n returns n exact zeros.
    Starts from a perturbed circle inside the Cauchy bound; stops when every
    residual |p(z_i)| falls below 1e-13 * scale * (1+|z_i|)^n.
    """
    c = np.asarray(coeffs, dtype=complex)
    if abs(c[-1]) == 0.0:
        raise ValueError("leading coefficient is zero")
    c = c / c[-1]
    nzero = 0
    while len(c) > 1 and c[0] == 0.0:
        c = c[1:]
        nzero += 1
    n = len(c) - 1
    zero_part = np.zeros(nzero, dtype=complex)
    if n == 0:
        return zero_part
    dc = polyder(c)
    radius = 1.0 + float(np.max(np.abs(c[:-1])))
    k = np.arange(n)
    # fixed angular offset breaks symmetry deterministically
    z = radius * np.exp(1j * (2.0 * np.pi * (k + 0.5) / n + 0.4))
    abs_c = np.abs(c)
    best = np.inf
    for _ in range(_ABERTH_MAX_ITER):
        pv = polyval(c, z)
        res = np.abs(pv)
        # converged once the residual sits at the Horner rounding floor
        bound = _ABERTH_STOP * polyval(abs_c, np.abs(z))
        best = min(best, float(np.max(res / np.maximum(bound, 1e-300))))
        if np.all(res <= bound):
            return np.concatenate([zero_part, _newton_polish(c, dc, z)])
        dv = polyval(dc, z)
        dv = np.where(dv == 0.0, 1e-300, dv)
        w = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        s = np.sum(1.0 / diff, axis=1) - 1.0  # remove the diagonal's 1/1 term
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        step = w / denom
        converged = res <= bound
        z = np.where(converged, z, z - step)
    pv = np.abs(polyval(c, z))
    raise RootFindingError("Aberth iteration cap reached", float(np.max(pv)))


def _newton_polish(c, dc, z, sweeps=3):
    """A few Newton sweeps drive residuals to the rounding floor.

    The Aberth stopping bound scales with (1+|z|)^n, which is loose for
    moderate degrees; polishing costs a handful of Horner passes.  Steps
    that do not reduce the residual are rejected, so multiple roots are
    left where Aberth put them.
    """
    res = np.abs(polyval(c, z))
    for _ in range(sweeps):
        dv = polyval(dc, z)
        dv = np.where(dv == 0.0, 1.0, dv)
        cand = z - polyval(c, z) / dv
        cres = np.abs(polyval(c, cand))
        better = cres < res
        z = np.where(better, cand, z)
        res = np.where(better, cres, res)
    return z


def reciprocal(p: MonicPoly, c: float = 1.0) -> np.ndarray:
    """Coefficients of c * z^n P(1/z), i.e. the reversed coefficient list.

    For real P this is the reciprocal polynomial; it has the same absolute
    value as P on the unit circle.  The result is generally not monic.
    """
    return float(c) * p.full_coeffs()[::-1].copy()


def cheb_first_kind(k: int) -> MonicPoly:
    """Monic Chebyshev polynomial of the first kind.

    Built from the classical three-term recurrence and scaled by 2^{1-k};
    equioscillates on [-1, 1] with amplitude 2^{1-k}.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return MonicPoly(())
    t_prev = np.array([1.0])
    t = np.array([0.0, 1.0])
    for _ in range(k - 1):
        t_next = np.zeros(len(t) + 1)
        t_next[1:] = 2.0 * t
        t_next[: len(t_prev)] -= t_prev
        t_prev, t = t, t_next
    monic = t * 2.0 ** (1 - k)
    return MonicPoly(tuple(monic[:-1]))


def cheb_third_kind(k: int) -> MonicPoly:
    """Monic Chebyshev polynomial of the third kind.

    V_k(cos t) = 2^{-k} cos((k+1/2)t) / cos(t/2); the recurrence
    V_0 = 1, V_1 = 2x - 1, V_k = 2x V_{k-1} - V_{k-2} gives the classical
    (leading coefficient 2^k) family, scaled here to monic.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return MonicPoly(())
    v_prev = np.array([1.0])
    v = np.array([-1.0, 2.0])
    for _ in range(k - 1):
        v_next = np.zeros(len(v) + 1)
        v_next[1:] = 2.0 * v
        v_next[: len(v_prev)] -= v_prev
        v_prev, v = v, v_next
    monic = v * 2.0 ** (-k)
    return MonicPoly(tuple(monic[:-1]))
