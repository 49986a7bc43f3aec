"""Root-power products c * prod (z - a_k)^{s_k} evaluated through their modulus.

Only absolute values are ever computed, so no branch of the fractional
powers is materialised.  This is exactly what the circle sup norms need:
|f| is single-valued even when f itself is not.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

_UNIMODULAR_TOL = 1e-12
_NEAR_ROOT = 1e-8
_GOLDEN_ITERS = 48
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class UnboundedDerivativeError(ValueError):
    """|f'| is unbounded on the circle (a boundary root with exponent < 1)."""


@dataclass(frozen=True)
class WeightedRootFn:
    """c * prod (z - a_k)^{s_k} with complex roots a_k and real s_k > 0."""

    scale: complex
    factors: tuple[tuple[complex, float], ...]

    def __post_init__(self):
        facs = tuple((complex(a), float(s)) for a, s in self.factors)
        if any(s <= 0.0 for _, s in facs):
            raise ValueError("all exponents must be positive")
        object.__setattr__(self, "scale", complex(self.scale))
        object.__setattr__(self, "factors", facs)

    @property
    def total_exponent(self) -> float:
        return sum(s for _, s in self.factors)

    def derivative_bounded(self) -> bool:
        """False when some unimodular root has exponent < 1."""
        return all(
            s >= 1.0 for a, s in self.factors if abs(abs(a) - 1.0) <= _UNIMODULAR_TOL
        )

    def roots_conjugate_closed(self, tol: float = 1e-12) -> bool:
        used = [False] * len(self.factors)
        for i, (a, s) in enumerate(self.factors):
            if used[i]:
                continue
            if abs(a.imag) <= tol:
                used[i] = True
                continue
            tgt = a.conjugate()
            for j in range(i + 1, len(self.factors)):
                b, t = self.factors[j]
                if not used[j] and abs(b - tgt) <= tol * (1 + abs(tgt)) and abs(s - t) <= tol:
                    used[i] = used[j] = True
                    break
            else:
                return False
        return True


@dataclass(frozen=True)
class CircleNorm:
    """Sup norm over the unit circle with its argmax angle and a residual bound."""

    value: float
    theta: float
    residual: float


def modulus(f: WeightedRootFn, z) -> float:
    """|c| * prod |z - a_k|^{s_k}; scalar z."""
    return float(_modulus_grid(f, np.asarray([complex(z)]))[0])


def _modulus_grid(f: WeightedRootFn, z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        out = np.full(z.shape, abs(f.scale), dtype=float)
        for a, s in f.factors:
            out = out * np.abs(z - a) ** s
    # redo overflowed/underflowed entries in log space; a genuine zero
    # (z at a root) comes out as exp(-inf) = 0 there as well
    redo = ~np.isfinite(out) | (out == 0.0)
    if np.any(redo):
        out[redo] = _modulus_log(f, z[redo])
    return out


def _modulus_log(f: WeightedRootFn, z: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        acc = np.full(z.shape, math.log(abs(f.scale)) if f.scale != 0 else -np.inf)
        for a, s in f.factors:
            acc = acc + s * np.log(np.abs(z - a))
    return np.exp(acc)


def _sum_inv(f: WeightedRootFn, z: np.ndarray) -> np.ndarray:
    acc = np.zeros(z.shape, dtype=complex)
    for a, s in f.factors:
        d = z - a
        d = np.where(d == 0.0, np.nan, d)
        acc = acc + s / d
    return acc


def derivative_modulus(f: WeightedRootFn, z) -> float:
    """|f'(z)| for unimodular z, with the removable limit at simple roots.

    f' = f * sum s_k / (z - a_k).  At a root with s_k = 1 the product has a
    finite limit; at a root with s_k > 1 the derivative vanishes; a root
    with s_k < 1 makes |f'| unbounded and raises.
    """
    zc = complex(z)
    near = [(a, s) for a, s in f.factors if abs(zc - a) < _NEAR_ROOT]
    for a, s in near:
        if s < 1.0 - 1e-12:
            raise UnboundedDerivativeError(
                f"derivative unbounded near root {a} with exponent {s}"
            )
    exact = [(a, s) for a, s in near if abs(s - 1.0) <= 1e-12]
    if exact:
        # limit branch: f * 1/(z - a) -> c * prod_{k != j} (z - a_k)^{s_k}
        a0, _ = exact[0]
        rest = WeightedRootFn(f.scale, tuple((a, s) for a, s in f.factors if a != a0))
        return modulus(rest, zc) if rest.factors else abs(f.scale)
    if any(zc == a for a, _ in near):
        return 0.0  # exponent > 1 at the root itself
    val = _modulus_grid(f, np.asarray([zc]))[0]
    return float(val * abs(_sum_inv(f, np.asarray([zc]))[0]))


def _derivative_modulus_grid(f: WeightedRootFn, z: np.ndarray) -> np.ndarray:
    vals = _modulus_grid(f, z)
    with np.errstate(invalid="ignore", over="ignore"):
        out = vals * np.abs(_sum_inv(f, z))
    bad = ~np.isfinite(out)
    if np.any(bad):
        out[bad] = [derivative_modulus(f, zz) for zz in z[bad]]
    return out


def _grid_size(f: WeightedRootFn) -> int:
    total = sum(math.ceil(s) for _, s in f.factors)
    return max(4096, 64 * (2 + total + len(f.factors)))


def _golden_max(fun, lo: float, hi: float) -> tuple[float, float, float]:
    """Golden-section maximisation on [lo, hi]; returns (x, value, residual)."""
    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = fun(x1), fun(x2)
    last_gain = np.inf
    prev_best = max(f1, f2)
    for _ in range(_GOLDEN_ITERS):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = fun(x1)
        cur = max(f1, f2)
        last_gain = max(cur - prev_best, 0.0)
        prev_best = max(prev_best, cur)
    if f1 >= f2:
        best_x, best_f = x1, f1
    else:
        best_x, best_f = x2, f2
    residual = last_gain + 8.0 * np.finfo(float).eps * abs(best_f)
    return best_x, best_f, residual


def sup_norm(f: WeightedRootFn, which: str = "fn", grid: int | None = None) -> CircleNorm:
    """Maximum of |f| (or |f'|) over the unit circle.

    Uniform grid scan followed by golden-section refinement of every
    competitive local maximum.  The scan is restricted to [0, pi] only when
    the root multiset is conjugate-closed and the scale is real.
    """
    if which not in ("fn", "derivative"):
        raise ValueError("which must be 'fn' or 'derivative'")
    if which == "derivative" and not f.derivative_bounded():
        raise UnboundedDerivativeError("sup of |f'| is infinite for this function")
    if not f.factors:
        return CircleNorm(abs(f.scale) if which == "fn" else 0.0, 0.0, 0.0)

    half = f.roots_conjugate_closed() and abs(complex(f.scale).imag) <= 1e-14 * (
        1.0 + abs(f.scale)
    )
    G = grid or _grid_size(f)
    if half:
        theta = np.linspace(0.0, math.pi, G // 2 + 1)
    else:
        theta = np.linspace(0.0, 2.0 * math.pi, G, endpoint=False)
    z = np.exp(1j * theta)
    if which == "fn":
        vals = _modulus_grid(f, z)

        def fun(t):
            return float(_modulus_grid(f, np.asarray([cmath.exp(1j * t)]))[0])

    else:
        vals = _derivative_modulus_grid(f, z)

        def fun(t):
            return derivative_modulus(f, cmath.exp(1j * t))

    best_x, best_f, best_res = _scan_and_refine(theta, vals, fun, wrap=not half)
    return CircleNorm(best_f, best_x % (2.0 * math.pi), best_res)


def _scan_and_refine(theta, vals, fun, wrap: bool):
    n = len(theta)
    if wrap:
        left = np.roll(vals, 1)
        right = np.roll(vals, -1)
        is_max = (vals >= left) & (vals >= right)
    else:
        is_max = np.zeros(n, dtype=bool)
        is_max[1:-1] = (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
        is_max[0] = vals[0] >= vals[1]
        is_max[-1] = vals[-1] >= vals[-2]
    idx = np.nonzero(is_max)[0]
    # peaks more than a grid-resolution margin below the best cannot win
    cutoff = float(np.max(vals)) * 0.999
    best = (None, -np.inf, np.inf)
    step = theta[1] - theta[0]
    for i in idx:
        if vals[i] < cutoff:
            continue
        x, v, res = _golden_max(fun, theta[i] - step, theta[i] + step)
        if v > best[1]:
            best = (x, v, res)
    if best[0] is None:
        j = int(np.argmax(vals))
        best = (float(theta[j]), float(vals[j]), 0.0)
    return best


def reciprocal_fn(f: WeightedRootFn) -> WeightedRootFn:
    """The reciprocal function: roots 1/conj(a_k), same exponents.

    Only |f*| and |f*'| are meaningful for the result; the scale is stored
    as a nonnegative magnitude because its phase depends on branch choices.
    |f*| = |f| on the unit circle.
    """
    if any(abs(a) < 1e-300 for a, _ in f.factors):
        raise ValueError("reciprocal undefined for a root at the origin")
    mag = abs(f.scale)
    for a, s in f.factors:
        mag *= abs(a) ** s
    new = tuple((1.0 / a.conjugate(), s) for a, s in f.factors)
    return WeightedRootFn(mag, new)


def from_polynomial_roots(rts, boundary_exponent_pairs=()) -> WeightedRootFn:
    """Unit-scale product over plain roots plus explicit (root, exponent) pairs."""
    factors = tuple((complex(r), 1.0) for r in rts) + tuple(
        (complex(a), float(s)) for a, s in boundary_exponent_pairs
    )
    return WeightedRootFn(1.0, factors)
