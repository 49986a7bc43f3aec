"""Independent minimax solvers on the circle.

These validate the interval-reduction pipeline without using the derivative
identity or the Joukowski reduction.

Free mode minimises  F(c) = max_theta (2 sin(theta/2))^s |e^{i n theta} +
sum_j c_j e^{i j theta}|  over real coefficient vectors (the minimiser is
conjugation-invariant, hence real).  F is convex: a max of moduli of affine
maps.  A Polyak-step subgradient pass localises the solution on a dense
angular grid; an active-set Newton stage then equalises the levelled maxima
to machine precision.

Constrained mode restricts zeros to the circle and optimises their angles
directly by coordinate descent with multi-start.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .polynomial import MonicPoly

_FREE_MAX_N = 12
_CON_MAX_N = 8
_SUBGRAD_CAP = 20000
_STAGNATION = 50


class OracleGuardError(ValueError):
    """Requested size exceeds the desk-scale guard."""


@dataclass(frozen=True)
class OracleResult:
    mode: str
    minimizer: MonicPoly | None
    angles: tuple[float, ...]
    norm: float
    certificate: tuple[tuple[float, float], ...]  # (theta, value) near-levelled maxima
    iterations: int
    diagnostics: dict = field(default_factory=dict)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CHEB_THREADS", "1")))
    except ValueError:
        return 1


def _weight(theta, s):
    return (2.0 * np.sin(np.asarray(theta) / 2.0)) ** s


# ---------------------------------------------------------------------------
# free mode


def _free_objective_factory(s, n, grid):
    theta = np.linspace(0.0, math.pi, grid)
    E = np.exp(1j * np.outer(theta, np.arange(n + 1)))
    W = _weight(theta, s)
    A, b = E[:, :n], E[:, n]

    def value_and_subgrad(c):
        r = b + A @ c if n else b.copy()
        v = W * np.abs(r)
        i = int(np.argmax(v))
        g = None
        if n:
            ri = r[i]
            g = W[i] * np.real(np.conj(ri) * A[i]) / abs(ri)
        return float(v[i]), g

    return theta, W, A, b, value_and_subgrad


def _subgradient_stage(s, n, grid, tol):
    theta, W, A, b, vg = _free_objective_factory(s, n, grid)
    c = np.zeros(n)
    f_best, _ = vg(c)
    c_best = c.copy()
    if n == 0:
        return c_best, f_best, 0
    delta = 0.02
    since_improve = 0
    it = 0
    while it < _SUBGRAD_CAP:
        it += 1
        f, g = vg(c)
        if f < f_best * (1.0 - 1e-15):
            f_best, c_best = f, c.copy()
            since_improve = 0
        else:
            since_improve += 1
        if since_improve >= _STAGNATION:
            delta *= 0.5
            since_improve = 0
            c = c_best.copy()
            if delta < max(tol, 1e-5):
                break
        gn2 = float(g @ g)
        if gn2 == 0.0:
            break
        target = f_best * (1.0 - delta)
        step = (f - target) / gn2
        c = c - step * g
    return c_best, f_best, it


def _free_value(c, s, theta):
    n = len(c)
    z = np.exp(1j * np.asarray(theta))
    r = z**n
    for j, cj in enumerate(c):
        r = r + cj * z**j
    return _weight(theta, s) * np.abs(r)


def _free_maxima(c, s, n, scan_grid=None):
    """Refined continuum local maxima of the weighted modulus on [0, pi]."""
    G = scan_grid or 4096 * max(1, n)
    theta = np.linspace(0.0, math.pi, G)
    vals = _free_value(c, s, theta)
    is_max = np.zeros(G, dtype=bool)
    is_max[1:-1] = (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    is_max[-1] = vals[-1] >= vals[-2]
    out = []
    step = theta[1] - theta[0]
    for i in np.nonzero(is_max)[0]:
        t = _polish_peak(c, s, n, theta[i], step)
        v = float(_free_value(c, s, [t])[0])
        out.append((t, v))
    merged = []
    for t, v in sorted(out):
        if merged and abs(t - merged[-1][0]) < 1e-9:
            if v > merged[-1][1]:
                merged[-1] = (t, v)
        else:
            merged.append((t, v))
    return merged


def _polish_peak(c, s, n, t0, step):
    """Newton on d/dtheta log(W |r|) = 0 from a grid bracket."""
    t = t0
    for _ in range(30):
        z = cmath.exp(1j * t)
        r = z**n + sum(cj * z**j for j, cj in enumerate(c))
        if r == 0.0:
            return t0
        r1 = 1j * (n * z**n + sum(j * cj * z**j for j, cj in enumerate(c)))
        r2 = -(n * n * z**n + sum(j * j * cj * z**j for j, cj in enumerate(c)))
        half = 0.5 * s
        h = half / math.tan(t / 2.0) + (r1 * np.conj(r)).real / abs(r) ** 2
        u = (r1 * np.conj(r)).real / abs(r) ** 2
        dh = (
            -half / (2.0 * math.sin(t / 2.0) ** 2)
            + ((r2 * np.conj(r)).real + abs(r1) ** 2) / abs(r) ** 2
            - 2.0 * u * u
        )
        if dh == 0.0:
            break
        d = h / dh
        if abs(d) > 2.0 * step:
            break
        t -= d
        t = min(max(t, t0 - 2.0 * step), t0 + 2.0 * step)
        if abs(d) < 1e-15:
            break
    return t


def _kelley_refine(c0, f0, s, n, tol):
    """Cutting-plane exchange on the continuum local maxima.

    Each refined maximum theta of the current iterate contributes the
    supporting half-space  W(theta) Re(e^{-i phi} r(theta; c)) <= t  with
    phi = arg r; the LP minimum of t over all accumulated cuts is a lower
    bound for the true minimax value while the scanned objective is an
    upper bound, so the gap certifies optimality.
    """
    from scipy.optimize import linprog

    rows = []
    rhs = []
    c_best, f_best = c0.copy(), f0
    c_cur = c0.copy()
    lower = 0.0
    stalled = 0
    for _ in range(80):
        maxima = _free_maxima(c_cur, s, n)
        M = max(v for _, v in maxima)
        if M < f_best:
            f_best, c_best = M, c_cur.copy()
            stalled = 0
        else:
            stalled += 1
        for t, v in maxima:
            if v < M * (1.0 - 1e-2):
                continue
            z = cmath.exp(1j * t)
            r = z**n + sum(cj * z**j for j, cj in enumerate(c_cur))
            phi = cmath.phase(r) if r != 0 else 0.0
            w = float(_weight(t, s))
            e = cmath.exp(-1j * phi)
            row = [w * (e * z**j).real for j in range(n)] + [-1.0]
            rows.append(row)
            rhs.append(-w * (e * z**n).real)
        res = linprog(
            np.concatenate([np.zeros(n), [1.0]]),
            A_ub=np.asarray(rows),
            b_ub=np.asarray(rhs),
            bounds=[(None, None)] * n + [(0.0, None)],
            method="highs",
        )
        if not res.success:
            break
        lower = max(lower, float(res.x[n]))
        c_cur = res.x[:n]
        if f_best - lower <= tol * f_best or stalled >= 10:
            break
    return c_best, f_best, lower


def _log_derivatives(c, s, n, theta):
    """Value and log-derivatives of v = W|r| at one angle.

    Returns (v, u_c, u_theta, u_cc, u_ctheta, u_thetatheta) where u = log v.
    """
    z = cmath.exp(1j * theta)
    E = np.array([z**j for j in range(n + 1)])
    r = E[n] + (c @ E[:n] if n else 0.0)
    absr2 = abs(r) ** 2
    rth = 1j * (n * E[n] + (c @ (np.arange(n) * E[:n]) if n else 0.0))
    rthth = -(n * n * E[n] + (c @ (np.arange(n) ** 2 * E[:n]) if n else 0.0))
    w1 = 0.5 * s / math.tan(theta / 2.0)
    w1p = -0.25 * s / math.sin(theta / 2.0) ** 2
    v = float(_weight(theta, s)) * abs(r)
    u_c = np.real(E[:n] * np.conj(r)) / absr2
    lr_th = (rth * np.conj(r)).real / absr2  # d log|r| / dtheta
    u_th = w1 + lr_th
    jj = np.arange(n)
    u_cc = np.cos(np.subtract.outer(jj, jj) * theta) / absr2 - 2.0 * np.outer(u_c, u_c)
    u_cth = (
        np.real(1j * jj * E[:n] * np.conj(r)) + np.real(E[:n] * np.conj(rth))
    ) / absr2 - 2.0 * u_c * lr_th
    u_thth = w1p + ((rthth * np.conj(r)).real + abs(rth) ** 2) / absr2 - 2.0 * lr_th**2
    return v, u_c, u_th, u_cc, u_cth, u_thth


def _full_kkt_newton(c, thetas, lams, s, n, iters=25):
    """Newton on the complete stationarity system of the semi-infinite problem.

    Unknowns are the coefficients, the level, the active angles and their
    multipliers; residuals are the levelled values, the angular
    stationarity of each active maximum, the coefficient stationarity of
    the Lagrangian, and the multiplier normalisation.
    """
    p = len(thetas)
    c = np.asarray(c, dtype=float).copy()
    thetas = np.asarray(thetas, dtype=float).copy()
    lams = np.asarray(lams, dtype=float).copy()
    t = 0.0

    def assemble(c, t, thetas, lams):
        V, UC, UTH, UCC, UCTH, UTHTH = [], [], [], [], [], []
        for th in thetas:
            v, u_c, u_th, u_cc, u_cth, u_thth = _log_derivatives(c, s, n, th)
            V.append(v); UC.append(u_c); UTH.append(u_th)
            UCC.append(u_cc); UCTH.append(u_cth); UTHTH.append(u_thth)
        V = np.asarray(V)
        F = np.concatenate(
            [V - t, np.asarray(UTH), sum(l * v * uc for l, v, uc in zip(lams, V, UC)),
             [lams.sum() - 1.0]]
        )
        dim = n + 1 + 2 * p
        J = np.zeros((dim, dim))
        # column layout: c (n), t (1), thetas (p), lams (p)
        for i in range(p):
            J[i, :n] = V[i] * UC[i]
            J[i, n] = -1.0
            J[i, n + 1 + i] = V[i] * UTH[i]
            J[p + i, :n] = UCTH[i]
            J[p + i, n + 1 + i] = UTHTH[i]
        for j in range(n):
            for k in range(n):
                J[2 * p + j, k] = sum(
                    l * v * (uc[j] * uc[k] + ucc[j, k])
                    for l, v, uc, ucc in zip(lams, V, UC, UCC)
                )
            for i in range(p):
                J[2 * p + j, n + 1 + i] = lams[i] * V[i] * (UTH[i] * UC[i][j] + UCTH[i][j])
                J[2 * p + j, n + 1 + p + i] = V[i] * UC[i][j]
        J[2 * p + n, n + 1 + p :] = 1.0
        return F, J, V

    t = float(np.mean([_log_derivatives(c, s, n, th)[0] for th in thetas]))
    F, J, V = assemble(c, t, thetas, lams)
    best_res = float(np.max(np.abs(F)))
    for _ in range(iters):
        try:
            dx = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            return None
        scale = 1.0
        for _ in range(10):
            c2 = c + scale * dx[:n]
            t2 = t + scale * dx[n]
            th2 = thetas + scale * dx[n + 1 : n + 1 + p]
            lm2 = lams + scale * dx[n + 1 + p :]
            if np.all(th2 > 0.0) and np.all(th2 <= math.pi + 1e-12):
                F2, J2, V2 = assemble(c2, t2, th2, lm2)
                r2 = float(np.max(np.abs(F2)))
                if r2 < best_res:
                    c, t, thetas, lams, F, J, V = c2, t2, th2, lm2, F2, J2, V2
                    best_res = r2
                    break
            scale *= 0.5
        else:
            break
        if best_res < 1e-14 * max(1.0, t):
            break
    if np.any(lams < -1e-9):
        return None
    return c, t, thetas, lams


def oracle_free(s: float, n: int, grid: int | None = None, tol: float = 1e-12) -> OracleResult:
    """Free-coefficient minimax on the circle for weight (2 sin(theta/2))^s."""
    if n > _FREE_MAX_N:
        raise OracleGuardError(f"free mode is desk-scale only (n <= {_FREE_MAX_N})")
    if n < 0 or s < 0.0:
        raise ValueError("need n >= 0 and s >= 0")
    G = grid or 8192 * (n + 1)
    c_best, f_grid, iters = _subgradient_stage(s, n, G, tol)
    # the grid max slightly underestimates the continuum max; rebase so
    # that all later comparisons use scanned continuum values
    f_best = max(v for _, v in _free_maxima(c_best, s, n)) if n else f_grid
    if n == 0:
        cert = _certificate(c_best, s, n, f_best)
        return OracleResult("free", MonicPoly(()), (), f_best, cert, iters)

    c_best, f_best, lower = _kelley_refine(c_best, f_best, s, n, max(tol, 1e-7))

    # polish: full KKT Newton on the active set identified by the exchange
    maxima = _free_maxima(c_best, s, n)
    M = max(v for _, v in maxima)
    active = [(t, v) for t, v in maxima if v >= M * (1.0 - 1e-4)]
    thetas = np.array([t for t, _ in active])
    gmat = np.array([_log_derivatives(c_best, s, n, th)[1] for th in thetas])
    vvec = np.array([v for _, v in active])
    lam0 = _initial_multipliers(gmat * vvec[:, None])
    res = _full_kkt_newton(c_best, thetas, lam0, s, n)
    if res is not None:
        c_new, t_new, _, _ = res
        maxima_new = _free_maxima(c_new, s, n)
        M_new = max(v for _, v in maxima_new)
        if M_new <= t_new * (1.0 + 1e-10) and M_new <= f_best * (1.0 + 1e-12):
            c_best, f_best = c_new, M_new
            lower = max(lower, t_new * (1.0 - 1e-10))

    cert = _certificate(c_best, s, n, f_best)
    return OracleResult(
        "free", MonicPoly(tuple(c_best)), (), float(f_best), cert, iters,
        {"grid": G, "certified_lower_bound": lower, "gap": f_best - lower},
    )


def _initial_multipliers(grads):
    """Least-squares multipliers for sum lam_i grad_i = 0, sum lam = 1."""
    p = grads.shape[0]
    A = np.vstack([grads.T, np.ones(p)])
    b = np.zeros(A.shape[0])
    b[-1] = 1.0
    lam, *_ = np.linalg.lstsq(A, b, rcond=None)
    lam = np.clip(lam, 0.0, None)
    ssum = lam.sum()
    return lam / ssum if ssum > 0 else np.full(p, 1.0 / p)


def _certificate(c, s, n, norm):
    maxima = _free_maxima(c, s, n) if n else _free_maxima(np.zeros(0), s, 0)
    out = []
    for t, v in maxima:
        if v >= norm * (1.0 - 1e-6):
            out.append((float(t), float(v)))
            if 1e-9 < t < math.pi - 1e-9:
                out.append((float(2.0 * math.pi - t), float(v)))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# constrained mode
#
# log v(theta; beta) decomposes into shifted copies of L(x) = log(2|sin(x/2)|):
# the weight contributes s*L(theta), each conjugate pair L(theta -+ beta_k),
# the odd fixed zero at -1 contributes L(theta - pi).  All derivatives below
# are sums of L' = cot(x/2)/2 and L'' = -1/(4 sin^2(x/2)).


def _Lp(x):
    return 0.5 / math.tan(0.5 * x)


def _Lpp(x):
    return -0.25 / math.sin(0.5 * x) ** 2


def _con_value(s, n, betas, theta):
    v = (2.0 * abs(math.sin(theta / 2.0))) ** s
    for b in betas:
        v *= 2.0 * abs(math.sin((theta - b) / 2.0)) * 2.0 * abs(math.sin((theta + b) / 2.0))
    if n % 2:
        v *= 2.0 * abs(math.sin((theta - math.pi) / 2.0))
    return v


def _con_utheta(s, n, betas, theta):
    out = s * _Lp(theta)
    for b in betas:
        out += _Lp(theta - b) + _Lp(theta + b)
    if n % 2:
        out += _Lp(theta - math.pi)
    return out


def _con_uthetatheta(s, n, betas, theta):
    out = s * _Lpp(theta)
    for b in betas:
        out += _Lpp(theta - b) + _Lpp(theta + b)
    if n % 2:
        out += _Lpp(theta - math.pi)
    return out


def _con_maxima(s, n, betas, grid=4096):
    """Refined local maxima of v over (0, pi]."""
    theta = np.linspace(0.0, math.pi, grid + 1)[1:]
    z = np.exp(1j * theta)
    vals = _weight(theta, s)
    for b in betas:
        vals = vals * np.abs(z - cmath.exp(1j * b)) * np.abs(z - cmath.exp(-1j * b))
    if n % 2:
        vals = vals * np.abs(z + 1.0)
    is_max = np.zeros(len(theta), dtype=bool)
    is_max[1:-1] = (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    is_max[-1] = vals[-1] >= vals[-2]
    is_max[0] = vals[0] >= vals[1]
    out = []
    for i in np.nonzero(is_max)[0]:
        t = theta[i]
        if vals[i] == 0.0:
            continue
        for _ in range(30):  # Newton on the angular stationarity
            h = _con_utheta(s, n, betas, t)
            dh = _con_uthetatheta(s, n, betas, t)
            if dh == 0.0 or not math.isfinite(h):
                break
            d = h / dh
            if abs(d) > 2.0 * (theta[1] - theta[0]):
                break
            t = min(max(t - d, 1e-12), math.pi)
            if abs(d) < 1e-15:
                break
        out.append((t, _con_value(s, n, betas, t)))
    merged = []
    for t, v in sorted(out):
        if merged and abs(t - merged[-1][0]) < 1e-9:
            if v > merged[-1][1]:
                merged[-1] = (t, v)
        else:
            merged.append((t, v))
    return merged


def _constrained_kkt_newton(betas, thetas, lams, s, n, iters=25):
    """Full Newton on the constrained stationarity system.

    Unknowns: pair angles, level, active maxima angles, multipliers.
    """
    K = len(betas)
    p = len(thetas)
    betas = np.asarray(betas, dtype=float).copy()
    thetas = np.asarray(thetas, dtype=float).copy()
    lams = np.asarray(lams, dtype=float).copy()

    def assemble(betas, t, thetas, lams):
        V = np.array([_con_value(s, n, betas, th) for th in thetas])
        UTH = np.array([_con_utheta(s, n, betas, th) for th in thetas])
        UB = np.zeros((p, K))
        UTB = np.zeros((p, K))
        UBB = np.zeros((p, K))
        for i, th in enumerate(thetas):
            for k, b in enumerate(betas):
                UB[i, k] = -_Lp(th - b) + _Lp(th + b)
                UTB[i, k] = -_Lpp(th - b) + _Lpp(th + b)
                UBB[i, k] = _Lpp(th - b) + _Lpp(th + b)
        F = np.concatenate(
            [V - t, UTH, (lams * V) @ UB, [lams.sum() - 1.0]]
        )
        dim = K + 1 + 2 * p
        J = np.zeros((dim, dim))
        # columns: beta (K), t (1), thetas (p), lams (p)
        for i in range(p):
            J[i, :K] = V[i] * UB[i]
            J[i, K] = -1.0
            J[i, K + 1 + i] = V[i] * UTH[i]
            J[p + i, :K] = UTB[i]
            J[p + i, K + 1 + i] = _con_uthetatheta(s, n, betas, thetas[i])
        for k in range(K):
            for l in range(K):
                acc = 0.0
                for i in range(p):
                    h = UB[i, k] * UB[i, l] + (UBB[i, k] if k == l else 0.0)
                    acc += lams[i] * V[i] * h
                J[2 * p + k, l] = acc
            for i in range(p):
                J[2 * p + k, K + 1 + i] = lams[i] * V[i] * (UTH[i] * UB[i, k] + UTB[i, k])
                J[2 * p + k, K + 1 + p + i] = V[i] * UB[i, k]
        J[2 * p + K, K + 1 + p :] = 1.0
        return F, J

    t = float(np.mean([_con_value(s, n, betas, th) for th in thetas]))
    F, J = assemble(betas, t, thetas, lams)
    best_res = float(np.max(np.abs(F)))
    for _ in range(iters):
        try:
            dx = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            return None
        scale = 1.0
        for _ in range(10):
            b2 = betas + scale * dx[:K]
            t2 = t + scale * dx[K]
            th2 = thetas + scale * dx[K + 1 : K + 1 + p]
            lm2 = lams + scale * dx[K + 1 + p :]
            if np.all(b2 > 0.0) and np.all(b2 < math.pi) and np.all(th2 > 0.0) and np.all(
                th2 <= math.pi
            ):
                F2, J2 = assemble(b2, t2, th2, lm2)
                r2 = float(np.max(np.abs(F2)))
                if r2 < best_res:
                    betas, t, thetas, lams, F, J = b2, t2, th2, lm2, F2, J2
                    best_res = r2
                    break
            scale *= 0.5
        else:
            break
        if best_res < 1e-14 * max(1.0, t):
            break
    if np.any(lams < -1e-9):
        return None
    return betas, t, thetas, lams


def _constrained_value_factory(s, n, grid=2048):
    theta = np.linspace(0.0, math.pi, grid)
    z = np.exp(1j * theta)
    W = _weight(theta, s)
    odd = bool(n % 2)
    if odd:
        W = W * np.abs(z + 1.0)

    def value(betas):
        v = W.copy()
        for b in betas:
            v = v * np.abs(z - cmath.exp(1j * b)) * np.abs(z - cmath.exp(-1j * b))
        i = int(np.argmax(v))
        # parabolic touch-up of the discrete peak
        if 0 < i < grid - 1:
            y0, y1, y2 = v[i - 1], v[i], v[i + 1]
            den = y0 - 2.0 * y1 + y2
            if den < 0.0:
                d = 0.5 * (y0 - y2) / den
                return float(y1 - 0.25 * (y0 - y2) * d)
        return float(v[i])

    return value


def _constrained_norm_accurate(s, n, betas):
    from . import rootfn

    odd = bool(n % 2)
    factors = [(1.0 + 0.0j, float(s))]
    for b in betas:
        factors.append((cmath.exp(1j * b), 1.0))
        factors.append((cmath.exp(-1j * b), 1.0))
    if odd:
        factors.append((-1.0 + 0.0j, 1.0))
    return rootfn.sup_norm(rootfn.WeightedRootFn(1.0, tuple(factors))).value


def _coordinate_descent(value, betas, sweeps=60):
    betas = list(betas)
    evals = 0
    for _ in range(sweeps):
        moved = 0.0
        for k in range(len(betas)):

            def fk(b):
                trial = betas.copy()
                trial[k] = b
                return value(trial)

            # coarse scan defends against multimodality of the slice
            cand = np.linspace(1e-6, math.pi - 1e-6, 33)
            cv = [fk(b) for b in cand]
            evals += 33
            j = int(np.argmin(cv))
            lo = cand[max(j - 1, 0)]
            hi = cand[min(j + 1, len(cand) - 1)]
            b_new, e = _golden_min(fk, lo, hi, 60)
            evals += 60
            moved = max(moved, abs(b_new - betas[k]))
            betas[k] = b_new
        if moved < 1e-10:
            break
    return betas, evals


def _slp_constrained(s, n, betas, rounds=80):
    """Trust-region sequential linear programming on the pair angles.

    Coordinate descent zigzags in the curved valley of this objective, so
    after it localises the basin we linearise the active maxima in the
    angles and take LP steps inside a shrinking box.
    """
    from scipy.optimize import linprog

    K = len(betas)
    betas = np.asarray(betas, dtype=float).copy()
    rho = 0.2
    f_cur = max(v for _, v in _con_maxima(s, n, betas))
    for _ in range(rounds):
        maxima = _con_maxima(s, n, betas)
        M = max(v for _, v in maxima)
        rows, rhs = [], []
        for th, v in maxima:
            if v < M * 0.5:
                continue
            g = [v * (-_Lp(th - b) + _Lp(th + b)) for b in betas]
            rows.append(g + [-1.0])
            rhs.append(-v + float(np.dot(g, betas)))
        bounds = [(max(1e-6, b - rho), min(math.pi - 1e-6, b + rho)) for b in betas]
        bounds.append((0.0, None))
        res = linprog(
            np.concatenate([np.zeros(K), [1.0]]),
            A_ub=np.asarray(rows),
            b_ub=np.asarray(rhs),
            bounds=bounds,
            method="highs",
        )
        if not res.success:
            break
        cand = res.x[:K]
        f_new = max(v for _, v in _con_maxima(s, n, cand))
        if f_new < f_cur * (1.0 - 1e-15):
            betas, f_cur = cand, f_new
            rho = min(0.2, rho * 1.5)
        else:
            rho *= 0.5
        if rho < 1e-10:
            break
    return list(betas)


def _polish_constrained(s, n, betas):
    """SLP descent followed by a full-KKT Newton polish."""
    betas = _slp_constrained(s, n, betas)
    maxima = _con_maxima(s, n, betas)
    M = max(v for _, v in maxima)
    norm0 = _constrained_norm_accurate(s, n, betas)
    active = [(t, v) for t, v in maxima if v >= M * (1.0 - 5e-3)]
    thetas = np.array([t for t, _ in active])
    p = len(thetas)
    grads = np.zeros((p, len(betas)))
    for i, th in enumerate(thetas):
        for k, b in enumerate(betas):
            grads[i, k] = active[i][1] * (-_Lp(th - b) + _Lp(th + b))
    lam0 = _initial_multipliers(grads)
    res = _constrained_kkt_newton(betas, thetas, lam0, s, n)
    if res is None:
        return betas, norm0
    b_new, t_new, _, _ = res
    maxima_new = _con_maxima(s, n, b_new)
    M_new = max(v for _, v in maxima_new)
    if M_new <= t_new * (1.0 + 1e-10) and M_new <= norm0 * (1.0 + 1e-12):
        return list(b_new), _constrained_norm_accurate(s, n, b_new)
    return betas, norm0


def _golden_min(fun, lo, hi, iters):
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv * (b - a)
    x2 = a + inv * (b - a)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(iters):
        if f1 > f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv * (b - a)
            f1 = fun(x1)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def oracle_constrained(
    s: float,
    n: int,
    tol: float = 1e-9,
    seed: int = 42,
    starts: int = 8,
    warm_start=None,
) -> OracleResult:
    """Circle-constrained minimax: optimise the n zero angles directly.

    Conjugate-symmetric configurations only: paired angles +-beta_k plus a
    fixed zero at -1 when n is odd.  Coordinate descent with golden-section
    line searches, multi-started from seeded random symmetric
    configurations.  ``warm_start`` (diagnostic only; keeps the oracle
    independent when unset) seeds a single start from given pair angles.
    """
    if n > _CON_MAX_N:
        raise OracleGuardError(f"constrained mode is desk-scale only (n <= {_CON_MAX_N})")
    if n < 0 or s < 1.0:
        raise ValueError("need n >= 0 and s >= 1")
    K = n // 2
    odd = bool(n % 2)
    if K == 0:
        norm = _constrained_norm_accurate(s, n, ())
        angles = (math.pi,) if odd else ()
        return OracleResult(
            "constrained", None, angles, norm, ((math.pi, norm),), 0,
            {"start_norms": (norm,), "warm": False},
        )

    value = _constrained_value_factory(s, n)
    rng = np.random.default_rng(seed)
    if warm_start is not None:
        start_list = [np.asarray(warm_start, dtype=float)]
    else:
        start_list = [np.sort(rng.uniform(0.05, math.pi - 0.05, size=K)) for _ in range(starts)]

    def run(b0):
        betas, evals = _coordinate_descent(value, list(b0))
        betas, norm = _polish_constrained(s, n, betas)
        return norm, tuple(sorted(betas)), evals

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, start_list))
    else:
        results = [run(b0) for b0 in start_list]
    # deterministic reduction regardless of schedule
    results.sort(key=lambda r: (r[0], r[1]))
    norm, betas, _ = results[0]
    total_evals = sum(r[2] for r in results)

    angles = sorted([b for b in betas] + [2.0 * math.pi - b for b in betas] + ([math.pi] if odd else []))
    all_norms = tuple(r[0] for r in results)
    cert = ((math.pi, norm),)
    return OracleResult(
        "constrained",
        None,
        tuple(angles),
        float(norm),
        cert,
        total_evals,
        {"start_norms": all_norms, "warm": warm_start is not None},
    )
