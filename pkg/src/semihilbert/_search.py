"""Deterministic search primitives used by the operator-geometry routines.

All searches are seeded and reduce ties by index, so results are
reproducible regardless of scheduling.  The multistart helpers honor the
``SEMIHILBERT_THREADS`` environment variable.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def thread_count() -> int:
    raw = os.environ.get("SEMIHILBERT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def map_ordered(fn, items):
    """Map preserving order; threaded only when SEMIHILBERT_THREADS > 1."""
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def golden_max(f, a: float, b: float, xtol: float, max_iter: int = 200):
    """Golden-section maximization of f on [a, b]; returns (x, f(x))."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while (b - a) > xtol and it < max_iter:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        it += 1
    return (c, fc) if fc >= fd else (d, fd)


def circle_max(batch_f, scalar_f, n_grid: int, xtol: float = 1e-12,
               max_brackets: int = 8):
    """Maximize a periodic function of an angle over [0, 2*pi).

    ``batch_f`` evaluates a whole angle grid at once; ``scalar_f`` a single
    angle.  Every local maximum of the grid (capped at ``max_brackets``,
    ranked by value) is refined by golden section, which is safe because
    the target functions are Lipschitz with known constants.
    Returns (theta, value); ties keep the smallest grid index.
    """
    theta = np.linspace(0.0, 2.0 * math.pi, n_grid, endpoint=False)
    vals = np.asarray(batch_f(theta), dtype=float)
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    local = np.nonzero((vals >= left) & (vals >= right))[0]
    if local.size == 0:
        local = np.array([int(np.argmax(vals))])
    order = local[np.argsort(-vals[local], kind="stable")][:max_brackets]

    step = 2.0 * math.pi / n_grid
    best_theta = float(theta[order[0]])
    best_val = float(vals[order[0]])
    for k in order:
        x, v = golden_max(scalar_f, theta[k] - step, theta[k] + step, xtol)
        if vals[k] >= v:
            x, v = float(theta[k]), float(vals[k])
        if v > best_val:
            best_val, best_theta = float(v), float(x)
    return best_theta % (2.0 * math.pi), best_val


def sphere_maximize(value_grad, seeds, max_iter: int = 300, gtol: float = 1e-12):
    """Batched projected gradient ascent on the complex unit sphere.

    ``value_grad(U) -> (values, grads)`` maps a stack of unit rows (S, r) to
    per-row values and Wirtinger gradients with respect to conj(U); targets
    must be phase invariant.  All starts advance together with per-row
    Armijo steps, so the cost per iteration is a few small matmuls.
    Returns (u_best, value_best); ties keep the earliest seed.  Seed chunks
    run through the thread pool when SEMIHILBERT_THREADS > 1; rows are
    independent, so chunking never changes the result.
    """
    stack = np.array([np.asarray(s, dtype=complex) for s in seeds])
    stack /= np.linalg.norm(stack, axis=1, keepdims=True)

    def run(u):
        u = u.copy()
        v, g = value_grad(u)
        t = np.ones(u.shape[0])
        active = np.ones(u.shape[0], dtype=bool)
        for _ in range(max_iter):
            radial = np.einsum("ij,ij->i", u.conj(), g)
            gt = g - radial[:, None] * u
            gn = np.linalg.norm(gt, axis=1)
            active &= gn > gtol * (1.0 + np.abs(v))
            if not active.any():
                break
            un = u + t[:, None] * gt
            un /= np.linalg.norm(un, axis=1, keepdims=True)
            vn, gnn = value_grad(un)
            accept = active & (vn >= v + 0.1 * t * gn * gn)
            reject = active & ~accept
            u[accept] = un[accept]
            v[accept] = vn[accept]
            g[accept] = gnn[accept]
            t[accept] = np.minimum(t[accept] * 2.0, 1e8)
            t[reject] *= 0.5
            active &= t > 1e-18
        return v, u

    workers = thread_count()
    if workers > 1 and stack.shape[0] > 1:
        parts = map_ordered(run, np.array_split(stack, workers))
        vals = np.concatenate([p[0] for p in parts])
        mats = np.concatenate([p[1] for p in parts])
    else:
        vals, mats = run(stack)
    best = int(np.argmax(vals))
    return mats[best], float(vals[best])


def ellipsoid_minimize_2d(value_subgrad, radius: float, center: complex = 0j,
                          xtol: float = 1e-12, max_iter: int = 500):
    """Minimize a convex function of a complex variable by the ellipsoid method.

    ``value_subgrad(gamma) -> (value, (gx, gy))`` must return any valid
    subgradient in the (Re, Im) coordinates.  The initial disc (center,
    radius) has to contain a minimizer; convexity then guarantees the best
    center converges, kinks included, where naive descent schemes stall.
    Returns (gamma_best, value_best).
    """
    x = np.array([center.real, center.imag])
    p = np.eye(2) * (radius * radius)
    best_v = math.inf
    best_x = x.copy()
    for _ in range(max_iter):
        gamma = complex(x[0], x[1])
        v, g = value_subgrad(gamma)
        if v < best_v:
            best_v = float(v)
            best_x = x.copy()
        g = np.asarray(g, dtype=float)
        pg = p @ g
        denom2 = float(g @ pg)
        if denom2 <= 0.0 or not np.isfinite(denom2):
            break
        gn = pg / math.sqrt(denom2)
        x = x - gn / 3.0
        p = (4.0 / 3.0) * (p - (2.0 / 3.0) * np.outer(gn, gn))
        p = (p + p.T) / 2.0
        if math.sqrt(max(p[0, 0] + p[1, 1], 0.0)) <= xtol * (1.0 + np.hypot(*x)):
            break
    return complex(best_x[0], best_x[1]), best_v
