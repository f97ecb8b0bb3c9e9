"""Internal numerical kernels: adaptive Gauss-Kronrod panels and Richardson tables.

Everything here works on a real parameter axis with complex-valued integrands;
path geometry lives in :mod:`divcalc.contour`.
"""

from __future__ import annotations

import heapq
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DivcalcError

# 15-point Kronrod nodes (ascending) with the embedded 7-point Gauss rule,
# on the reference interval [-1, 1].
_XK_HALF = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144838258730,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.0,
    ]
)
_WK_HALF = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG_HALF = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

GK_NODES = np.concatenate([-_XK_HALF[:-1], _XK_HALF[::-1]])
GK_WEIGHTS = np.concatenate([_WK_HALF[:-1], _WK_HALF[::-1]])
# Gauss weights sit on every other Kronrod node (the odd-indexed ones).
G_WEIGHTS = np.zeros(15)
G_WEIGHTS[1:14:2] = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])

_EPS = np.finfo(float).eps


class QuadOutcome(NamedTuple):
    value: complex
    abs_error: float
    evaluations: int
    converged: bool


def _panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float):
    """One GK-15 panel on [a, b]; returns (K15, error, resabs)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    t = mid + half * GK_NODES
    with np.errstate(all="ignore"):
        y = np.asarray(f(t), dtype=complex)
    if not np.all(np.isfinite(y)):
        bad = t[~np.isfinite(y)][0]
        raise DivcalcError(f"non-finite integrand sample at parameter {bad!r}")
    k15 = half * np.sum(GK_WEIGHTS * y)
    g7 = half * np.sum(G_WEIGHTS * y)
    resabs = abs(half) * float(np.sum(GK_WEIGHTS * np.abs(y)))
    resasc = abs(half) * float(np.sum(GK_WEIGHTS * np.abs(y - k15 / (b - a))))
    raw = abs(k15 - g7)
    if resasc > 0.0 and raw > 0.0:
        err = resasc * min(1.0, (200.0 * raw / resasc) ** 1.5)
    else:
        err = raw
    err = max(err, 50.0 * _EPS * resabs)
    return k15, err, resabs


def adaptive_quadrature(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float,
    max_panels: int = 2048,
) -> QuadOutcome:
    """Adaptively integrate a vectorised complex integrand over the real interval [a, b].

    Bisects the panel with the largest error estimate until the summed estimate
    drops below the absolute tolerance. Never raises on slow convergence: the
    ``converged`` flag reports whether the tolerance was met.
    """
    if a == b:
        return QuadOutcome(0j, 0.0, 0, True)
    value, err, _ = _panel(f, a, b)
    heap = [(-err, 0, a, b, value, err)]
    count = 1
    total_err = err
    while total_err > tol and count < max_panels:
        _, _, pa, pb, pval, perr = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        if mid <= pa or mid >= pb:
            # interval exhausted at machine resolution
            heapq.heappush(heap, (0.0, count, pa, pb, pval, perr))
            break
        v1, e1, _ = _panel(f, pa, mid)
        v2, e2, _ = _panel(f, mid, pb)
        total_err += e1 + e2 - perr
        heapq.heappush(heap, (-e1, count, pa, mid, v1, e1))
        count += 1
        heapq.heappush(heap, (-e2, count, mid, pb, v2, e2))
        count += 1
    # deterministic summation order: sort panels by left endpoint
    panels = sorted(heap, key=lambda item: item[2])
    value = complex(sum(p[4] for p in panels))
    total_err = float(sum(p[5] for p in panels))
    return QuadOutcome(value, total_err, 15 * count, total_err <= tol)


class Extrapolation(NamedTuple):
    value: complex
    abs_error: float
    converged: bool


def neville_at_zero(xs: Sequence[float], ys: Sequence[complex], tol: float) -> Extrapolation:
    """Polynomial extrapolation of samples (x_j, y_j) to x = 0.

    ``xs`` must be positive and strictly decreasing. The error estimate is the
    last change along the Neville diagonal; ``converged`` reports whether two
    consecutive diagonal updates fell below the tolerance.
    """
    n = len(xs)
    if n == 0:
        raise ValueError("empty extrapolation sample")
    t = [complex(y) for y in ys]
    best = t[0]
    best_err = float("inf")
    small_steps = 0
    converged = False
    for k in range(1, n):
        for j in range(n - 1, k - 1, -1):
            num = xs[j] * t[j - 1] - xs[j - k] * t[j]
            t[j] = num / (xs[j] - xs[j - k])
        step = abs(t[n - 1] - best)
        best = t[n - 1]
        if step <= best_err or k <= 2:
            best_err = step
        small_steps = small_steps + 1 if step <= tol else 0
        if small_steps >= 2:
            converged = True
    if n == 1:
        return Extrapolation(best, float("inf"), False)
    return Extrapolation(best, best_err, converged or best_err <= tol)
