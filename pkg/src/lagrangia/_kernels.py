"""Numeric kernels for the multilinear form: evaluation, gradient, ascent.

Two interchangeable backends. The default compiles the hot loops with
numba; setting LAGRANGIA_NO_NUMBA=1 (or running without numba installed)
selects a pure-numpy path instead. Both are importable side by side for
equivalence tests and benchmarks; the module-level names eval_poly,
link_grad, ascent_loop point at the active backend.

Conventions: x is a float64 weight vector, edges an (m, r) int64 array
of 0-based vertex indices. The ascent loop implements the growth
transform x_i <- x_i * g_i / sum_j x_j g_j, monotone nondecreasing for
nonnegative-coefficient homogeneous forms; it reports the worst
per-iteration gain so callers can assert monotonicity held.
"""

from __future__ import annotations

import math
import os

import numpy as np

_FLAG = os.environ.get("LAGRANGIA_NO_NUMBA", "").strip()
NUMBA_DISABLED = _FLAG not in ("", "0")

try:
    if NUMBA_DISABLED:
        raise ImportError("disabled by LAGRANGIA_NO_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):  # noqa: ANN002 - decorator shim
        if args and callable(args[0]):
            return args[0]

        def deco(fn):
            return fn

        return deco


# --- pure-numpy backend ----------------------------------------------------

def eval_poly_numpy(x: np.ndarray, edges: np.ndarray) -> float:
    """Sum over edges of the product of member weights, compensated."""
    if edges.shape[0] == 0:
        return 0.0
    return math.fsum(np.prod(x[edges], axis=1))


def link_grad_numpy(x: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Gradient of the form: per vertex, the sum of leave-one-out products.

    Prefix/suffix products keep zero weights exact: dividing the full
    product back out would poison coordinates sitting at 0.
    """
    n = x.shape[0]
    out = np.zeros(n)
    if edges.shape[0] == 0:
        return out
    w = x[edges]
    r = w.shape[1]
    pre = np.ones_like(w)
    suf = np.ones_like(w)
    for j in range(1, r):
        pre[:, j] = pre[:, j - 1] * w[:, j - 1]
    for j in range(r - 2, -1, -1):
        suf[:, j] = suf[:, j + 1] * w[:, j + 1]
    np.add.at(out, edges, pre * suf)
    return out


def ascent_loop_numpy(
    x: np.ndarray, edges: np.ndarray, max_iters: int, tol: float
) -> tuple[np.ndarray, float, int, float]:
    """Growth-transform iterations; returns (x, value, iters, worst_gain)."""
    x = x.copy()
    val = eval_poly_numpy(x, edges)
    worst = 0.0
    it = 0
    while it < max_iters:
        g = link_grad_numpy(x, edges)
        xg = x * g
        denom = xg.sum()
        if denom <= 0.0:
            break
        x = xg / denom
        x /= x.sum()
        new_val = eval_poly_numpy(x, edges)
        gain = new_val - val
        worst = min(worst, gain)
        val = new_val
        it += 1
        if gain < tol:
            break
    return x, val, it, worst


# --- numba backend ---------------------------------------------------------
# Same arithmetic, explicit loops; compiled lazily on first call.

@njit(cache=True)
def eval_poly_jit(x, edges):
    s = 0.0
    c = 0.0
    for k in range(edges.shape[0]):
        p = 1.0
        for j in range(edges.shape[1]):
            p *= x[edges[k, j]]
        y = p - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


@njit(cache=True)
def link_grad_jit(x, edges):
    n = x.shape[0]
    r = edges.shape[1]
    out = np.zeros(n)
    pre = np.empty(r)
    suf = np.empty(r)
    for k in range(edges.shape[0]):
        pre[0] = 1.0
        for j in range(1, r):
            pre[j] = pre[j - 1] * x[edges[k, j - 1]]
        suf[r - 1] = 1.0
        for j in range(r - 2, -1, -1):
            suf[j] = suf[j + 1] * x[edges[k, j + 1]]
        for j in range(r):
            out[edges[k, j]] += pre[j] * suf[j]
    return out


@njit(cache=True)
def ascent_loop_jit(x, edges, max_iters, tol):
    x = x.copy()
    n = x.shape[0]
    val = eval_poly_jit(x, edges)
    worst = 0.0
    it = 0
    while it < max_iters:
        g = link_grad_jit(x, edges)
        denom = 0.0
        for i in range(n):
            denom += x[i] * g[i]
        if denom <= 0.0:
            break
        s = 0.0
        for i in range(n):
            x[i] = x[i] * g[i] / denom
            s += x[i]
        for i in range(n):
            x[i] /= s
        new_val = eval_poly_jit(x, edges)
        gain = new_val - val
        if gain < worst:
            worst = gain
        val = new_val
        it += 1
        if gain < tol:
            break
    return x, val, it, worst


if HAS_NUMBA:
    BACKEND = "numba"
    eval_poly = eval_poly_jit
    link_grad = link_grad_jit
    ascent_loop = ascent_loop_jit
else:
    BACKEND = "numpy"
    eval_poly = eval_poly_numpy
    link_grad = link_grad_numpy
    ascent_loop = ascent_loop_numpy
