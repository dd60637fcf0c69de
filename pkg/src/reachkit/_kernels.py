"""Compiled inner loops.

Everything here is plain IEEE arithmetic (no fastmath), so the same pair
evaluated from any call site produces the same bits.
"""

import math

import numpy as np
from numba import njit

DEGENERATE_RTOL = 1e-14
# Pruning skips a pair only when ||y-x||^2 > (2 best)^2 (1 + PRUNE_SLACK); the
# slack dwarfs rounding in the ratio so pruning never drops a minimizer.
PRUNE_SLACK = 1e-9


@njit(cache=True, nogil=True)
def _pair(points, frames, i, j, diff, coef):
    """Return (squared distance, distance of y-x to T_x) for base i, target j."""
    D = points.shape[1]
    d = frames.shape[1]
    sq = 0.0
    for k in range(D):
        t = points[j, k] - points[i, k]
        diff[k] = t
        sq += t * t
    for a in range(d):
        c = 0.0
        for k in range(D):
            c += diff[k] * frames[i, a, k]
        coef[a] = c
    res2 = 0.0
    for k in range(D):
        t = diff[k]
        for a in range(d):
            t -= coef[a] * frames[i, a, k]
        res2 += t * t
    return sq, math.sqrt(res2)


@njit(cache=True, nogil=True)
def pair_ratio_kernel(points, frames, i, j):
    diff = np.empty(points.shape[1])
    coef = np.empty(frames.shape[1])
    sq, dist = _pair(points, frames, i, j, diff, coef)
    if dist <= DEGENERATE_RTOL * math.sqrt(sq):
        return math.inf
    return sq / (2.0 * dist)


@njit(cache=True, nogil=True)
def scan_pairs(points, frames, bases, cands, bound, prune):
    """Minimum Federer ratio over bases x cands (i != j).

    Returns (best, best_i, best_j, n_evaluated, n_degenerate). Ties on the
    ratio resolve to the lexicographically smallest (i, j).
    """
    diff = np.empty(points.shape[1])
    coef = np.empty(frames.shape[1])
    best = math.inf
    bi = -1
    bj = -1
    n_eval = 0
    n_degen = 0
    for a in range(bases.shape[0]):
        i = bases[a]
        for b in range(cands.shape[0]):
            j = cands[b]
            if i == j:
                continue
            if prune:
                lim = 2.0 * min(bound, best)
                sq = 0.0
                for k in range(points.shape[1]):
                    t = points[j, k] - points[i, k]
                    sq += t * t
                if sq > lim * lim * (1.0 + PRUNE_SLACK):
                    continue
            sq, dist = _pair(points, frames, i, j, diff, coef)
            if dist <= DEGENERATE_RTOL * math.sqrt(sq):
                n_degen += 1
                continue
            n_eval += 1
            r = sq / (2.0 * dist)
            if r < best or (r == best and (i < bi or (i == bi and j < bj))):
                best = r
                bi = i
                bj = j
    return best, bi, bj, n_eval, n_degen


@njit(cache=True, nogil=True)
def jacobi_eigh(A, tol, max_sweeps):
    """Cyclic Jacobi on a copy of symmetric A.

    Returns (eigenvalues, V, sweeps) with eigenvectors in the columns of V,
    unsorted.
    """
    n = A.shape[0]
    a = A.copy()
    V = np.eye(n)
    fro = 0.0
    for p in range(n):
        for q in range(n):
            fro += a[p, q] * a[p, q]
    fro = math.sqrt(fro)
    sweeps = 0
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += a[p, q] * a[p, q]
        if math.sqrt(off) <= tol * fro:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * vkq
                    V[k, q] = s * vkp + c * vkq
    w = np.empty(n)
    for p in range(n):
        w[p] = a[p, p]
    return w, V, sweeps


@njit(cache=True, nogil=True)
def jacobi_eigh_batch(As, tol, max_sweeps):
    m, n, _ = As.shape
    W = np.empty((m, n))
    Vs = np.empty((m, n, n))
    for i in range(m):
        w, V, _ = jacobi_eigh(As[i], tol, max_sweeps)
        W[i] = w
        Vs[i] = V
    return W, Vs
