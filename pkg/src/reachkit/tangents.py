"""Local-PCA tangent space estimation for clouds observed without frames."""

import math
from dataclasses import dataclass

import numpy as np

from reachkit.errors import DimensionMismatch, RankDeficient
from reachkit.linalg import (
    orthonormalize,
    orthonormalize_batch,
    principal_angle_distance_batch,
    symmetric_eigendecomposition,
    symmetric_eigendecomposition_batch,
)

_QUERY_BLOCK = 512


def default_k(n, d):
    """``max(2d + 2, ceil(3 log n))``."""
    return max(2 * d + 2, math.ceil(3.0 * math.log(n)))


@dataclass(frozen=True)
class PcaConfig:
    d: int
    k: int | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("intrinsic dimension must be >= 1")
        if self.k is not None and self.k < self.d + 1:
            raise ValueError(f"k={self.k} must be at least d + 1 = {self.d + 1}")

    def resolve_k(self, n):
        return self.k if self.k is not None else default_k(n, self.d)


def _sq_dists(P, queries):
    out = np.zeros((len(queries), P.shape[0]))
    for c in range(P.shape[1]):
        out += (P[None, :, c] - P[queries, c][:, None]) ** 2
    return out


def _knn_rows(P, queries, k):
    """Exact k nearest neighbours of each query (self excluded), ties by index."""
    sq = _sq_dists(P, queries)
    sq[np.arange(len(queries)), queries] = np.inf
    kth = np.partition(sq, k - 1, axis=1)[:, k - 1]
    rows = []
    for r in range(len(queries)):
        cand = np.flatnonzero(sq[r] <= kth[r])
        order = np.lexsort((cand, sq[r, cand]))
        rows.append(cand[order[:k]])
    return np.array(rows, dtype=np.int64).reshape(len(queries), k)


def _check_points(points):
    P = np.asarray(points, dtype=float)
    if P.ndim != 2:
        raise DimensionMismatch(f"points must be an (n, D) array, got shape {P.shape}")
    return P


def k_nearest(points, query_index, k):
    P = _check_points(points)
    if not 1 <= k <= P.shape[0] - 1:
        raise ValueError(f"k must be in [1, n-1], got {k}")
    return _knn_rows(P, np.array([query_index]), k)[0].tolist()


def all_k_nearest(points, k):
    P = _check_points(points)
    if not 1 <= k <= P.shape[0] - 1:
        raise ValueError(f"k must be in [1, n-1], got {k}")
    n = P.shape[0]
    blocks = [
        _knn_rows(P, np.arange(s, min(n, s + _QUERY_BLOCK)), k)
        for s in range(0, n, _QUERY_BLOCK)
    ]
    return np.concatenate(blocks)


def _pca_frame(eigvals, eigvecs, d):
    trace = float(np.sum(eigvals))
    if not eigvals[d - 1] > 1e-12 * trace:
        raise RankDeficient(
            f"neighbourhood spans fewer than {d} directions "
            f"(eigenvalue {eigvals[d - 1]:.3g}, trace {trace:.3g})"
        )
    return eigvecs[:, :d].T


def local_pca_tangent(points, index, config):
    """Top-``d`` principal directions of the mean-centred ``k``-neighbourhood."""
    P = _check_points(points)
    k = config.resolve_k(P.shape[0])
    if P.shape[0] < k + 1:
        raise ValueError(f"need at least k+1={k + 1} points, got {P.shape[0]}")
    nbrs = P[k_nearest(P, index, k)]
    centred = nbrs - nbrs.mean(axis=0)
    w, V = symmetric_eigendecomposition(centred.T @ centred / k)
    return orthonormalize(_pca_frame(w, V, config.d))


def estimate_all_tangents(points, config):
    """:func:`local_pca_tangent` at every point, batched; returns ``(n, d, D)``."""
    P = _check_points(points)
    n = P.shape[0]
    k = config.resolve_k(n)
    if n < k + 1:
        raise ValueError(f"need at least k+1={k + 1} points, got {n}")
    if config.d >= P.shape[1]:
        raise DimensionMismatch(f"d={config.d} must be below the ambient D={P.shape[1]}")
    nbrs = P[all_k_nearest(P, k)]
    centred = nbrs - nbrs.mean(axis=1, keepdims=True)
    cov = np.einsum("nki,nkj->nij", centred, centred) / k
    cov = 0.5 * (cov + np.transpose(cov, (0, 2, 1)))
    W, V = symmetric_eigendecomposition_batch(cov)
    trace = W.sum(axis=1)
    bad = ~(W[:, config.d - 1] > 1e-12 * trace)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise RankDeficient(f"neighbourhood of point {i} spans fewer than {config.d} directions")
    return orthonormalize_batch(np.transpose(V[:, :, : config.d], (0, 2, 1)))


def tangent_error(estimated, truth):
    """Largest principal-angle distance between matching frames."""
    est = np.asarray(estimated, dtype=float)
    ref = np.asarray(truth, dtype=float)
    if est.shape != ref.shape:
        raise DimensionMismatch(f"frame stacks {est.shape} vs {ref.shape}")
    if est.shape[0] == 0:
        return 0.0
    return float(np.max(principal_angle_distance_batch(est, ref)))
