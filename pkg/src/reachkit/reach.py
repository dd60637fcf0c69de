"""Plug-in reach estimator over point clouds with (exact or estimated) tangent frames.

For a cloud ``X`` with frames ``T``, the estimate is

    tau_hat(X, T) = min over ordered pairs x != y of ||y - x||^2 / (2 d(y - x, T_x))

Pairs whose offset lies in ``T_x`` (zero denominator) impose no constraint and
are skipped.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from reachkit import _kernels
from reachkit.errors import (
    AllPairsDegenerate,
    DimensionMismatch,
    IdenticalPoints,
    MissingFrames,
    NonPositiveReach,
)
from reachkit.linalg import ORTHO_TOL, as_frame, as_vector

BRUTE_FORCE_BELOW = 256
SEED_SUBSET = 256
GRID_AXES = 3
# Cell edge is inflated past the pruning radius so every unpruned pair sits in
# adjacent cells despite rounding in the cell keys.
_CELL_SLACK = 1e-6


@dataclass(eq=False)
class TangentCloud:
    """``n`` points in ``R^D``, optionally with one ``(d, D)`` frame per point."""

    points: np.ndarray
    frames: np.ndarray | None = None
    d: int | None = None

    def __post_init__(self):
        P = np.ascontiguousarray(np.asarray(self.points, dtype=float))
        if P.ndim != 2 or P.shape[0] < 1:
            raise DimensionMismatch(f"points must be an (n, D) array, got shape {P.shape}")
        if not np.all(np.isfinite(P)):
            raise ValueError("points have non-finite entries")
        if P.shape[0] > 1:
            uniq = np.unique(P, axis=0)
            if uniq.shape[0] != P.shape[0]:
                raise IdenticalPoints(
                    f"{P.shape[0] - uniq.shape[0]} duplicate point(s) in cloud"
                )
        self.points = P
        if self.frames is not None:
            F = np.ascontiguousarray(np.asarray(self.frames, dtype=float))
            if F.ndim != 3 or F.shape[0] != P.shape[0] or F.shape[2] != P.shape[1]:
                raise DimensionMismatch(
                    f"frames of shape {F.shape} do not match points {P.shape}"
                )
            if self.d is not None and F.shape[1] != self.d:
                raise DimensionMismatch(f"frames have d={F.shape[1]}, expected {self.d}")
            if not 1 <= F.shape[1] < F.shape[2]:
                raise DimensionMismatch(f"frames need 1 <= d < D, got {F.shape[1:]}")
            if not np.all(np.isfinite(F)):
                raise ValueError("frames have non-finite entries")
            gram = np.einsum("nai,nbi->nab", F, F)
            if np.max(np.abs(gram - np.eye(F.shape[1]))) > ORTHO_TOL:
                raise ValueError("frames are not orthonormal")
            self.frames = F
            self.d = F.shape[1]

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def D(self):
        return self.points.shape[1]

    def subset(self, indices):
        idx = np.asarray(indices, dtype=np.int64)
        frames = None if self.frames is None else self.frames[idx]
        return TangentCloud(self.points[idx], frames, self.d)

    def with_frames(self, frames):
        return TangentCloud(self.points, frames, None)


@dataclass(frozen=True)
class ReachReport:
    tau_hat: float
    argmin_pair: tuple
    pairs_evaluated: int
    pairs_pruned: int
    skipped_degenerate: int

    def to_dict(self):
        return {
            "tau_hat": self.tau_hat,
            "argmin_pair": list(self.argmin_pair),
            "pairs_evaluated": self.pairs_evaluated,
            "pairs_pruned": self.pairs_pruned,
            "skipped_degenerate": self.skipped_degenerate,
        }


def pair_ratio(x, T_x, y):
    """Radius of the ball tangent to ``T_x`` at ``x`` passing through ``y``.

    Returns ``math.inf`` when ``y - x`` is (numerically) tangent, i.e. the
    pair constrains nothing.
    """
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    F = as_frame(T_x)
    if x.shape != y.shape or F.shape[1] != x.shape[0]:
        raise DimensionMismatch("x, y and T_x must live in the same ambient space")
    if np.array_equal(x, y):
        raise IdenticalPoints("pair_ratio needs x != y")
    pts = np.ascontiguousarray(np.stack([x, y]))
    frames = np.ascontiguousarray(np.stack([F, F]))
    return float(_kernels.pair_ratio_kernel(pts, frames, 0, 1))


def _require_frames(cloud):
    if cloud.frames is None:
        raise MissingFrames("reach estimation needs one tangent frame per point")
    if cloud.n < 2:
        raise AllPairsDegenerate("need at least two points")


def _finish(n, best, bi, bj, n_eval, n_degen):
    if bi < 0:
        raise AllPairsDegenerate("every ordered pair is tangential; no finite ratio")
    total = n * (n - 1)
    return ReachReport(
        tau_hat=float(best),
        argmin_pair=(int(bi), int(bj)),
        pairs_evaluated=int(n_eval),
        pairs_pruned=int(total - n_eval - n_degen),
        skipped_degenerate=int(n_degen),
    )


def estimate_reach_bruteforce(cloud):
    """Reference double loop over all ordered pairs, no pruning."""
    _require_frames(cloud)
    idx = np.arange(cloud.n, dtype=np.int64)
    best, bi, bj, n_eval, n_degen = _kernels.scan_pairs(
        cloud.points, cloud.frames, idx, idx, math.inf, False
    )
    return _finish(cloud.n, best, bi, bj, n_eval, n_degen)


def _better(r, i, j, best, bi, bj):
    return r < best or (r == best and (i, j) < (bi, bj))


def estimate_reach(cloud):
    """Pruned scan equal to :func:`estimate_reach_bruteforce` on ``tau_hat`` and argmin.

    Every pair satisfies ratio >= ||y - x|| / 2, so only pairs closer than
    twice the running minimum are examined. Candidates come from a uniform
    hash grid (cell edge = 2 x running minimum) on up to three coordinates of
    largest spread; the grid is rebuilt when the minimum halves.
    """
    _require_frames(cloud)
    n = cloud.n
    if n < BRUTE_FORCE_BELOW:
        return estimate_reach_bruteforce(cloud)
    P, F = cloud.points, cloud.frames

    # Upper bound from an evenly spaced subset: a subset never underestimates.
    sub = np.unique(np.linspace(0, n - 1, SEED_SUBSET).astype(np.int64))
    bound = _kernels.scan_pairs(P, F, sub, sub, math.inf, False)[0]
    if not math.isfinite(bound):
        return estimate_reach_bruteforce(cloud)

    spread = P.max(axis=0) - P.min(axis=0)
    axes = np.argsort(-spread, kind="stable")[: min(GRID_AXES, P.shape[1])]
    Q = P[:, axes]
    lo = Q.min(axis=0)

    best, bi, bj = math.inf, -1, -1
    n_eval = n_degen = 0
    pending = np.ones(n, dtype=bool)
    while pending.any():
        running = min(bound, best)
        cell = 2.0 * running * (1.0 + _CELL_SLACK)
        keys = np.floor((Q - lo) / cell).astype(np.int64)
        uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        order = np.argsort(inverse, kind="stable")
        starts = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
        members = {
            tuple(uniq[c]): order[starts[c] : starts[c + 1]] for c in range(len(uniq))
        }
        offsets = list(itertools.product((-1, 0, 1), repeat=len(axes)))
        rebuilt = False
        for c in range(len(uniq)):
            key = tuple(uniq[c])
            bases = members[key]
            bases = bases[pending[bases]]
            if bases.size == 0:
                continue
            neigh = [
                members.get(tuple(k + o for k, o in zip(key, off)))
                for off in offsets
            ]
            cands = np.concatenate([m for m in neigh if m is not None])
            r, i, j, ne, nd = _kernels.scan_pairs(
                P, F, bases, cands, min(bound, best), True
            )
            n_eval += ne
            n_degen += nd
            pending[bases] = False
            if i >= 0 and _better(r, i, j, best, bi, bj):
                best, bi, bj = r, i, j
            if 2.0 * min(bound, best) < 0.5 * cell:
                rebuilt = True
                break
        if not rebuilt:
            break
    return _finish(n, best, bi, bj, n_eval, n_degen)


def farthest_point_sampling(points, epsilon):
    """Greedy farthest-point subsample, seeded at index 0.

    Stops once the farthest remaining point is closer than ``epsilon`` to the
    selection, so the output is epsilon-sparse and epsilon-covering. Ties go
    to the smallest index.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[0] < 1:
        raise DimensionMismatch(f"points must be an (n, D) array, got shape {P.shape}")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    selected = [0]
    dist = _distances_to(P, 0)
    while True:
        far = int(np.argmax(dist))
        if not dist[far] >= epsilon:
            break
        selected.append(far)
        dist = np.minimum(dist, _distances_to(P, far))
    return selected


def _distances_to(P, i):
    sq = np.zeros(P.shape[0])
    for k in range(P.shape[1]):
        sq += (P[:, k] - P[i, k]) ** 2
    return np.sqrt(sq)


def min_pairwise_distance(points):
    """Smallest distance between two distinct points of the cloud."""
    P = np.asarray(points, dtype=float)
    if P.shape[0] < 2:
        return math.inf
    dist, _ = cKDTree(P).query(P, k=2)
    return float(dist[:, 1].min())


def loss(tau, tau_prime, p=1.0):
    """``|1/tau - 1/tau_prime| ** p``."""
    if not (tau > 0 and tau_prime > 0):
        raise NonPositiveReach(f"reach values must be positive, got {tau}, {tau_prime}")
    if p < 1:
        raise ValueError(f"loss exponent must be >= 1, got {p}")
    return abs(1.0 / tau - 1.0 / tau_prime) ** p
