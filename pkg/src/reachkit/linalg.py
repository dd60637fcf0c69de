"""Small dense vector and subspace primitives.

A frame is a ``(d, D)`` array whose rows are an orthonormal basis of a
``d``-dimensional linear subspace of ``R^D``. Batches of frames are
``(n, d, D)`` arrays.
"""

import numpy as np

from reachkit import _kernels
from reachkit.errors import DimensionMismatch, NotSymmetric, RankDeficient

ORTHO_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def as_vector(v, name="vector"):
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"{name} must be one-dimensional, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def as_frame(rows, tol=ORTHO_TOL):
    """Validate that ``rows`` is an orthonormal ``(d, D)`` frame with 1 <= d < D."""
    F = np.atleast_2d(np.asarray(rows, dtype=float))
    if F.ndim != 2:
        raise DimensionMismatch(f"frame must be 2-D, got shape {F.shape}")
    d, D = F.shape
    if not 1 <= d < D:
        raise DimensionMismatch(f"frame needs 1 <= d < D, got d={d}, D={D}")
    if not np.all(np.isfinite(F)):
        raise ValueError("frame has non-finite entries")
    if np.max(np.abs(F @ F.T - np.eye(d))) > tol:
        raise RankDeficient("frame rows are not orthonormal")
    return F


def orthonormalize(rows):
    """Gram-Schmidt with one re-orthogonalization pass.

    The returned rows span the same subspace as ``rows``.

    >>> orthonormalize([[2.0, 0.0, 0.0]])
    array([[1., 0., 0.]])
    """
    A = np.atleast_2d(np.asarray(rows, dtype=float))
    if A.ndim != 2:
        raise DimensionMismatch(f"rows must be 2-D, got shape {A.shape}")
    d, D = A.shape
    if not np.all(np.isfinite(A)):
        raise ValueError("rows have non-finite entries")
    if d > D:
        raise RankDeficient(f"{d} vectors cannot be independent in R^{D}")
    gram_eigs, _ = symmetric_eigendecomposition(A @ A.T)
    if gram_eigs[-1] <= 1e-12:
        raise RankDeficient(
            f"rows are linearly dependent (Gram eigenvalue {gram_eigs[-1]:.3g})"
        )
    Q = np.zeros_like(A)
    for i in range(d):
        q = A[i].copy()
        for _ in range(2):
            for j in range(i):
                q -= (q @ Q[j]) * Q[j]
        Q[i] = q / np.linalg.norm(q)
    return Q


def orthonormalize_batch(rows):
    """Row-wise Gram-Schmidt (two passes) on an ``(n, d, D)`` stack.

    No rank checks; callers hand in bases known to be independent.
    """
    A = np.asarray(rows, dtype=float)
    Q = np.zeros_like(A)
    for i in range(A.shape[1]):
        q = A[:, i, :].copy()
        for _ in range(2):
            for j in range(i):
                q -= np.sum(q * Q[:, j, :], axis=1)[:, None] * Q[:, j, :]
        Q[:, i, :] = q / np.linalg.norm(q, axis=1)[:, None]
    return Q


def project(v, T):
    v = as_vector(v)
    T = np.atleast_2d(np.asarray(T, dtype=float))
    if T.shape[1] != v.shape[0]:
        raise DimensionMismatch(f"vector in R^{v.shape[0]} vs frame in R^{T.shape[1]}")
    return (T @ v) @ T


def distance_to_subspace(v, T):
    """Norm of the component of ``v`` orthogonal to ``span(T)``."""
    v = as_vector(v)
    T = np.atleast_2d(np.asarray(T, dtype=float))
    if T.shape[1] != v.shape[0]:
        raise DimensionMismatch(f"vector in R^{v.shape[0]} vs frame in R^{T.shape[1]}")
    return float(np.linalg.norm(v - (T @ v) @ T))


def projector(T):
    T = np.atleast_2d(np.asarray(T, dtype=float))
    return T.T @ T


def principal_angle_distance(U, V):
    """Operator norm of ``pi_U - pi_V``, i.e. the sine of the largest principal angle."""
    U = np.atleast_2d(np.asarray(U, dtype=float))
    V = np.atleast_2d(np.asarray(V, dtype=float))
    if U.shape != V.shape:
        raise DimensionMismatch(f"frames of shape {U.shape} and {V.shape}")
    P = projector(U) - projector(V)
    P = 0.5 * (P + P.T)
    w, _ = symmetric_eigendecomposition(P)
    return float(min(1.0, max(abs(w[0]), abs(w[-1]))))


def principal_angle_distance_batch(U, V):
    """Vectorized :func:`principal_angle_distance` over ``(n, d, D)`` stacks."""
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    if U.shape != V.shape:
        raise DimensionMismatch(f"frame stacks of shape {U.shape} and {V.shape}")
    P = np.einsum("nai,naj->nij", U, U) - np.einsum("nai,naj->nij", V, V)
    w = np.linalg.eigvalsh(P)
    return np.minimum(1.0, np.max(np.abs(w), axis=1))


def _check_symmetric(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if A.size and np.max(np.abs(A - A.T)) > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric")
    return A


def _sort_desc(w, V):
    # stable sort on -w keeps the original index order among equal eigenvalues
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def symmetric_eigendecomposition(A):
    """Eigenvalues (descending) and eigenvectors (columns) of symmetric ``A``.

    Cyclic Jacobi, stopping once the off-diagonal Frobenius norm drops
    below ``1e-14 * ||A||_F`` or after 100 sweeps.
    """
    A = _check_symmetric(A)
    w, V, _ = _kernels.jacobi_eigh(np.ascontiguousarray(A), JACOBI_TOL, JACOBI_MAX_SWEEPS)
    return _sort_desc(w, V)


def symmetric_eigendecomposition_batch(As):
    As = np.ascontiguousarray(np.asarray(As, dtype=float))
    W, Vs = _kernels.jacobi_eigh_batch(As, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    order = np.argsort(-W, axis=1, kind="stable")
    W = np.take_along_axis(W, order, axis=1)
    Vs = np.take_along_axis(Vs, order[:, None, :], axis=2)
    return W, Vs


def rotation_in_plane(a, b, angle):
    """Rotation of ``R^D`` by ``angle`` in the plane spanned by orthonormal ``a``, ``b``.

    Sends ``a`` to ``cos(angle) a + sin(angle) b``; identity on the complement.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    return (
        np.eye(a.shape[0])
        + (c - 1.0) * (np.outer(a, a) + np.outer(b, b))
        + s * (np.outer(b, a) - np.outer(a, b))
    )


def random_rotation(D, rng):
    """Haar-distributed element of SO(D)."""
    Q, R = np.linalg.qr(rng.standard_normal((D, D)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q
