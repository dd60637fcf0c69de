"""Hand-computed examples and small invariants across modules."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from reachkit.errors import AllPairsDegenerate
from reachkit.experiments import max_curvature
from reachkit.linalg import (
    distance_to_subspace,
    orthonormalize,
    principal_angle_distance,
    symmetric_eigendecomposition,
)
from reachkit.manifolds import BumpedSphere, Circle, ReachCase, Sphere, Torus
from reachkit.reach import (
    TangentCloud,
    estimate_reach,
    estimate_reach_bruteforce,
    farthest_point_sampling,
    loss,
    pair_ratio,
)
from reachkit.tangents import PcaConfig, estimate_all_tangents, k_nearest, local_pca_tangent, tangent_error

S2 = 1 / math.sqrt(2)


# --- linear algebra ---


def test_orthonormalize_hand_examples():
    np.testing.assert_array_equal(orthonormalize([[1.0, 0.0], [0.0, 1.0]]), np.eye(2))
    np.testing.assert_allclose(orthonormalize([[1.0, 1.0, 0.0], [0.0, 1.0, 0.0]]),
                               [[S2, S2, 0.0], [-S2, S2, 0.0]], atol=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_orthonormalize_is_idempotent(d, extra, seed):
    Q = orthonormalize(np.random.default_rng(seed).standard_normal((d, d + extra)))
    np.testing.assert_allclose(orthonormalize(Q), Q, atol=1e-12)


def test_distance_to_subspace_examples():
    T = [[1.0, 0.0]]
    assert distance_to_subspace([3.0, 0.0], T) == 0.0
    assert distance_to_subspace([0.0, 2.5], T) == 2.5
    assert distance_to_subspace([1.0, 1.0], T) == 1.0


def test_principal_angle_thirty_degrees():
    c, s = math.cos(math.radians(30)), math.sin(math.radians(30))
    assert principal_angle_distance([[1.0, 0.0]], [[c, s]]) == pytest.approx(0.5, abs=1e-15)
    assert principal_angle_distance([[1.0, 0.0]], [[0.0, 1.0]]) == pytest.approx(1.0, abs=1e-15)


def test_eigendecomposition_hand_examples():
    w, V = symmetric_eigendecomposition(np.diag([3.0, 1.0]))
    np.testing.assert_array_equal(w, [3.0, 1.0])
    np.testing.assert_array_equal(np.abs(V), np.eye(2))
    A = np.array([[2.0, 1.0], [1.0, 2.0]])
    w, V = symmetric_eigendecomposition(A)
    np.testing.assert_allclose(w, [3.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(np.abs(V[:, 0]), [S2, S2], atol=1e-15)
    np.testing.assert_allclose(np.abs(V[:, 1]), [S2, S2], atol=1e-15)
    assert V[0, 1] * V[1, 1] < 0
    off = V.T @ A @ V - np.diag(w)
    assert np.max(np.abs(off)) <= 1e-10 * np.linalg.norm(A)


# --- reach estimator ---


def test_pair_ratio_hand_examples():
    assert pair_ratio([1.0, 0.0], [[0.0, 1.0]], [0.0, 1.0]) == pytest.approx(1.0, rel=1e-15)
    assert pair_ratio([0.0, 0.0], [[1.0, 0.0]], [0.0, 2.0]) == 1.0
    assert pair_ratio([0.0, 0.0], [[1.0, 0.0]], [1.0, 0.0]) == math.inf


def test_two_point_cloud():
    c = TangentCloud([[0.0, 0.0], [1.0, 1.0]], [[[1.0, 0.0]], [[1.0, 0.0]]])
    for fn in (estimate_reach, estimate_reach_bruteforce):
        assert fn(c).tau_hat == 1.0


def test_two_point_tangential_cloud_is_degenerate():
    c = TangentCloud([[0.0, 0.0], [1.0, 0.0]], [[[1.0, 0.0]], [[1.0, 0.0]]])
    for fn in (estimate_reach, estimate_reach_bruteforce):
        with pytest.raises(AllPairsDegenerate):
            fn(c)


def test_evenly_spaced_unit_circle():
    spec = Circle(1.0)
    t = np.linspace(0, 2 * np.pi, 100, endpoint=False)
    rep = estimate_reach(TangentCloud(spec.embed(t), spec.frames(t)))
    assert rep.tau_hat == pytest.approx(1.0, rel=1e-12)


def test_torus_2000_points():
    for seed in range(3):
        tau = estimate_reach(Torus(2.0, 0.5).sample(2000, seed)).tau_hat
        assert 0.5 * (1 - 1e-12) <= tau <= 0.6


@settings(max_examples=30, deadline=None)
@given(st.floats(1e-3, 1e3), st.integers(0, 2**32 - 1))
def test_scale_equivariance(s, seed):
    c = Torus(2.0, 0.5).sample(300, seed)
    scaled = TangentCloud(c.points * s, c.frames)
    assert estimate_reach(scaled).tau_hat == pytest.approx(s * estimate_reach(c).tau_hat, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_adding_a_tangential_pair_changes_nothing(seed):
    c = Sphere(2, 3, 1.0).sample(60, seed)
    base = estimate_reach_bruteforce(c)
    # two far-away points offset along their shared tangent plane
    extra = np.array([[10.0, 10.0, 10.0], [11.0, 10.0, 10.0]])
    frame = np.broadcast_to(np.eye(3)[:2], (2, 2, 3))
    grown = TangentCloud(np.concatenate([c.points, extra]), np.concatenate([c.frames, frame]))
    rep = estimate_reach_bruteforce(grown)
    assert rep.tau_hat == base.tau_hat
    assert rep.skipped_degenerate == base.skipped_degenerate + 2


def test_fps_examples():
    line = np.array([[0.0], [1.0], [2.0], [3.0]])
    assert farthest_point_sampling(line, 1.5) == [0, 3]
    assert farthest_point_sampling(line, 0.5) == [0, 3, 1, 2]
    assert farthest_point_sampling(line, 4.0) == [0]


def test_loss_examples():
    assert loss(0.7, 0.7, 3.0) == 0.0
    assert loss(1.0, 2.0, 1.0) == 0.5
    assert loss(1.0, 2.0, 2.0) == 0.25


# --- models ---


def test_reach_examples():
    assert Sphere(2, 3, 2.0).true_reach() == 2.0
    assert BumpedSphere(2, 3, 1.0, 0.2, 0.02).true_reach().upper == pytest.approx(2.0 / 3.0, rel=1e-15)


def test_torus_attains_its_reach_both_ways():
    # thin torus: tube circles have curvature 1/r and opposite tube points form
    # a bottleneck around the core circle; fat torus: the inner equator has
    # curvature 1/(R - r) and its antipodal points straddle the axis
    for r in (0.5, 1.0, 1.3):
        assert Torus(2.0, r).reach_case() is ReachCase.BOTH
    h = 1e-4
    fat = Torus(2.0, 1.3)
    inner = max_curvature(lambda t: fat.geodesic((math.pi, 0.0), "v+", t), 2 * math.pi * 0.7, h)
    assert inner == pytest.approx(1 / fat.true_reach(), rel=1e-6)
    thin = Torus(2.0, 0.5)
    a, b = thin.embed(np.array([[0.3, 1.0], [0.3 + math.pi, 1.0]]))
    assert np.linalg.norm(a - b) == pytest.approx(2 * thin.true_reach(), rel=1e-15)


def test_sphere_sample_mean_is_near_the_center():
    p = Sphere(2, 3, 1.0).sample(100_000, 1).points
    assert np.linalg.norm(p.mean(axis=0)) < 0.02


@pytest.mark.parametrize("spec", [Circle(1.0), Sphere(2, 3, 1.0)], ids=["circle", "sphere"])
def test_angle_marginals_pass_chi_square(spec):
    p = spec.sample(100_000, 2).points
    counts, _ = np.histogram(np.arctan2(p[:, 1], p[:, 0]), bins=36, range=(-np.pi, np.pi))
    assert stats.chisquare(counts).pvalue > 1e-3
    if spec.d == 2:
        counts, _ = np.histogram(p[:, 2], bins=36, range=(-1, 1))
        assert stats.chisquare(counts).pvalue > 1e-3


def test_tangent_at_examples():
    np.testing.assert_allclose(np.abs(Circle(2.0).tangent_at(0.0)), [[0.0, 1.0]], atol=1e-16)
    T = Torus(2.0, 0.5).tangent_at([0.0, 0.0])
    np.testing.assert_allclose(T, [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], atol=1e-16)
    bumped = BumpedSphere(2, 3, 1.0, 0.2, 0.02)
    u = np.array([1.0, 0.0, 0.0])  # far from the bump at the top of the sphere
    np.testing.assert_allclose(bumped.tangent_at(u), bumped.base_sphere.tangent_at(u), atol=1e-15)


def test_bump_map_examples():
    spec = BumpedSphere(2, 3, 1.0, 0.2, 0.02)
    np.testing.assert_allclose(spec.diffeo(np.zeros(3)), spec.eta * spec.vertical, atol=1e-18)
    np.testing.assert_array_equal(spec.jacobian(np.zeros(3)), np.eye(3))
    np.testing.assert_array_equal(spec.jacobian(np.array([0.3, 0.0, 0.0])), np.eye(3))
    rng = np.random.default_rng(4)
    x = rng.uniform(-0.25, 0.25, (1000, 3))
    np.testing.assert_allclose(spec.inverse_diffeo(spec.diffeo(x)), x, atol=1e-10)
    h = 1e-6 * spec.ell
    fd = np.stack([(spec.diffeo(x + h * e) - spec.diffeo(x - h * e)) / (2 * h) for e in np.eye(3)], axis=-1)
    assert np.max(np.abs(fd - spec.jacobian(x))) < 1e-6


def test_bump_at_unit_radius():
    from reachkit.manifolds import bump_phi

    assert bump_phi([0.0, 1.0, 0.0]) == 0.0
    assert bump_phi([0.5, 0.0]) == pytest.approx(0.716531, abs=1e-6)


def test_geodesic_curvature_examples():
    h = 1e-4
    unit = Sphere(2, 3, 1.0)
    curve = lambda t: unit.geodesic(np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), t)  # noqa: E731
    assert np.allclose(np.linalg.norm(curve(np.linspace(0, 7, 50)), axis=-1), 1.0, atol=1e-15)
    assert max_curvature(curve, 2 * np.pi, h) == pytest.approx(1.0, abs=1e-6)
    torus = Torus(2.0, 0.5)
    tube = lambda t: torus.geodesic((0.0, 0.3), "u+", t)  # noqa: E731
    assert max_curvature(tube, 2 * np.pi * 0.5, h) == pytest.approx(2.0, abs=1e-6)


# --- tangents ---


def test_k_nearest_examples():
    line = np.array([[0.0], [1.0], [2.0], [3.0]])
    assert set(k_nearest(line, 0, 2)) == {1, 2}
    assert sorted(k_nearest(line, 2, 3)) == [0, 1, 3]


def test_k_nearest_matches_sorting():
    rng = np.random.default_rng(7)
    for _ in range(100):
        P = rng.standard_normal((30, 3))
        q = int(rng.integers(30))
        d = np.linalg.norm(P - P[q], axis=1)
        order = [i for i in np.lexsort((np.arange(30), d)) if i != q]
        assert k_nearest(P, q, 5) == order[:5]


def test_pca_recovers_a_line():
    t = np.linspace(-1, 1, 40)
    direction = np.array([1.0, 2.0, 2.0]) / 3.0
    P = t[:, None] * direction
    T = local_pca_tangent(P, 5, PcaConfig(1))
    assert principal_angle_distance(T, [direction]) < 1e-10


def test_pca_on_a_dense_circle():
    c = Circle(1.0).sample(4096, 0)
    err = tangent_error(estimate_all_tangents(c.points, PcaConfig(1)), c.frames)
    assert math.asin(err) <= 0.1


def test_tangent_error_examples():
    F = np.array([[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]])
    swapped = np.array([[[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]]])
    assert tangent_error(F, swapped) == pytest.approx(0.0, abs=1e-15)
    c, s = math.cos(math.radians(30)), math.sin(math.radians(30))
    assert tangent_error(np.array([[[1.0, 0.0]]]), np.array([[[c, s]]])) == pytest.approx(0.5, abs=1e-15)
