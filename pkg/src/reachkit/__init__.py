"""Reach estimation for sampled submanifolds of Euclidean space."""

from reachkit.errors import (
    AllPairsDegenerate,
    DegenerateFit,
    DimensionMismatch,
    IdenticalPoints,
    InvalidSpec,
    MissingFrames,
    NonPositiveReach,
    NotSymmetric,
    RankDeficient,
    ReachkitError,
    UnsupportedSpec,
)
from reachkit.manifolds import (
    BumpedSphere,
    Circle,
    Ellipse,
    ReachBounds,
    ReachCase,
    Sphere,
    Torus,
    spec_from_json,
    spec_to_json,
)
from reachkit.reach import (
    ReachReport,
    TangentCloud,
    estimate_reach,
    estimate_reach_bruteforce,
    farthest_point_sampling,
    loss,
    pair_ratio,
)
from reachkit.tangents import PcaConfig, estimate_all_tangents, local_pca_tangent

__version__ = "0.1.0"

__all__ = [
    "AllPairsDegenerate",
    "BumpedSphere",
    "Circle",
    "DegenerateFit",
    "DimensionMismatch",
    "Ellipse",
    "IdenticalPoints",
    "InvalidSpec",
    "MissingFrames",
    "NonPositiveReach",
    "NotSymmetric",
    "PcaConfig",
    "RankDeficient",
    "ReachBounds",
    "ReachCase",
    "ReachReport",
    "ReachkitError",
    "Sphere",
    "TangentCloud",
    "Torus",
    "UnsupportedSpec",
    "estimate_all_tangents",
    "estimate_reach",
    "estimate_reach_bruteforce",
    "farthest_point_sampling",
    "local_pca_tangent",
    "loss",
    "pair_ratio",
    "spec_from_json",
    "spec_to_json",
]
