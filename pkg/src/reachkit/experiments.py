"""Monte-Carlo convergence runs, rate fitting and deterministic bound probes.

Every trial draws its own generator from ``mix_seed(seed, n, trial)`` so a
result table depends only on the configuration, never on thread count or
completion order.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from reachkit._parallel import ordered_map
from reachkit.errors import AllPairsDegenerate, DegenerateFit, InvalidSpec, UnsupportedSpec
from reachkit.manifolds import (
    BumpedSphere,
    Circle,
    Ellipse,
    ReachBounds,
    ReachCase,
    Sphere,
    Torus,
    bump_phi,
    bump_phi_gradient,
    spec_from_dict,
)
from reachkit.reach import (
    TangentCloud,
    estimate_reach,
    estimate_reach_bruteforce,
    farthest_point_sampling,
    loss,
    min_pairwise_distance,
)
from reachkit.tangents import PcaConfig, estimate_all_tangents, tangent_error

FORMAT = "reachkit/1"
_MASK = (1 << 64) - 1


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def mix_seed(*parts):
    """Fold integers into one 64-bit seed; every step fully avalanches."""
    h = 0
    for p in parts:
        h = splitmix64(h ^ (int(p) & _MASK))
    return h


# --- tangent modes ---------------------------------------------------------


@dataclass(frozen=True)
class Exact:
    def to_dict(self):
        return {"kind": "exact"}


@dataclass(frozen=True)
class Pca:
    config: PcaConfig

    def to_dict(self):
        return {"kind": "pca", "d": self.config.d, "k": self.config.k}


@dataclass(frozen=True)
class Perturbed:
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError("perturbation angle must lie in [0, pi/2]")

    def to_dict(self):
        return {"kind": "perturbed", "theta": self.theta}


def tangent_mode_from_dict(obj):
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "exact":
        return Exact()
    if kind == "pca":
        return Pca(PcaConfig(int(obj["d"]), None if obj.get("k") is None else int(obj["k"])))
    if kind == "perturbed":
        return Perturbed(float(obj["theta"]))
    raise InvalidSpec(f"unknown tangent mode {obj!r}")


def perturb_frames(frames, theta, rng):
    """Tilt each frame by an angle drawn from [0, theta].

    The rotation acts in the plane of one randomly chosen frame vector and a
    random unit normal, so the largest principal angle moved equals the
    drawn angle.
    """
    F = np.asarray(frames, dtype=float)
    n, d, D = F.shape
    pick = rng.integers(0, d, n)
    a = F[np.arange(n), pick]
    w = rng.standard_normal((n, D))
    for _ in range(2):
        w -= np.einsum("na,nak->nk", np.einsum("nk,nak->na", w, F), F)
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    angle = rng.uniform(0.0, theta, n)
    c, s = np.cos(angle)[:, None], np.sin(angle)[:, None]
    fa = np.einsum("nak,nk->na", F, a)
    fw = np.einsum("nak,nk->na", F, w)
    # R f = f + (c - 1)(a<a,f> + w<w,f>) + s(w<a,f> - a<w,f>)
    return (
        F
        + (c - 1.0)[:, :, None] * (fa[:, :, None] * a[:, None, :] + fw[:, :, None] * w[:, None, :])
        + s[:, :, None] * (fa[:, :, None] * w[:, None, :] - fw[:, :, None] * a[:, None, :])
    )


# --- model constants ---------------------------------------------------------


@dataclass(frozen=True)
class ModelClassParams:
    tau_min: float
    L: float
    f_min: float
    p: float

    def __post_init__(self):
        if not (self.tau_min > 0 and self.L > 0 and self.f_min > 0 and self.p >= 1):
            raise ValueError("model constants must be positive and p >= 1")

    def to_dict(self):
        return {
            "tau_min": self.tau_min,
            "L": None if math.isinf(self.L) else self.L,
            "f_min": self.f_min,
            "p": self.p,
        }


def _sphere_area(d, R):
    return 2.0 * math.pi ** ((d + 1) / 2) / math.gamma((d + 1) / 2) * R**d


def surface_volume(spec):
    if isinstance(spec, Circle):
        return 2.0 * math.pi * spec.R
    if isinstance(spec, Ellipse):
        return spec.perimeter
    if isinstance(spec, Torus):
        return 4.0 * math.pi**2 * spec.R * spec.r
    if isinstance(spec, BumpedSphere):
        # area factor of the bump is at most (1 + 3 eta / ell)^d
        return _sphere_area(spec.d, spec.R) * (1.0 + 3.0 * spec.eta / spec.ell) ** spec.d
    if isinstance(spec, Sphere):
        return _sphere_area(spec.d, spec.R)
    raise UnsupportedSpec(f"no volume formula for {type(spec).__name__}")


def _reference_reach(spec):
    tau = spec.true_reach()
    if isinstance(tau, ReachBounds):
        return tau.upper, True
    return tau, False


def max_third_derivative(curve, period, h, grid=1000):
    """Largest ``||gamma'''||`` over a grid, by a five-point central difference."""
    t = np.linspace(0.0, period, grid, endpoint=False)
    g = (curve(t + 2 * h) - 2 * curve(t + h) + 2 * curve(t - h) - curve(t - 2 * h)) / (2 * h**3)
    return float(np.max(np.linalg.norm(g, axis=-1)))


def max_curvature(curve, period, h, grid=1000):
    """Largest ``||gamma''||`` over a grid, by a central second difference."""
    t = np.linspace(0.0, period, grid, endpoint=False)
    g = (curve(t + h) - 2 * curve(t) + curve(t - h)) / h**2
    return float(np.max(np.linalg.norm(g, axis=-1)))


def model_class_params(spec, p=1.0):
    tau, _ = _reference_reach(spec)
    if isinstance(spec, BumpedSphere):
        L = math.inf
    else:
        curves = spec.closed_form_curves(np.random.default_rng(0))
        L = max(max_third_derivative(c, per, 1e-2 * tau) for _, c, per in curves)
    return ModelClassParams(tau, L, 1.0 / surface_volume(spec), float(p))


# --- trials ------------------------------------------------------------------


@dataclass(frozen=True)
class TrialResult:
    n: int
    trial: int
    seed: int
    tau_hat: float
    loss: float
    n_used: int
    upper_bound_only: bool = False
    delta: float | None = None
    tangent_error: float | None = None
    exact_tau_hat: float | None = None
    implied_bound: float | None = None

    @property
    def implied_ok(self):
        """Tangent-stability inequality for this trial (``None`` for exact frames)."""
        if self.implied_bound is None:
            return None
        lhs = abs(_inv(self.exact_tau_hat) - _inv(self.tau_hat))
        return lhs <= self.implied_bound + 1e-9

    def to_dict(self):
        out = {
            "n": self.n,
            "trial": self.trial,
            "seed": self.seed,
            "tau_hat": self.tau_hat,
            "loss": self.loss,
            "n_used": self.n_used,
            "upper_bound_only": self.upper_bound_only,
        }
        if self.implied_bound is not None:
            out.update(
                delta=self.delta,
                tangent_error=self.tangent_error,
                exact_tau_hat=self.exact_tau_hat,
                implied_bound=self.implied_bound,
                implied_ok=self.implied_ok,
            )
        return out


def _inv(tau):
    return 0.0 if math.isinf(tau) else 1.0 / tau


def run_trial(spec, n, tangent_mode=Exact(), p=1.0, seed=0, sparsify_epsilon=None, trial=0):
    """Sample, optionally sparsify, attach frames, estimate and score one cloud.

    PCA frames are fitted on the full sample before sparsification. For
    models whose reach is only bounded above, the loss is taken against the
    upper bound and the result is flagged.
    """
    cloud = spec.sample(n, seed, with_frames=True)
    exact = cloud.frames
    if isinstance(tangent_mode, Pca):
        frames = estimate_all_tangents(cloud.points, tangent_mode.config)
    elif isinstance(tangent_mode, Perturbed):
        frames = perturb_frames(exact, tangent_mode.theta, np.random.default_rng(mix_seed(seed, 1)))
    else:
        frames = exact
    keep = None
    if sparsify_epsilon is not None:
        keep = np.asarray(farthest_point_sampling(cloud.points, sparsify_epsilon), dtype=np.int64)
    points = cloud.points if keep is None else cloud.points[keep]
    if keep is not None:
        frames, exact = frames[keep], exact[keep]
    used = TangentCloud(points, frames, spec.d)
    tau_hat = estimate_reach(used).tau_hat
    ref, bounds_only = _reference_reach(spec)
    extra = {}
    if not isinstance(tangent_mode, Exact):
        delta = min_pairwise_distance(points)
        err = tangent_error(frames, exact)
        extra = dict(
            delta=delta,
            tangent_error=err,
            exact_tau_hat=estimate_reach(TangentCloud(points, exact, spec.d)).tau_hat,
            implied_bound=2.0 * err / delta,
        )
    return TrialResult(
        n=int(n),
        trial=int(trial),
        seed=int(seed),
        tau_hat=tau_hat,
        loss=loss(ref, tau_hat, p),
        n_used=used.n,
        upper_bound_only=bounds_only,
        **extra,
    )


# --- experiments ---------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    spec: object
    n_grid: tuple
    trials: int = 1
    seed: int = 0
    tangent_mode: object = field(default_factory=Exact)
    p: float = 1.0
    sparsify_epsilon: float | None = None

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("n_grid must be non-empty and strictly ascending")
        if min(grid) < 2:
            raise ValueError("every n must be >= 2")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.p < 1:
            raise ValueError("loss exponent must be >= 1")
        object.__setattr__(self, "n_grid", grid)

    def to_dict(self):
        return {
            "format": FORMAT,
            "spec": self.spec.to_dict(),
            "n_grid": list(self.n_grid),
            "trials": self.trials,
            "seed": self.seed,
            "tangent_mode": self.tangent_mode.to_dict(),
            "p": self.p,
            "sparsify_epsilon": self.sparsify_epsilon,
        }

    @classmethod
    def from_dict(cls, obj):
        if not isinstance(obj, dict):
            raise InvalidSpec("experiment config must be a JSON object")
        if obj.get("format", FORMAT) != FORMAT:
            raise InvalidSpec(f"unsupported config format {obj.get('format')!r}")
        try:
            return cls(
                spec=spec_from_dict(obj["spec"]),
                n_grid=tuple(obj["n_grid"]),
                trials=int(obj.get("trials", 1)),
                seed=int(obj.get("seed", 0)),
                tangent_mode=tangent_mode_from_dict(obj.get("tangent_mode", {"kind": "exact"})),
                p=float(obj.get("p", 1.0)),
                sparsify_epsilon=obj.get("sparsify_epsilon"),
            )
        except KeyError as exc:
            raise InvalidSpec(f"experiment config is missing {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise InvalidSpec(str(exc)) from exc


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    r2: float

    def to_dict(self):
        return {"slope": self.slope, "intercept": self.intercept, "r2": self.r2}


def fit_rate(means):
    """Least-squares line through ``(log n, log mean_loss)``."""
    pts = [(float(n), float(m)) for n, m in means]
    if len(pts) < 3:
        raise ValueError("rate fit needs at least three points")
    if any(m <= 0 for _, m in pts):
        raise DegenerateFit("a mean loss is zero; the model is estimated exactly")
    x = np.log([n for n, _ in pts])
    y = np.log([m for _, m in pts])
    xc = x - x.mean()
    slope = float(xc @ (y - y.mean()) / (xc @ xc))
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (intercept + slope * x)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - float(resid @ resid) / ss_tot
    return RateFit(slope, intercept, r2)


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    trials: tuple
    rate_fit: RateFit | None
    exact_model: bool
    model_class: ModelClassParams

    def summary(self):
        out = []
        for n in self.config.n_grid:
            losses = np.array([t.loss for t in self.trials if t.n == n])
            q25, med, q75 = np.percentile(losses, [25, 50, 75])
            out.append(
                {"n": n, "mean": float(losses.mean()), "median": float(med),
                 "q25": float(q25), "q75": float(q75)}
            )
        return out

    def mean_loss(self, n):
        return next(s["mean"] for s in self.summary() if s["n"] == n)

    def to_dict(self):
        return {
            "format": FORMAT,
            "config": self.config.to_dict(),
            "model_class": self.model_class.to_dict(),
            "loss_reference": "upper_bound" if self.trials[0].upper_bound_only else "true_reach",
            "rows": [t.to_dict() for t in self.trials],
            "summary": self.summary(),
            "rate_fit": None if self.rate_fit is None else self.rate_fit.to_dict(),
            "exact_model": self.exact_model,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self):
        lines = ["n,trial,tau_hat,loss"]
        lines += [f"{t.n},{t.trial},{t.tau_hat:.17g},{t.loss:.17g}" for t in self.trials]
        return "\n".join(lines) + "\n"


def run_experiment(config):
    jobs = [(n, k) for n in config.n_grid for k in range(config.trials)]

    def one(job):
        n, k = job
        return run_trial(
            config.spec, n, config.tangent_mode, config.p,
            seed=mix_seed(config.seed, n, k), sparsify_epsilon=config.sparsify_epsilon, trial=k,
        )

    trials = tuple(ordered_map(one, jobs))
    means = [(n, float(np.mean([t.loss for t in trials if t.n == n]))) for n in config.n_grid]
    fit, exact = None, False
    if any(m == 0 for _, m in means):
        exact = True
    elif len(means) >= 3:
        fit = fit_rate(means)
    return ExperimentResult(config, trials, fit, exact, model_class_params(config.spec, config.p))


# --- probes ----------------------------------------------------------------------


def _check(name, lhs, rhs, ok, **info):
    out = {"name": name, "lhs": float(lhs), "rhs": float(rhs), "ok": bool(ok)}
    out.update(info)
    return out


def _pair_inverse_reach(points, frames, d):
    try:
        return 1.0 / estimate_reach_bruteforce(TangentCloud(points, frames, d)).tau_hat
    except AllPairsDegenerate:
        return 0.0


def default_sparsity(points, d):
    """FPS radius ``diam * n^(-1/d)`` with ``diam`` the bounding-box diagonal."""
    diam = float(np.linalg.norm(points.max(axis=0) - points.min(axis=0)))
    return diam * points.shape[0] ** (-1.0 / d)


def stability_probe(spec, n, theta, seed, epsilon=None):
    """Compare estimates under exact and tilted frames on a sparsified sample.

    ``bound`` uses the measured frame error (never above ``sin theta``).
    """
    cloud = spec.sample(n, seed, with_frames=True)
    eps = default_sparsity(cloud.points, spec.d) if epsilon is None else epsilon
    cloud = cloud.subset(farthest_point_sampling(cloud.points, eps))
    tilted = perturb_frames(cloud.frames, theta, np.random.default_rng(mix_seed(seed, 1)))
    delta = min_pairwise_distance(cloud.points)
    err = tangent_error(tilted, cloud.frames)
    lhs = abs(
        _pair_inverse_reach(cloud.points, cloud.frames, spec.d)
        - _pair_inverse_reach(cloud.points, tilted, spec.d)
    )
    bound = 2.0 * err / delta if cloud.n > 1 else 0.0
    return _check(
        "stability", lhs, bound, lhs <= bound + 1e-9,
        theta=float(theta), sin_theta=math.sin(theta), measured_sin=err,
        delta=delta, epsilon=eps, n_used=cloud.n,
    )


_INNER_EQ_1 = (math.pi, 0.0)
_INNER_EQ_2 = (math.pi, math.pi)
GLOBAL_DIRECTIONS = {
    # x leaves q1 along the first direction, y leaves q2 along the second
    "equator": ("v+", "v+"),
    "tube": ("u+", "u-"),
    "mixed": ("v+", "u+"),
}


def global_bound_probe(spec, t, direction="equator"):
    """Two-point estimate near the inner-equator bottleneck of a fat torus.

    Checks ``1/tau - 1/tau_hat({x, y}) <= 4 t / tau^2`` where ``x``, ``y``
    are arc length ``t`` from the bottleneck pair.
    """
    if not isinstance(spec, Torus) or not spec.r > spec.R - spec.r:
        raise UnsupportedSpec("global bound probe needs a torus with r > R - r")
    tau = spec.true_reach()
    if not 0 <= t < tau:
        raise ValueError(f"t must lie in [0, {tau})")
    dx, dy = GLOBAL_DIRECTIONS[direction]
    params = np.stack([spec.geodesic_params(_INNER_EQ_1, dx, t), spec.geodesic_params(_INNER_EQ_2, dy, t)])
    inv = _pair_inverse_reach(spec.embed(params), spec.frames(params), 2)
    lhs = 1.0 / tau - inv
    rhs = 4.0 * t / tau**2
    return _check("global_bound", lhs, rhs, lhs <= rhs + 1e-9, t=float(t), direction=direction)


def _local_setup(spec):
    """Curvature-attaining point, the curve through it, and named directions with angles."""
    if isinstance(spec, Torus):
        if spec.r <= spec.R - spec.r:
            q0, along, across = (0.0, 0.0), "u", "v"
        else:
            q0, along, across = (math.pi, 0.0), "v", "u"
        angles = {along + "+": 0.0, along + "-": math.pi, across + "+": math.pi / 2, across + "-": math.pi / 2}

        def place(direction, t):
            return spec.geodesic_params(q0, direction, t)

        curve = lambda t: spec.geodesic(q0, along + "+", t)  # noqa: E731
        return angles, place, curve
    if isinstance(spec, Ellipse):
        angles = {"+": 0.0, "-": math.pi}

        def place(direction, t):
            sign = 1.0 if direction == "+" else -1.0
            return spec.param_at_length(sign * np.asarray(t, dtype=float))

        return angles, place, lambda t: spec.geodesic(0.0, 1, t)
    raise UnsupportedSpec("local bound probe supports the torus and the ellipse")


def local_bound_probe(spec, t, angles):
    """Two-point estimate near a point of maximal curvature.

    ``angles`` names the directions of ``x`` and ``y`` from ``q0`` (for the
    thin torus ``"u+"``/``"u-"`` run along the tube circle, ``"v+"``/``"v-"``
    along the outer equator; for the ellipse ``"+"``/``"-"``). Checks
    ``1/tau - 1/tau_hat({x, y}) <= 8 sin^2(|theta_x - theta_y|)/tau + L (d(x,y)/3 + 2 d(q0,x))``
    with both distances replaced by their path-length upper bounds.
    """
    if spec.reach_case() not in (ReachCase.LOCAL, ReachCase.BOTH):
        raise UnsupportedSpec("local bound probe needs a curvature-attaining model")
    table, place, curve = _local_setup(spec)
    dir_x, dir_y = angles
    if dir_x not in table or dir_y not in table:
        raise ValueError(f"directions must be among {sorted(table)}")
    gap = abs(table[dir_x] - table[dir_y])
    if gap < math.pi / 2:
        raise ValueError("directions must be at least pi/2 apart")
    tau = spec.true_reach()
    if not 0 < t <= math.pi * tau / 2:
        raise ValueError("t must lie in (0, pi tau / 2]")
    period = 2.0 * math.pi * tau if isinstance(spec, Torus) else spec.perimeter
    L = max_third_derivative(curve, period, 1e-2 * tau)
    params = np.stack([np.atleast_1d(place(dir_x, t)), np.atleast_1d(place(dir_y, t))])
    if params.ndim == 2 and params.shape[1] == 1:
        params = params[:, 0]
    inv = _pair_inverse_reach(spec.embed(params), spec.frames(params), spec.d)
    lhs = 1.0 / tau - inv
    rhs = 8.0 * math.sin(gap) ** 2 / tau + L * (2.0 * t / 3.0 + 2.0 * t)
    return _check(
        "local_bound", lhs, rhs, lhs <= rhs + 1e-6,
        t=float(t), angles=[dir_x, dir_y], L=L,
    )


def curvature_probe(spec, grid=1000, seed=0):
    """``||gamma''|| <= 1/tau + 1e-5`` on every closed-form arc-length curve."""
    tau, _ = _reference_reach(spec)
    h = 1e-4 * min(1.0, tau)
    out = []
    for name, curve, period in spec.closed_form_curves(np.random.default_rng(seed)):
        kappa = max_curvature(curve, period, h, grid)
        out.append(
            _check("curvature", kappa, 1.0 / tau + 1e-5, kappa <= 1.0 / tau + 1e-5,
                   model=spec.to_dict(), curve=name)
        )
    return out


def _uniform_ball(rng, n, D, radius):
    g = rng.standard_normal((n, D))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * radius * rng.uniform(0.0, 1.0, (n, 1)) ** (1.0 / D)


def jacobian_probe(spec, n_samples=100_000, seed=0):
    """First and second derivative bounds of the bump map, plus its support."""
    rng = np.random.default_rng(seed)
    ell, eta = spec.ell, spec.eta
    x = _uniform_ball(rng, n_samples, spec.D, ell)
    J = spec.jacobian(x)
    dev = float(np.max(np.linalg.norm(J - np.eye(spec.D), ord=2, axis=(1, 2))))

    # finite-difference check of the analytic Jacobian on a subsample
    h = 1e-6 * ell
    sub = x[:1000]
    fd = np.stack(
        [(spec.diffeo(sub + h * e) - spec.diffeo(sub - h * e)) / (2 * h) for e in np.eye(spec.D)],
        axis=-1,
    )
    jac_err = float(np.max(np.abs(fd - J[:1000])))

    # second derivative: difference the analytic gradient of phi
    hs = 1e-6
    y = x[:10_000] / ell
    H = np.stack(
        [(bump_phi_gradient(y + hs * e) - bump_phi_gradient(y - hs * e)) / (2 * hs) for e in np.eye(spec.D)],
        axis=-1,
    )
    hess = float(np.max(np.linalg.norm(0.5 * (H + np.swapaxes(H, 1, 2)), ord=2, axis=(1, 2)))) * eta / ell**2

    far = _uniform_ball(rng, n_samples, spec.D, 3.0 * ell)
    far = far[np.linalg.norm(far, axis=1) >= ell]
    moved = float(np.max(np.abs(spec.diffeo(far) - far))) if far.size else 0.0

    phi0 = bump_phi(np.zeros(spec.D))
    half = np.zeros(spec.D)
    half[0] = 0.5
    phi_half = bump_phi(half)
    return [
        _check("jacobian_deviation", dev, 3.0 * eta / ell, dev <= 3.0 * eta / ell, samples=n_samples),
        _check("jacobian_finite_difference", jac_err, 1e-6, jac_err <= 1e-6),
        _check("second_derivative", hess, 23.0 * eta / ell**2, hess <= 23.0 * eta / ell**2),
        _check("identity_outside_support", moved, 0.0, moved == 0.0, samples=int(far.shape[0])),
        _check("bump_at_center", abs(phi0 - 1.0), 1e-12, abs(phi0 - 1.0) <= 1e-12),
        _check("bump_at_half_radius", abs(phi_half - math.exp(-1.0 / 3.0)), 1e-12,
               abs(phi_half - math.exp(-1.0 / 3.0)) <= 1e-12),
    ]


# --- suites ------------------------------------------------------------------------

SUITES = ("all", "bounds", "geometry", "stability")
STABILITY_CASES = 1000
STABILITY_MAX_THETA = math.pi / 6
_STABILITY_MODELS = (
    Circle(1.0),
    Sphere(2, 3, 1.0),
    Sphere(3, 5, 2.0),
    Ellipse(2.0, 1.0),
    Torus(2.0, 0.5),
    Torus(2.0, 1.3),
    BumpedSphere(2, 3, 1.0, 0.2, 0.02),
)


def bounds_suite():
    checks = []
    fat = Torus(2.0, 1.3)
    tau = fat.true_reach()
    for frac in (1 / 20, 1 / 10, 1 / 2):
        for direction in GLOBAL_DIRECTIONS:
            checks.append(global_bound_probe(fat, frac * tau, direction))
    thin = Torus(2.0, 0.5)
    ellipse = Ellipse(2.0, 1.0)
    for spec, pairs in (
        (thin, [("u+", "u-"), ("u+", "v+"), ("u+", "v-"), ("u-", "v+"), ("v-", "u-")]),
        (ellipse, [("+", "-")]),
    ):
        tau = spec.true_reach()
        for frac in (1 / 20, 1 / 10, 1 / 5):
            for pair in pairs:
                checks.append(local_bound_probe(spec, frac * tau, pair) | {"model": spec.to_dict()})
    return checks


def geometry_suite(seed=0):
    checks = []
    for spec in (Circle(1.0), Sphere(2, 3, 1.0), Sphere(3, 6, 2.0), Ellipse(2.0, 1.0),
                 Torus(2.0, 0.5), Torus(2.0, 1.3)):
        checks += curvature_probe(spec, seed=seed)
    checks += jacobian_probe(BumpedSphere(2, 3, 1.0, 0.2, 0.02), seed=seed)
    return checks


def stability_suite(seed=0, cases=STABILITY_CASES):
    rng = np.random.default_rng(mix_seed(seed, 0x57AB))
    plan = [
        (_STABILITY_MODELS[i % len(_STABILITY_MODELS)], int(rng.integers(20, 201)),
         float(rng.uniform(0.0, STABILITY_MAX_THETA)), mix_seed(seed, i))
        for i in range(cases)
    ]

    def one(job):
        spec, n, theta, s = job
        return stability_probe(spec, n, theta, s) | {"model": spec.to_dict()}

    return ordered_map(one, plan)


def run_suite(name, seed=0):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {list(SUITES)}")
    checks = []
    if name in ("all", "geometry"):
        checks += [c | {"suite": "geometry"} for c in geometry_suite(seed)]
    if name in ("all", "bounds"):
        checks += [c | {"suite": "bounds"} for c in bounds_suite()]
    if name in ("all", "stability"):
        checks += [c | {"suite": "stability"} for c in stability_suite(seed)]
    return {
        "format": FORMAT,
        "suite": name,
        "seed": int(seed),
        "passed": all(c["ok"] for c in checks),
        "n_checks": len(checks),
        "n_failed": sum(not c["ok"] for c in checks),
        "checks": checks,
    }
