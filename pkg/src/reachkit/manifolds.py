"""Synthetic manifolds with analytically known reach.

Each model knows how to sample uniformly (w.r.t. surface measure), compute
tangent frames from its parameters, report its reach and which structure
attains it, and, where closed-form, produce arc-length geodesics.

Models serialize to JSON objects of the form ``{"variant": "torus", "R": 2.0,
"r": 0.5}``.
"""

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from reachkit.errors import InvalidSpec, UnsupportedSpec
from reachkit.linalg import orthonormalize, orthonormalize_batch
from reachkit.reach import TangentCloud

MAX_AMBIENT = 16


class ReachCase(enum.Enum):
    GLOBAL = "global"
    LOCAL = "local"
    BOTH = "both"


@dataclass(frozen=True)
class ReachBounds:
    """Reach known only up to bounds (``lower`` may be absent)."""

    upper: float
    lower: float | None = None

    def __post_init__(self):
        if self.lower is not None and self.upper < self.lower:
            raise ValueError("upper bound below lower bound")

    def to_dict(self):
        return {"upper": self.upper, "lower": self.lower}


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.default_rng(seed)


def _unit_gaussian(rng, n, m):
    g = rng.standard_normal((n, m))
    norm = np.linalg.norm(g, axis=1)
    while np.any(norm == 0.0):
        bad = norm == 0.0
        g[bad] = rng.standard_normal((int(bad.sum()), m))
        norm = np.linalg.norm(g, axis=1)
    return g / norm[:, None]


def _rejection(rng, n, draw, weight, envelope):
    """Draw ``n`` parameter rows accepted with probability ``weight / envelope``."""
    out = []
    have = drawn = 0
    while have < n:
        rate = max(have, 1) / max(drawn, 1)
        batch = max(64, int(1.2 * (n - have) / rate) + 16)
        params = draw(batch)
        keep = rng.uniform(0.0, envelope, batch) < weight(params)
        params = params[keep]
        out.append(params)
        have += params.shape[0]
        drawn += batch
    return np.concatenate(out)[:n]


def sphere_tangent_basis(u):
    """Orthonormal tangent basis at unit vectors ``u`` of shape ``(n, m)``.

    Returns ``(n, m-1, m)``: rows 1..m-1 of the Householder reflector that
    swaps ``e_0`` with ``-sign(u_0) u``.
    """
    u = np.atleast_2d(u)
    m = u.shape[1]
    s = np.where(u[:, 0] >= 0.0, 1.0, -1.0)
    w = u.copy()
    w[:, 0] += s
    wn = np.sum(w * w, axis=1)
    E = np.broadcast_to(np.eye(m)[1:], (u.shape[0], m - 1, m))
    return E - 2.0 * w[:, 1:, None] * w[:, None, :] / wn[:, None, None]


class Manifold:
    """Common interface; see the concrete models below."""

    variant = ""
    d = 0
    D = 0

    def true_reach(self):
        raise NotImplementedError

    def reach_case(self):
        raise NotImplementedError

    def sample_params(self, n, rng):
        raise NotImplementedError

    def embed(self, params):
        raise NotImplementedError

    def frames(self, params):
        raise NotImplementedError

    def normals(self, params):
        raise NotImplementedError

    def residual(self, points):
        """Implicit-equation residual of each point (zero on the manifold)."""
        raise NotImplementedError

    def geodesic(self, start, direction, t):
        raise UnsupportedSpec(f"{self.variant} has no closed-form geodesics")

    def closed_form_curves(self, rng):
        """Arc-length curves on the model: list of (name, gamma(t), period)."""
        raise UnsupportedSpec(f"{self.variant} has no closed-form geodesics")

    def to_dict(self):
        raise NotImplementedError

    def sample(self, n, seed, with_frames=True):
        if n < 1:
            raise ValueError("n must be >= 1")
        params = self.sample_params(int(n), _rng(seed))
        frames = self.frames(params) if with_frames else None
        return TangentCloud(self.embed(params), frames, self.d)

    def tangent_at(self, params):
        p = np.asarray(params, dtype=float)
        return self.frames(p[None, ...])[0]


@dataclass(frozen=True)
class Circle(Manifold):
    R: float = 1.0
    variant = "circle"
    d = 1
    D = 2

    def __post_init__(self):
        if not self.R > 0:
            raise InvalidSpec("circle radius must be positive")

    def true_reach(self):
        return float(self.R)

    def reach_case(self):
        return ReachCase.BOTH

    def sample_params(self, n, rng):
        return rng.uniform(0.0, 2.0 * np.pi, n)

    def embed(self, a):
        a = np.asarray(a, dtype=float)
        return self.R * np.stack([np.cos(a), np.sin(a)], axis=-1)

    def frames(self, a):
        a = np.asarray(a, dtype=float)
        return np.stack([-np.sin(a), np.cos(a)], axis=-1)[:, None, :]

    def normals(self, a):
        return self.embed(a) / self.R

    def residual(self, points):
        return np.hypot(points[:, 0], points[:, 1]) - self.R

    def geodesic(self, start, direction, t):
        sign = 1.0 if direction >= 0 else -1.0
        return self.embed(float(start) + sign * np.asarray(t, dtype=float) / self.R)

    def closed_form_curves(self, rng):
        return [("circle", lambda t: self.geodesic(0.0, 1, t), 2 * np.pi * self.R)]

    def to_dict(self):
        return {"variant": self.variant, "R": self.R}


@dataclass(frozen=True)
class Sphere(Manifold):
    """Round ``d``-sphere of radius ``R`` in the first ``d+1`` coordinates of ``R^D``."""

    d: int = 2
    D: int = 3
    R: float = 1.0
    center: tuple | None = None
    variant = "sphere"

    def __post_init__(self):
        if not 1 <= self.d < self.D <= MAX_AMBIENT:
            raise InvalidSpec(f"sphere needs 1 <= d < D <= {MAX_AMBIENT}")
        if not self.R > 0:
            raise InvalidSpec("sphere radius must be positive")
        if self.center is not None:
            if len(self.center) != self.D:
                raise InvalidSpec("sphere center must have D coordinates")
            object.__setattr__(self, "center", tuple(float(c) for c in self.center))

    @property
    def _c(self):
        return np.zeros(self.D) if self.center is None else np.asarray(self.center)

    def true_reach(self):
        return float(self.R)

    def reach_case(self):
        return ReachCase.BOTH

    def sample_params(self, n, rng):
        return _unit_gaussian(rng, n, self.d + 1)

    def _lift(self, u):
        u = np.atleast_2d(u)
        out = np.zeros(u.shape[:-1] + (self.D,))
        out[..., : self.d + 1] = u
        return out

    def embed(self, u):
        return self._c + self.R * self._lift(u)

    def frames(self, u):
        B = sphere_tangent_basis(np.atleast_2d(u))
        F = np.zeros(B.shape[:2] + (self.D,))
        F[..., : self.d + 1] = B
        return F

    def normals(self, u):
        return self._lift(u)

    def residual(self, points):
        return np.linalg.norm(points - self._c, axis=1) - self.R

    def geodesic(self, start, direction, t):
        u0 = np.asarray(start, dtype=float)
        w = np.asarray(direction, dtype=float)
        if u0.shape != (self.d + 1,) or w.shape != (self.d + 1,):
            raise ValueError("great circle needs a start and direction in R^(d+1)")
        w = w - (w @ u0) * u0
        w = w / np.linalg.norm(w)
        s = np.asarray(t, dtype=float)[..., None] / self.R
        return self.embed(np.cos(s) * u0 + np.sin(s) * w)

    def closed_form_curves(self, rng):
        curves = []
        for k in range(3):
            u0 = _unit_gaussian(rng, 1, self.d + 1)[0]
            w = rng.standard_normal(self.d + 1)
            curves.append(
                (
                    f"great_circle_{k}",
                    lambda t, u0=u0, w=w: self.geodesic(u0, w, t),
                    2 * np.pi * self.R,
                )
            )
        return curves

    def to_dict(self):
        out = {"variant": self.variant, "d": self.d, "D": self.D, "R": self.R}
        if self.center is not None:
            out["center"] = list(self.center)
        return out


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class Ellipse(Manifold):
    """``(a cos t, b sin t)`` with ``a > b > 0``."""

    a: float = 2.0
    b: float = 1.0
    variant = "ellipse"
    d = 1
    D = 2
    _panels: int = field(default=2048, repr=False, compare=False)

    def __post_init__(self):
        if not self.a > self.b > 0:
            raise InvalidSpec("ellipse needs a > b > 0")
        h = 2.0 * np.pi / self._panels
        nodes = np.arange(self._panels) * h
        pieces = self._integrate(nodes, nodes + h)
        object.__setattr__(self, "_cum", np.concatenate([[0.0], np.cumsum(pieces)]))

    def speed(self, t):
        t = np.asarray(t, dtype=float)
        return np.hypot(self.a * np.sin(t), self.b * np.cos(t))

    def _integrate(self, lo, hi):
        # 16-point Gauss-Legendre on sub-panels: exact to rounding for this integrand
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        x = mid[..., None] + half[..., None] * _GL_NODES
        return half * (self.speed(x) @ _GL_WEIGHTS)

    @property
    def perimeter(self):
        return float(self._cum[-1])

    def arc_length(self, t):
        """Arc length from parameter 0 to ``t`` (any real ``t``)."""
        t = np.asarray(t, dtype=float)
        turns = np.floor(t / (2.0 * np.pi))
        tt = t - turns * 2.0 * np.pi
        h = 2.0 * np.pi / self._panels
        k = np.clip(np.floor(tt / h).astype(np.int64), 0, self._panels - 1)
        return turns * self.perimeter + self._cum[k] + self._integrate(k * h, tt)

    def param_at_length(self, s):
        """Inverse of :meth:`arc_length` by Newton iteration."""
        s = np.asarray(s, dtype=float)
        t = 2.0 * np.pi * s / self.perimeter
        for _ in range(50):
            step = (self.arc_length(t) - s) / self.speed(t)
            t = t - step
            if np.all(np.abs(step) <= 4e-16 * np.maximum(1.0, np.abs(t))):
                break
        return t

    def true_reach(self):
        return self.b**2 / self.a

    def reach_case(self):
        return ReachCase.LOCAL

    def sample_params(self, n, rng):
        return _rejection(
            rng, n, lambda m: rng.uniform(0.0, 2.0 * np.pi, m), self.speed, self.a
        )

    def embed(self, t):
        t = np.asarray(t, dtype=float)
        return np.stack([self.a * np.cos(t), self.b * np.sin(t)], axis=-1)

    def frames(self, t):
        t = np.asarray(t, dtype=float)
        v = np.stack([-self.a * np.sin(t), self.b * np.cos(t)], axis=-1)
        return (v / np.linalg.norm(v, axis=-1, keepdims=True))[:, None, :]

    def normals(self, t):
        t = np.asarray(t, dtype=float)
        v = np.stack([self.b * np.cos(t), self.a * np.sin(t)], axis=-1)
        return v / np.linalg.norm(v, axis=-1, keepdims=True)

    def residual(self, points):
        return (points[:, 0] / self.a) ** 2 + (points[:, 1] / self.b) ** 2 - 1.0

    def geodesic(self, start, direction, t):
        sign = 1.0 if direction >= 0 else -1.0
        s0 = self.arc_length(float(start))
        return self.embed(self.param_at_length(s0 + sign * np.asarray(t, dtype=float)))

    def closed_form_curves(self, rng):
        return [("ellipse", lambda t: self.geodesic(0.0, 1, t), self.perimeter)]

    def to_dict(self):
        return {"variant": self.variant, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Torus(Manifold):
    """``((R + r cos u) cos v, (R + r cos u) sin v, r sin u)`` with ``0 < r < R``.

    ``u`` runs around the tube, ``v`` around the symmetry axis; ``u = 0`` is
    the outer equator and ``u = pi`` the inner one.
    """

    R: float = 2.0
    r: float = 0.5
    variant = "torus"
    d = 2
    D = 3

    def __post_init__(self):
        if not 0 < self.r < self.R:
            raise InvalidSpec("torus needs 0 < r < R")

    def true_reach(self):
        return float(min(self.r, self.R - self.r))

    def reach_case(self):
        # Opposite points of a tube circle form a bottleneck around the core
        # circle and the tube circles have curvature 1/r; the inner equator is
        # a geodesic of curvature 1/(R-r) whose antipodal points straddle the
        # axis. Whichever radius is smaller is attained both ways.
        return ReachCase.BOTH

    def bottleneck_witness(self):
        """Antipodal inner-equator pair and the axis point between them."""
        rho = self.R - self.r
        return np.array([rho, 0.0, 0.0]), np.array([-rho, 0.0, 0.0]), np.zeros(3)

    def sample_params(self, n, rng):
        u = _rejection(
            rng,
            n,
            lambda m: rng.uniform(0.0, 2.0 * np.pi, m),
            lambda u: self.R + self.r * np.cos(u),
            self.R + self.r,
        )
        v = rng.uniform(0.0, 2.0 * np.pi, n)
        return np.stack([u, v], axis=-1)

    def embed(self, uv):
        uv = np.asarray(uv, dtype=float)
        u, v = uv[..., 0], uv[..., 1]
        rho = self.R + self.r * np.cos(u)
        return np.stack([rho * np.cos(v), rho * np.sin(v), self.r * np.sin(u)], axis=-1)

    def frames(self, uv):
        uv = np.atleast_2d(np.asarray(uv, dtype=float))
        u, v = uv[:, 0], uv[:, 1]
        zero = np.zeros_like(u)
        along_v = np.stack([-np.sin(v), np.cos(v), zero], axis=-1)
        along_u = np.stack([-np.sin(u) * np.cos(v), -np.sin(u) * np.sin(v), np.cos(u)], axis=-1)
        return np.stack([along_v, along_u], axis=1)

    def normals(self, uv):
        uv = np.atleast_2d(np.asarray(uv, dtype=float))
        u, v = uv[:, 0], uv[:, 1]
        return np.stack([np.cos(u) * np.cos(v), np.cos(u) * np.sin(v), np.sin(u)], axis=-1)

    def residual(self, points):
        rho = np.hypot(points[:, 0], points[:, 1])
        return np.hypot(rho - self.R, points[:, 2]) - self.r

    def geodesic_params(self, start, direction, t):
        """``(u, v)`` after arc length ``t`` along a tube circle or an equator.

        Tube circles (``"u+"``, ``"u-"``) start anywhere; the equators
        (``"v+"``, ``"v-"``) only at u in {0, pi}.
        """
        u0, v0 = (float(c) for c in start)
        t = np.asarray(t, dtype=float)
        if direction not in ("u+", "u-", "v+", "v-"):
            raise ValueError(f"unknown torus direction {direction!r}")
        sign = 1.0 if direction[1] == "+" else -1.0
        if direction[0] == "u":
            u = u0 + sign * t / self.r
            return np.stack([u, np.full_like(u, v0)], axis=-1)
        if abs(math.sin(u0)) > 1e-12:
            raise UnsupportedSpec("only the inner and outer equators are geodesic parallels")
        rho = self.R + self.r * math.cos(u0)
        v = v0 + sign * t / rho
        return np.stack([np.full_like(v, u0), v], axis=-1)

    def geodesic(self, start, direction, t):
        return self.embed(self.geodesic_params(start, direction, t))

    def closed_form_curves(self, rng):
        curves = []
        for k, v0 in enumerate(rng.uniform(0.0, 2.0 * np.pi, 3)):
            curves.append(
                (f"tube_circle_{k}", lambda t, v0=v0: self.geodesic((0.0, v0), "u+", t),
                 2 * np.pi * self.r)
            )
        curves.append(
            ("outer_equator", lambda t: self.geodesic((0.0, 0.0), "v+", t),
             2 * np.pi * (self.R + self.r))
        )
        curves.append(
            ("inner_equator", lambda t: self.geodesic((np.pi, 0.0), "v+", t),
             2 * np.pi * (self.R - self.r))
        )
        return curves

    def to_dict(self):
        return {"variant": self.variant, "R": self.R, "r": self.r}


def bump_phi(x):
    """``exp(|x|^2 / (|x|^2 - 1))`` inside the unit ball, 0 outside.

    Accepts a single point or an ``(n, D)`` stack.
    """
    x = np.asarray(x, dtype=float)
    s = np.sum(x * x, axis=-1)
    inside = s < 1.0
    safe = np.where(inside, s, 0.0)
    out = np.where(inside, np.exp(safe / (safe - 1.0)), 0.0)
    return float(out) if out.ndim == 0 else out


def bump_phi_gradient(x):
    x = np.asarray(x, dtype=float)
    s = np.sum(x * x, axis=-1)
    inside = s < 1.0
    safe = np.where(inside, s, 0.0)
    phi = np.where(inside, np.exp(safe / (safe - 1.0)), 0.0)
    scale = np.where(inside, -2.0 * phi / (safe - 1.0) ** 2, 0.0)
    return scale[..., None] * x


@dataclass(frozen=True)
class BumpedSphere(Manifold):
    """Sphere of radius ``R`` centred at ``-R e_1`` pushed through a vertical bump.

    The sphere touches the origin at its top; ``Phi(x) = x + eta phi(x / ell) e_1``
    raises a cap of width ``ell`` by at most ``eta``. Requires
    ``ell <= min(R/2, (2^(1/d) - 1) R)`` and ``eta <= ell^2 / (2 R)``.
    """

    d: int = 2
    D: int = 3
    R: float = 1.0
    ell: float = 0.2
    eta: float = 0.02
    variant = "bumped_sphere"

    def __post_init__(self):
        if not 1 <= self.d < self.D <= MAX_AMBIENT:
            raise InvalidSpec(f"bumped sphere needs 1 <= d < D <= {MAX_AMBIENT}")
        if not (self.R > 0 and self.ell > 0 and self.eta > 0):
            raise InvalidSpec("R, ell and eta must be positive")
        ell_cap = min(self.R / 2.0, (2.0 ** (1.0 / self.d) - 1.0) * self.R)
        if self.ell > ell_cap * (1 + 1e-12):
            raise InvalidSpec(f"ell={self.ell} exceeds the admissible {ell_cap:.6g}")
        if self.eta > self.ell**2 / (2.0 * self.R) * (1 + 1e-12):
            raise InvalidSpec(f"eta={self.eta} exceeds ell^2/(2R)={self.ell**2 / (2 * self.R):.6g}")

    @property
    def base_sphere(self):
        c = np.zeros(self.D)
        c[1] = -self.R
        return Sphere(self.d, self.D, self.R, tuple(c))

    @property
    def vertical(self):
        v = np.zeros(self.D)
        v[1] = 1.0
        return v

    def true_reach(self):
        return ReachBounds(upper=1.0 / (1.0 / self.R + self.eta / self.ell**2))

    def reach_case(self):
        return ReachCase.LOCAL

    def diffeo(self, x):
        x = np.asarray(x, dtype=float)
        phi = bump_phi(x / self.ell)
        return x + self.eta * np.multiply.outer(phi, self.vertical)

    def jacobian(self, x):
        """``I + (eta / ell) e_1 (grad phi(x / ell))^T``; ``(D, D)`` or ``(n, D, D)``."""
        x = np.asarray(x, dtype=float)
        g = bump_phi_gradient(x / self.ell)
        J = np.broadcast_to(np.eye(self.D), x.shape[:-1] + (self.D, self.D)).copy()
        J[..., 1, :] += (self.eta / self.ell) * g
        return J

    def inverse_diffeo(self, y, tol=1e-15, max_iter=200):
        """Fixed-point inversion ``x <- y - eta phi(x / ell) e_1`` (a contraction)."""
        y = np.asarray(y, dtype=float)
        x = y.copy()
        for _ in range(max_iter):
            nxt = y - self.eta * np.multiply.outer(bump_phi(x / self.ell), self.vertical)
            if np.max(np.abs(nxt - x)) <= tol:
                return nxt
            x = nxt
        return x

    def area_factor(self, u):
        """``sqrt(det G)`` with ``G`` the Gram matrix of ``dPhi`` applied to the sphere frame."""
        sphere = self.base_sphere
        pts = sphere.embed(u)
        F = sphere.frames(u)
        J = self.jacobian(pts)
        images = np.einsum("nij,naj->nai", J, F)
        G = np.einsum("nai,nbi->nab", images, images)
        return np.sqrt(np.linalg.det(G))

    def sample_params(self, n, rng):
        envelope = (1.0 + 3.0 * self.eta / self.ell) ** self.d
        return _rejection(
            rng, n, lambda m: _unit_gaussian(rng, m, self.d + 1), self.area_factor, envelope
        )

    def cap_params(self, n, rng):
        """Preimage parameters restricted to the bump support ``|x| < ell``, uniform on M'."""
        cos_cap = 1.0 - self.ell**2 / (2.0 * self.R**2)
        envelope = (1.0 + 3.0 * self.eta / self.ell) ** self.d

        def draw(m):
            u = _unit_gaussian(rng, m, self.d + 1)
            u[:, 1] = np.abs(u[:, 1])
            return u

        def weight(u):
            # |x| < ell on the sphere is exactly u_1 > cos_cap
            return np.where(u[:, 1] > cos_cap, self.area_factor(u), 0.0)

        return _rejection(rng, n, draw, weight, envelope)

    def embed(self, u):
        return self.diffeo(self.base_sphere.embed(u))

    def frames(self, u):
        sphere = self.base_sphere
        u = np.atleast_2d(u)
        J = self.jacobian(sphere.embed(u))
        images = np.einsum("nij,naj->nai", J, sphere.frames(u))
        return orthonormalize_batch(images)

    def tangent_at(self, params):
        sphere = self.base_sphere
        u = np.asarray(params, dtype=float)
        J = self.jacobian(sphere.embed(u[None])[0])
        return orthonormalize(sphere.frames(u[None])[0] @ J.T)

    def residual(self, points):
        return self.base_sphere.residual(self.inverse_diffeo(points))

    def sample_stratified(self, n, seed, cap_fraction=0.5, with_frames=True):
        """Half (by default) of the points uniform on the bumped cap, the rest uniform on M'."""
        rng = _rng(seed)
        n_cap = int(round(cap_fraction * n))
        params = np.concatenate([self.cap_params(n_cap, rng), self.sample_params(n - n_cap, rng)])
        frames = self.frames(params) if with_frames else None
        return TangentCloud(self.embed(params), frames, self.d)

    def to_dict(self):
        return {
            "variant": self.variant,
            "d": self.d,
            "D": self.D,
            "R": self.R,
            "ell": self.ell,
            "eta": self.eta,
        }


VARIANTS = {
    "circle": (Circle, ("R",)),
    "sphere": (Sphere, ("d", "D", "R", "center")),
    "ellipse": (Ellipse, ("a", "b")),
    "torus": (Torus, ("R", "r")),
    "bumped_sphere": (BumpedSphere, ("d", "D", "R", "ell", "eta")),
}


def spec_from_dict(obj):
    if not isinstance(obj, dict) or "variant" not in obj:
        raise InvalidSpec("manifold spec must be an object with a 'variant' field")
    variant = obj["variant"]
    if variant not in VARIANTS:
        raise InvalidSpec(f"unknown variant {variant!r}; expected one of {sorted(VARIANTS)}")
    cls, allowed = VARIANTS[variant]
    extra = set(obj) - set(allowed) - {"variant"}
    if extra:
        raise InvalidSpec(f"unexpected fields for {variant}: {sorted(extra)}")
    kwargs = {k: obj[k] for k in allowed if k in obj}
    for k, val in kwargs.items():
        if k in ("d", "D"):
            if isinstance(val, bool) or not isinstance(val, int):
                raise InvalidSpec(f"{k} must be an integer")
        elif k == "center":
            if val is not None and not isinstance(val, list):
                raise InvalidSpec("center must be a list of numbers")
        elif isinstance(val, bool) or not isinstance(val, (int, float)):
            raise InvalidSpec(f"{k} must be a number")
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise InvalidSpec(str(exc)) from exc


def spec_from_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"spec is not valid JSON: {exc}") from exc
    return spec_from_dict(obj)


def spec_to_json(spec):
    return json.dumps(spec.to_dict(), sort_keys=True)


def true_reach(spec):
    return spec.true_reach()


def reach_case(spec):
    return spec.reach_case()


def sample(spec, n, seed, with_frames=True):
    return spec.sample(n, seed, with_frames)


def tangent_at(spec, params):
    return spec.tangent_at(params)


def geodesic_curve(spec, start_params, direction, t):
    return spec.geodesic(start_params, direction, t)


def reach_description(spec):
    """JSON-friendly summary of the reach and its attainment case."""
    tau = spec.true_reach()
    out = {"spec": spec.to_dict(), "reach_case": spec.reach_case().value}
    if isinstance(tau, ReachBounds):
        out["true_reach"] = None
        out["reach_bounds"] = tau.to_dict()
    else:
        out["true_reach"] = tau
    return out
