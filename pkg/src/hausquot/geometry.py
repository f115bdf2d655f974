"""Model manifolds with exact geodesic distances.

Four chart-based model spaces are supported:

* ``Euclidean(n)``      -- R^n with the flat metric.
* ``FlatTorus2``        -- unit square with opposite sides glued, coords in [0,1)^2.
* ``HyperbolicHalfPlane`` -- upper half-plane, metric (dx^2+dy^2)/y^2.
* ``Sphere2(radius)``   -- round sphere in a stereographic chart projected from
  the south pole onto the tangent plane at the north pole, so the chart origin
  is the north pole and the conformal factor is 1 there.

All distances are closed-form; speeds along curves are recovered by ladder
extrapolation of difference quotients.
"""

from dataclasses import dataclass

import numpy as np

from .ladder import DEFAULT_LADDER, Method, two_sided_estimate

__all__ = [
    "ModelManifold", "AmbientPoint", "TangentVector",
    "euclidean", "flat_torus2", "hyperbolic_half_plane", "sphere2",
    "ChartDomainError", "validate_point",
    "distance", "riemannian_norm", "riemannian_inner", "speed_estimate",
    "chart_delta", "pairwise_kernel_id", "kernel_array",
    "embed_sphere_points", "unembed_sphere_points",
    "KIND_EUCLIDEAN", "KIND_FLAT_TORUS2", "KIND_HYPERBOLIC_HALF_PLANE",
    "KIND_SPHERE2",
]

KIND_EUCLIDEAN = "euclidean"
KIND_FLAT_TORUS2 = "flat-torus2"
KIND_HYPERBOLIC_HALF_PLANE = "hyperbolic-half-plane"
KIND_SPHERE2 = "sphere2"


class ChartDomainError(ValueError):
    """A point or vector violates the chart invariants of its manifold."""


@dataclass(frozen=True)
class ModelManifold:
    kind: str
    chart_dim: int
    radius: float = 1.0  # Sphere2 only

    def __post_init__(self):
        if self.kind == KIND_EUCLIDEAN:
            if self.chart_dim < 1:
                raise ValueError("Euclidean dimension must be >= 1")
        elif self.kind in (KIND_FLAT_TORUS2, KIND_HYPERBOLIC_HALF_PLANE,
                           KIND_SPHERE2):
            if self.chart_dim != 2:
                raise ValueError("%s has chart dimension 2" % self.kind)
        else:
            raise ValueError("unknown manifold kind %r" % self.kind)
        if self.kind == KIND_SPHERE2 and not self.radius > 0.0:
            raise ValueError("sphere radius must be positive")


def euclidean(dim):
    return ModelManifold(KIND_EUCLIDEAN, dim)


def flat_torus2():
    return ModelManifold(KIND_FLAT_TORUS2, 2)


def hyperbolic_half_plane():
    return ModelManifold(KIND_HYPERBOLIC_HALF_PLANE, 2)


def sphere2(radius=1.0):
    return ModelManifold(KIND_SPHERE2, 2, radius)


@dataclass(frozen=True)
class AmbientPoint:
    """A point in chart coordinates."""

    coords: tuple

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(float(c) for c in coords))

    def array(self):
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class TangentVector:
    """A chart-frame vector attached to a base point."""

    base: AmbientPoint
    components: tuple

    def __init__(self, base, components):
        if not isinstance(base, AmbientPoint):
            base = AmbientPoint(base)
        components = tuple(float(c) for c in components)
        if len(components) != len(base.coords):
            raise ValueError("tangent components must match the chart dimension")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "components", components)

    def array(self):
        return np.asarray(self.components, dtype=float)


def _as_coords(p):
    if isinstance(p, AmbientPoint):
        return p.array()
    return np.asarray(p, dtype=float)


def validate_point(m, p):
    """Raise ChartDomainError if p is invalid for m; return its coordinates."""
    c = _as_coords(p)
    if c.shape != (m.chart_dim,):
        raise ChartDomainError("expected %d chart coordinates, got shape %s"
                               % (m.chart_dim, c.shape))
    if not np.all(np.isfinite(c)):
        raise ChartDomainError("non-finite chart coordinates %s" % (c,))
    if m.kind == KIND_HYPERBOLIC_HALF_PLANE and not c[1] > 0.0:
        raise ChartDomainError("half-plane points need y > 0, got y=%g" % c[1])
    if m.kind == KIND_FLAT_TORUS2 and not np.all((c >= 0.0) & (c < 1.0)):
        raise ChartDomainError("torus coordinates must lie in [0,1), got %s"
                               % (c,))
    return c


def wrap_torus(coords):
    """Reduce torus coordinates to the fundamental square [0,1)^2."""
    out = np.mod(np.asarray(coords, dtype=float), 1.0)
    # mod can return 1.0 for tiny negatives; fold those back.
    out[out >= 1.0] -= 1.0
    return out


def embed_sphere_points(m, coords):
    """Chart -> R^3 embedding of sphere chart points, rows of shape (n, 3)."""
    c = np.atleast_2d(np.asarray(coords, dtype=float))
    r = m.radius
    rho2 = np.sum(c * c, axis=1)
    denom = 4.0 * r * r + rho2
    out = np.empty((c.shape[0], 3))
    out[:, 0] = 4.0 * r * r * c[:, 0] / denom
    out[:, 1] = 4.0 * r * r * c[:, 1] / denom
    out[:, 2] = r * (4.0 * r * r - rho2) / denom
    return out


def unembed_sphere_points(m, pts):
    """R^3 -> chart, inverse of embed_sphere_points (south pole excluded)."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    r = m.radius
    w = r + pts[:, 2]
    if np.any(w <= 0.0):
        raise ChartDomainError("point at or beyond the south pole has no chart "
                               "coordinates")
    out = np.empty((pts.shape[0], 2))
    out[:, 0] = 2.0 * r * pts[:, 0] / w
    out[:, 1] = 2.0 * r * pts[:, 1] / w
    return out


def _torus_distance_9shift(a, b):
    best = np.inf
    for sx in (-1.0, 0.0, 1.0):
        for sy in (-1.0, 0.0, 1.0):
            dx = a[0] - b[0] + sx
            dy = a[1] - b[1] + sy
            d = np.hypot(dx, dy)
            if d < best:
                best = d
    return best


def distance(m, p, q):
    """Exact geodesic distance between two points of a model manifold."""
    a = validate_point(m, p)
    b = validate_point(m, q)
    if m.kind == KIND_EUCLIDEAN:
        return float(np.linalg.norm(a - b))
    if m.kind == KIND_FLAT_TORUS2:
        return float(_torus_distance_9shift(a, b))
    if m.kind == KIND_HYPERBOLIC_HALF_PLANE:
        # arcosh(1 + q) written stably for small separations.
        qq = ((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) / (2.0 * a[1] * b[1])
        return float(np.log1p(qq + np.sqrt(qq * (qq + 2.0))))
    if m.kind == KIND_SPHERE2:
        pa = embed_sphere_points(m, a[None, :])[0]
        pb = embed_sphere_points(m, b[None, :])[0]
        cross = np.linalg.norm(np.cross(pa, pb))
        dot = float(np.dot(pa, pb))
        return float(m.radius * np.arctan2(cross, dot))
    raise ValueError("unknown manifold kind %r" % m.kind)


def _conformal_factor(m, coords):
    """Metric factor c(p) with g_p(u,w) = c(p)^2 * <u,w> in the chart frame."""
    if m.kind in (KIND_EUCLIDEAN, KIND_FLAT_TORUS2):
        return 1.0
    if m.kind == KIND_HYPERBOLIC_HALF_PLANE:
        return 1.0 / coords[1]
    if m.kind == KIND_SPHERE2:
        r = m.radius
        rho2 = float(np.dot(coords, coords))
        return 4.0 * r * r / (4.0 * r * r + rho2)
    raise ValueError("unknown manifold kind %r" % m.kind)


def conformal_factors(m, coords):
    """Vectorized metric factor c(p) for rows of chart coordinates."""
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    if m.kind in (KIND_EUCLIDEAN, KIND_FLAT_TORUS2):
        return np.ones(coords.shape[0])
    if m.kind == KIND_HYPERBOLIC_HALF_PLANE:
        return 1.0 / coords[:, 1]
    if m.kind == KIND_SPHERE2:
        r = m.radius
        rho2 = np.sum(coords * coords, axis=1)
        return 4.0 * r * r / (4.0 * r * r + rho2)
    raise ValueError("unknown manifold kind %r" % m.kind)


def riemannian_norm(m, v):
    """Riemannian norm of a tangent vector in the chart frame."""
    c = validate_point(m, v.base)
    comp = v.array()
    return float(_conformal_factor(m, c) * np.linalg.norm(comp))


def riemannian_inner(m, p, u, w):
    """Riemannian inner product of chart-frame vectors u, w at p."""
    c = validate_point(m, p)
    fac = _conformal_factor(m, c)
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    return float(fac * fac * np.dot(u, w))


def chart_delta(m, a, b):
    """Chart-coordinate difference a - b, wrapped to the shortest
    representative on the torus (used by finite differences)."""
    a = _as_coords(a)
    b = _as_coords(b)
    d = a - b
    if m.kind == KIND_FLAT_TORUS2:
        d = (d + 0.5) % 1.0 - 0.5
    return d


def speed_estimate(m, curve, t0, ladder=DEFAULT_LADDER, sides=("forward",
                                                               "backward")):
    """Extrapolated speed lim |t-t0|^-1 d(curve(t), curve(t0)) of a chart curve.

    `curve` maps a real parameter to an AmbientPoint (or raw coordinates).
    Restrict `sides` to one of ("forward",) / ("backward",) at interval ends.
    """
    base = curve(t0)

    def quotient(dt):
        return distance(m, curve(t0 + dt), base) / abs(dt)

    return two_sided_estimate(quotient, ladder, method=Method.LIMIT_LADDER,
                              sides=sides, context="speed_estimate")


# --- packed-array views used by the scan kernels ---------------------------

_KERNEL_IDS = {
    KIND_EUCLIDEAN: 0,
    KIND_FLAT_TORUS2: 1,
    KIND_HYPERBOLIC_HALF_PLANE: 2,
    KIND_SPHERE2: 3,
}


def pairwise_kernel_id(m):
    """Integer id selecting the pairwise-distance kernel for m."""
    return _KERNEL_IDS[m.kind]


def kernel_array(m, coords):
    """Pack chart coordinates into the array layout the scan kernels expect.

    Sphere points are embedded into R^3 (the kernels compare squared chords);
    every other kind uses chart coordinates directly.
    """
    arr = np.ascontiguousarray(np.atleast_2d(np.asarray(coords, dtype=float)))
    if m.kind == KIND_SPHERE2:
        return np.ascontiguousarray(embed_sphere_points(m, arr))
    return arr


def kernel_transform(m, surrogate):
    """Map a kernel surrogate value back to a geodesic distance."""
    s = max(float(surrogate), 0.0)
    if m.kind in (KIND_EUCLIDEAN, KIND_FLAT_TORUS2):
        return float(np.sqrt(s))
    if m.kind == KIND_HYPERBOLIC_HALF_PLANE:
        return float(np.log1p(s + np.sqrt(s * (s + 2.0))))
    if m.kind == KIND_SPHERE2:
        r = m.radius
        half = min(np.sqrt(s) / (2.0 * r), 1.0)
        return float(2.0 * r * np.arcsin(half))
    raise ValueError("unknown manifold kind %r" % m.kind)
