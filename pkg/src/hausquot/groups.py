"""Isometry groups acting on the model manifolds.

Each group model couples a parameter space (the ``params`` tuple of a group
element), a Lie-algebra frame (AlgebraVector components), and the manifold
it acts on:

* ``translation_rn(n)``     -- R^n acting on Euclidean space by translation.
* ``translation_torus2()``  -- T^2 acting on the flat torus; params live in
  the fundamental square [0,1)^2.
* ``hyperbolic_affine()``   -- affine maps x -> g2*x + g1 of the boundary
  line, acting on the upper half-plane as (x, y) -> (g2*x + g1, g2*y) with
  g2 > 0.  Element params are (g1, g2); algebra vectors are (alpha, beta)
  with exp(t*(alpha, beta)) = (t*alpha*phi1(t*beta), e^(t*beta)) where
  phi1(s) = (e^s - 1)/s.
* ``rotation3(radius)``     -- SO(3) acting on the sphere chart; params are
  the nine row-major matrix entries, algebra vectors are rotation rates
  omega with exp given by the axis-angle formula.
* ``line_flow(slope)``      -- the real line acting on the flat torus along
  direction (1, slope); a single scalar parameter.

All actions are isometries of the corresponding model metric.
"""

from dataclasses import dataclass

import numpy as np

from . import geometry
from .geometry import (AmbientPoint, ChartDomainError, TangentVector,
                       chart_delta, wrap_torus)
from .ladder import StepLadder, extrapolate_limit

__all__ = [
    "GroupModel", "GroupElement", "AlgebraVector",
    "translation_rn", "translation_torus2", "hyperbolic_affine", "rotation3",
    "line_flow",
    "element", "algebra_vector", "identity", "compose", "inverse", "exp_map",
    "log_map", "act", "act_points", "killing_field",
]

_ORTHO_TOL = 1e-10

KIND_TRANSLATION_RN = "translation-rn"
KIND_TRANSLATION_TORUS2 = "translation-torus2"
KIND_HYPERBOLIC_AFFINE = "hyperbolic-affine"
KIND_ROTATION3 = "rotation3"
KIND_LINE_FLOW = "line-flow"


@dataclass(frozen=True)
class GroupModel:
    kind: str
    algebra_dim: int
    manifold: geometry.ModelManifold
    slope: float = 0.0  # line-flow only

    @property
    def param_dim(self):
        return 9 if self.kind == KIND_ROTATION3 else self.algebra_dim


@dataclass(frozen=True)
class GroupElement:
    kind: str
    params: tuple

    def array(self):
        return np.asarray(self.params, dtype=float)


@dataclass(frozen=True)
class AlgebraVector:
    kind: str
    components: tuple

    def array(self):
        return np.asarray(self.components, dtype=float)


def translation_rn(n):
    return GroupModel(KIND_TRANSLATION_RN, n, geometry.euclidean(n))


def translation_torus2():
    return GroupModel(KIND_TRANSLATION_TORUS2, 2, geometry.flat_torus2())


def hyperbolic_affine():
    return GroupModel(KIND_HYPERBOLIC_AFFINE, 2,
                      geometry.hyperbolic_half_plane())


def rotation3(radius=1.0):
    return GroupModel(KIND_ROTATION3, 3, geometry.sphere2(radius))


def line_flow(slope):
    slope = float(slope)
    if not np.isfinite(slope):
        raise ValueError("line-flow slope must be finite")
    return GroupModel(KIND_LINE_FLOW, 1, geometry.flat_torus2(), slope=slope)


def _check_finite(values, what):
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("%s must be finite, got %s" % (what, values))
    return arr


def element(G, params):
    """Validated group element from raw parameters."""
    arr = _check_finite(params, "group parameters")
    if arr.shape != (G.param_dim,):
        raise ValueError("expected %d parameters for %s, got shape %s"
                         % (G.param_dim, G.kind, arr.shape))
    if G.kind == KIND_TRANSLATION_TORUS2:
        arr = wrap_torus(arr)
    elif G.kind == KIND_HYPERBOLIC_AFFINE:
        if not arr[1] > 0.0:
            raise ValueError("hyperbolic-affine elements need g2 > 0, got %g"
                             % arr[1])
    elif G.kind == KIND_ROTATION3:
        R = arr.reshape(3, 3)
        if np.max(np.abs(R.T @ R - np.eye(3))) > _ORTHO_TOL:
            raise ValueError("rotation parameters are not orthonormal")
        if abs(np.linalg.det(R) - 1.0) > _ORTHO_TOL:
            raise ValueError("rotation parameters must have determinant 1")
    return GroupElement(G.kind, tuple(float(x) for x in arr))


def algebra_vector(G, components):
    arr = _check_finite(components, "algebra components")
    if arr.shape != (G.algebra_dim,):
        raise ValueError("expected %d algebra components for %s, got shape %s"
                         % (G.algebra_dim, G.kind, arr.shape))
    return AlgebraVector(G.kind, tuple(float(x) for x in arr))


def _check_element(G, g):
    if not isinstance(g, GroupElement) or g.kind != G.kind:
        raise ValueError("expected a %s group element" % G.kind)


def _as_algebra(G, v):
    if isinstance(v, AlgebraVector):
        if v.kind != G.kind:
            raise ValueError("algebra vector belongs to %s, not %s"
                             % (v.kind, G.kind))
        return v
    return algebra_vector(G, v)


def identity(G):
    if G.kind == KIND_ROTATION3:
        return GroupElement(G.kind, tuple(np.eye(3).ravel()))
    if G.kind == KIND_HYPERBOLIC_AFFINE:
        return GroupElement(G.kind, (0.0, 1.0))
    return GroupElement(G.kind, (0.0,) * G.param_dim)


def compose(G, g, h):
    """Group product g*h (the element acting by g after h)."""
    _check_element(G, g)
    _check_element(G, h)
    a, b = g.array(), h.array()
    if G.kind in (KIND_TRANSLATION_RN, KIND_LINE_FLOW):
        return GroupElement(G.kind, tuple(a + b))
    if G.kind == KIND_TRANSLATION_TORUS2:
        return GroupElement(G.kind, tuple(wrap_torus(a + b)))
    if G.kind == KIND_HYPERBOLIC_AFFINE:
        return GroupElement(G.kind, (float(a[1] * b[0] + a[0]),
                                     float(a[1] * b[1])))
    if G.kind == KIND_ROTATION3:
        return element(G, (a.reshape(3, 3) @ b.reshape(3, 3)).ravel())
    raise ValueError("unknown group kind %r" % G.kind)


def inverse(G, g):
    _check_element(G, g)
    a = g.array()
    if G.kind in (KIND_TRANSLATION_RN, KIND_LINE_FLOW):
        return GroupElement(G.kind, tuple(-a))
    if G.kind == KIND_TRANSLATION_TORUS2:
        return GroupElement(G.kind, tuple(wrap_torus(-a)))
    if G.kind == KIND_HYPERBOLIC_AFFINE:
        return GroupElement(G.kind, (float(-a[0] / a[1]), float(1.0 / a[1])))
    if G.kind == KIND_ROTATION3:
        return GroupElement(G.kind, tuple(a.reshape(3, 3).T.ravel()))
    raise ValueError("unknown group kind %r" % G.kind)


def _phi1(s):
    """(e^s - 1)/s, continuous through s = 0."""
    if abs(s) < 1e-6:
        return 1.0 + s * (0.5 + s * (1.0 / 6.0 + s / 24.0))
    return np.expm1(s) / s


def _rodrigues(omega):
    theta = float(np.linalg.norm(omega))
    K = np.array([[0.0, -omega[2], omega[1]],
                  [omega[2], 0.0, -omega[0]],
                  [-omega[1], omega[0], 0.0]])
    if theta < 1e-4:
        t2 = theta * theta
        c1 = 1.0 - t2 / 6.0 + t2 * t2 / 120.0
        c2 = 0.5 - t2 / 24.0 + t2 * t2 / 720.0
    else:
        c1 = np.sin(theta) / theta
        c2 = (1.0 - np.cos(theta)) / (theta * theta)
    return np.eye(3) + c1 * K + c2 * (K @ K)


def exp_map(G, v, t=1.0):
    """One-parameter subgroup element exp(t*v)."""
    v = _as_algebra(G, v)
    w = t * v.array()
    if G.kind in (KIND_TRANSLATION_RN, KIND_LINE_FLOW):
        return GroupElement(G.kind, tuple(w))
    if G.kind == KIND_TRANSLATION_TORUS2:
        return GroupElement(G.kind, tuple(wrap_torus(w)))
    if G.kind == KIND_HYPERBOLIC_AFFINE:
        alpha, beta = w
        return GroupElement(G.kind, (float(alpha * _phi1(beta)),
                                     float(np.exp(beta))))
    if G.kind == KIND_ROTATION3:
        return GroupElement(G.kind, tuple(_rodrigues(w).ravel()))
    raise ValueError("unknown group kind %r" % G.kind)


def _rotation_log(R):
    t = (np.trace(R) - 1.0) / 2.0
    theta = float(np.arccos(min(1.0, max(-1.0, t))))
    skew = 0.5 * np.array([R[2, 1] - R[1, 2],
                           R[0, 2] - R[2, 0],
                           R[1, 0] - R[0, 1]])
    if theta < 1e-6:
        return skew * (1.0 + theta * theta / 6.0)
    if theta < np.pi - 1e-6:
        return skew * (theta / np.sin(theta))
    # Near a half-turn the skew part degenerates; recover the axis from the
    # symmetric part instead.
    c = np.cos(theta)
    diag = np.clip((np.diag(R) - c) / (1.0 - c), 0.0, None)
    k = int(np.argmax(diag))
    axis = np.zeros(3)
    axis[k] = np.sqrt(diag[k])
    for j in range(3):
        if j != k:
            axis[j] = (R[k, j] + R[j, k]) / (2.0 * (1.0 - c) * axis[k])
    axis /= np.linalg.norm(axis)
    if np.dot(axis, skew) < 0.0:
        axis = -axis
    return theta * axis


def log_map(G, g):
    """Algebra vector v with exp(v) = g (principal branch)."""
    _check_element(G, g)
    a = g.array()
    if G.kind in (KIND_TRANSLATION_RN, KIND_LINE_FLOW):
        return AlgebraVector(G.kind, tuple(a))
    if G.kind == KIND_TRANSLATION_TORUS2:
        return AlgebraVector(G.kind, tuple((a + 0.5) % 1.0 - 0.5))
    if G.kind == KIND_HYPERBOLIC_AFFINE:
        beta = float(np.log(a[1]))
        return AlgebraVector(G.kind, (float(a[0] / _phi1(beta)), beta))
    if G.kind == KIND_ROTATION3:
        return AlgebraVector(G.kind, tuple(_rotation_log(a.reshape(3, 3))))
    raise ValueError("unknown group kind %r" % G.kind)


def act(G, g, p):
    """Image of a single manifold point under the group element g."""
    coords = geometry.validate_point(G.manifold, p)
    out = act_points(G, g, coords[None, :])[0]
    return AmbientPoint(out)


def act_points(G, g, coords):
    """Vectorised action on an (n, chart_dim) coordinate array."""
    _check_element(G, g)
    pts = np.atleast_2d(np.asarray(coords, dtype=float))
    a = g.array()
    if G.kind == KIND_TRANSLATION_RN:
        return pts + a
    if G.kind == KIND_TRANSLATION_TORUS2:
        return wrap_torus(pts + a)
    if G.kind == KIND_LINE_FLOW:
        shift = np.array([a[0], a[0] * G.slope])
        return wrap_torus(pts + shift)
    if G.kind == KIND_HYPERBOLIC_AFFINE:
        out = pts * a[1]
        out[:, 0] += a[0]
        return out
    if G.kind == KIND_ROTATION3:
        m = G.manifold
        moved = geometry.embed_sphere_points(m, pts) @ a.reshape(3, 3).T
        return geometry.unembed_sphere_points(m, moved)
    raise ValueError("unknown group kind %r" % G.kind)


def _killing_analytic(G, v, coords):
    w = v.array()
    if G.kind in (KIND_TRANSLATION_RN, KIND_TRANSLATION_TORUS2):
        return np.broadcast_to(w, coords.shape).copy()
    if G.kind == KIND_LINE_FLOW:
        k = np.array([w[0], w[0] * G.slope])
        return np.broadcast_to(k, coords.shape).copy()
    if G.kind == KIND_HYPERBOLIC_AFFINE:
        alpha, beta = w
        out = np.empty_like(coords)
        out[:, 0] = alpha + beta * coords[:, 0]
        out[:, 1] = beta * coords[:, 1]
        return out
    if G.kind == KIND_ROTATION3:
        m = G.manifold
        r = m.radius
        P = geometry.embed_sphere_points(m, coords)
        vel = np.cross(np.broadcast_to(w, P.shape), P)
        wz = r + P[:, 2]
        out = np.empty_like(coords)
        out[:, 0] = 2.0 * r * vel[:, 0] / wz \
            - 2.0 * r * P[:, 0] * vel[:, 2] / (wz * wz)
        out[:, 1] = 2.0 * r * vel[:, 1] / wz \
            - 2.0 * r * P[:, 1] * vel[:, 2] / (wz * wz)
        return out
    raise ValueError("unknown group kind %r" % G.kind)


_FD_LADDER = StepLadder(t0=1e-3, ratio=0.5, depth=6)


def killing_field(G, v, p, analytic=True, ladder=_FD_LADDER):
    """Velocity of the flow t -> exp(t*v).p at t = 0, in the chart frame.

    With analytic=False the derivative is recovered by extrapolating
    second-order central differences, which exercises only the action
    itself; the analytic route uses the differentiated formulas.
    """
    v = _as_algebra(G, v)
    coords = geometry.validate_point(G.manifold, p)
    base = AmbientPoint(coords)
    if analytic:
        comp = _killing_analytic(G, v, coords[None, :])[0]
        return TangentVector(base, comp)
    m = G.manifold
    steps = ladder.steps()
    rows = []
    for t in steps:
        fwd = act_points(G, exp_map(G, v, t), coords[None, :])[0]
        bwd = act_points(G, exp_map(G, v, -t), coords[None, :])[0]
        rows.append(chart_delta(m, fwd, bwd) / (2.0 * t))
    rows = np.asarray(rows)
    comp = [extrapolate_limit(steps, rows[:, k], order=2,
                              context="killing_field[%d]" % k)[0]
            for k in range(coords.size)]
    return TangentVector(base, comp)


# Callers can catch action/chart failures under one name.
DomainError = ChartDomainError
