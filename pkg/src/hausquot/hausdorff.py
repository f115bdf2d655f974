"""Hausdorff distance between finite samples and the induced quotient metric.

A compact subset X of a model manifold is represented by a finite
CompactSample with a declared fill radius (how far a point of the true set
can be from its nearest sample).  A group orbit coset is represented by any
group element; the induced metric between two cosets is the Hausdorff
distance between the correspondingly moved samples, which is independent of
the chosen representatives and invariant under the group action.

The pairwise scans run on monotone surrogates through the selected kernel
backend; sampled values of the Hausdorff distance differ from the true-set
value by at most twice the fill radius.
"""

from dataclasses import dataclass

import numpy as np

from . import groups
from .geometry import (AmbientPoint, TangentVector, kernel_array,
                       kernel_transform, riemannian_inner, validate_point)
from .kernels import directed_distance, directed_surrogate
from .ladder import CheckReport

__all__ = [
    "CompactSample", "QuotientPoint", "hausdorff_distance",
    "sup_min_distance", "induced_metric", "invariance_check",
    "metric_axiom_check", "invariance_suite",
]

_BASIS_ORTHO_TOL = 1e-8


def _freeze(arr):
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


class CompactSample:
    """Finite sample of a compact subset of a model manifold.

    points         -- tuple of AmbientPoint
    fill_radius    -- declared max distance from the true set to the sample
    tangent_basis  -- optional dict {point index: tuple of TangentVector},
                      each an orthonormal basis of the set's tangent space
                      at that sample point in the Riemannian metric
    """

    def __init__(self, manifold, points, fill_radius=0.0, tangent_basis=None):
        self.manifold = manifold
        coords = np.atleast_2d(np.asarray(
            [p.array() if isinstance(p, AmbientPoint) else p for p in points],
            dtype=float))
        if coords.size == 0:
            raise ValueError("a compact sample needs at least one point")
        for row in coords:
            validate_point(manifold, row)
        self.coords = _freeze(coords)
        self.points = tuple(AmbientPoint(row) for row in coords)
        fill_radius = float(fill_radius)
        if not (np.isfinite(fill_radius) and fill_radius >= 0.0):
            raise ValueError("fill_radius must be a nonnegative real")
        self.fill_radius = fill_radius
        self.packed = _freeze(kernel_array(manifold, coords))
        self.tangent_basis = None
        self.bases_packed = None
        if tangent_basis:
            self.tangent_basis = self._validate_bases(tangent_basis)
            self.bases_packed = self._pack_bases()

    def _validate_bases(self, tangent_basis):
        out = {}
        for idx, vecs in tangent_basis.items():
            idx = int(idx)
            if not 0 <= idx < len(self.points):
                raise ValueError("tangent basis index %d out of range" % idx)
            base = self.points[idx]
            tvs = []
            for v in vecs:
                if isinstance(v, TangentVector):
                    tvs.append(TangentVector(base, v.components))
                else:
                    tvs.append(TangentVector(base, v))
            for i, u in enumerate(tvs):
                for j, w in enumerate(tvs):
                    val = riemannian_inner(self.manifold, base, u.array(),
                                           w.array())
                    want = 1.0 if i == j else 0.0
                    if abs(val - want) > _BASIS_ORTHO_TOL:
                        raise ValueError(
                            "tangent basis at point %d is not orthonormal in "
                            "the Riemannian metric (entry (%d,%d) = %.3e)"
                            % (idx, i, j, val))
            out[idx] = tuple(tvs)
        return out

    def _pack_bases(self):
        n, d = self.coords.shape
        kmax = max(len(v) for v in self.tangent_basis.values())
        packed = np.zeros((n, kmax, d))
        for idx, vecs in self.tangent_basis.items():
            for k, tv in enumerate(vecs):
                packed[idx, k] = tv.array()
        return _freeze(packed)

    def __len__(self):
        return len(self.points)

    def describe(self):
        """Plain-dict summary used by the CLI check tables."""
        return {
            "kind": self.manifold.kind,
            "n_points": len(self.points),
            "fill_radius": self.fill_radius,
            "with_tangent_data": self.tangent_basis is not None,
        }


@dataclass(frozen=True)
class QuotientPoint:
    """A coset of the sample's symmetry group, held as one representative."""

    rep: groups.GroupElement


def rep_of(x):
    """Group element behind either a QuotientPoint or a bare element."""
    if isinstance(x, QuotientPoint):
        return x.rep
    if isinstance(x, groups.GroupElement):
        return x
    raise ValueError("expected a QuotientPoint or GroupElement, got %r"
                     % (x,))


def _packed(m, A):
    if isinstance(A, CompactSample):
        return A.packed
    return kernel_array(m, np.asarray(A, dtype=float))


def hausdorff_distance(m, A, B, backend=None):
    """Hausdorff distance between two finite samples on the same manifold."""
    pa, pb = _packed(m, A), _packed(m, B)
    s_ab, _ = directed_surrogate(m, pa, pb, backend=backend)
    s_ba, _ = directed_surrogate(m, pb, pa, backend=backend)
    return kernel_transform(m, max(s_ab, s_ba))


def sup_min_distance(m, A, B, backend=None):
    """Directed value max_{a in A} min_{b in B} d(a,b) with its argmax index."""
    return directed_distance(m, _packed(m, A), _packed(m, B), backend=backend)


def moved_packed(S, g):
    """Kernel-packed image of the scenario sample under a group element."""
    m = S.group.manifold
    return kernel_array(m, groups.act_points(S.group, rep_of(g), S.X.coords))


def induced_metric(S, g1, g2, backend=None):
    """Induced Hausdorff metric between two cosets of the scenario group."""
    m = S.group.manifold
    pa = moved_packed(S, g1)
    pb = moved_packed(S, g2)
    s_ab, _ = directed_surrogate(m, pa, pb, backend=backend)
    s_ba, _ = directed_surrogate(m, pb, pa, backend=backend)
    return kernel_transform(m, max(s_ab, s_ba))


def invariance_check(S, a, g, h):
    """Residual |d_X(ag, ah) - d_X(g, h)|; zero for actions by isometries."""
    G = S.group
    a = rep_of(a)
    g = rep_of(g)
    h = rep_of(h)
    base = induced_metric(S, g, h)
    moved = induced_metric(S, groups.compose(G, a, g), groups.compose(G, a, h))
    return abs(moved - base)


def metric_axiom_check(S, trials=500, seed=0, tol=1e-10):
    """Symmetry, identity, and triangle residuals of the induced metric over
    random element triples drawn by the scenario's sampler."""
    rng = np.random.default_rng(seed)
    worst = {"symmetry": 0.0, "triangle": 0.0, "identity": 0.0}
    for _ in range(int(trials)):
        g = S.element_sampler(rng)
        h = S.element_sampler(rng)
        k = S.element_sampler(rng)
        d_gh = induced_metric(S, g, h)
        d_hg = induced_metric(S, h, g)
        d_hk = induced_metric(S, h, k)
        d_gk = induced_metric(S, g, k)
        worst["symmetry"] = max(worst["symmetry"], abs(d_gh - d_hg))
        worst["triangle"] = max(worst["triangle"], d_gk - d_gh - d_hk)
        worst["identity"] = max(worst["identity"], induced_metric(S, g, g))
    worst["triangle"] = max(worst["triangle"], 0.0)
    ok = all(r <= tol for r in worst.values())
    return CheckReport(name="metric-axioms[%s]" % S.name, residuals=worst,
                       tolerance=tol, ok=ok)


def invariance_suite(S, trials=200, seed=0, tol=1e-10):
    """Worst G-invariance residual over random (a, g, h) triples."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(int(trials)):
        a = S.element_sampler(rng)
        g = S.element_sampler(rng)
        h = S.element_sampler(rng)
        worst = max(worst, invariance_check(S, a, g, h))
    return CheckReport(name="invariance[%s]" % S.name,
                       residuals={"invariance": worst}, tolerance=tol,
                       ok=worst <= tol)
