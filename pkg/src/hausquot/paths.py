"""Path length, orbit homogeneity, speed, and intrinsic distance on the
quotient of a group action.

Paths are polylines of quotient representatives.  Lengths are sums of the
induced metric over consecutive knots; refinements double the knot density
by interpolating in group coordinates (exp-linear between representatives),
giving a monotone nondecreasing length sequence.  The intrinsic distance is
estimated by derivative-free pattern search over interior knot positions.
"""

from dataclasses import dataclass

import numpy as np

from . import groups
from .hausdorff import QuotientPoint, induced_metric, rep_of
from .ladder import Method, two_sided_estimate

__all__ = [
    "QuotientPath", "IterationBudgetExceeded", "interpolate_reps",
    "path_length", "orbit_length_homogeneity", "quotient_speed",
    "intrinsic_distance",
]


class IterationBudgetExceeded(RuntimeError):
    """Raised when the polyline optimizer exhausts its sweep budget before
    the pattern-search step shrinks to convergence; carries the best value
    found so far."""

    def __init__(self, best_value, message=None):
        super().__init__(message or
                         "iteration budget exhausted (best value %.17g)"
                         % best_value)
        self.best_value = float(best_value)


@dataclass(frozen=True)
class QuotientPath:
    """Polyline in the quotient: knots with strictly increasing parameters."""

    knots: tuple
    params: tuple

    def __init__(self, knots, params=None):
        knots = tuple(QuotientPoint(rep_of(k)) for k in knots)
        if len(knots) < 2:
            raise ValueError("a quotient path needs at least two knots")
        if params is None:
            params = tuple(np.linspace(0.0, 1.0, len(knots)))
        else:
            params = tuple(float(t) for t in params)
        if len(params) != len(knots):
            raise ValueError("one parameter value per knot required")
        if any(b <= a for a, b in zip(params, params[1:])):
            raise ValueError("path parameters must be strictly increasing")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "params", params)


def interpolate_reps(G, g1, g2, s):
    """Representative at fraction s of the group-coordinate segment from g1
    to g2: g1 * exp(s * log(g1^-1 g2))."""
    step = groups.log_map(G, groups.compose(G, groups.inverse(G, g1), g2))
    return groups.compose(G, g1, groups.exp_map(G, step, s))


def _segment_sum(S, reps):
    return float(sum(induced_metric(S, a, b) for a, b in zip(reps, reps[1:])))


def _refine(G, reps):
    out = [reps[0]]
    for a, b in zip(reps, reps[1:]):
        out.append(interpolate_reps(G, a, b, 0.5))
        out.append(b)
    return out


def path_length(S, path, refinements=0):
    """Lengths of the nested partitions: one value per refinement level.

    The sequence is nondecreasing (triangle inequality); the gap between
    the last two values is the natural error estimate of the final one.
    """
    if not isinstance(path, QuotientPath):
        path = QuotientPath(path)
    G = S.group
    reps = [rep_of(k) for k in path.knots]
    values = [_segment_sum(S, reps)]
    for _ in range(int(refinements)):
        reps = _refine(G, reps)
        values.append(_segment_sum(S, reps))
    return values


def orbit_length_homogeneity(S, v, a, b, refinements=8):
    """Residual |len(orbit over [a,b]) - (b-a)*len(orbit over [0,1])| with
    both orbit segments partitioned into the same number of pieces.

    The orbit is t -> exp(tv); knots are taken on the orbit itself so the
    check is independent of interpolation branch cuts.
    """
    if not b > a:
        raise ValueError("need b > a")
    v = v if isinstance(v, groups.AlgebraVector) \
        else groups.algebra_vector(S.group, v)
    G = S.group
    segments = 2 ** int(refinements)

    def orbit_length(lo, hi):
        ts = np.linspace(lo, hi, segments + 1)
        reps = [groups.exp_map(G, v, t) for t in ts]
        return _segment_sum(S, reps)

    return abs(orbit_length(a, b) - (b - a) * orbit_length(0.0, 1.0))


def quotient_speed(S, curve, t0, ladder=None):
    """Extrapolated speed of a quotient curve at t0 under the induced metric,
    reporting forward and backward limits and their max."""
    ladder = ladder if ladder is not None else S.default_ladder
    base = rep_of(curve(t0))

    def quotient(dt):
        return induced_metric(S, rep_of(curve(t0 + dt)), base) / abs(dt)

    return two_sided_estimate(quotient, ladder, method=Method.LIMIT_LADDER,
                              fill_radius=S.X.fill_radius,
                              context="quotient_speed[%s]" % S.name)


# --- encoded group coordinates for the polyline optimizer ----------------

def _encode(G, g):
    p = g.array()
    if G.kind == groups.KIND_HYPERBOLIC_AFFINE:
        return np.array([p[0], np.log(p[1])])
    if G.kind == groups.KIND_ROTATION3:
        return groups.log_map(G, g).array()
    return p


def _decode(G, x):
    if G.kind == groups.KIND_HYPERBOLIC_AFFINE:
        return groups.element(G, (x[0], np.exp(x[1])))
    if G.kind == groups.KIND_ROTATION3:
        return groups.exp_map(G, groups.algebra_vector(G, x))
    return groups.element(G, x)


_STEP_STOP = 1e-6
_RESTARTS = 3


def intrinsic_distance(S, g1, g2, knots=3, iters=200, seed=0):
    """Upper estimate of the intrinsic (path-infimum) metric between two
    cosets: length of the best polyline found by pattern search over the
    positions of `knots` interior knots in group coordinates.

    Always at least the induced metric of the endpoints up to roundoff (a
    polyline length cannot undercut the direct distance).  Raises
    IterationBudgetExceeded, carrying the best value, if no restart's step
    size shrinks to convergence within `iters` coordinate sweeps.
    """
    G = S.group
    g1 = rep_of(g1)
    g2 = rep_of(g2)
    knots = int(knots)
    if knots < 0:
        raise ValueError("knots must be nonnegative")
    if knots == 0:
        return induced_metric(S, g1, g2)
    rng = np.random.default_rng(seed)
    x1 = _encode(G, g1)
    sep = induced_metric(S, g1, g2)
    if sep == 0.0:
        return 0.0
    fractions = np.linspace(0.0, 1.0, knots + 2)[1:-1]
    base_inner = np.array([_encode(G, interpolate_reps(G, g1, g2, s))
                           for s in fractions])
    dim = x1.size

    best_value = None
    converged = False
    for restart in range(_RESTARTS):
        inner = base_inner.copy()
        if restart > 0:
            inner = inner + rng.normal(scale=0.1 * sep, size=inner.shape)
        reps = [g1] + [_decode(G, row) for row in inner] + [g2]
        seglen = [induced_metric(S, a, b) for a, b in zip(reps, reps[1:])]
        value = sum(seglen)
        step = 0.1 * sep
        sweeps = 0
        while step >= _STEP_STOP and sweeps < iters:
            improved = False
            for i in range(knots):
                for j in range(dim):
                    for sign in (1.0, -1.0):
                        trial = inner[i].copy()
                        trial[j] += sign * step
                        rep = _decode(G, trial)
                        # Only the two segments touching knot i change.
                        left = induced_metric(S, reps[i], rep)
                        right = induced_metric(S, rep, reps[i + 2])
                        delta = left + right - seglen[i] - seglen[i + 1]
                        if delta < -1e-15:
                            inner[i] = trial
                            reps[i + 1] = rep
                            seglen[i] = left
                            seglen[i + 1] = right
                            value += delta
                            improved = True
                            break
            sweeps += 1
            if not improved:
                step *= 0.5
        if step < _STEP_STOP:
            converged = True
        value = sum(seglen)
        if best_value is None or value < best_value:
            best_value = value
    if not converged:
        raise IterationBudgetExceeded(best_value)
    return float(best_value)
