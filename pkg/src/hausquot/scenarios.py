"""Executable catalog of worked scenarios.

Each builder assembles a Scenario (group + manifold + sampled compact set +
analytic closed form for the quotient norm) together with a declared fill
radius and a default step ladder tuned to the sampling scale.  The registry
maps the stable CLI names to builders, default parameters, and a table of
expected values replayed by the test suite.

Provenance tags on expected rows:
  analytic -- value given by a closed formula for this scenario
  oracle   -- value computed by an independent elementary calculation
  direct   -- immediate consequence of the definitions (identity cases)
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import groups
from .finsler import Scenario, finsler_limit, finsler_sup_killing
from .hausdorff import CompactSample, induced_metric
from .ladder import DEFAULT_LADDER, StepLadder

__all__ = [
    "ExpectedEntry", "ScenarioSpec", "SCENARIO_NAMES", "registry",
    "build_scenario", "expected_table", "replay",
    "build_rn_translation", "build_torus_minus_square",
    "build_hyperbolic_two_points", "build_sphere_cap",
    "build_irrational_flow",
]


@dataclass(frozen=True)
class ExpectedEntry:
    """One replayable expectation: an operation, inputs, value, tolerance."""

    label: str
    op: str            # induced | finsler_limit | finsler_killing |
    #                    closed_form | orbit_speed | window_search
    inputs: dict
    expected: object   # float, or bool for window_search
    tol: float
    provenance: str


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    builder: object
    defaults: dict
    expected: tuple = field(default=())

    def build(self, **overrides):
        params = dict(self.defaults)
        params.update(overrides)
        return self.builder(**params)


# --- builders --------------------------------------------------------------

def _comps(v):
    """Raw component array of an algebra vector or bare sequence."""
    return np.asarray(getattr(v, "components", v), dtype=float)


def _default_rn_points(n):
    second = [0.0] * n
    second[0] = 1.0
    if n >= 2:
        second[1] = 3.0
    return [[0.0] * n, second]


def build_rn_translation(n=2, X_points=None):
    """Translations of Euclidean n-space; the quotient metric is Euclidean."""
    n = int(n)
    if n < 1:
        raise ValueError("dimension must be >= 1")
    G = groups.translation_rn(n)
    if X_points is None:
        X_points = _default_rn_points(n)
    X = CompactSample(G.manifold, X_points, fill_radius=0.0)

    def sampler(rng):
        return groups.element(G, rng.standard_normal(n))

    return Scenario(
        name="rn-translation", group=G, X=X,
        closed_form=lambda v: float(np.linalg.norm(_comps(v))),
        default_ladder=DEFAULT_LADDER,
        element_sampler=sampler,
        notes="exact scenario: finite set, no sampling error")


def build_torus_minus_square(grid_n=64):
    """Flat torus with the open middle square (1/4,3/4)^2 removed.

    The complement is sampled on the full grid_n x grid_n lattice restricted
    to the set (the square's boundary belongs to the set and must land on
    lattice points, hence grid_n % 4 == 0).  Edge samples carry the edge
    tangent line; bulk and corner samples carry the full tangent plane (a
    reflex corner's tangent cone spans the plane).
    """
    grid_n = int(grid_n)
    if grid_n < 32:
        raise ValueError("grid_n must be at least 32")
    if grid_n % 4 != 0:
        raise ValueError("grid_n must be a multiple of 4 so the square's "
                         "boundary lies on the sample lattice")
    G = groups.translation_torus2()
    h = 1.0 / grid_n
    lo, hi = grid_n // 4, (3 * grid_n) // 4
    pts = []
    bases = {}
    for i in range(grid_n):
        for j in range(grid_n):
            strictly_inside = lo < i < hi and lo < j < hi
            if strictly_inside:
                continue
            idx = len(pts)
            pts.append((i * h, j * h))
            on_v = i in (lo, hi) and lo <= j <= hi
            on_h = j in (lo, hi) and lo <= i <= hi
            if on_v and not on_h:
                bases[idx] = [(0.0, 1.0)]
            elif on_h and not on_v:
                bases[idx] = [(1.0, 0.0)]
            else:
                bases[idx] = [(1.0, 0.0), (0.0, 1.0)]
    X = CompactSample(G.manifold, pts,
                      fill_radius=math.sqrt(2.0) / (2.0 * grid_n),
                      tangent_basis=bases)
    # Rungs stay multiples of the lattice spacing: lattice-aligned shifts
    # have no tangential snapping error.  The top rung keeps the shift well
    # inside the near-identity window of the max-norm formula.
    t0 = 8.0 / grid_n if 8.0 / grid_n <= 0.125 else 4.0 / grid_n
    return Scenario(
        name="torus-minus-square", group=G, X=X,
        closed_form=lambda v: float(np.max(np.abs(_comps(v)))),
        default_ladder=StepLadder(t0, 0.5, 3),
        element_sampler=lambda rng: groups.element(G, rng.uniform(0, 1, 2)),
        notes="sampled scenario: values carry the declared fill radius")


def build_hyperbolic_two_points(a=1.0, b=1.0):
    """The affine group of the boundary line acting on the upper half-plane,
    with the two-point set {(-a, b), (a, b)}."""
    a = float(a)
    b = float(b)
    if not (a > 0.0 and b > 0.0):
        raise ValueError("need a > 0 and b > 0")
    G = groups.hyperbolic_affine()
    X = CompactSample(G.manifold, [(-a, b), (a, b)], fill_radius=0.0)

    def closed_form(v):
        alpha, beta = _comps(v)
        return math.hypot(abs(alpha) + a * abs(beta), b * beta) / b

    def sampler(rng):
        return groups.element(G, (rng.normal(scale=0.7),
                                  math.exp(rng.normal(scale=0.5))))

    return Scenario(
        name="hyperbolic-two-points", group=G, X=X,
        closed_form=closed_form,
        default_ladder=DEFAULT_LADDER,
        element_sampler=sampler,
        notes="exact scenario; the norm is non-smooth across beta = 0")


def build_sphere_cap(cap_radius=0.4, grid_n=12):
    """Rotations of the unit sphere acting on a closed geodesic cap around
    the north pole, sampled on concentric geodesic circles.

    Rotations are restricted to angles below cap_radius/2 so the moved cap
    stays inside the regime where the quotient distance equals the distance
    between cap centers.
    """
    cap_radius = float(cap_radius)
    grid_n = int(grid_n)
    if not 0.0 < cap_radius < math.pi / 4.0:
        raise ValueError("cap_radius must lie in (0, pi/4)")
    if grid_n < 4:
        raise ValueError("need at least 4 rings")
    G = groups.rotation3(radius=1.0)
    step = cap_radius / grid_n
    pts = []
    bases = {}
    for k in range(grid_n + 1):
        rho = k * step                      # geodesic radius
        chart_r = 2.0 * math.tan(rho / 2.0)
        count = 1 if k == 0 else max(1, math.ceil(
            2.0 * math.pi * math.sin(rho) / step))
        lam = 4.0 / (4.0 + chart_r * chart_r)
        for jj in range(count):
            theta = 2.0 * math.pi * jj / count
            idx = len(pts)
            pts.append((chart_r * math.cos(theta), chart_r * math.sin(theta)))
            if k == grid_n:
                bases[idx] = [(-math.sin(theta) / lam, math.cos(theta) / lam)]
            else:
                bases[idx] = [(1.0 / lam, 0.0), (0.0, 1.0 / lam)]
    X = CompactSample(G.manifold, pts, fill_radius=step, tangent_basis=bases)

    def sampler(rng):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(0.01, 0.45 * cap_radius)
        return groups.exp_map(G, groups.algebra_vector(G, angle * axis))

    return Scenario(
        name="sphere-cap", group=G, X=X,
        closed_form=lambda v: float(math.hypot(_comps(v)[0], _comps(v)[1])),
        default_ladder=StepLadder(min(0.15, 0.45 * cap_radius / 0.9), 0.5, 3),
        t_max=cap_radius / 2.0,
        element_sampler=sampler,
        notes="sampled scenario; rotations about the polar axis fix the cap")


def build_irrational_flow(slope=math.sqrt(2.0)):
    """The line flow of irrational slope on the flat torus with a one-point
    set; orbits are dense, quotient balls are unbounded."""
    G = groups.line_flow(slope)
    X = CompactSample(G.manifold, [(0.0, 0.0)], fill_radius=0.0)
    speed = math.hypot(1.0, G.slope)
    return Scenario(
        name="irrational-flow", group=G, X=X,
        closed_form=lambda v: float(abs(_comps(v)[0]) * speed),
        default_ladder=DEFAULT_LADDER,
        element_sampler=lambda rng: groups.element(G, [rng.normal()]),
        notes="exact scenario; singleton set reduces d_X to a point distance")


# --- registry and expected tables -----------------------------------------

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)


def _rot_x(angle):
    c, s = math.cos(angle), math.sin(angle)
    return (1.0, 0.0, 0.0,
            0.0, c, -s,
            0.0, s, c)


def _rot_z(angle):
    c, s = math.cos(angle), math.sin(angle)
    return (c, -s, 0.0,
            s, c, 0.0,
            0.0, 0.0, 1.0)


_RN_EXPECTED = (
    ExpectedEntry("translate-by-(3,4)", "induced",
                  {"g1": (0.0, 0.0), "g2": (3.0, 4.0)}, 5.0, 1e-9,
                  "analytic"),
    ExpectedEntry("identity-pair", "induced",
                  {"g1": (0.5, -0.25), "g2": (0.5, -0.25)}, 0.0, 1e-12,
                  "direct"),
    ExpectedEntry("limit-(3,4)", "finsler_limit",
                  {"v": (3.0, 4.0)}, 5.0, 1e-6, "analytic"),
)

_TORUS_EXPECTED = (
    ExpectedEntry("small-shift", "induced",
                  {"g1": (0.05, 0.02), "g2": (0.0, 0.0)}, 0.05,
                  None, "analytic"),     # tol filled with 2*fill at build
    ExpectedEntry("identity-pair", "induced",
                  {"g1": (0.0, 0.0), "g2": (0.0, 0.0)}, 0.0, 1e-12,
                  "direct"),
    ExpectedEntry("diagonal-direction", "finsler_limit",
                  {"v": (1.0, 1.0)}, 1.0, 1e-2, "analytic"),
    ExpectedEntry("axis-direction-killing", "finsler_killing",
                  {"v": (1.0, 0.0)}, 1.0, 1e-9, "oracle"),
)

_HYP_EXPECTED = (
    ExpectedEntry("theta-0", "closed_form",
                  {"v": (1.0, 0.0)}, 1.0, 1e-12, "analytic"),
    ExpectedEntry("theta-half-pi", "closed_form",
                  {"v": (0.0, 1.0)}, _SQRT2, 1e-12, "analytic"),
    ExpectedEntry("theta-half-pi-limit", "finsler_limit",
                  {"v": (0.0, 1.0)}, _SQRT2, 1.5e-3, "analytic"),
    ExpectedEntry("theta-0-killing", "finsler_killing",
                  {"v": (1.0, 0.0)}, 1.0, 1e-9, "analytic"),
)

_SPHERE_EXPECTED = (
    ExpectedEntry("rotate-0.1-about-x", "induced",
                  {"g1": _rot_x(0.1), "g2": None}, 0.1, None, "analytic"),
    ExpectedEntry("identity", "induced",
                  {"g1": None, "g2": None}, 0.0, 1e-12, "direct"),
    ExpectedEntry("polar-axis-fixes-cap", "induced",
                  {"g1": _rot_z(0.15), "g2": None}, 0.0, None, "direct"),
)

_FLOW_EXPECTED = (
    ExpectedEntry("t-0.01", "induced",
                  {"g1": (0.01,), "g2": (0.0,)}, 0.01 * _SQRT3, 1e-4,
                  "oracle"),
    ExpectedEntry("identity", "induced",
                  {"g1": (0.0,), "g2": (0.0,)}, 0.0, 1e-12, "direct"),
    ExpectedEntry("speed-sqrt3", "orbit_speed",
                  {"v": (1.0,), "t0": 0.0}, _SQRT3, 1e-3, "analytic"),
    ExpectedEntry("returns-close", "window_search",
                  {"lo": 100.0, "hi": 200.0, "step": 1e-3,
                   "threshold": 0.05}, True, 0.0, "analytic"),
)

_REGISTRY = {
    "rn-translation": ScenarioSpec(
        "rn-translation", build_rn_translation,
        {"n": 2, "X_points": None}, _RN_EXPECTED),
    "torus-minus-square": ScenarioSpec(
        "torus-minus-square", build_torus_minus_square,
        {"grid_n": 64}, _TORUS_EXPECTED),
    "hyperbolic-two-points": ScenarioSpec(
        "hyperbolic-two-points", build_hyperbolic_two_points,
        {"a": 1.0, "b": 1.0}, _HYP_EXPECTED),
    "sphere-cap": ScenarioSpec(
        "sphere-cap", build_sphere_cap,
        {"cap_radius": 0.4, "grid_n": 12}, _SPHERE_EXPECTED),
    "irrational-flow": ScenarioSpec(
        "irrational-flow", build_irrational_flow, {}, _FLOW_EXPECTED),
}

SCENARIO_NAMES = tuple(sorted(_REGISTRY))


def registry():
    return dict(_REGISTRY)


def build_scenario(name, **overrides):
    if name not in _REGISTRY:
        raise KeyError("unknown scenario %r; known: %s"
                       % (name, ", ".join(SCENARIO_NAMES)))
    return _REGISTRY[name].build(**overrides)


def expected_table(name):
    if name not in _REGISTRY:
        raise KeyError("unknown scenario %r" % name)
    return _REGISTRY[name].expected


def _entry_tol(S, entry):
    if entry.tol is not None:
        return entry.tol
    return 2.0 * S.X.fill_radius


def _element_from(S, params):
    if params is None:
        return groups.identity(S.group)
    return groups.element(S.group, params)


def _window_search(S, lo, hi, step, threshold):
    """Scan t over [lo, hi] for a quotient point within `threshold` of the
    identity coset.  The singleton-set scan is vectorized; any hit is then
    confirmed through the generic metric path."""
    G = S.group
    ts = np.arange(lo, hi, step)
    if len(S.X) == 1 and G.kind == groups.KIND_LINE_FLOW:
        base = S.X.coords[0]
        xs = np.mod(base[0] + ts, 1.0)
        ys = np.mod(base[1] + ts * G.slope, 1.0)
        dx = np.abs(xs - base[0])
        dy = np.abs(ys - base[1])
        dx = np.minimum(dx, 1.0 - dx)
        dy = np.minimum(dy, 1.0 - dy)
        d = np.hypot(dx, dy)
        k = int(np.argmin(d))
        if d[k] >= threshold:
            return False, float(d[k])
        t_hit = float(ts[k])
        confirmed = induced_metric(S, groups.element(G, [t_hit]),
                                   groups.identity(G))
        return bool(confirmed < threshold), confirmed
    best = math.inf
    for t in ts:
        d = induced_metric(S, groups.element(G, [float(t)]),
                           groups.identity(G))
        best = min(best, d)
        if d < threshold:
            return True, d
    return False, best


def replay(S, entry):
    """Evaluate one expected-table entry; returns (observed, ok)."""
    tol = _entry_tol(S, entry)
    if entry.op == "induced":
        obs = induced_metric(S, _element_from(S, entry.inputs["g1"]),
                             _element_from(S, entry.inputs["g2"]))
        return obs, abs(obs - entry.expected) <= tol
    if entry.op == "finsler_limit":
        obs = finsler_limit(S, entry.inputs["v"]).value
        return obs, abs(obs - entry.expected) <= tol
    if entry.op == "finsler_killing":
        obs = finsler_sup_killing(S, entry.inputs["v"]).value
        return obs, abs(obs - entry.expected) <= tol
    if entry.op == "closed_form":
        obs = float(S.closed_form(entry.inputs["v"]))
        return obs, abs(obs - entry.expected) <= tol
    if entry.op == "orbit_speed":
        from .paths import quotient_speed
        v = groups.algebra_vector(S.group, entry.inputs["v"])
        curve = lambda t: groups.exp_map(S.group, v, t)
        obs = quotient_speed(S, curve, entry.inputs["t0"]).value
        return obs, abs(obs - entry.expected) <= tol
    if entry.op == "window_search":
        found, closest = _window_search(S, entry.inputs["lo"],
                                        entry.inputs["hi"],
                                        entry.inputs["step"],
                                        entry.inputs["threshold"])
        return found, found == entry.expected
    raise ValueError("unknown expected-entry op %r" % entry.op)
