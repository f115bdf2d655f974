"""Finsler norm recovery: limit ladder, sup of Killing fields, continuous
sup estimator, and the property suites tying them together."""

import math

import numpy as np
import pytest

from hausquot import groups
from hausquot.finsler import (Scenario, agreement_bound,
                              biinvariant_bound_check, closed_form_estimate,
                              estimate_all, finsler_limit,
                              finsler_sup_continuous, finsler_sup_killing,
                              invariant_norm_check, max_pairwise_gap,
                              norm_axiom_check, pairwise_agreement_ok)
from hausquot.hausdorff import CompactSample
from hausquot.ladder import Method, NonConvergent, NormEstimate, StepLadder
from hausquot.scenarios import build_scenario


def segment_scenario(n_pts=11):
    """Unit segment along e1 in the plane, full tangent data everywhere."""
    G = groups.translation_rn(2)
    pts = [(i / (n_pts - 1), 0.0) for i in range(n_pts)]
    bases = {i: [(1.0, 0.0)] for i in range(n_pts)}
    X = CompactSample(G.manifold, pts, fill_radius=0.5 / (n_pts - 1),
                      tangent_basis=bases)
    return Scenario(name="segment", group=G, X=X)


def circle_scenario(n_pts=64):
    """Unit circle in the plane sampled uniformly, with tangent lines."""
    G = groups.translation_rn(2)
    ang = 2.0 * math.pi * np.arange(n_pts) / n_pts
    pts = np.column_stack([np.cos(ang), np.sin(ang)])
    bases = {i: [(-math.sin(a), math.cos(a))] for i, a in enumerate(ang)}
    X = CompactSample(G.manifold, pts,
                      fill_radius=math.pi / n_pts,
                      tangent_basis=bases)
    return Scenario(name="circle", group=G, X=X)


# --- individual estimators -------------------------------------------------

def test_translation_norm_all_routes():
    S = build_scenario("rn-translation")
    v = groups.algebra_vector(S.group, (3.0, 4.0))
    assert finsler_limit(S, v).value == pytest.approx(5.0, abs=1e-9)
    assert finsler_sup_killing(S, v).value == pytest.approx(5.0, abs=1e-12)
    assert finsler_sup_continuous(S, v).value == pytest.approx(5.0, abs=1e-9)
    assert closed_form_estimate(S, v).value == 5.0


def test_killing_route_reports_method_and_zero_ladder():
    S = build_scenario("rn-translation")
    est = finsler_sup_killing(S, (1.0, 0.0))
    assert est.method is Method.SUP_KILLING
    assert est.ladder_values == []
    assert est.error_estimate < 1e-10


def test_limit_route_reports_sides():
    S = build_scenario("hyperbolic-two-points")
    est = finsler_limit(S, (0.0, 1.0))
    assert est.forward is not None and est.backward is not None
    assert est.value == max(est.forward, est.backward)
    assert len(est.ladder_values) == 2 * S.default_ladder.depth


def test_hyperbolic_norm_against_branch_values():
    S = build_scenario("hyperbolic-two-points")
    cases = {(1.0, 0.0): 1.0,
             (0.0, 1.0): math.sqrt(2.0),
             (0.0, -1.0): math.sqrt(2.0),
             (-1.0, 0.0): 1.0}
    for comps, want in cases.items():
        est = finsler_sup_killing(S, comps)
        assert est.value == pytest.approx(want, rel=1e-12)
        lim = finsler_limit(S, comps)
        assert lim.value == pytest.approx(want, rel=1e-3)


def test_hyperbolic_tie_indices_on_symmetric_direction():
    # pure-alpha directions excite both sample points identically, so the
    # max is attained twice and both indices are reported
    S = build_scenario("hyperbolic-two-points")
    est = finsler_sup_killing(S, (1.0, 0.0))
    assert est.argmax_indices == (0, 1)
    est2 = finsler_sup_killing(S, (0.3, 1.0))
    assert len(est2.argmax_indices) == 1


def test_torus_axis_direction_is_exact():
    S = build_scenario("torus-minus-square")
    est = finsler_sup_killing(S, (1.0, 0.0))
    assert est.value == pytest.approx(1.0, abs=1e-12)
    lim = finsler_limit(S, (1.0, 0.0))
    assert lim.value == pytest.approx(1.0, abs=1e-9)


def test_torus_diagonal_direction():
    S = build_scenario("torus-minus-square")
    est = estimate_all(S, (1.0, 1.0))
    assert est["closed_form"].value == 1.0
    assert est["sup_killing"].value == pytest.approx(1.0, abs=1e-10)
    assert est["limit"].value == pytest.approx(1.0, abs=1e-2)


def test_sphere_norm_depends_only_on_equatorial_part():
    S = build_scenario("sphere-cap")
    a = finsler_sup_killing(S, (0.6, 0.8, 0.0))
    b = finsler_sup_killing(S, (0.6, 0.8, 5.0))
    # the boundary-ring azimuths are discrete, so the max of |cos| misses
    # 1 by O(spacing^2); the polar component must drop out exactly
    assert a.value == pytest.approx(1.0, rel=2e-3)
    assert abs(1.0 - a.value) <= 2.0 * a.error_estimate + 1e-6
    assert b.value == pytest.approx(a.value, abs=1e-12)


def test_sphere_limit_agrees_off_stabilizer():
    S = build_scenario("sphere-cap")
    est = estimate_all(S, (1.0, 0.0, 0.0))
    assert pairwise_agreement_ok(est)
    assert est["limit"].value == pytest.approx(1.0, rel=2e-2)


def test_sphere_limit_raises_near_stabilizer():
    # below the sample resolution the ladder sees the full Killing speed of
    # an almost-stabilizing rotation and cannot settle; this must surface
    # as NonConvergent rather than a silently wrong value
    S = build_scenario("sphere-cap")
    w3 = math.sqrt(1.0 - 0.02 ** 2)
    with pytest.raises(NonConvergent):
        finsler_limit(S, (0.02, 0.0, w3))


def test_flow_norm_scales_with_slope_speed():
    S = build_scenario("irrational-flow")
    est = estimate_all(S, (0.5,))
    want = 0.5 * math.sqrt(3.0)
    for key in ("limit", "sup_killing", "sup_continuous", "closed_form"):
        assert est[key].value == pytest.approx(want, abs=1e-9), key


def test_ladder_override_is_honored():
    S = build_scenario("rn-translation")
    short = StepLadder(1e-3, 0.5, 3)
    est = finsler_limit(S, (1.0, 0.0), ladder=short)
    assert len(est.ladder_values) == 2 * short.depth


# --- agreement utilities ---------------------------------------------------

def test_agreement_bound_floor_and_scaling():
    a = NormEstimate(1.0, Method.LIMIT_LADDER, error_estimate=0.0)
    b = NormEstimate(1.0, Method.SUP_KILLING, error_estimate=0.0)
    assert agreement_bound(a, b) == 1e-3
    c = NormEstimate(1.0, Method.LIMIT_LADDER, error_estimate=0.01)
    assert agreement_bound(c, b) == pytest.approx(0.03)


def test_max_pairwise_gap():
    ests = {
        "x": NormEstimate(1.0, Method.LIMIT_LADDER),
        "y": NormEstimate(1.2, Method.SUP_KILLING),
        "z": NormEstimate(0.9, Method.CLOSED_FORM),
    }
    assert max_pairwise_gap(ests) == pytest.approx(0.3)


# --- normal projection and the bi-invariant bound --------------------------

def test_segment_normal_field_reaches_bound():
    S = segment_scenario()
    rep = biinvariant_bound_check(S, (0.0, 1.0))
    assert rep.ok
    assert rep.details["equality_expected"]
    assert rep.details["equality_observed"]
    assert rep.details["value"] == pytest.approx(1.0, abs=1e-12)


def test_segment_tangent_field_strictly_below_bound():
    S = segment_scenario()
    rep = biinvariant_bound_check(S, (1.0, 0.0))
    assert rep.ok
    assert not rep.details["equality_expected"]
    assert not rep.details["equality_observed"]
    assert rep.details["value"] == pytest.approx(0.0, abs=1e-12)
    assert rep.details["bound"] == pytest.approx(1.0, abs=1e-12)


def test_circle_translation_norm_attained_at_normal_points():
    S = circle_scenario()
    rep = biinvariant_bound_check(S, (1.0, 0.0))
    assert rep.ok
    assert rep.details["equality_expected"]
    # the killing estimate itself: max |cos(theta)| over the sample = 1,
    # attained at theta = 0 and theta = pi
    est = finsler_sup_killing(S, (1.0, 0.0))
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert set(est.argmax_indices) == {0, len(S.X) // 2}


def test_circle_oblique_direction_projects_radially():
    S = circle_scenario(n_pts=360)
    v = (math.cos(0.3), math.sin(0.3))
    est = finsler_sup_killing(S, v)
    # some sample angle is nearly parallel to v, so the projected max is
    # within the ring discretization of the full norm
    assert est.value == pytest.approx(1.0, abs=1e-4)


def test_biinvariant_check_rejects_wrong_group():
    S = build_scenario("hyperbolic-two-points")
    with pytest.raises(ValueError):
        biinvariant_bound_check(S, (1.0, 0.0))


def test_degenerate_basis_vectors_are_dropped():
    # a zero row in the padded basis stack must not poison the projection
    G = groups.translation_rn(2)
    X = CompactSample(G.manifold, [(0.0, 0.0), (1.0, 0.0)],
                      tangent_basis={0: [(1.0, 0.0)]})
    S = Scenario(name="half-based", group=G, X=X)
    est = finsler_sup_killing(S, (1.0, 0.0))
    # point 0 projects the field away; point 1 has no declared tangent data
    # and keeps the full norm
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert est.argmax_indices == (1,)


# --- property suites -------------------------------------------------------

@pytest.mark.parametrize("name", ["rn-translation", "hyperbolic-two-points",
                                  "irrational-flow"])
def test_norm_axioms_analytic_path(name):
    S = build_scenario(name)
    rep = norm_axiom_check(S, trials=60, seed=2, analytic=True)
    assert rep.ok, rep.residuals
    assert rep.worst() <= 1e-9


def test_norm_axioms_ladder_path_hyperbolic():
    S = build_scenario("hyperbolic-two-points")
    rep = norm_axiom_check(S, trials=40, seed=2, analytic=False)
    assert rep.ok, rep.residuals
    assert rep.worst() <= 1e-4


def test_invariant_norm_check_base_point_free():
    for name in ("hyperbolic-two-points", "torus-minus-square"):
        S = build_scenario(name)
        rep = invariant_norm_check(S, trials=6, seed=4)
        assert rep.ok, (name, rep.residuals)
        assert rep.worst() <= 1e-8
