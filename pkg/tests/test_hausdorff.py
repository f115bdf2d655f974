"""Hausdorff distances between samples and the induced quotient metric."""

import math

import numpy as np
import pytest

from hausquot import geometry, groups
from hausquot.geometry import AmbientPoint, distance, euclidean, flat_torus2
from hausquot.hausdorff import (CompactSample, QuotientPoint,
                                hausdorff_distance, induced_metric,
                                invariance_check, metric_axiom_check,
                                sup_min_distance)
from hausquot.scenarios import build_scenario

E2 = euclidean(2)


def brute_force_hausdorff(m, A, B):
    """Independent oracle: all pairwise distances, max of directed sup-infs."""
    dmat = np.array([[distance(m, AmbientPoint(tuple(a)), AmbientPoint(tuple(b)))
                      for b in B] for a in A])
    return max(dmat.min(axis=1).max(), dmat.min(axis=0).max())


def test_hausdorff_of_set_with_itself_is_zero():
    S = CompactSample(E2, [[0, 0], [1, 2], [3, 1]])
    assert hausdorff_distance(E2, S, S) == 0.0


def test_hausdorff_singletons_reduce_to_point_distance():
    A = CompactSample(E2, [[0, 0]])
    B = CompactSample(E2, [[3, 4]])
    assert hausdorff_distance(E2, A, B) == pytest.approx(5.0, abs=1e-14)


def test_hausdorff_known_small_example():
    # directed gaps differ: the far point dominates
    A = [[0.0, 0.0], [2.0, 0.0]]
    B = [[0.0, 1.0]]
    d = hausdorff_distance(E2, A, B)
    assert d == pytest.approx(math.sqrt(5.0), abs=1e-14)


def test_hausdorff_matches_brute_force_oracle():
    rng = np.random.default_rng(2)
    for m in (E2, flat_torus2()):
        for _ in range(25):
            A = rng.uniform(0, 1, (rng.integers(1, 12), 2))
            B = rng.uniform(0, 1, (rng.integers(1, 12), 2))
            got = hausdorff_distance(m, A, B)
            want = brute_force_hausdorff(m, A, B)
            assert got == pytest.approx(want, abs=1e-12)


def test_sup_min_distance_reports_argmax():
    A = [[0.0, 0.0], [10.0, 0.0]]
    B = [[0.0, 1.0]]
    val, idx = sup_min_distance(E2, A, B)
    assert val == pytest.approx(math.hypot(10, 1), abs=1e-12)
    assert idx == 1


def test_sample_validation():
    with pytest.raises(ValueError):
        CompactSample(E2, [])
    with pytest.raises(ValueError):
        CompactSample(E2, [[0, 0]], fill_radius=-0.1)
    with pytest.raises(geometry.ChartDomainError):
        CompactSample(flat_torus2(), [[1.5, 0.0]])


def test_sample_rejects_non_orthonormal_basis():
    with pytest.raises(ValueError):
        CompactSample(E2, [[0, 0]], tangent_basis={0: [(2.0, 0.0)]})
    with pytest.raises(ValueError):
        CompactSample(E2, [[0, 0]],
                      tangent_basis={0: [(1.0, 0.0), (1.0, 0.0)]})
    ok = CompactSample(E2, [[0, 0]],
                       tangent_basis={0: [(1.0, 0.0), (0.0, 1.0)]})
    assert ok.bases_packed.shape == (1, 2, 2)


def test_sample_coords_are_frozen():
    S = CompactSample(E2, [[0, 0], [1, 1]])
    with pytest.raises(ValueError):
        S.coords[0, 0] = 5.0


def test_describe_summarizes():
    S = CompactSample(E2, [[0, 0], [1, 1]], fill_radius=0.25)
    d = S.describe()
    assert d["n_points"] == 2
    assert d["fill_radius"] == 0.25
    assert not d["with_tangent_data"]


# --- induced metric on scenarios -------------------------------------------

def test_induced_metric_translation_equals_offset_norm():
    S = build_scenario("rn-translation")
    g = groups.element(S.group, (3.0, 4.0))
    e = groups.identity(S.group)
    assert induced_metric(S, g, e) == pytest.approx(5.0, abs=1e-12)


def test_induced_metric_accepts_quotient_points():
    S = build_scenario("rn-translation")
    g = QuotientPoint(groups.element(S.group, (1.0, 0.0)))
    e = QuotientPoint(groups.identity(S.group))
    assert induced_metric(S, g, e) == pytest.approx(1.0, abs=1e-14)


def test_induced_metric_representative_independence_torus():
    # integer shifts act trivially; parameters are canonicalized mod 1
    S = build_scenario("torus-minus-square", grid_n=32)
    g1 = groups.element(S.group, (0.06, 0.03))
    g2 = groups.element(S.group, (1.06, -0.97))
    e = groups.identity(S.group)
    assert induced_metric(S, g1, e) == induced_metric(S, g2, e)


def test_induced_metric_stabilizer_rotation_is_near_zero():
    # rotations about the cap axis move no sample ring off itself by more
    # than the ring discretization
    S = build_scenario("sphere-cap")
    w = groups.algebra_vector(S.group, (0.0, 0.0, 1.0))
    g = groups.exp_map(S.group, w, 0.15)
    d = induced_metric(S, g, groups.identity(S.group))
    assert d <= 2.0 * S.X.fill_radius


def test_invariance_check_residual_small():
    S = build_scenario("hyperbolic-two-points")
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = S.element_sampler(rng)
        g = S.element_sampler(rng)
        h = S.element_sampler(rng)
        assert invariance_check(S, a, g, h) < 1e-12


def test_metric_axiom_check_passes_and_reports():
    S = build_scenario("rn-translation")
    rep = metric_axiom_check(S, trials=40, seed=0)
    assert rep.ok
    assert set(rep.residuals) == {"symmetry", "triangle", "identity"}
    assert rep.worst() <= rep.tolerance
