"""Model surfaces: charts, distances, conformal metrics, kernel packing.

Distance oracles used here are written independently of the library code:
the half-plane distance via the textbook arccosh form evaluated in high
precision, and great-circle distances via the embedding dot product.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hausquot import geometry
from hausquot.geometry import (AmbientPoint, ChartDomainError, TangentVector,
                               distance, euclidean, flat_torus2,
                               hyperbolic_half_plane, kernel_array,
                               kernel_transform, riemannian_inner,
                               riemannian_norm, speed_estimate, sphere2,
                               validate_point, wrap_torus)

TORUS = flat_torus2()
PLANE = hyperbolic_half_plane()
SPHERE = sphere2()


def halfplane_oracle(p, q):
    # arccosh(1 + |p-q|^2 / (2 y_p y_q)), evaluated the straightforward way
    x1, y1 = p
    x2, y2 = q
    arg = 1.0 + ((x1 - x2) ** 2 + (y1 - y2) ** 2) / (2.0 * y1 * y2)
    return math.acosh(arg)


def sphere_oracle(m, p, q):
    P = geometry.embed_sphere_points(m, np.atleast_2d(p))[0]
    Q = geometry.embed_sphere_points(m, np.atleast_2d(q))[0]
    cosang = np.dot(P, Q) / m.radius ** 2
    return m.radius * math.acos(max(-1.0, min(1.0, cosang)))


def test_constructors_validate():
    with pytest.raises(ValueError):
        euclidean(0)
    with pytest.raises(ValueError):
        sphere2(-1.0)
    assert euclidean(3).chart_dim == 3
    assert TORUS.chart_dim == 2


def test_validate_point_rejects_out_of_chart():
    with pytest.raises(ChartDomainError):
        validate_point(PLANE, (0.0, 0.0))  # boundary line
    with pytest.raises(ChartDomainError):
        validate_point(PLANE, (0.0, -1.0))
    with pytest.raises(ChartDomainError):
        validate_point(TORUS, (1.5, 0.0))
    with pytest.raises(ChartDomainError):
        validate_point(euclidean(2), (math.nan, 0.0))


def test_wrap_torus_folds_into_unit_square():
    out = wrap_torus(np.array([[1.25, -0.25], [0.999999, 2.0]]))
    assert np.allclose(out, [[0.25, 0.75], [0.999999, 0.0]])
    # exact upper edge folds to 0 so validate_point accepts the result
    assert wrap_torus(np.array([1.0 - 1e-17, 0.0]))[0] == 0.0


def test_euclidean_distance():
    m = euclidean(3)
    d = distance(m, AmbientPoint((0, 0, 0)), AmbientPoint((3, 4, 12)))
    assert d == pytest.approx(13.0, abs=1e-14)


def test_torus_distance_wraps_shortest_way():
    a = AmbientPoint((0.95, 0.1))
    b = AmbientPoint((0.05, 0.9))
    assert distance(TORUS, a, b) == pytest.approx(math.hypot(0.1, 0.2),
                                                  abs=1e-14)


def test_halfplane_distance_matches_arccosh_oracle():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = (rng.normal(), math.exp(rng.normal()))
        q = (rng.normal(), math.exp(rng.normal()))
        d = distance(PLANE, AmbientPoint(p), AmbientPoint(q))
        assert d == pytest.approx(halfplane_oracle(p, q), abs=1e-12)


def test_halfplane_distance_stable_for_close_points():
    # the arccosh argument is 1 + O(eps^2); the library form must not lose
    # the leading digits to cancellation
    p = AmbientPoint((0.0, 1.0))
    for eps in (1e-5, 1e-8, 1e-10):
        q = AmbientPoint((eps, 1.0))
        assert distance(PLANE, p, q) == pytest.approx(eps, rel=1e-6)


def test_vertical_halfplane_distance_is_log_ratio():
    p = AmbientPoint((0.2, 1.0))
    q = AmbientPoint((0.2, 7.5))
    assert distance(PLANE, p, q) == pytest.approx(math.log(7.5), abs=1e-12)


def test_sphere_distance_matches_embedding_oracle():
    rng = np.random.default_rng(4)
    for _ in range(200):
        p = rng.normal(scale=0.8, size=2)
        q = rng.normal(scale=0.8, size=2)
        d = distance(SPHERE, AmbientPoint(p), AmbientPoint(q))
        assert d == pytest.approx(sphere_oracle(SPHERE, p, q), abs=1e-12)


def test_sphere_embed_unembed_roundtrip():
    rng = np.random.default_rng(5)
    pts = rng.normal(scale=1.2, size=(50, 2))
    there = geometry.embed_sphere_points(SPHERE, pts)
    assert np.allclose(np.linalg.norm(there, axis=1), 1.0, atol=1e-14)
    back = geometry.unembed_sphere_points(SPHERE, there)
    assert np.allclose(back, pts, atol=1e-12)


def test_chart_origin_is_north_pole():
    P = geometry.embed_sphere_points(SPHERE, np.array([[0.0, 0.0]]))[0]
    assert np.allclose(P, [0.0, 0.0, 1.0], atol=1e-15)


def test_conformal_factor_values():
    # euclidean: 1; half-plane: 1/y; sphere: 1 at the chart origin
    assert geometry.conformal_factors(euclidean(2), np.array([[5.0, 5.0]]))[0] == 1.0
    lam = geometry.conformal_factors(PLANE, np.array([[0.0, 4.0]]))[0]
    assert lam == pytest.approx(0.25, abs=1e-15)
    lam0 = geometry.conformal_factors(SPHERE, np.array([[0.0, 0.0]]))[0]
    assert lam0 == pytest.approx(1.0, abs=1e-15)


def test_riemannian_norm_uses_conformal_factor():
    v = TangentVector(AmbientPoint((0.0, 2.0)), (3.0, 4.0))
    assert riemannian_norm(PLANE, v) == pytest.approx(2.5, abs=1e-14)
    w = TangentVector(AmbientPoint((0.3, 0.4)), (1.0, 0.0))
    assert riemannian_norm(euclidean(2), w) == 1.0


def test_riemannian_inner_is_bilinear_conformal():
    p = AmbientPoint((0.1, 0.2))
    u, w = (1.0, 2.0), (3.0, -1.0)
    lam = geometry.conformal_factors(SPHERE, np.array([[0.1, 0.2]]))[0]
    expect = lam * lam * (1 * 3 + 2 * -1)
    assert riemannian_inner(SPHERE, p, u, w) == pytest.approx(expect,
                                                              rel=1e-14)


def test_sphere_norm_matches_finite_difference_pushforward():
    """Chart-norm oracle: push a short chart segment through the embedding
    and compare arc length against the conformal-factor formula."""
    rng = np.random.default_rng(6)
    for _ in range(20):
        base = rng.normal(scale=0.7, size=2)
        direc = rng.normal(size=2)
        direc /= np.linalg.norm(direc)
        # symmetric secant; h large enough that the acos oracle keeps digits
        h = 1e-3
        d = sphere_oracle(SPHERE, base - h * direc, base + h * direc)
        lam = geometry.conformal_factors(SPHERE, base[None, :])[0]
        assert d / (2 * h) == pytest.approx(lam, rel=1e-5)


def test_chart_delta_wraps_on_torus():
    # chart_delta(m, a, b) = a - b, wrapped to the nearest representative
    d = geometry.chart_delta(TORUS, np.array([0.05, 0.2]),
                             np.array([0.95, 0.1]))
    assert np.allclose(d, [0.1, 0.1], atol=1e-14)
    d2 = geometry.chart_delta(euclidean(2), np.array([1.4, -0.2]),
                              np.array([0.0, 0.0]))
    assert np.allclose(d2, [1.4, -0.2])


def test_speed_estimate_of_unit_circle():
    m = euclidean(2)
    curve = lambda t: AmbientPoint((math.cos(t), math.sin(t)))
    est = speed_estimate(m, curve, 0.0)
    assert est.value == pytest.approx(1.0, abs=1e-9)


def test_speed_estimate_halfplane_vertical_flow():
    # c(t) = (0, e^t): unit-speed geodesic of the half-plane
    curve = lambda t: AmbientPoint((0.0, math.exp(t)))
    est = speed_estimate(PLANE, curve, 0.0)
    assert est.value == pytest.approx(1.0, abs=1e-9)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=80, deadline=None)
def test_torus_distance_is_a_metric(ax, ay, bx, by):
    a = AmbientPoint(tuple(wrap_torus(np.array([ax, ay]))))
    b = AmbientPoint(tuple(wrap_torus(np.array([bx, by]))))
    dab = distance(TORUS, a, b)
    dba = distance(TORUS, b, a)
    assert dab == dba
    assert dab >= 0.0
    assert dab <= math.sqrt(0.5) + 1e-12  # torus diameter


@pytest.mark.parametrize("m,points", [
    (euclidean(2), [[0.0, 0.0], [3.0, 4.0], [-1.0, 2.0]]),
    (TORUS, [[0.1, 0.9], [0.6, 0.2], [0.45, 0.51]]),
    (PLANE, [[0.0, 1.0], [2.0, 0.5], [-1.0, 3.0]]),
    (SPHERE, [[0.0, 0.0], [0.3, -0.2], [1.0, 0.7]]),
])
def test_kernel_surrogate_inverts_to_distance(m, points):
    """kernel_array + the scan surrogate must reproduce distance() exactly
    (this is the contract the pairwise kernels rely on)."""
    from hausquot import _scan_py
    from hausquot.kernels import scan_op
    packed = kernel_array(m, np.asarray(points, dtype=float))
    op = scan_op(m)
    for i in range(len(points)):
        for j in range(len(points)):
            block = _scan_py._surrogate_block(op, packed[i:i + 1],
                                              packed[j:j + 1])
            d_kernel = kernel_transform(m, float(block[0, 0]))
            d_true = distance(m, AmbientPoint(tuple(points[i])),
                              AmbientPoint(tuple(points[j])))
            assert d_kernel == pytest.approx(d_true, abs=1e-13)
