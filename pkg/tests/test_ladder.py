"""Step ladders and limit extrapolation on synthetic sequences."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hausquot.ladder import (CheckReport, Method, NonConvergent, NormEstimate,
                             StepLadder, extrapolate_limit,
                             two_sided_estimate)


def test_ladder_steps_are_geometric():
    lad = StepLadder(0.4, 0.5, 5)
    steps = lad.steps()
    assert steps.tolist() == [0.4, 0.2, 0.1, 0.05, 0.025]


@pytest.mark.parametrize("bad", [
    dict(t0=0.0), dict(t0=-1.0), dict(ratio=0.0), dict(ratio=1.0),
    dict(ratio=1.5), dict(depth=2),
])
def test_ladder_rejects_bad_parameters(bad):
    kwargs = dict(t0=1e-2, ratio=0.5, depth=6)
    kwargs.update(bad)
    with pytest.raises(ValueError):
        StepLadder(**kwargs)


def test_extrapolate_recovers_linear_limit():
    # g(t) = L + a t: one Richardson step removes the slope entirely.
    lad = StepLadder(1e-2, 0.5, 8)
    steps = lad.steps()
    values = 3.7 + 2.1 * steps
    value, err = extrapolate_limit(steps, values)
    assert abs(value - 3.7) < 1e-12
    assert err < 1e-10


def test_extrapolate_recovers_curved_limit():
    lad = StepLadder(1e-2, 0.5, 10)
    steps = lad.steps()
    values = -1.25 + 0.8 * steps + 5.0 * steps ** 2
    value, err = extrapolate_limit(steps, values)
    assert abs(value + 1.25) < 1e-7
    assert abs(value + 1.25) <= err + 1e-12


def test_error_estimate_covers_true_error():
    # A non-polynomial tail; the reported error must still bound the truth.
    lad = StepLadder(0.1, 0.5, 9)
    steps = lad.steps()
    values = 2.0 + steps ** 1.5
    value, err = extrapolate_limit(steps, values)
    assert abs(value - 2.0) <= err + 1e-12


def test_extrapolate_raises_on_oscillation():
    # Values bouncing by the full scale at every rung cannot stabilize.
    steps = StepLadder(1e-2, 0.5, 8).steps()
    values = np.where(np.arange(8) % 2 == 0, 1.0, 10.0)
    with pytest.raises(NonConvergent) as info:
        extrapolate_limit(steps, values, context="bounce-test")
    assert len(info.value.values) == steps.size
    assert "bounce-test" in str(info.value)


def test_extrapolate_raises_on_nan():
    steps = StepLadder(1e-2, 0.5, 4).steps()
    with pytest.raises(NonConvergent):
        extrapolate_limit(steps, [1.0, math.nan, 1.0, 1.0])


def test_sampling_floor_prefers_coarse_rungs():
    # With a fill-radius floor the small-step rungs are penalized ~ t^-2,
    # so the chosen value must come from the coarse end of the ladder.
    steps = StepLadder(0.1, 0.5, 5).steps()
    exact = 1.0 + 0.3 * steps
    noisy = exact + 0.01 * (0.02 / steps) ** 2
    value, err = extrapolate_limit(steps, noisy, fill_radius=0.02)
    assert abs(value - 1.0) <= err


@given(limit=st.floats(-50, 50), slope=st.floats(-10, 10))
@settings(max_examples=60, deadline=None)
def test_extrapolate_linear_property(limit, slope):
    steps = StepLadder(1e-3, 0.5, 6).steps()
    value, err = extrapolate_limit(steps, limit + slope * steps)
    assert abs(value - limit) <= max(1e-9, 1e-9 * abs(limit)) + err


def test_two_sided_takes_max_and_reports_sides():
    est = two_sided_estimate(lambda t: 2.0 + t if t > 0 else 1.0 - t,
                             StepLadder(1e-3, 0.5, 6))
    assert est.method is Method.LIMIT_LADDER
    assert abs(est.forward - 2.0) < 1e-10
    assert abs(est.backward - 1.0) < 1e-10
    assert abs(est.value - 2.0) < 1e-10
    # asymmetric sides leave a visible error contribution
    assert est.error_estimate > 0.4


def test_two_sided_single_side():
    est = two_sided_estimate(lambda t: 5.0 + abs(t), StepLadder(1e-3, 0.5, 6),
                             sides=("forward",))
    assert est.backward is None
    assert abs(est.value - 5.0) < 1e-10


def test_norm_estimate_rejects_negative_value():
    with pytest.raises(ValueError):
        NormEstimate(value=-1.0, method=Method.CLOSED_FORM)
    with pytest.raises(ValueError):
        NormEstimate(value=1.0, method=Method.CLOSED_FORM,
                     error_estimate=-0.5)


def test_check_report_worst():
    rep = CheckReport(name="demo", residuals={"a": 0.25, "b": 0.5},
                      tolerance=1.0, ok=True)
    assert rep.worst() == 0.5
    assert CheckReport("empty", {}, 1.0, True).worst() == 0.0
