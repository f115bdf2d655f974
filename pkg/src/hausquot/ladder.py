"""Geometric step ladders and limit extrapolation.

All small-parameter limits in this package (speeds, norm recovery) are
estimated the same way: evaluate the difference quotient on a geometric
ladder of steps t_k = t0 * ratio**k and extrapolate to t -> 0 with one
Richardson elimination step, keeping an error estimate from the decay of
successive values.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "StepLadder",
    "DEFAULT_LADDER",
    "NonConvergent",
    "Method",
    "NormEstimate",
    "CheckReport",
    "extrapolate_limit",
    "two_sided_estimate",
]


@dataclass(frozen=True)
class StepLadder:
    """Geometric sequence of positive steps t_k = t0 * ratio**k, k < depth."""

    t0: float = 1e-2
    ratio: float = 0.5
    depth: int = 11

    def __post_init__(self):
        if not (self.t0 > 0.0):
            raise ValueError("StepLadder.t0 must be positive")
        if not (0.0 < self.ratio < 1.0):
            raise ValueError("StepLadder.ratio must lie in (0, 1)")
        if self.depth < 3:
            raise ValueError("StepLadder.depth must be at least 3")

    def steps(self):
        """The step values as a float array of length `depth`."""
        return self.t0 * self.ratio ** np.arange(self.depth, dtype=float)


DEFAULT_LADDER = StepLadder()


class NonConvergent(RuntimeError):
    """A ladder of difference quotients failed to stabilize.

    Carries the raw ladder values so callers can diagnose the failure.
    """

    def __init__(self, message, steps, values):
        super().__init__(message)
        self.steps = list(map(float, steps))
        self.values = list(map(float, values))


class Method(str, Enum):
    """How a norm/speed value was obtained."""

    LIMIT_LADDER = "LimitLadder"
    SUP_KILLING = "SupKilling"
    CLOSED_FORM = "ClosedForm"


@dataclass(frozen=True)
class NormEstimate:
    """A nonnegative value with method tag, raw ladder, and error estimate.

    For two-sided limits `value` is the max of the one-sided estimates and
    `forward`/`backward` carry the sides.  For sup-style estimators
    `argmax_indices` lists every sample index within 1e-12 of the max.
    """

    value: float
    method: Method
    ladder_values: list = field(default_factory=list)
    error_estimate: float = 0.0
    forward: float | None = None
    backward: float | None = None
    argmax_indices: tuple = ()

    def __post_init__(self):
        if self.value < 0.0:
            raise ValueError("NormEstimate.value must be nonnegative")
        if self.error_estimate < 0.0:
            raise ValueError("NormEstimate.error_estimate must be nonnegative")


@dataclass(frozen=True)
class CheckReport:
    """Worst-case residuals of a property-check suite."""

    name: str
    residuals: dict
    tolerance: float
    ok: bool
    details: dict = field(default_factory=dict)

    def worst(self):
        return max(self.residuals.values()) if self.residuals else 0.0


def _sampling_floor(value, step, fill_radius):
    """Error floor for difference quotients of sampled Hausdorff distances.

    A sample with fill radius r perturbs penetration depths like
    sqrt(d^2 + delta^2) with delta <= r, biasing the quotient at step t by
    about |g| * (r/t)^2 / 2.  Zero for exactly represented sets (r = 0).
    """
    if fill_radius <= 0.0:
        return 0.0
    return 0.5 * abs(value) * (fill_radius / step) ** 2


def extrapolate_limit(steps, values, order=1, fill_radius=0.0, context=""):
    """Estimate lim_{t->0} g(t) from g sampled on a decreasing step ladder.

    Candidates are the raw rung values and the one-step Richardson
    eliminants R_k = (g_{k+1} - rho*g_k)/(1 - rho) with rho = ratio**order;
    each candidate's error is estimated from the neighbouring differences
    plus a sampled-set floor, and the best candidate wins.  Returns
    (value, error_estimate).

    Raises NonConvergent when no candidate stabilizes (relative spread of
    the best candidate above 25%) or any value is non-finite.
    """
    steps = np.asarray(steps, dtype=float)
    values = np.asarray(values, dtype=float)
    if steps.size != values.size or steps.size < 2:
        raise ValueError("need matching step/value ladders of length >= 2")
    if not np.all(np.isfinite(values)):
        raise NonConvergent(
            "non-finite ladder values%s" % (" in " + context if context else ""),
            steps, values)

    rho = (steps[1] / steps[0]) ** order
    richardson = (values[1:] - rho * values[:-1]) / (1.0 - rho)

    candidates = []  # (error_estimate, tie_rank, value)
    raw_diff = np.abs(np.diff(values))
    for k in range(values.size - 1):
        err = raw_diff[k] + _sampling_floor(values[k], steps[k], fill_radius)
        candidates.append((err, k, values[k]))
    if richardson.size == 1:
        err = abs(richardson[0] - values[-1]) + _sampling_floor(
            richardson[0], steps[-1], fill_radius)
        candidates.append((err, values.size, richardson[0]))
    else:
        r_diff = np.abs(np.diff(richardson))
        for k in range(richardson.size):
            near = []
            if k > 0:
                near.append(r_diff[k - 1])
            if k < richardson.size - 1:
                near.append(r_diff[k])
            err = min(near) + _sampling_floor(
                richardson[k], steps[k + 1], fill_radius)
            candidates.append((err, values.size + k, richardson[k]))

    err, _, value = min(candidates, key=lambda c: (c[0], -c[1]))
    scale = max(np.max(np.abs(values)), abs(value))
    if err > 0.25 * scale + 1e-9:
        raise NonConvergent(
            "ladder did not stabilize%s (best error %.3g against scale %.3g)"
            % ((" in " + context if context else ""), err, scale),
            steps, values)
    return float(value), float(err)


def two_sided_estimate(quotient, ladder, method=Method.LIMIT_LADDER,
                       fill_radius=0.0, sides=("forward", "backward"),
                       context=""):
    """Two-sided limit estimate of a difference quotient.

    `quotient(t)` must accept signed nonzero t and return the nonnegative
    quotient at that step.  Each requested side is extrapolated separately;
    the estimate's value is the max over sides and the error combines the
    side errors with half the side asymmetry.
    """
    steps = ladder.steps()
    per_side = {}
    raw = []
    for side in sides:
        sign = 1.0 if side == "forward" else -1.0
        vals = np.array([quotient(sign * t) for t in steps])
        raw.extend(vals.tolist())
        per_side[side] = extrapolate_limit(
            steps, vals, fill_radius=fill_radius,
            context=context + ":" + side if context else side)
    value = max(v for v, _ in per_side.values())
    err = max(e for _, e in per_side.values())
    if len(per_side) == 2:
        f = per_side["forward"][0]
        b = per_side["backward"][0]
        err += 0.5 * abs(f - b)
        fwd, bwd = f, b
    else:
        fwd = per_side.get("forward", (None,))[0]
        bwd = per_side.get("backward", (None,))[0]
    return NormEstimate(value=max(value, 0.0), method=method,
                        ladder_values=raw, error_estimate=err,
                        forward=fwd, backward=bwd)
