"""Finsler norm recovery on the quotient of a group action.

Three deliberately independent estimators of the norm F induced on the
quotient tangent space at the identity coset:

* ``finsler_limit``          -- extrapolated limit of the induced quotient
  metric along a one-parameter subgroup, d_X(exp(tv), e)/|t| as t -> 0.
* ``finsler_sup_killing``    -- closed form: the max over sample points of
  the Riemannian norm of the Killing field of v, projected onto the normal
  complement of the set's tangent space where tangent data is available.
* ``finsler_sup_continuous`` -- extrapolated limit of the one-sided
  estimator sup_x d(X_sample, exp(tv).x)/|t|.

Cross-agreement of the three (plus a scenario's analytic closed form, when
present) is the main correctness oracle, so they share no intermediate
results.  The module also houses the norm-axiom, invariance, and
bi-invariant-bound check suites.
"""

from dataclasses import dataclass

import numpy as np

from . import groups
from .geometry import (KIND_FLAT_TORUS2, conformal_factors, kernel_array,
                       kernel_transform)
from .hausdorff import CompactSample, induced_metric
from .kernels import directed_surrogate
from .ladder import (DEFAULT_LADDER, CheckReport, Method, NormEstimate,
                     StepLadder, extrapolate_limit, two_sided_estimate)

__all__ = [
    "Scenario", "CheckReport",
    "finsler_limit", "finsler_sup_killing", "finsler_sup_continuous",
    "closed_form_estimate", "estimate_all", "max_pairwise_gap",
    "agreement_bound", "norm_axiom_check", "invariant_norm_check",
    "biinvariant_bound_check", "random_direction",
]

_GS_DEGENERACY_TOL = 1e-10
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class Scenario:
    """A group acting isometrically on a model manifold with a compact set.

    closed_form, when present, maps algebra components to the analytic value
    of F.  t_max restricts flow parameters (|t|*|v| <= t_max) for scenarios
    whose guarantees hold only near the identity.  element_sampler draws
    admissible random group elements for property checks.
    """

    name: str
    group: groups.GroupModel
    X: CompactSample
    closed_form: object = None
    default_ladder: StepLadder = DEFAULT_LADDER
    t_max: float = None
    element_sampler: object = None
    notes: str = ""

    @property
    def manifold(self):
        return self.group.manifold


def _vec(S, v):
    if isinstance(v, groups.AlgebraVector):
        if v.kind != S.group.kind:
            raise ValueError("algebra vector belongs to %s, not %s"
                             % (v.kind, S.group.kind))
        return v
    return groups.algebra_vector(S.group, v)


def random_direction(S, rng, unit=True):
    """Random algebra direction; unit euclidean length in the algebra frame."""
    comps = rng.standard_normal(S.group.algebra_dim)
    if unit:
        n = np.linalg.norm(comps)
        if n == 0.0:
            comps = np.zeros_like(comps)
            comps[0] = 1.0
        else:
            comps = comps / n
    return groups.algebra_vector(S.group, comps)


def _ladder_for(S, v, ladder):
    ladder = ladder if ladder is not None else S.default_ladder
    if S.t_max is not None:
        vnorm = float(np.linalg.norm(v.array()))
        cap = 0.9 * S.t_max / max(vnorm, 1e-300)
        if ladder.t0 > cap:
            ladder = StepLadder(cap, ladder.ratio, ladder.depth)
    return ladder


def finsler_limit(S, v, ladder=None):
    """F(v) as the two-sided extrapolated limit of d_X(exp(tv), e)/|t|."""
    v = _vec(S, v)
    G = S.group
    e = groups.identity(G)
    ladder = _ladder_for(S, v, ladder)

    def quotient(t):
        return induced_metric(S, groups.exp_map(G, v, t), e) / abs(t)

    return two_sided_estimate(quotient, ladder, method=Method.LIMIT_LADDER,
                              fill_radius=S.X.fill_radius,
                              context="finsler_limit[%s]" % S.name)


def _killing_rows(S, v, analytic, fd_ladder):
    """Killing field of v at every sample point, with an error scale.

    Returns (rows, err): rows is (n, chart_dim) in the chart frame.  The
    finite-difference route extrapolates second-order central differences
    of the action and reports the worst extrapolation gap.
    """
    G = S.group
    coords = S.X.coords
    if analytic:
        return groups._killing_analytic(G, _vec(S, v), coords), 0.0
    ladder = fd_ladder if fd_ladder is not None else StepLadder(1e-3, 0.5, 6)
    steps = ladder.steps()
    m = G.manifold
    stack = np.empty((len(steps),) + coords.shape)
    for i, t in enumerate(steps):
        fwd = groups.act_points(G, groups.exp_map(G, v, t), coords)
        bwd = groups.act_points(G, groups.exp_map(G, v, -t), coords)
        delta = fwd - bwd
        if m.kind == KIND_FLAT_TORUS2:
            delta = (delta + 0.5) % 1.0 - 0.5
        stack[i] = delta / (2.0 * t)
    # Second-order differences: one Richardson step removes the t^2 term.
    rho = (steps[1] / steps[0]) ** 2
    rich = (stack[1:] - rho * stack[:-1]) / (1.0 - rho)
    rows = rich[-1]
    if rich.shape[0] >= 2:
        err = float(np.max(np.abs(rich[-1] - rich[-2])))
    else:
        err = float(np.max(np.abs(rich[-1] - stack[-1])))
    return rows, err + 1e-14


def _project_out_tangent(S, rows):
    """Remove the component of each row lying in the sampled set's tangent
    space, via Gram-Schmidt over the stored bases.

    The chart metrics are conformal, so euclidean projection in the chart
    frame equals Riemannian projection; degeneracy of a basis vector is
    judged on its Riemannian length.
    """
    bases = S.X.bases_packed
    if bases is None:
        return rows
    c = conformal_factors(S.manifold, S.X.coords)
    out = rows.copy()
    ortho = []
    for k in range(bases.shape[1]):
        b = bases[:, k, :].copy()
        for e in ortho:
            coef = np.sum(b * e, axis=1, keepdims=True)
            norm2 = np.sum(e * e, axis=1, keepdims=True)
            safe = np.where(norm2 > 0.0, norm2, 1.0)
            b -= np.where(norm2 > 0.0, coef / safe, 0.0) * e
        riem_len = c * np.linalg.norm(b, axis=1)
        b[riem_len <= _GS_DEGENERACY_TOL] = 0.0
        ortho.append(b)
    for e in ortho:
        norm2 = np.sum(e * e, axis=1, keepdims=True)
        safe = np.where(norm2 > 0.0, norm2, 1.0)
        coef = np.sum(out * e, axis=1, keepdims=True)
        out -= np.where(norm2 > 0.0, coef / safe, 0.0) * e
    return out


def finsler_sup_killing(S, v, analytic=True, fd_ladder=None):
    """F(v) = max over sample points of the normal Killing-field norm."""
    v = _vec(S, v)
    rows, fd_err = _killing_rows(S, v, analytic, fd_ladder)
    normal = _project_out_tangent(S, rows)
    c = conformal_factors(S.manifold, S.X.coords)
    norms = c * np.linalg.norm(normal, axis=1)
    value = float(np.max(norms))
    ties = tuple(int(i) for i in np.flatnonzero(norms >= value - _TIE_TOL))
    err = 1e-12 * (1.0 + value) + fd_err
    if S.X.fill_radius > 0.0:
        # Max of a smooth field over a sample with arc spacing <= fill.
        err += 0.5 * value * S.X.fill_radius ** 2
    return NormEstimate(value=value, method=Method.SUP_KILLING,
                        ladder_values=[], error_estimate=err,
                        argmax_indices=ties)


def finsler_sup_continuous(S, v, ladder=None):
    """F(v) via the extrapolated one-sided estimator
    sup_x d(X_sample, exp(tv).x)/|t|, maximised over both flow directions
    at each rung."""
    v = _vec(S, v)
    G = S.group
    m = S.manifold
    ladder = _ladder_for(S, v, ladder)
    steps = ladder.steps()
    values = []
    for t in steps:
        best = 0.0
        for s in (t, -t):
            moved = groups.act_points(G, groups.exp_map(G, v, s), S.X.coords)
            sur, _ = directed_surrogate(m, kernel_array(m, moved), S.X.packed)
            best = max(best, kernel_transform(m, sur) / t)
        values.append(best)
    value, err = extrapolate_limit(steps, values, order=1,
                                   fill_radius=S.X.fill_radius,
                                   context="finsler_sup_continuous[%s]"
                                   % S.name)
    return NormEstimate(value=max(value, 0.0), method=Method.LIMIT_LADDER,
                        ladder_values=list(values), error_estimate=err)


def closed_form_estimate(S, v):
    """Analytic F(v) wrapped as a NormEstimate, or None."""
    if S.closed_form is None:
        return None
    v = _vec(S, v)
    value = float(S.closed_form(v.components))
    return NormEstimate(value=value, method=Method.CLOSED_FORM,
                        ladder_values=[], error_estimate=0.0)


def estimate_all(S, v, ladder=None):
    """All three estimators (plus closed form when present) for one v."""
    out = {
        "limit": finsler_limit(S, v, ladder=ladder),
        "sup_killing": finsler_sup_killing(S, v),
        "sup_continuous": finsler_sup_continuous(S, v, ladder=ladder),
    }
    cf = closed_form_estimate(S, v)
    if cf is not None:
        out["closed_form"] = cf
    return out


def agreement_bound(est_a, est_b):
    """Tolerated gap between two estimates of the same norm."""
    return max(1e-3, 3.0 * (est_a.error_estimate + est_b.error_estimate))


def max_pairwise_gap(estimates):
    """Largest |a - b| over all pairs of estimates in a dict."""
    vals = [e.value for e in estimates.values()]
    gap = 0.0
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            gap = max(gap, abs(vals[i] - vals[j]))
    return gap


def pairwise_agreement_ok(estimates):
    """True when every estimator pair agrees within its tolerated gap."""
    keys = list(estimates)
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            a, b = estimates[keys[i]], estimates[keys[j]]
            if abs(a.value - b.value) > agreement_bound(a, b):
                return False
    return True


def norm_axiom_check(S, trials=200, seed=0, analytic=True, tol=None):
    """Homogeneity, symmetry, and triangle residuals of F over random
    directions, using the sup-Killing values (analytic or ladder-backed)."""
    if tol is None:
        tol = 1e-9 if analytic else 1e-4
    rng = np.random.default_rng(seed)
    dim = S.group.algebra_dim

    def F(comps):
        return finsler_sup_killing(S, groups.algebra_vector(S.group, comps),
                                   analytic=analytic).value

    zero_res = F(np.zeros(dim))
    worst = {"homogeneity": 0.0, "triangle": 0.0, "symmetry": 0.0,
             "zero": zero_res}
    details = {}
    for _ in range(trials):
        v = rng.standard_normal(dim)
        w = rng.standard_normal(dim)
        a = rng.uniform(-2.0, 2.0)
        Fv = F(v)
        res_h = abs(F(a * v) - abs(a) * Fv)
        res_t = max(0.0, F(v + w) - Fv - F(w))
        res_s = abs(F(-v) - Fv)
        for key, res, args in (("homogeneity", res_h, (a, tuple(v))),
                               ("triangle", res_t, (tuple(v), tuple(w))),
                               ("symmetry", res_s, (tuple(v),))):
            if res > worst[key]:
                worst[key] = res
                details[key] = args
    ok = all(r <= tol for r in worst.values())
    return CheckReport(name="norm-axioms[%s]" % S.name, residuals=worst,
                       tolerance=tol, ok=ok, details=details)


def invariant_norm_check(S, trials=20, seed=0, tol=1e-8):
    """Residual between the norm limit based at a random coset g and at the
    identity; zero in exact arithmetic by invariance of the quotient metric."""
    rng = np.random.default_rng(seed)
    G = S.group
    worst = 0.0
    details = {}
    for _ in range(trials):
        v = random_direction(S, rng)
        g = S.element_sampler(rng)
        at_e = finsler_limit(S, v)
        ladder = _ladder_for(S, v, None)

        def quotient(t):
            return induced_metric(S, groups.compose(G, g,
                                                    groups.exp_map(G, v, t)),
                                  g) / abs(t)

        at_g = two_sided_estimate(quotient, ladder,
                                  method=Method.LIMIT_LADDER,
                                  fill_radius=S.X.fill_radius,
                                  context="invariant_norm_check[%s]" % S.name)
        res = abs(at_e.value - at_g.value)
        if res > worst:
            worst = res
            details["worst_case"] = {"g": g.params, "v": v.components}
    return CheckReport(name="invariant-norm[%s]" % S.name,
                       residuals={"based-at-g": worst}, tolerance=tol,
                       ok=worst <= tol, details=details)


def biinvariant_bound_check(S, v, tol=1e-9, angular_tol=1e-6):
    """For translation groups (abelian, hence bi-invariant metric): check
    F(v) <= |K_v| with equality exactly when the field is normal to the
    sampled set somewhere."""
    if S.group.kind != groups.KIND_TRANSLATION_RN:
        raise ValueError("bi-invariant bound check applies to the Euclidean "
                         "translation scenario")
    v = _vec(S, v)
    rows, _ = _killing_rows(S, v, True, None)
    c = conformal_factors(S.manifold, S.X.coords)
    full = c * np.linalg.norm(rows, axis=1)
    bound = float(np.max(full))
    est = finsler_sup_killing(S, v)
    value = est.value
    # Normality at a sample point: tangential component small relative to
    # the field (angle below angular_tol).
    normal = _project_out_tangent(S, rows)
    tang = rows - normal
    tang_norm = c * np.linalg.norm(tang, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        sin_angle = np.where(full > 0.0, tang_norm / full, 0.0)
    equality_expected = bool(np.any(sin_angle <= angular_tol)) or bound == 0.0
    equality_observed = abs(value - bound) <= max(tol, 1e-9 * bound)
    overshoot = max(0.0, value - bound)
    ok = overshoot <= tol and equality_expected == equality_observed
    return CheckReport(
        name="biinvariant-bound[%s]" % S.name,
        residuals={"overshoot": overshoot},
        tolerance=tol, ok=ok,
        details={"value": value, "bound": bound,
                 "equality_expected": equality_expected,
                 "equality_observed": equality_observed})
