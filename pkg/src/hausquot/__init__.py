"""Induced Hausdorff metrics on quotients of isometric group actions.

A group of isometries acting on a model surface, together with a compact
sample set, induces a metric on the quotient of the group by the sample's
stabilizer: the distance between two cosets is the Hausdorff distance
between the corresponding translates of the set.  This package computes
that metric numerically, estimates the intrinsic (path-length) metric it
induces, and recovers the Finsler norm governing short displacements by
three independent routes that are cross-checked against each other.
"""

from .ladder import (StepLadder, NonConvergent, Method, NormEstimate,
                     CheckReport, extrapolate_limit, two_sided_estimate)
from .geometry import (ModelManifold, AmbientPoint, TangentVector,
                       ChartDomainError, euclidean, flat_torus2,
                       hyperbolic_half_plane, sphere2, distance,
                       riemannian_norm, riemannian_inner, speed_estimate)
from .groups import (GroupModel, GroupElement, AlgebraVector, DomainError,
                     translation_rn, translation_torus2, hyperbolic_affine,
                     rotation3, line_flow, element, algebra_vector, identity,
                     compose, inverse, exp_map, log_map, act, act_points,
                     killing_field)
from .kernels import BACKEND, directed_distance
from .hausdorff import (CompactSample, QuotientPoint, hausdorff_distance,
                        sup_min_distance, induced_metric, invariance_check,
                        metric_axiom_check, invariance_suite)
from .finsler import (Scenario, finsler_limit, finsler_sup_killing,
                      finsler_sup_continuous, closed_form_estimate,
                      estimate_all, agreement_bound, max_pairwise_gap,
                      pairwise_agreement_ok, norm_axiom_check,
                      invariant_norm_check, biinvariant_bound_check,
                      random_direction)
from .paths import (QuotientPath, IterationBudgetExceeded, path_length,
                    quotient_speed, intrinsic_distance,
                    orbit_length_homogeneity)
from .scenarios import (SCENARIO_NAMES, ExpectedEntry, ScenarioSpec, registry,
                        build_scenario, expected_table, replay)

__version__ = "0.3.1"

__all__ = [
    "StepLadder", "NonConvergent", "Method", "NormEstimate", "CheckReport",
    "extrapolate_limit", "two_sided_estimate",
    "ModelManifold", "AmbientPoint", "TangentVector", "ChartDomainError",
    "euclidean", "flat_torus2", "hyperbolic_half_plane", "sphere2",
    "distance", "riemannian_norm", "riemannian_inner", "speed_estimate",
    "GroupModel", "GroupElement", "AlgebraVector", "DomainError",
    "translation_rn", "translation_torus2", "hyperbolic_affine", "rotation3",
    "line_flow", "element", "algebra_vector", "identity", "compose",
    "inverse", "exp_map", "log_map", "act", "act_points", "killing_field",
    "BACKEND", "directed_distance",
    "CompactSample", "QuotientPoint", "hausdorff_distance",
    "sup_min_distance", "induced_metric", "invariance_check",
    "metric_axiom_check", "invariance_suite",
    "Scenario", "finsler_limit", "finsler_sup_killing",
    "finsler_sup_continuous", "closed_form_estimate", "estimate_all",
    "agreement_bound", "max_pairwise_gap", "pairwise_agreement_ok",
    "norm_axiom_check", "invariant_norm_check", "biinvariant_bound_check",
    "random_direction",
    "QuotientPath", "IterationBudgetExceeded", "path_length",
    "quotient_speed", "intrinsic_distance", "orbit_length_homogeneity",
    "SCENARIO_NAMES", "ExpectedEntry", "ScenarioSpec", "registry",
    "build_scenario", "expected_table", "replay",
    "__version__",
]
