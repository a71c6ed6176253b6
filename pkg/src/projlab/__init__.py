"""Feasibility experiments with cyclic projection-type operators.

Closed-set catalog with exact projectors, relaxed / semi-intrepid /
generalized Douglas–Rachford operators, sampled regularity estimators,
analytic R-linear rate certificates, trajectory runs with empirical rate
fits, and an affine reduction for the two-set DR operator.
"""

from .affine import (
    AffineReductionReport,
    affine_hull,
    eta,
    export_shadow_csv,
    shadow_run,
    verify_affine_identities,
)
from .analysis import (
    PropertyReport,
    RegularityEstimate,
    check_injectable,
    check_quasi_coercive,
    check_quasi_firm_fejer,
    check_strong_regularity,
    estimate_eps_regularity,
    estimate_linear_regularity,
    estimate_theta_bar,
    uniform_ball,
)
from .cli import execute_scenario, list_catalog, main, run_scenario, verify_suite
from .errors import (
    CertificateViolated,
    ConfigError,
    ContainmentViolated,
    DimensionMismatch,
    DomainError,
    InsufficientData,
    MoreThanOneFullIntrepid,
    MoreThanOneReflection,
    ProjlabError,
    SamplingFailure,
    ShadowRecursionViolated,
    StrongRegularityFailed,
    UnsupportedSet,
)
from .intersection import IntersectionHandle
from .intersection import exact as exact_intersection
from .intersection import oracle as oracle_intersection
from .operators import (
    CyclicTuple,
    GeneralizedDR,
    RelaxedProjector,
    SemiIntrepidProjector,
    apply,
    operator_from_config,
    operator_to_config,
    reflect,
    semi_intrepid_effective_relaxation,
)
from .rates import (
    FejerConstants,
    RateCertificate,
    averaged_constants,
    dr_coercivity,
    dr_constants,
    rate_convex_cyclic,
    rate_cyclic_dr,
    rate_cyclic_overrelaxed,
    rate_cyclic_projections,
    rate_cyclic_relaxed,
    rate_cyclic_semi_intrepid,
    rate_dist_qf,
    rate_dist_qff,
    rate_refined,
    relaxed_projector_constants,
    semi_intrepid_constants,
)
from .runner import (
    CycleReport,
    RateFit,
    Trajectory,
    check_fejer_trace,
    check_k_step_reduction,
    check_rlinear_envelope,
    compare_certificate,
    detect_cycle,
    export_trajectory_csv,
    fit_rlinear,
    run,
)
from .scenario import (
    Scenario,
    bundled_scenario_names,
    load_bundled,
    load_scenario,
    save_scenario,
    scenario_from_config,
    scenario_to_config,
)
from .sets import (
    AffineSubspaceSet,
    Ball,
    Box,
    ClosedSet,
    Enlargement,
    FinitePointSet,
    Halfspace,
    Hyperplane,
    Orthant,
    PolyhedralCone,
    Sphere,
    Translate,
    UnionOfSets,
    distance,
    is_obtuse_cone,
    membership,
    project,
    proximal_normals,
    set_from_config,
)

__version__ = "0.1.0"

__all__ = [
    "AffineReductionReport",
    "AffineSubspaceSet",
    "Ball",
    "Box",
    "CertificateViolated",
    "ClosedSet",
    "ConfigError",
    "ContainmentViolated",
    "CycleReport",
    "CyclicTuple",
    "DimensionMismatch",
    "DomainError",
    "Enlargement",
    "FejerConstants",
    "FinitePointSet",
    "GeneralizedDR",
    "Halfspace",
    "Hyperplane",
    "InsufficientData",
    "IntersectionHandle",
    "MoreThanOneFullIntrepid",
    "MoreThanOneReflection",
    "Orthant",
    "PolyhedralCone",
    "ProjlabError",
    "PropertyReport",
    "RateCertificate",
    "RateFit",
    "RegularityEstimate",
    "RelaxedProjector",
    "SamplingFailure",
    "Scenario",
    "SemiIntrepidProjector",
    "ShadowRecursionViolated",
    "Sphere",
    "StrongRegularityFailed",
    "Trajectory",
    "Translate",
    "UnionOfSets",
    "UnsupportedSet",
    "affine_hull",
    "apply",
    "averaged_constants",
    "bundled_scenario_names",
    "check_fejer_trace",
    "check_injectable",
    "check_k_step_reduction",
    "check_quasi_coercive",
    "check_quasi_firm_fejer",
    "check_rlinear_envelope",
    "check_strong_regularity",
    "compare_certificate",
    "detect_cycle",
    "distance",
    "dr_coercivity",
    "dr_constants",
    "estimate_eps_regularity",
    "estimate_linear_regularity",
    "estimate_theta_bar",
    "eta",
    "exact_intersection",
    "execute_scenario",
    "export_shadow_csv",
    "export_trajectory_csv",
    "fit_rlinear",
    "is_obtuse_cone",
    "list_catalog",
    "load_bundled",
    "load_scenario",
    "main",
    "membership",
    "operator_from_config",
    "operator_to_config",
    "oracle_intersection",
    "project",
    "proximal_normals",
    "rate_convex_cyclic",
    "rate_cyclic_dr",
    "rate_cyclic_overrelaxed",
    "rate_cyclic_projections",
    "rate_cyclic_relaxed",
    "rate_cyclic_semi_intrepid",
    "rate_dist_qf",
    "rate_dist_qff",
    "rate_refined",
    "reflect",
    "relaxed_projector_constants",
    "run",
    "run_scenario",
    "save_scenario",
    "scenario_from_config",
    "scenario_to_config",
    "semi_intrepid_constants",
    "semi_intrepid_effective_relaxation",
    "set_from_config",
    "shadow_run",
    "uniform_ball",
    "verify_affine_identities",
    "verify_suite",
]
