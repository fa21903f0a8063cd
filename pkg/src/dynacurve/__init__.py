"""Preperiodic curves of the unicritical polynomial families z -> z**d + c."""

from .bipoly import CurvePoly, resultant_z
from .cyclotomic import CycInt
from .dynatomic import DEFAULT_DEGREE_CAP, FamilyContext, IdentityReport
from .errors import (
    CapExceeded,
    DecompositionFailure,
    DynacurveError,
    NonConvergence,
    NonZeroRemainder,
    PreconditionViolated,
    RayTraceUnresolved,
    ResourceCapExceeded,
    RingTagMismatch,
    TrackingCollision,
    UnclassifiableRoot,
)
from .invariants import (
    CurveInvariants,
    component_genus,
    curve_invariants,
    ends_count,
    factor_galois_order,
    galois_order,
    periodic_point_count,
    wreath_kernel_rank,
)
from .itinerary import (
    EndLabel,
    Itinerary,
    SectorChart,
    end_classes,
    end_classes_for_factor,
    enumerate_preperiodic,
    external_data,
    get_chart,
    match_roots_to_ends,
    trace_itinerary,
)
from .monodromy import (
    GaloisVerification,
    MonodromyReport,
    WreathDecomposition,
    ZeroRayCrossing,
    critical_values,
    monodromy_report,
    verify_galois_properties,
    wreath_decompose,
    zero_ray_rotation,
)
from .numerics import (
    MisiurewiczPoint,
    RootClassification,
    SingularReport,
    TransversalityReport,
    classify_roots,
    complex_roots,
    exact_preperiodic_points,
    find_misiurewicz,
    singular_point_report,
    transversality_check,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CurveInvariants",
    "CurvePoly",
    "CycInt",
    "DecompositionFailure",
    "DEFAULT_DEGREE_CAP",
    "DynacurveError",
    "EndLabel",
    "FamilyContext",
    "GaloisVerification",
    "IdentityReport",
    "Itinerary",
    "MisiurewiczPoint",
    "MonodromyReport",
    "NonConvergence",
    "NonZeroRemainder",
    "PreconditionViolated",
    "RayTraceUnresolved",
    "ResourceCapExceeded",
    "RingTagMismatch",
    "RootClassification",
    "SectorChart",
    "SingularReport",
    "TrackingCollision",
    "TransversalityReport",
    "UnclassifiableRoot",
    "WreathDecomposition",
    "ZeroRayCrossing",
    "classify_roots",
    "complex_roots",
    "component_genus",
    "critical_values",
    "curve_invariants",
    "end_classes",
    "end_classes_for_factor",
    "ends_count",
    "enumerate_preperiodic",
    "exact_preperiodic_points",
    "external_data",
    "factor_galois_order",
    "find_misiurewicz",
    "galois_order",
    "get_chart",
    "match_roots_to_ends",
    "monodromy_report",
    "periodic_point_count",
    "resultant_z",
    "singular_point_report",
    "trace_itinerary",
    "transversality_check",
    "verify_galois_properties",
    "wreath_decompose",
    "zero_ray_rotation",
]
