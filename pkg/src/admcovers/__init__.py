"""Nodal curves as decorated dual graphs, quasi-admissible covers, and
the gonality of two-component stable curves."""

from .curves import Component, CurveGraph, CurveStructureError, NodeRecord
from .covers import (
    ComponentMapDatum,
    CoverMap,
    CoverStructureError,
    FiberPoint,
    TargetTree,
    TwoComponentFrame,
    frame_from_curve,
    is_admissible,
    is_quasi_admissible,
)
from .profiles import ComponentProfile, FiberClass, MapBehavior, ProfileError
from .surgery import (
    GluePiece,
    NodeIncidence,
    SurgeryError,
    glue_covers,
    glue_node_on_cover,
    to_admissible,
)
from .gonality import (
    ClassificationResult,
    classify,
    classify_hyperelliptic,
    classify_trigonal,
    component_lower_bound,
    exact_gonality_one_node,
    generic_upper_bound,
    generic_upper_bound_subcurves,
    two_component_bound,
)
from .oracle import (
    EnumerationBudget,
    OracleError,
    OracleOutcome,
    SearchBoundExceeded,
    hurwitz_exists,
    hurwitz_necessary,
    min_admissible_degree,
    verify_converse_inequalities,
)
from .documents import (
    CurveDocument,
    DocumentError,
    describe_cover,
    parse_document,
    serialize_document,
)
from .dot import export_dot

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "Component",
    "ComponentMapDatum",
    "ComponentProfile",
    "CoverMap",
    "CoverStructureError",
    "CurveDocument",
    "CurveGraph",
    "CurveStructureError",
    "DocumentError",
    "EnumerationBudget",
    "FiberClass",
    "FiberPoint",
    "GluePiece",
    "MapBehavior",
    "NodeIncidence",
    "NodeRecord",
    "OracleError",
    "OracleOutcome",
    "ProfileError",
    "SearchBoundExceeded",
    "SurgeryError",
    "TargetTree",
    "TwoComponentFrame",
    "classify",
    "classify_hyperelliptic",
    "classify_trigonal",
    "component_lower_bound",
    "describe_cover",
    "exact_gonality_one_node",
    "export_dot",
    "frame_from_curve",
    "generic_upper_bound",
    "generic_upper_bound_subcurves",
    "glue_covers",
    "glue_node_on_cover",
    "hurwitz_exists",
    "hurwitz_necessary",
    "is_admissible",
    "is_quasi_admissible",
    "min_admissible_degree",
    "parse_document",
    "serialize_document",
    "to_admissible",
    "two_component_bound",
    "verify_converse_inequalities",
]
