"""Exact Terracini defect and membership calculus for explicit projective curves."""

__version__ = "0.1.0"

from .curves import (
    CanonicalHyperelliptic,
    Curve,
    CurvePoint,
    Divisor,
    HyperPoint,
    Hyperelliptic,
    HyperplaneSystem,
    NodalUnion,
    ParamValue,
    ParametricRational,
    PlaneImplicit,
    PlanePoint,
    ProjectivePoint,
    SpaceImplicit,
    SpacePoint,
    make_curve,
    sample_point,
    tangent_line,
    weierstrass_points,
)
from .defects import (
    CanonicalVerdict,
    OracleFinding,
    TerraciniReport,
    canonical_membership,
    defect_report,
    extend_by_general_point,
    h0_of_double,
    hyperelliptic_oracle,
    jet_block,
    jet_matrix,
    scheme_report,
)
from .qlinalg import QQ, Matrix, MPoly, Polynomial, Series, implicit_lift, resultant

__all__ = [
    "CanonicalHyperelliptic",
    "CanonicalVerdict",
    "Curve",
    "CurvePoint",
    "Divisor",
    "HyperPoint",
    "Hyperelliptic",
    "HyperplaneSystem",
    "Matrix",
    "MPoly",
    "NodalUnion",
    "OracleFinding",
    "ParamValue",
    "ParametricRational",
    "PlaneImplicit",
    "PlanePoint",
    "Polynomial",
    "ProjectivePoint",
    "QQ",
    "Series",
    "SpaceImplicit",
    "SpacePoint",
    "TerraciniReport",
    "canonical_membership",
    "defect_report",
    "extend_by_general_point",
    "h0_of_double",
    "hyperelliptic_oracle",
    "implicit_lift",
    "jet_block",
    "jet_matrix",
    "make_curve",
    "resultant",
    "sample_point",
    "scheme_report",
    "tangent_line",
    "weierstrass_points",
]
