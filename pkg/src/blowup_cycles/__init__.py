"""Exact-arithmetic computations in the numerical cycle class groups of
blow-ups of projective space at points."""

from .classgroup import (
    Ambient,
    COLLINEAR,
    ConfigTag,
    CycleClass,
    LINEARLY_GENERAL,
    PointMultiplicityForm,
    VERY_GENERAL,
    custom,
    degree_pairing,
    exceptional_class,
    from_point_multiplicities,
    hyperplane_class,
    intersect_divisor,
    line_multiplicity_bound,
    linear_space_class,
    make_class,
    mukai_pairing,
    planar_nine_plus,
    span_dim,
    top_self_intersection,
)
from .conemaps import cone_class, iterated_cone, section_class, span_reduction
from .lineargen import (
    Decomposition,
    MembershipVerdict,
    greedy_decompose,
    is_linearly_generated_class,
    lp_membership_oracle,
    simplex_cone_membership,
)
from .weyl import apply_word, group_type, orbit_enumerate, reflect, simple_roots

__all__ = [
    "Ambient",
    "COLLINEAR",
    "ConfigTag",
    "CycleClass",
    "Decomposition",
    "LINEARLY_GENERAL",
    "MembershipVerdict",
    "PointMultiplicityForm",
    "VERY_GENERAL",
    "apply_word",
    "cone_class",
    "custom",
    "degree_pairing",
    "exceptional_class",
    "from_point_multiplicities",
    "greedy_decompose",
    "group_type",
    "hyperplane_class",
    "intersect_divisor",
    "is_linearly_generated_class",
    "iterated_cone",
    "line_multiplicity_bound",
    "linear_space_class",
    "lp_membership_oracle",
    "make_class",
    "mukai_pairing",
    "orbit_enumerate",
    "planar_nine_plus",
    "reflect",
    "section_class",
    "simple_roots",
    "simplex_cone_membership",
    "span_dim",
    "span_reduction",
    "top_self_intersection",
]
