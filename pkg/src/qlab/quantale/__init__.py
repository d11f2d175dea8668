"""Based quantales, supports, and the quantale of an open groupoid."""

from qlab.quantale.groupoid_quantale import (
    check_groupoid_roundtrip,
    check_quantale_roundtrip,
    groupoid_iso_witness,
    groupoid_of_quantale,
    quantale_of_groupoid,
)
from qlab.quantale.quantale import (
    BasedQuantale,
    check_based_quantale,
    check_equivariant,
    check_inverse_laws,
    check_multiplicative,
    check_quantal_frame,
    check_reflexive,
    check_stable,
    check_support,
    check_unit_laws,
    is_groupoid_quantale,
    is_inverse_quantal_frame,
    partial_units,
    quantale_iso_witness,
    sided_elements,
    unit_groupoid_quantale,
)
from qlab.quantale.tensor import RelativeTensor, relative_tensor

__all__ = [
    "BasedQuantale",
    "RelativeTensor",
    "check_based_quantale",
    "check_equivariant",
    "check_groupoid_roundtrip",
    "check_inverse_laws",
    "check_multiplicative",
    "check_quantal_frame",
    "check_quantale_roundtrip",
    "check_reflexive",
    "check_stable",
    "check_support",
    "check_unit_laws",
    "groupoid_iso_witness",
    "groupoid_of_quantale",
    "is_groupoid_quantale",
    "is_inverse_quantal_frame",
    "partial_units",
    "quantale_iso_witness",
    "quantale_of_groupoid",
    "relative_tensor",
    "sided_elements",
    "unit_groupoid_quantale",
]
