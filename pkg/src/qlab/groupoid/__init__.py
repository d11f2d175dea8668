"""Finite open groupoids, their actions and bilocales."""

from qlab.groupoid.action import (
    EquivariantMap,
    GLocale,
    RightGLocale,
    canonical_action,
    check_equivariant_map,
    check_g_locale,
    check_right_g_locale,
    left_regular_action,
    to_left,
    to_right,
    trivial_action,
)
from qlab.groupoid.bilocale import (
    Bilocale,
    BilocaleTensor,
    check_associativity,
    check_bilocale,
    check_unit_laws,
    find_bilocale_iso,
    tensor_over,
    unit_bilocale,
    with_groupoids,
)
from qlab.groupoid.groupoid import (
    FiniteOpenGroupoid,
    cech_groupoid,
    cyclic_group,
    disjoint_union,
    group_groupoid,
    is_etale,
    pair_groupoid,
    unit_groupoid,
    validate_groupoid,
)

__all__ = [
    "Bilocale",
    "BilocaleTensor",
    "EquivariantMap",
    "FiniteOpenGroupoid",
    "GLocale",
    "RightGLocale",
    "canonical_action",
    "cech_groupoid",
    "check_associativity",
    "check_bilocale",
    "check_equivariant_map",
    "check_g_locale",
    "check_right_g_locale",
    "check_unit_laws",
    "cyclic_group",
    "disjoint_union",
    "find_bilocale_iso",
    "group_groupoid",
    "is_etale",
    "left_regular_action",
    "pair_groupoid",
    "tensor_over",
    "to_left",
    "to_right",
    "trivial_action",
    "unit_bilocale",
    "unit_groupoid",
    "validate_groupoid",
    "with_groupoids",
]
