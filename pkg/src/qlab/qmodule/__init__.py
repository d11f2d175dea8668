"""Modules over groupoid quantales, their supports and inner products."""

from qlab.qmodule.action import (
    check_equivariant_module_map,
    check_g_module,
    check_projection_formulas,
    module_of_g_locale,
)
from qlab.qmodule.module import (
    QModule,
    check_inner,
    check_module,
    check_module_support,
    check_q_locale_morphism,
    check_stability_equivalences,
    check_stably_supported,
    check_theorem_support_formulas,
    find_supports,
    homomorphism_witness,
    with_support,
)

__all__ = [
    "QModule",
    "check_equivariant_module_map",
    "check_g_module",
    "check_inner",
    "check_module",
    "check_module_support",
    "check_projection_formulas",
    "check_q_locale_morphism",
    "check_stability_equivalences",
    "check_stably_supported",
    "check_theorem_support_formulas",
    "find_supports",
    "homomorphism_witness",
    "module_of_g_locale",
    "with_support",
]
