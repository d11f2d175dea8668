"""Principal groupoid bundles, their pullbacks and bibundles."""

from qlab.bundle.bibundle import bibundle_as_bundle, check_principal_bibundle, compose_bibundles
from qlab.bundle.bundle import (
    GBundle,
    PrincipalGBundle,
    check_bundle,
    check_principal,
    disjoint_union_bundle,
    orbit_locale,
    principal_bundle,
    quotient_bundle,
)
from qlab.bundle.pullback import (
    PulledBackBundle,
    check_two_pullbacks,
    induced_map_on_orbits,
    pullback_bundle,
    pullback_comparison,
)

__all__ = [
    "GBundle",
    "PrincipalGBundle",
    "PulledBackBundle",
    "bibundle_as_bundle",
    "check_bundle",
    "check_principal",
    "check_principal_bibundle",
    "check_two_pullbacks",
    "compose_bibundles",
    "disjoint_union_bundle",
    "induced_map_on_orbits",
    "orbit_locale",
    "principal_bundle",
    "pullback_bundle",
    "pullback_comparison",
    "quotient_bundle",
]
