"""Q-locales, principal Q-locales and the passage to and from G-bundles."""

from qlab.correspondence.principal import (
    PrincipalQLocale,
    check_principal_bridge,
    check_principal_q_locale,
    g_bundle_to_principal_q_locale,
    principal_q_locale_candidate,
    principal_q_locale_to_g_bundle,
    roundtrip_check,
    roundtrip_check_q_locale,
)
from qlab.correspondence.qlocale import (
    check_q_locale,
    check_q_locale_correspondence,
    q_locale_roundtrip_witness,
    q_locale_to_g_locale,
)

__all__ = [
    "PrincipalQLocale",
    "check_principal_bridge",
    "check_principal_q_locale",
    "check_q_locale",
    "check_q_locale_correspondence",
    "g_bundle_to_principal_q_locale",
    "principal_q_locale_candidate",
    "principal_q_locale_to_g_bundle",
    "q_locale_roundtrip_witness",
    "q_locale_to_g_locale",
    "roundtrip_check",
    "roundtrip_check_q_locale",
]
