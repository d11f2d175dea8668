"""Finite locales: spaces, frames, locale maps, limits and open-map lemmas."""

from qlab.locale.lemmas import check_beck_chevalley, check_iso_reflection, check_openness_reflection
from qlab.locale.limits import Coequalizer, PullbackSquare, Square, coequalizer, from_points, product, pullback
from qlab.locale.maps import LocaleMap, OpenResult, locale_map, to_point
from qlab.locale.space import ContinuousMap, FiniteSpace, SpaceFrame, fibered_product
from qlab.locale.spatial import SpatialPresentation, frame_of_space, spatialize

__all__ = [
    "Coequalizer",
    "ContinuousMap",
    "FiniteSpace",
    "LocaleMap",
    "OpenResult",
    "PullbackSquare",
    "SpaceFrame",
    "SpatialPresentation",
    "Square",
    "check_beck_chevalley",
    "check_iso_reflection",
    "check_openness_reflection",
    "coequalizer",
    "fibered_product",
    "frame_of_space",
    "from_points",
    "locale_map",
    "product",
    "pullback",
    "spatialize",
    "to_point",
]
