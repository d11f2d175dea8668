"""Maps of finite locales.

A locale map ``f: X -> Z`` is given by its inverse image ``f*: O(Z) -> O(X)``,
a frame homomorphism. Between frames of finite spaces it is the preimage
of a monotone point map, and most questions about it are answered on points
and then confirmed on the frames when they are small enough to enumerate.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional, Tuple

from qlab.errors import CrossValidationError, EnumerationBoundError
from qlab.locale.space import ContinuousMap, FiniteSpace, SpaceFrame
from qlab.locale.spatial import SpatialPresentation, point_map_from_inverse_image, spatialize
from qlab.order.lattice import FiniteFrame
from qlab.order.maps import MapLike, MonotoneMap, join_preservation_witness, left_adjoint, meet_preservation_witness

logger = logging.getLogger(__name__)


@dataclass
class OpenResult:
    open: bool
    direct_image: Optional[MonotoneMap] = None
    witness: Any = None

    def __bool__(self) -> bool:
        return self.open


class LocaleMap:
    """A map of locales, stored as its inverse image.

    Args:
        source: Frame of opens of the domain.
        target: Frame of opens of the codomain.
        inverse_image: ``f*`` on target elements.
        name: Display name.
        point_map: The point map, when already known.
    """

    def __init__(
        self,
        source: FiniteFrame,
        target: FiniteFrame,
        inverse_image: MapLike,
        name: str = "",
        point_map: Optional[ContinuousMap] = None,
    ):
        self.source = source
        self.target = target
        self.name = name
        self.inv = MonotoneMap(target, source, inverse_image, name=f"{name or 'f'}*")
        if point_map is not None:
            self.__dict__["point_map"] = point_map

    @classmethod
    def of(cls, f: ContinuousMap, name: str = "") -> "LocaleMap":
        """The locale map of a continuous map of finite spaces."""
        return cls(f.source.frame, f.target.frame, f.preimage, name=name or f.name, point_map=f)

    @classmethod
    def identity(cls, frame: FiniteFrame) -> "LocaleMap":
        if isinstance(frame, SpaceFrame):
            return cls.of(ContinuousMap.identity(frame.space), name="id")
        return cls(frame, frame, lambda a: a, name="id")

    def __repr__(self) -> str:
        return f"<LocaleMap {self.name or ''}: {self.source!r} -> {self.target!r}>"

    # -- points -------------------------------------------------------------

    @cached_property
    def source_points(self) -> SpatialPresentation:
        return spatialize(self.source)

    @cached_property
    def target_points(self) -> SpatialPresentation:
        return spatialize(self.target)

    @cached_property
    def point_map(self) -> ContinuousMap:
        """The map on points of the spatial presentations of source and target."""
        src, tgt = self.source_points, self.target_points

        def inv_on_space(mask: int) -> int:
            return src.to_space(self.inv(tgt.from_space(mask)))

        return point_map_from_inverse_image(inv_on_space, src.space, tgt.space)

    @property
    def is_spatial(self) -> bool:
        return isinstance(self.source, SpaceFrame) and isinstance(self.target, SpaceFrame)

    # -- structure ------------------------------------------------------------

    def frame_hom_witness(self) -> Optional[Tuple[str, Any]]:
        """Check that the inverse image is a frame homomorphism.

        Meets are checked on pairs of generators, which suffices on a
        distributive target.
        """
        inv, tgt, src = self.inv, self.target, self.source
        if inv(tgt.top) != src.top:
            return ("top", tgt.top)
        gens = tgt.generators
        for a in gens:
            for b in gens:
                if inv(a & b) != inv(a) & inv(b):
                    return ("meet", (a, b))
        witness = join_preservation_witness(inv)
        if witness is not None:
            return ("join", witness)
        return None

    @cached_property
    def direct_image(self) -> MonotoneMap:
        """``f_!``, the left adjoint of the inverse image."""
        if self.is_spatial:
            f = self.point_map
            return MonotoneMap(self.source, self.target, f.direct_image, name=f"{self.name or 'f'}_!")
        return left_adjoint(self.inv, name=f"{self.name or 'f'}_!")

    def frobenius_witness(self, direct: Optional[MonotoneMap] = None) -> Optional[Tuple[int, int]]:
        """A pair ``(x, y)`` with ``f_!(x & f*y) != f_!(x) & y``; generators suffice."""
        direct = direct or self.direct_image
        for x in self.source.generators:
            fx = direct(x)
            for y in self.target.generators:
                if direct(x & self.inv(y)) != fx & y:
                    return (x, y)
        return None

    def is_open(self, cross_check: bool = True) -> OpenResult:
        """Decide openness; spatial maps use the pointwise criterion first."""
        if self.is_spatial:
            witness = self.point_map.open_witness()
            result = OpenResult(witness is None, self.direct_image if witness is None else None, witness)
            if cross_check:
                try:
                    frame_side = self.frobenius_witness(left_adjoint(self.inv))
                except EnumerationBoundError as exc:
                    logger.debug("skipping frame-side openness check of %r: %s", self, exc)
                else:
                    if (frame_side is None) != result.open:
                        raise CrossValidationError(
                            f"openness of {self!r}: pointwise {result.open}, frame-side {frame_side is None}"
                        )
            return result
        direct = left_adjoint(self.inv, name=f"{self.name or 'f'}_!")
        witness = self.frobenius_witness(direct)
        return OpenResult(witness is None, direct if witness is None else None, witness)

    def is_semiopen(self) -> bool:
        """The inverse image preserves all meets, so it has a left adjoint.

        Every map of finite locales is semiopen; openness adds Frobenius.
        """
        return meet_preservation_witness(self.inv) is None

    def is_surjective(self, cross_check: bool = True) -> bool:
        """Surjective means the inverse image is injective."""
        if self.is_spatial:
            onto = self.point_map.is_surjective()
            if cross_check:
                try:
                    injective = self.inv.is_injective()
                except EnumerationBoundError as exc:
                    logger.debug("skipping frame-side surjectivity check of %r: %s", self, exc)
                else:
                    if injective != onto:
                        raise CrossValidationError(f"surjectivity of {self!r}: points {onto}, frame {injective}")
            return onto
        return self.inv.is_injective()

    def compose(self, inner: "LocaleMap", name: str = "") -> "LocaleMap":
        """``self`` after ``inner``."""
        outer = self
        point_map = None
        if "point_map" in outer.__dict__ and "point_map" in inner.__dict__ and outer.is_spatial and inner.is_spatial:
            point_map = outer.point_map.compose(inner.point_map)
        return LocaleMap(
            inner.source,
            outer.target,
            lambda c: inner.inv(outer.inv(c)),
            name=name or f"{outer.name}.{inner.name}",
            point_map=point_map,
        )

    def differs_from(self, other: "LocaleMap") -> Optional[int]:
        """A target generator on which the inverse images differ."""
        for c in self.target.generators:
            if self.inv(c) != other.inv(c):
                return c
        return None

    def invert(self) -> Optional["LocaleMap"]:
        """The inverse locale map, or ``None`` if this is not an isomorphism."""
        if self.is_spatial:
            back = self.point_map.inverse()
            return None if back is None else LocaleMap.of(back, name=f"{self.name}^-1")
        if not (self.inv.is_injective() and self.inv.is_surjective()):
            return None
        table = {v: k for k, v in self.inv.table.items()}
        return LocaleMap(self.target, self.source, table, name=f"{self.name}^-1")

    def is_iso(self) -> bool:
        return self.invert() is not None


def locale_map(f: ContinuousMap, name: str = "") -> LocaleMap:
    return LocaleMap.of(f, name=name)


def to_point(frame: FiniteFrame) -> LocaleMap:
    """The unique map to the one-point locale."""
    point = FiniteSpace.point()
    if isinstance(frame, SpaceFrame):
        return LocaleMap.of(ContinuousMap.constant(frame.space, point), name="!")
    return LocaleMap(frame, point.frame, lambda c: frame.top if c else frame.bottom, name="!")
