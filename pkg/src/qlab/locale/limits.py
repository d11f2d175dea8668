"""Pullbacks, coequalizers and products of finite locales.

Both constructions are computed on points first. The pullback is the fibred
product of point sets; the coequalizer identifies points by the smallest
invariant open containing them. When the frames are small enough the same
objects are recomputed on the frame side (a quotient of the tensor, and the
equalizing subframe) and compared, so a disagreement cannot go unnoticed.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

from qlab import settings
from qlab.errors import CrossValidationError, EnumerationBoundError, LawViolation
from qlab.locale.maps import LocaleMap, to_point
from qlab.locale.space import ContinuousMap, FiniteSpace, SpaceFrame, fibered_product
from qlab.locale.spatial import spatialize
from qlab.order.bits import bit, popcount
from qlab.order.lattice import FiniteFrame, FiniteSupLattice
from qlab.order.tensor import TensorLattice

logger = logging.getLogger(__name__)


def from_points(cmap: ContinuousMap, source: FiniteFrame, target: FiniteFrame, name: str = "") -> LocaleMap:
    """The locale map ``source -> target`` whose point map on presentations is ``cmap``."""
    src, tgt = spatialize(source), spatialize(target)
    if src.is_identity and tgt.is_identity:
        return LocaleMap(source, target, cmap.preimage, name=name, point_map=cmap)
    return LocaleMap(source, target, lambda c: src.from_space(cmap.preimage(tgt.to_space(c))), name=name)


# -- pullbacks --------------------------------------------------------------------


@dataclass
class PullbackSquare:
    """The pullback ``P = X x_Z Y`` of ``f: X -> Z`` and ``g: Y -> Z``."""

    f: LocaleMap
    g: LocaleMap
    space: FiniteSpace
    pr1: ContinuousMap
    pr2: ContinuousMap
    pairs: List[Tuple[int, int]]
    crosschecked: bool = False

    @cached_property
    def frame(self) -> SpaceFrame:
        return self.space.frame

    @cached_property
    def pi1(self) -> LocaleMap:
        return from_points(self.pr1, self.frame, self.f.source, name="pi1")

    @cached_property
    def pi2(self) -> LocaleMap:
        return from_points(self.pr2, self.frame, self.g.source, name="pi2")

    @cached_property
    def position(self) -> Dict[Tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def rect(self, a: int, b: int) -> int:
        """``pi1*(a) & pi2*(b)``, the image of ``a (x) b``."""
        return self.pi1.inv(a) & self.pi2.inv(b)

    def pairing(self, h: LocaleMap, k: LocaleMap, name: str = "") -> LocaleMap:
        """The unique map ``<h, k>`` into the pullback."""
        witness = self.f.compose(h).differs_from(self.g.compose(k))
        if witness is not None:
            raise LawViolation("locale.square.commutes", witness, "maps do not agree over the base")
        hp, kp = h.point_map, k.point_map
        values = [self.position[(hp(w), kp(w))] for w in range(len(hp.source))]
        cmap = ContinuousMap(hp.source, self.space, values, name=name or "<h,k>")
        return from_points(cmap, h.source, self.frame, name=name or "<h,k>")

    def square(self) -> "Square":
        return Square(top=self.pi1, left=self.pi2, right=self.f, bottom=self.g)


def pullback(f: LocaleMap, g: LocaleMap, cross_check: bool = True, name: str = "") -> PullbackSquare:
    """Pullback of ``f: X -> Z`` and ``g: Y -> Z``."""
    if spatialize(f.target).space.up != spatialize(g.target).space.up:
        raise LawViolation("pullback.codomain", None, "maps must share a codomain")
    space, pr1, pr2, pairs = fibered_product(f.point_map, g.point_map, name=name)
    square = PullbackSquare(f, g, space, pr1, pr2, pairs)
    if cross_check:
        square.crosschecked = _cross_check_pullback(square)
    return square


def _cross_check_pullback(square: PullbackSquare) -> bool:
    f, g = square.f, square.g
    try:
        size = len(f.source) * len(g.source)
    except EnumerationBoundError:
        return False
    if size > settings.TENSOR_CROSSCHECK:
        logger.debug("pullback frame-side check skipped: %d pairs", size)
        return False
    relations = []
    for c in f.target.generators:
        fc, gc = f.inv(c), g.inv(c)
        for j in f.source.generators:
            for k in g.source.generators:
                relations.append(((j & fc, k), (j, gc & k)))
    pushout = TensorLattice(f.source, g.source, relations, name="pushout")
    try:
        carrier = pushout.carrier
        opens = set(square.frame.elements)
    except EnumerationBoundError as exc:
        logger.debug("pullback frame-side check skipped: %s", exc)
        return False
    images = {}
    for s in carrier.elements:
        images[s] = _union(square.rect(j, k) for j, k in pushout.generator_pairs(s))
    if len(set(images.values())) != len(carrier) or set(images.values()) != opens:
        raise CrossValidationError(
            f"pullback frames disagree: {len(carrier)} elements frame-side, {len(opens)} on points"
        )
    elems = carrier.elements
    if len(elems) ** 2 <= settings.MAX_ENUM:
        for s in elems:
            for t in elems:
                if (s & ~t == 0) != (images[s] & ~images[t] == 0):
                    raise CrossValidationError(f"pullback comparison is not an order isomorphism at {(s, t)}")
    logger.debug("pullback cross-checked: %d opens", len(opens))
    return True


def _union(masks) -> int:
    acc = 0
    for m in masks:
        acc |= m
    return acc


def product(first: FiniteFrame, second: FiniteFrame) -> PullbackSquare:
    """Product of locales, the pullback over the one-point locale."""
    return pullback(to_point(first), to_point(second), name="product")


# -- coequalizers -----------------------------------------------------------------


@dataclass
class Coequalizer:
    """Coequalizer of ``f1, f2: M -> L``.

    ``classes[e]`` is the smallest invariant open of points of ``L`` that
    contains the points of class ``e``; class ``e`` lies below ``e'`` when
    its open is the larger one.
    """

    f1: LocaleMap
    f2: LocaleMap
    space: FiniteSpace
    classes: List[int]
    projection: ContinuousMap
    subframe: Optional[FiniteSupLattice] = None
    crosschecked: bool = False

    @cached_property
    def frame(self) -> SpaceFrame:
        return self.space.frame

    @cached_property
    def pi(self) -> LocaleMap:
        return from_points(self.projection, self.f1.target, self.frame, name="pi")

    def factor(self, h: LocaleMap, name: str = "") -> LocaleMap:
        """The unique ``k`` with ``k . pi = h`` for ``h`` coequalizing ``f1`` and ``f2``."""
        witness = h.compose(self.f1).differs_from(h.compose(self.f2))
        if witness is not None:
            raise LawViolation("locale.coequalizer.factor", witness, f"{h!r} does not coequalize")
        hp = h.point_map
        values: List[Optional[int]] = [None] * len(self.space)
        for x, e in enumerate(self.projection.values):
            if values[e] is None:
                values[e] = hp(x)
            elif values[e] != hp(x):
                raise LawViolation("locale.coequalizer.factor", x, "map is not constant on a class")
        cmap = ContinuousMap(self.space, hp.target, values, name=name or "k")
        return from_points(cmap, self.frame, h.target, name=name or "k")

    def couniversal_witness(self) -> Optional[Any]:
        """Check the couniversal property against maps into the Sierpinski locale.

        Such maps are the opens of ``L``; an open coequalizes exactly when it
        is invariant, and then it must be the inverse image of exactly one
        open of the quotient.
        """
        target = self.f1.target
        pres = spatialize(target)
        pulled = {}
        for v in self.frame.elements:
            u = self.projection.preimage(v)
            if u in pulled:
                return ("pi* not injective", v)
            pulled[u] = v
        for u in pres.space.frame.elements:
            a = pres.from_space(u)
            coequalizes = self.f1.inv(a) == self.f2.inv(a)
            if coequalizes != (u in pulled):
                return ("open", a)
        return None


def coequalizer(f1: LocaleMap, f2: LocaleMap, cross_check: bool = True, name: str = "") -> Coequalizer:
    """Coequalizer of two parallel locale maps ``M -> L``."""
    p1, p2 = f1.point_map, f2.point_map
    target = p1.target
    edges = sorted({(p1(m), p2(m)) for m in range(len(p1.source))})
    saturation = [_saturate(target, edges, target.up[x]) for x in range(len(target))]
    classes = sorted(set(saturation), key=lambda m: (-popcount(m), m))
    position = {s: e for e, s in enumerate(classes)}
    up = []
    for s in classes:
        up.append(sum(bit(position[t]) for t in classes if t & ~s == 0))
    labels = [
        tuple(target.labels[x] for x in range(len(target)) if saturation[x] == s) for s in classes
    ]
    space = FiniteSpace(labels, up, name=name or "quotient")
    projection = ContinuousMap(target, space, [position[s] for s in saturation], name="pi")
    result = Coequalizer(f1, f2, space, classes, projection)
    if cross_check:
        _cross_check_coequalizer(result)
    logger.debug("coequalizer has %d points from %d", len(space), len(target))
    return result


def _saturate(space: FiniteSpace, edges: List[Tuple[int, int]], mask: int) -> int:
    """Smallest open containing ``mask`` that is invariant along ``edges``."""
    current = mask
    while True:
        grown = current
        for a, b in edges:
            if grown >> a & 1 and not grown >> b & 1:
                grown |= space.up[b]
            elif grown >> b & 1 and not grown >> a & 1:
                grown |= space.up[a]
        if grown == current:
            return current
        current = grown


def _cross_check_coequalizer(result: Coequalizer) -> None:
    lattice = result.f1.target
    pres = spatialize(lattice)
    try:
        equalizing = [a for a in lattice.elements if result.f1.inv(a) == result.f2.inv(a)]
        opens = result.frame.elements
    except EnumerationBoundError as exc:
        logger.debug("coequalizer frame-side check skipped: %s", exc)
        return
    from_frame = {pres.to_space(a) for a in equalizing}
    from_points_ = {result.projection.preimage(v) for v in opens}
    if from_frame != from_points_ or len(opens) != len(from_points_):
        raise CrossValidationError(
            f"coequalizer disagrees: {len(from_frame)} equalizing opens, {len(opens)} quotient opens"
        )
    result.subframe = FiniteSupLattice(equalizing, lattice.ground, name="E", union_closed=lattice.union_closed, validate=False)
    result.crosschecked = True


# -- squares ----------------------------------------------------------------------


@dataclass
class Square:
    """A square of locale maps::

        A --top--> B
        |          |
       left      right
        v          v
        C --bottom-> D
    """

    top: LocaleMap
    left: LocaleMap
    right: LocaleMap
    bottom: LocaleMap
    notes: List[str] = field(default_factory=list)

    def commutes_witness(self) -> Optional[int]:
        return self.right.compose(self.top).differs_from(self.bottom.compose(self.left))

    def pullback_witness(self) -> Optional[Tuple[str, Any]]:
        """Why ``A`` is not ``B x_D C`` via ``top`` and ``left``, or ``None``.

        Maps out of finite spaces are determined by points and order, so it
        is enough to probe with the one-point locale (points of ``A`` against
        pairs over ``D``) and the Sierpinski locale (the order).
        """
        commutes = self.commutes_witness()
        if commutes is not None:
            return ("commutes", commutes)
        t, l_ = self.top.point_map, self.left.point_map
        r, b = self.right.point_map, self.bottom.point_map
        a_space = t.source
        seen: Dict[Tuple[int, int], int] = {}
        for a in range(len(a_space)):
            pair = (t(a), l_(a))
            if pair in seen:
                return ("not injective", (seen[pair], a))
            seen[pair] = a
        for y in range(len(r.source)):
            for c in range(len(b.source)):
                if r(y) == b(c) and (y, c) not in seen:
                    return ("not surjective", (y, c))
        for a in range(len(a_space)):
            for a2 in range(len(a_space)):
                above = t.target.leq(t(a), t(a2)) and l_.target.leq(l_(a), l_(a2))
                if above != a_space.leq(a, a2):
                    return ("order", (a, a2))
        return None

    def is_pullback(self) -> bool:
        return self.pullback_witness() is None
