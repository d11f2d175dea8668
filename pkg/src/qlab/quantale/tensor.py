"""Tensor products over a base frame.

``L (x)_A M`` for frames ``L`` and ``M`` carrying ``A``-actions given by
frame maps ``A -> L`` and ``A -> M`` is the frame of the pullback of the two
corresponding locale maps. It is computed on points, and a bilinear map
``L x M -> N`` that respects the ``A``-relations lifts to it.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional, Tuple

from qlab.locale.limits import PullbackSquare, pullback
from qlab.locale.maps import LocaleMap
from qlab.locale.space import SpaceFrame
from qlab.order.bits import bit, iter_bits
from qlab.order.lattice import FiniteFrame, FiniteSupLattice
from qlab.order.maps import MonotoneMap, SupHom

logger = logging.getLogger(__name__)

Bilinear = Callable[[int, int], int]


@dataclass
class RelativeTensor:
    """``left (x)_base right`` as the opens of a fibred product of points.

    Point ``k`` of the pullback is a pair of points of the factors, and its
    principal open is ``gen_left (x) gen_right`` for the generators of those
    points.
    """

    left: FiniteFrame
    right: FiniteFrame
    square: PullbackSquare

    @property
    def frame(self) -> SpaceFrame:
        return self.square.frame

    @cached_property
    def generator_pairs(self) -> List[Tuple[int, int]]:
        lg, rg = self.left.generators, self.right.generators
        return [(lg[j], rg[k]) for j, k in self.square.pairs]

    def embed(self, x: int, y: int) -> int:
        """The open ``x (x) y``."""
        return self.square.rect(x, y)

    def lift(self, bilinear: Bilinear, target: FiniteSupLattice, name: str = "") -> SupHom:
        """The join-preserving map sending ``x (x) y`` to ``bilinear(x, y)``."""
        values = [bilinear(j, k) for j, k in self.generator_pairs]

        def h(w: int) -> int:
            return target.join_all(values[p] for p in iter_bits(w))

        return SupHom(self.frame, target, h, name=name, validate=False)

    def lift_witness(self, bilinear: Bilinear) -> Optional[Tuple[int, int]]:
        """A generator pair on which the lift of ``bilinear`` disagrees with it.

        ``None`` means ``bilinear`` identifies the relations of the tensor.
        """
        values = [bilinear(j, k) for j, k in self.generator_pairs]
        for j in self.left.generators:
            for k in self.right.generators:
                joined = 0
                for p in iter_bits(self.embed(j, k)):
                    joined |= values[p]
                if joined != bilinear(j, k):
                    return (j, k)
        return None

    def right_adjoint_of(self, bilinear: Bilinear, target: FiniteSupLattice, name: str = "") -> MonotoneMap:
        """``c -> V{x (x) y : bilinear(x, y) <= c}``.

        The join is the set of points whose generator pair lands below ``c``.
        """
        values = [bilinear(j, k) for j, k in self.generator_pairs]

        def upper(c: int) -> int:
            acc = 0
            for p, v in enumerate(values):
                if v & ~c == 0:
                    acc |= bit(p)
            return acc

        return MonotoneMap(target, self.frame, upper, name=name)


def relative_tensor(
    left: FiniteFrame,
    right: FiniteFrame,
    base: FiniteFrame,
    left_action: Callable[[int], int],
    right_action: Callable[[int], int],
    cross_check: bool = True,
    name: str = "",
) -> RelativeTensor:
    """Tensor of ``left`` and ``right`` over ``base``.

    ``left_action(a)`` and ``right_action(a)`` are the frame maps from the
    base, ``x (x) y`` being identified with ``x' (x) y'`` along
    ``x & left_action(a) (x) y = x (x) right_action(a) & y``.
    """
    f = LocaleMap(left, base, left_action, name="l")
    g = LocaleMap(right, base, right_action, name="r")
    square = pullback(f, g, cross_check=cross_check, name=name)
    logger.debug("relative tensor %s has %d points", name or "", len(square.space))
    return RelativeTensor(left, right, square)
