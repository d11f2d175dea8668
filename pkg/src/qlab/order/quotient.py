"""Quotients of finite sup-lattices by relations."""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from qlab.errors import LawViolation
from qlab.order.lattice import FiniteSupLattice
from qlab.order.maps import MonotoneMap, SupHom

logger = logging.getLogger(__name__)


@dataclass
class Quotient:
    """``source / relations`` with its projection.

    The carrier is the set of *saturated* elements ``s``, those with
    ``a <= s`` iff ``b <= s`` for every related pair, which is closed under
    meets; the projection sends ``x`` to the least saturated element above it.
    """

    source: FiniteSupLattice
    relations: List[Tuple[int, int]]
    carrier: FiniteSupLattice
    projection: SupHom

    def factor(self, h: MonotoneMap, name: str = "") -> SupHom:
        """The unique ``k`` with ``k . projection = h``, for ``h`` identifying the relations."""
        witness = factorization_witness(self, h)
        if witness is not None:
            raise LawViolation("quotient.factor", witness, f"{h!r} does not identify the pair {witness}")
        return SupHom(self.carrier, h.target, lambda s: h(s), name=name, validate=False)


def is_saturated(element: int, relations: Iterable[Tuple[int, int]]) -> bool:
    return all((a & ~element == 0) == (b & ~element == 0) for a, b in relations)


def quotient(source: FiniteSupLattice, relations: Iterable[Tuple[int, int]], name: str = "") -> Quotient:
    """The largest quotient of ``source`` identifying each related pair."""
    relations = list(relations)
    for a, b in relations:
        for m in (a, b):
            if m not in source:
                raise LawViolation("lattice.member", m, f"{m:#x} is not an element of {source!r}")
    saturated = [s for s in source.elements if is_saturated(s, relations)]
    carrier = FiniteSupLattice(
        saturated,
        source.ground,
        name=name or f"{source.name or 'L'}/R",
        labels={s: source.label(s) for s in saturated},
        validate=False,
    )
    projection = SupHom(source, carrier, carrier.closure, name="q", validate=False)
    logger.debug("quotient of %r by %d relations has %d elements", source, len(relations), len(carrier))
    return Quotient(source, relations, carrier, projection)


def kernel_pairs(h: MonotoneMap) -> List[Tuple[int, int]]:
    """All pairs identified by ``h``; the quotient by them is the image of ``h``."""
    elems = h.source.elements
    return [(a, b) for i, a in enumerate(elems) for b in elems[i + 1 :] if h(a) == h(b)]


def factorization_witness(q: Quotient, h: MonotoneMap) -> Optional[Tuple[int, int]]:
    """A related pair ``h`` separates, or ``None`` when ``h`` factors through ``q``."""
    for a, b in q.relations:
        if h(a) != h(b):
            return (a, b)
    return None
