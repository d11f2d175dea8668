"""Tensor products of finite sup-lattices.

``L (x) M`` is the lattice of *bi-ideals* of ``L x M``: down-closed sets of
pairs that contain every pair with a bottom coordinate and are closed under
joins within each row and each column. The generator ``x (x) y`` is the
bi-ideal generated by ``(x, y)``.

A :class:`TensorLattice` can carry relations ``x (x) y = x' (x) y'``. Its
carrier is then the quotient of the tensor by the congruence they generate,
enumerated directly as the saturated bi-ideals, so the full tensor is never
materialised. Relative tensors ``Q (x)_A X`` are built this way.
"""

import logging
from collections import deque
from functools import cached_property
from typing import Callable, Iterable, List, Optional, Set, Tuple

from qlab import settings
from qlab.errors import EnumerationBoundError, LawViolation
from qlab.order.bits import bit, iter_bits
from qlab.order.lattice import FiniteSupLattice
from qlab.order.maps import MonotoneMap, SupHom, join_preservation_witness

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class ClosureOperatorLattice(FiniteSupLattice):
    """A lattice of fixed points of a known closure operator on bitsets."""

    def __init__(self, carrier, ground, closer: Callable[[int], int], **kwargs):
        self._closer = closer
        super().__init__(carrier, ground, **kwargs)

    def closure(self, mask: int) -> int:
        return self._closer(mask | self.bottom)


class TensorLattice:
    """The tensor product ``left (x) right``, optionally modulo relations.

    Args:
        left: First factor.
        right: Second factor.
        relations: Pairs ``((x, y), (x2, y2))`` of element pairs to identify.
        bound: Enumeration bound, defaults to ``QLAB_MAX_ENUM``.
        name: Display name.
    """

    def __init__(
        self,
        left: FiniteSupLattice,
        right: FiniteSupLattice,
        relations: Iterable[Tuple[Pair, Pair]] = (),
        bound: Optional[int] = None,
        name: str = "",
    ):
        self.left = left
        self.right = right
        self.name = name or f"{left.name or 'L'} (x) {right.name or 'M'}"
        self.bound = settings.resolve_bound(bound)
        self._nl = len(left)
        self._nr = len(right)
        if self._nl * self._nr > self.bound:
            raise EnumerationBoundError(f"pairs of {self.name}", self._nl * self._nr, self.bound)
        self._relations = [(self._pair_bit(*u), self._pair_bit(*v)) for u, v in relations]

    # -- ground set of pairs ---------------------------------------------------

    def _pair_bit(self, x: int, y: int) -> int:
        return self.left.index(x) * self._nr + self.right.index(y)

    def pair_of_bit(self, b: int) -> Pair:
        i, k = divmod(b, self._nr)
        return self.left.elements[i], self.right.elements[k]

    @cached_property
    def _pair_down(self) -> List[int]:
        left, right = self.left, self.right
        nr = self._nr
        down_l = [[i2 for i2, x2 in enumerate(left.elements) if x2 & ~x == 0] for x in left.elements]
        row = [sum(bit(k2) for k2, y2 in enumerate(right.elements) if y2 & ~y == 0) for y in right.elements]
        table = []
        for i in range(self._nl):
            for k in range(nr):
                mask = 0
                for i2 in down_l[i]:
                    mask |= row[k] << (i2 * nr)
                table.append(mask)
        return table

    @cached_property
    def _zero(self) -> int:
        nr = self._nr
        mask = 0
        for i in range(self._nl):
            mask |= bit(i * nr)
        mask |= (1 << nr) - 1
        return mask

    def closure(self, mask: int) -> int:
        """Least (saturated) bi-ideal containing ``mask``."""
        left, right = self.left, self.right
        nr = self._nr
        pair_down = self._pair_down
        lindex, rindex = left._index, right._index
        lelems, relems = left.elements, right.elements
        current = mask | self._zero
        while True:
            closed = 0
            for b in iter_bits(current):
                closed |= pair_down[b]
            cols = {}
            rows = {}
            for b in iter_bits(closed):
                i, k = divmod(b, nr)
                cols[k] = cols.get(k, 0) | lelems[i]
                rows[i] = rows.get(i, 0) | relems[k]
            grown = closed
            for k, xs in cols.items():
                i = lindex[left.join_all([xs])]
                grown |= pair_down[i * nr + k]
            for i, ys in rows.items():
                k = rindex[right.join_all([ys])]
                grown |= pair_down[i * nr + k]
            for u, v in self._relations:
                has_u = grown >> u & 1
                has_v = grown >> v & 1
                if has_u and not has_v:
                    grown |= pair_down[v]
                elif has_v and not has_u:
                    grown |= pair_down[u]
            if grown == current:
                return current
            current = grown

    # -- carrier --------------------------------------------------------------

    @cached_property
    def generator_images(self) -> Tuple[int, ...]:
        nr = self._nr
        images = set()
        for j in self.left.generators:
            for k in self.right.generators:
                images.add(self.closure(self._pair_down[self.left.index(j) * nr + self.right.index(k)]))
        return tuple(images)

    @cached_property
    def carrier(self) -> FiniteSupLattice:
        """The tensor (or its quotient) as a lattice of bi-ideal masks."""
        bottom = self.closure(0)
        gens = self.generator_images
        seen: Set[int] = {bottom}
        queue = deque([bottom])
        while queue:
            s = queue.popleft()
            for g in gens:
                t = self.closure(s | g)
                if t not in seen:
                    seen.add(t)
                    if len(seen) > self.bound:
                        raise EnumerationBoundError(f"elements of {self.name}", len(seen), self.bound)
                    queue.append(t)
        logger.debug("%s has %d elements", self.name, len(seen))
        return ClosureOperatorLattice(
            seen,
            self._nl * self._nr,
            self.closure,
            name=self.name,
            join_generators=gens,
            union_closed=False,
            validate=False,
        )

    def embed(self, x: int, y: int) -> int:
        """The element ``x (x) y`` (its class, when there are relations)."""
        return self.closure(self._pair_down[self._pair_bit(x, y)])

    def contains_pair(self, element: int, x: int, y: int) -> bool:
        """Whether ``x (x) y <= element``."""
        return bool(element >> self._pair_bit(x, y) & 1)

    def generator_pairs(self, element: int) -> List[Pair]:
        """Pairs of generators ``(j, k)`` with ``j (x) k <= element``."""
        return [
            (j, k)
            for j in self.left.generators
            for k in self.right.generators
            if self.contains_pair(element, j, k)
        ]

    def lift(
        self, bilinear: Callable[[int, int], int], target: FiniteSupLattice, name: str = "", check: bool = True
    ) -> SupHom:
        """The sup-lattice map ``h`` with ``h(x (x) y) = bilinear(x, y)``.

        ``bilinear`` must be join-preserving in each variable. With ``check``
        it must also identify every related pair of generators.
        """
        if check:
            witness = self.relation_witness(bilinear)
            if witness is not None:
                raise LawViolation("tensor.relations", witness, f"map does not identify {witness[0]} and {witness[1]}")

        def h(element: int) -> int:
            return target.join_all(bilinear(j, k) for j, k in self.generator_pairs(element))

        return SupHom(self.carrier, target, h, name=name, validate=False)

    def relation_witness(self, bilinear: Callable[[int, int], int]) -> Optional[Tuple[Pair, Pair]]:
        for u, v in self._relations:
            pu, pv = self.pair_of_bit(u), self.pair_of_bit(v)
            if bilinear(*pu) != bilinear(*pv):
                return pu, pv
        return None


def tensor(left: FiniteSupLattice, right: FiniteSupLattice, bound: Optional[int] = None) -> TensorLattice:
    return TensorLattice(left, right, bound=bound)


def bilinearity_witness(
    op: Callable[[int, int], int],
    left: FiniteSupLattice,
    right: FiniteSupLattice,
    target: FiniteSupLattice,
) -> Optional[Tuple[str, int, Tuple[int, ...]]]:
    """Find a failure of join preservation of ``op`` in either variable.

    Returns ``("left", y, xs)`` when ``x -> op(x, y)`` fails to preserve the
    join of ``xs``, or ``("right", x, ys)`` symmetrically.
    """
    for y in right.elements:
        witness = join_preservation_witness(MonotoneMap(left, target, lambda x: op(x, y)))
        if witness is not None:
            return ("left", y, witness)
    for x in left.elements:
        witness = join_preservation_witness(MonotoneMap(right, target, lambda y: op(x, y)))
        if witness is not None:
            return ("right", x, witness)
    return None


def brute_force_bi_ideals(left: FiniteSupLattice, right: FiniteSupLattice, bound: Optional[int] = None) -> Set[int]:
    """All bi-ideals of ``left x right`` by testing every subset of pairs.

    Each subset is checked against the definition directly: it holds every
    pair with a bottom coordinate, is down-closed and is closed under joins
    within rows and columns. Masks use the same pair indexing as
    :class:`TensorLattice`, so the result can be compared with its carrier.
    """
    limit = settings.resolve_bound(bound)
    lelems, relems = left.elements, right.elements
    nl, nr = len(lelems), len(relems)
    n = nl * nr
    if 1 << n > limit:
        raise EnumerationBoundError("subsets of pairs", 1 << n, limit)

    def at(x: int, y: int) -> int:
        return left.index(x) * nr + right.index(y)

    zero = 0
    for i, x in enumerate(lelems):
        for k, y in enumerate(relems):
            if x == left.bottom or y == right.bottom:
                zero |= bit(i * nr + k)
    below = [
        [at(x2, y2) for x2 in lelems if left.leq(x2, x) for y2 in relems if right.leq(y2, y)]
        for x in lelems
        for y in relems
    ]
    rows = [
        (i * nr + k, i2 * nr + k, at(left.join(x, x2), y))
        for i, x in enumerate(lelems)
        for i2, x2 in enumerate(lelems[i + 1 :], start=i + 1)
        for k, y in enumerate(relems)
    ]
    cols = [
        (i * nr + k, i * nr + k2, at(x, right.join(y, y2)))
        for i, x in enumerate(lelems)
        for k, y in enumerate(relems)
        for k2, y2 in enumerate(relems[k + 1 :], start=k + 1)
    ]
    joins = rows + cols

    found = set()
    for mask in range(1 << n):
        if mask & zero != zero:
            continue
        if any(mask >> b & 1 and any(not mask >> c & 1 for c in below[b]) for b in range(n)):
            continue
        if any(mask >> a & 1 and mask >> b & 1 and not mask >> c & 1 for a, b, c in joins):
            continue
        found.add(mask)
    return found
