"""Finite complete lattices.

Every lattice in qlab is stored as a *closure system*: its elements are
subsets of a finite ground set ``range(ground)``, encoded as Python ints, and
the carrier is closed under intersection. With that encoding

* the order is inclusion: ``a <= b`` iff ``a & ~b == 0``,
* the meet is intersection: ``a & b``,
* the join is the closure of the union, which is just ``a | b`` whenever
  the carrier happens to be union-closed (frames of opens, powersets).

An abstract lattice given by an order relation on labelled elements is
encoded by principal down-sets, so element ``i`` becomes the mask of
``{k : k <= i}``. Elements are always *masks*; the position of a mask in
:attr:`FiniteSupLattice.elements` is its index, used for serialization.
"""

import logging
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from qlab import settings
from qlab.errors import EnumerationBoundError, LawViolation
from qlab.order.bits import bit, full, iter_bits, popcount

logger = logging.getLogger(__name__)


def canonical_order(masks: Iterable[int]) -> Tuple[int, ...]:
    """Sort masks by size then value, so the bottom comes first and the top last."""
    return tuple(sorted(set(masks), key=lambda m: (popcount(m), m)))


class FiniteSupLattice:
    """A finite complete lattice presented as an intersection-closed family of bitsets.

    Args:
        carrier: The element masks. Must be closed under ``&`` and contain the
            union of all of them (the top).
        ground: Size of the ground set the masks live in.
        name: Display name.
        labels: Optional mapping from mask to a display label.
        union_closed: Whether ``|`` is the join. Computed lazily when omitted.
        join_generators: Optional join-dense subset, used to find the
            join-irreducibles without scanning every pair of elements.
        validate: Check closure under intersection on construction.
    """

    def __init__(
        self,
        carrier: Iterable[int],
        ground: int,
        name: str = "",
        labels: Optional[Dict[int, Hashable]] = None,
        union_closed: Optional[bool] = None,
        join_generators: Optional[Iterable[int]] = None,
        validate: bool = True,
    ):
        self.ground = ground
        self.name = name
        self._carrier = canonical_order(carrier)
        self._labels = dict(labels or {})
        self._join_generators = None if join_generators is None else tuple(join_generators)
        if union_closed is not None:
            self.__dict__["union_closed"] = union_closed
        if validate:
            self._validate_closure_system()

    # -- carrier -----------------------------------------------------------

    def _enumerate(self) -> Tuple[int, ...]:
        return self._carrier

    @cached_property
    def elements(self) -> Tuple[int, ...]:
        """All elements in canonical order, bottom first and top last."""
        return self._enumerate()

    @cached_property
    def _index(self) -> Dict[int, int]:
        return {m: i for i, m in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<{type(self).__name__}{name} size={len(self)}>"

    def index(self, mask: int) -> int:
        try:
            return self._index[mask]
        except KeyError:
            raise LawViolation("lattice.member", mask, f"{mask:#x} is not an element of {self!r}")

    def element(self, index: int) -> int:
        return self.elements[index]

    def label(self, mask: int) -> Hashable:
        return self._labels.get(mask, self.index(mask))

    @property
    def labels(self) -> List[Hashable]:
        return [self.label(m) for m in self.elements]

    def _validate_closure_system(self) -> None:
        elems = self._carrier
        if not elems:
            raise LawViolation("lattice.nonempty", None, "a lattice needs at least one element")
        members = set(elems)
        top = 0
        for m in elems:
            if m >> self.ground:
                raise LawViolation("lattice.ground", m, f"mask {m:#x} exceeds ground {self.ground}")
            top |= m
        if top not in members:
            raise LawViolation("lattice.top", top, "the union of all elements is not an element")
        for a, b in combinations(elems, 2):
            if a & b not in members:
                raise LawViolation("lattice.meets", (a, b), "carrier is not closed under meets")

    # -- order and operations ---------------------------------------------

    @property
    def bottom(self) -> int:
        return self.elements[0]

    @property
    def top(self) -> int:
        return self.elements[-1]

    @staticmethod
    def leq(a: int, b: int) -> bool:
        return a & ~b == 0

    @staticmethod
    def meet(a: int, b: int) -> int:
        return a & b

    @cached_property
    def union_closed(self) -> bool:
        members = set(self.elements)
        return all(a | b in members for a, b in combinations(self.elements, 2))

    def closure(self, mask: int) -> int:
        """The least element containing ``mask``."""
        if mask in self._index:
            return mask
        result = self.top
        if mask & ~result:
            raise LawViolation("lattice.closure", mask, f"{mask:#x} is above the top")
        for m in self.elements:
            if mask & ~m == 0:
                result &= m
        return result

    def join(self, a: int, b: int) -> int:
        if self.union_closed:
            return a | b
        return self.closure(a | b)

    def join_all(self, masks: Iterable[int]) -> int:
        acc = 0
        for m in masks:
            acc |= m
        if self.union_closed:
            return acc | self.bottom
        return self.closure(acc | self.bottom)

    def meet_all(self, masks: Iterable[int]) -> int:
        acc = self.top
        for m in masks:
            acc &= m
        return acc

    def down(self, mask: int) -> List[int]:
        return [m for m in self.elements if m & ~mask == 0]

    def up(self, mask: int) -> List[int]:
        return [m for m in self.elements if mask & ~m == 0]

    # -- generators --------------------------------------------------------

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """The join-irreducible elements, in canonical order.

        Every element is the join of the generators below it.
        """
        candidates = self._join_generators
        if candidates is None:
            candidates = self.elements
        candidates = canonical_order(c for c in candidates if c != self.bottom)
        found = []
        for j in candidates:
            below = 0
            for c in candidates:
                if c != j and c & ~j == 0:
                    below |= c
            if self.join_all([below]) != j:
                found.append(j)
        return tuple(found)

    def generators_below(self, mask: int) -> List[int]:
        return [j for j in self.generators if j & ~mask == 0]

    def is_generator(self, mask: int) -> bool:
        return mask in set(self.generators)

    @cached_property
    def is_distributive(self) -> bool:
        """Birkhoff test: a finite lattice is distributive iff it has as many
        elements as its poset of join-irreducibles has down-sets."""
        if self.union_closed:
            return True
        gens = self.generators
        below = [sum(bit(k) for k, h in enumerate(gens) if h & ~g == 0) for g in gens]
        count = _count_down_sets(below, limit=len(self) + 1)
        return count == len(self)

    def distributivity_witness(self) -> Optional[Tuple[int, int, int]]:
        """A triple ``(a, b, c)`` with ``a & (b v c) != (a & b) v (a & c)``."""
        if self.is_distributive:
            return None
        elems = self.elements
        for a in elems:
            for b, c in combinations(elems, 2):
                if a & self.join(b, c) != self.join(a & b, a & c):
                    return (a, b, c)
        return None  # pragma: no cover

    # -- tables, diagrams --------------------------------------------------

    @cached_property
    def join_table(self) -> Tuple[Tuple[int, ...], ...]:
        idx = self._index
        return tuple(tuple(idx[self.join(a, b)] for b in self.elements) for a in self.elements)

    @cached_property
    def meet_table(self) -> Tuple[Tuple[int, ...], ...]:
        idx = self._index
        return tuple(tuple(idx[a & b] for b in self.elements) for a in self.elements)

    def order_graph(self) -> nx.DiGraph:
        """Strict order as a DAG on element indices, edges pointing upward."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self)))
        for i, a in enumerate(self.elements):
            for k, b in enumerate(self.elements):
                if i != k and a & ~b == 0:
                    graph.add_edge(i, k)
        return graph

    def covers(self) -> List[Tuple[int, int]]:
        """Hasse diagram edges as pairs of element indices."""
        return sorted(nx.transitive_reduction(self.order_graph()).edges())

    def generator_poset(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        gens = self.generators
        graph.add_nodes_from(range(len(gens)))
        for i, a in enumerate(gens):
            for k, b in enumerate(gens):
                if i != k and a & ~b == 0:
                    graph.add_edge(i, k)
        return graph

    def generator_set(self, mask: int) -> int:
        """Bitmask over generator positions of the generators below ``mask``."""
        acc = 0
        for k, j in enumerate(self.generators):
            if j & ~mask == 0:
                acc |= 1 << k
        return acc


class FiniteFrame(FiniteSupLattice):
    """A finite distributive lattice, which is exactly a finite frame."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        if kwargs.get("validate", True):
            witness = self.distributivity_witness()
            if witness is not None:
                raise LawViolation("frame.distributive", witness, f"{self!r} is not distributive at {witness}")

    def implies(self, a: int, b: int) -> int:
        """Heyting implication ``a -> b``."""
        return self.join_all(c for c in self.elements if c & a & ~b == 0)

    @classmethod
    def of(cls, lattice: FiniteSupLattice) -> "FiniteFrame":
        """View a distributive lattice as a frame."""
        if isinstance(lattice, FiniteFrame):
            return lattice
        return cls(
            lattice.elements,
            lattice.ground,
            name=lattice.name,
            labels=dict(lattice._labels),
            join_generators=lattice.generators,
        )


def _count_down_sets(below: Sequence[int], limit: int) -> int:
    """Count down-sets of a poset given as ``below[i]`` = mask of ``{k <= i}``."""
    n = len(below)
    count = 0
    stack = [(0, 0)]
    # elements above i have strictly larger down-sets, so they are decided first
    order = sorted(range(n), key=lambda i: -popcount(below[i]))
    while stack:
        pos, chosen = stack.pop()
        if pos == n:
            count += 1
            if count >= limit:
                return count
            continue
        i = order[pos]
        forced_in = any(chosen >> k & 1 and below[k] >> i & 1 for k in range(n) if k != i)
        stack.append((pos + 1, chosen | bit(i)))
        if not forced_in:
            stack.append((pos + 1, chosen))
    return count


# -- constructors -------------------------------------------------------------


def from_order(
    labels: Sequence[Hashable],
    leq: Iterable[Tuple[int, int]],
    name: str = "",
    frame: bool = False,
) -> FiniteSupLattice:
    """Build a lattice from labelled elements and a generating order relation.

    ``leq`` may be any relation whose reflexive transitive closure is the
    intended partial order, e.g. the Hasse diagram.
    """
    n = len(labels)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for a, b in leq:
        if not (0 <= a < n and 0 <= b < n):
            raise LawViolation("order.indices", (a, b), f"order pair {(a, b)} out of range")
        graph.add_edge(a, b)
    closed = nx.transitive_closure(graph, reflexive=True)
    down = [0] * n
    for a, b in closed.edges():
        down[b] |= bit(a)
    for a in range(n):
        for b in range(a + 1, n):
            if down[b] >> a & 1 and down[a] >> b & 1:
                raise LawViolation("order.antisymmetric", (a, b), f"elements {a} and {b} are equivalent")
    members = set(down)
    tops = [i for i in range(n) if down[i] == full(n)]
    if not tops:
        raise LawViolation("lattice.top", None, "order has no top element")
    for a in range(n):
        for b in range(a + 1, n):
            if down[a] & down[b] not in members:
                raise LawViolation("lattice.meets", (a, b), f"elements {a} and {b} have no meet")
    cls = FiniteFrame if frame else FiniteSupLattice
    return cls(
        down,
        n,
        name=name,
        labels={down[i]: labels[i] for i in range(n)},
        validate=frame,
    )


def from_sets(family: Iterable[int], ground: int, name: str = "", frame: bool = False) -> FiniteSupLattice:
    cls = FiniteFrame if frame else FiniteSupLattice
    return cls(family, ground, name=name)


def chain(n: int, name: str = "") -> FiniteFrame:
    """The ``n``-element chain ``0 < 1 < ... < n-1``."""
    if n < 1:
        raise LawViolation("lattice.nonempty", n, "a chain needs at least one element")
    masks = [full(i) for i in range(n)]
    return FiniteFrame(
        masks,
        n - 1,
        name=name or f"chain({n})",
        labels={m: i for i, m in enumerate(masks)},
        union_closed=True,
        join_generators=masks[1:],
        validate=False,
    )


def powerset(n: int, name: str = "") -> FiniteFrame:
    """The Boolean algebra of subsets of ``range(n)``."""
    return FiniteFrame(
        range(1 << n),
        n,
        name=name or f"P({n})",
        union_closed=True,
        join_generators=[bit(i) for i in range(n)],
        validate=False,
    )


def one_point() -> FiniteFrame:
    """The one-element lattice, frame of the empty locale."""
    return FiniteFrame([0], 0, name="1", union_closed=True, validate=False)


# -- isomorphism --------------------------------------------------------------


def find_isomorphism(
    first: FiniteSupLattice, second: FiniteSupLattice, bound: Optional[int] = None
) -> Optional[Dict[int, int]]:
    """Search for an order isomorphism, returned as a mask-to-mask dict.

    Candidates are isomorphisms of the posets of join-irreducibles, each
    extended by joins and then checked on the whole lattice.
    """
    if len(first) != len(second) or len(first.generators) != len(second.generators):
        return None
    limit = settings.resolve_bound(bound)
    matcher = DiGraphMatcher(first.generator_poset(), second.generator_poset())
    target_sets = {second.generator_set(m): m for m in second.elements}
    for tried, sigma in enumerate(matcher.isomorphisms_iter()):
        if tried >= limit:
            raise EnumerationBoundError("generator poset isomorphisms", tried + 1, limit)
        mapping = {}
        for m in first.elements:
            image_set = 0
            for k in iter_bits(first.generator_set(m)):
                image_set |= bit(sigma[k])
            image = target_sets.get(image_set)
            if image is None:
                break
            mapping[m] = image
        else:
            if len(set(mapping.values())) == len(second):
                logger.debug("isomorphism %r -> %r found after %d candidates", first, second, tried + 1)
                return mapping
    return None


def canonical_form(lattice: FiniteSupLattice, bound: Optional[int] = None) -> Tuple[int, ...]:
    """An isomorphism invariant that separates non-isomorphic lattices.

    Each element is recorded as the set of generators below it; the form is the
    lexicographically least sorted tuple over all relabellings of generators.
    """
    gens = lattice.generators
    limit = settings.resolve_bound(bound)
    n = len(gens)
    total = 1
    for k in range(2, n + 1):
        total *= k
    if total > limit:
        raise EnumerationBoundError("generator relabellings", total, limit)
    sets = [lattice.generator_set(m) for m in lattice.elements]
    best: Optional[Tuple[int, ...]] = None
    for perm in permutations(range(n)):
        relabelled = []
        for s in sets:
            acc = 0
            for k in iter_bits(s):
                acc |= bit(perm[k])
            relabelled.append(acc)
        form = tuple(sorted(relabelled))
        if best is None or form < best:
            best = form
    return best or ()
