"""Finite spaces and their frames of opens.

A finite T0 space is a finite poset; its open sets are the *up-sets*. The
specialization order therefore puts the Sierpinski point ``1`` (the open
point) above ``0``: opens are ``{}``, ``{1}`` and ``{0, 1}``. A continuous
map is a monotone map of points and its inverse image is preimage.
"""

import logging
from functools import cached_property
from itertools import product as cartesian
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from qlab import settings
from qlab.errors import EnumerationBoundError, LawViolation
from qlab.order.bits import bit, full, iter_bits, popcount
from qlab.order.lattice import FiniteFrame

logger = logging.getLogger(__name__)


class FiniteSpace:
    """A finite T0 space given as a poset of labelled points.

    Args:
        labels: Point labels, one per point.
        up: ``up[x]`` is the mask of points ``y`` with ``x <= y``; must be
            reflexive, transitive and antisymmetric.
        name: Display name.
    """

    def __init__(self, labels: Sequence[Hashable], up: Sequence[int], name: str = ""):
        if len(labels) != len(up):
            raise LawViolation("space.points", (len(labels), len(up)), "one up-set per point is required")
        self.labels: Tuple[Hashable, ...] = tuple(labels)
        self.up: Tuple[int, ...] = tuple(up)
        self.name = name
        n = len(self.up)
        for x in range(n):
            if not self.up[x] >> x & 1:
                raise LawViolation("order.reflexive", x, f"point {x} is not below itself")
            for y in iter_bits(self.up[x]):
                if self.up[y] & ~self.up[x]:
                    raise LawViolation("order.transitive", (x, y), f"order is not transitive at {(x, y)}")
                if y != x and self.up[y] >> x & 1:
                    raise LawViolation("order.antisymmetric", (x, y), f"points {x} and {y} are equivalent")

    @classmethod
    def from_order(
        cls, labels: Sequence[Hashable], leq: Iterable[Tuple[int, int]] = (), name: str = ""
    ) -> "FiniteSpace":
        """Build from a generating relation; its reflexive transitive closure is taken."""
        n = len(labels)
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        for a, b in leq:
            if not (0 <= a < n and 0 <= b < n):
                raise LawViolation("order.indices", (a, b), f"order pair {(a, b)} out of range")
            graph.add_edge(a, b)
        closed = nx.transitive_closure(graph, reflexive=True)
        up = [0] * n
        for a, b in closed.edges():
            up[a] |= bit(b)
        return cls(labels, up, name=name)

    @classmethod
    def discrete(cls, labels: Sequence[Hashable], name: str = "") -> "FiniteSpace":
        return cls(labels, [bit(i) for i in range(len(labels))], name=name)

    @classmethod
    def point(cls, label: Hashable = "*") -> "FiniteSpace":
        return cls.discrete([label], name="1")

    @classmethod
    def sierpinski(cls) -> "FiniteSpace":
        return cls.from_order([0, 1], [(0, 1)], name="S")

    @classmethod
    def chain(cls, n: int, name: str = "") -> "FiniteSpace":
        return cls.from_order(list(range(n)), [(i, i + 1) for i in range(n - 1)], name=name or f"C{n}")

    # -- points -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.up)

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<FiniteSpace{name} points={len(self)}>"

    @property
    def full(self) -> int:
        return full(len(self))

    @cached_property
    def _label_index(self) -> Dict[Hashable, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: Hashable) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise LawViolation("space.point", label, f"{label!r} is not a point of {self!r}")

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    @cached_property
    def down(self) -> Tuple[int, ...]:
        down = [0] * len(self)
        for x, mask in enumerate(self.up):
            for y in iter_bits(mask):
                down[y] |= bit(x)
        return tuple(down)

    def up_closure(self, mask: int) -> int:
        acc = 0
        for x in iter_bits(mask):
            acc |= self.up[x]
        return acc

    def down_closure(self, mask: int) -> int:
        acc = 0
        for x in iter_bits(mask):
            acc |= self.down[x]
        return acc

    def is_open(self, mask: int) -> bool:
        return mask & ~self.full == 0 and self.up_closure(mask) == mask

    def order_pairs(self) -> List[Tuple[int, int]]:
        """All pairs ``x < y``."""
        return [(x, y) for x in range(len(self)) for y in iter_bits(self.up[x]) if y != x]

    def hasse(self) -> List[Tuple[int, int]]:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self)))
        graph.add_edges_from(self.order_pairs())
        return sorted(nx.transitive_reduction(graph).edges())

    @cached_property
    def frame(self) -> "SpaceFrame":
        return SpaceFrame(self)

    # -- constructions --------------------------------------------------------

    def subspace(self, mask: int, name: str = "") -> Tuple["FiniteSpace", List[int]]:
        """The subspace on the points of ``mask`` and the list of included point indices."""
        points = list(iter_bits(mask))
        position = {x: i for i, x in enumerate(points)}
        up = []
        for x in points:
            acc = 0
            for y in iter_bits(self.up[x] & mask):
                acc |= bit(position[y])
            up.append(acc)
        return FiniteSpace([self.labels[x] for x in points], up, name=name), points

    def product(self, other: "FiniteSpace", name: str = "") -> "FiniteSpace":
        labels = []
        up = []
        m = len(other)
        for x, y in cartesian(range(len(self)), range(m)):
            labels.append((self.labels[x], other.labels[y]))
            acc = 0
            for x2 in iter_bits(self.up[x]):
                for y2 in iter_bits(other.up[y]):
                    acc |= bit(x2 * m + y2)
            up.append(acc)
        return FiniteSpace(labels, up, name=name or f"{self.name}x{other.name}")

    def disjoint_union(self, other: "FiniteSpace", name: str = "") -> "FiniteSpace":
        shift = len(self)
        labels = [(0, label) for label in self.labels] + [(1, label) for label in other.labels]
        up = list(self.up) + [mask << shift for mask in other.up]
        return FiniteSpace(labels, up, name=name or f"{self.name}+{other.name}")


class SpaceFrame(FiniteFrame):
    """The frame of up-sets of a finite space, enumerated on demand.

    Generators are the principal up-sets ``up[x]``, listed in point order, so
    the generator index of a point is the point index itself.
    """

    def __init__(self, space: FiniteSpace, bound: Optional[int] = None):
        self.space = space
        self.ground = len(space)
        self.name = f"O({space.name})" if space.name else "O(X)"
        self._labels = {}
        self._join_generators = None
        self._bound = bound
        self.__dict__["union_closed"] = True
        self.__dict__["is_distributive"] = True

    def _enumerate(self) -> Tuple[int, ...]:
        space = self.space
        limit = settings.resolve_bound(self._bound)
        n = len(space)
        # points with smaller up-sets sit higher in the order and are decided first
        order = sorted(range(n), key=lambda x: popcount(space.up[x]))
        found = []
        stack = [(0, 0)]
        while stack:
            pos, chosen = stack.pop()
            if pos == n:
                found.append(chosen)
                if len(found) > limit:
                    raise EnumerationBoundError(f"open sets of {space!r}", len(found), limit)
                continue
            x = order[pos]
            stack.append((pos + 1, chosen))
            if space.up[x] & ~bit(x) & ~chosen == 0:
                stack.append((pos + 1, chosen | bit(x)))
        logger.debug("%r has %d open sets", space, len(found))
        return tuple(sorted(found, key=lambda m: (popcount(m), m)))

    def __contains__(self, mask: int) -> bool:
        return self.space.is_open(mask)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.space.full

    def closure(self, mask: int) -> int:
        if mask & ~self.space.full:
            raise LawViolation("lattice.closure", mask, f"{mask:#x} is above the top")
        return self.space.up_closure(mask)

    def join(self, a: int, b: int) -> int:
        return a | b

    def join_all(self, masks: Iterable[int]) -> int:
        acc = 0
        for m in masks:
            acc |= m
        return acc

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        return self.space.up

    def generators_below(self, mask: int) -> List[int]:
        return [self.space.up[x] for x in iter_bits(mask)]

    def generator_set(self, mask: int) -> int:
        return mask

    def label(self, mask: int) -> Hashable:
        return tuple(self.space.labels[x] for x in iter_bits(mask))

    def implies(self, a: int, b: int) -> int:
        # largest up-set inside the complement of a minus b
        bad = a & ~b
        return self.space.full & ~self.space.down_closure(bad)


class ContinuousMap:
    """A monotone map of finite spaces, given by the image of each point."""

    def __init__(self, source: FiniteSpace, target: FiniteSpace, values: Sequence[int], name: str = ""):
        self.source = source
        self.target = target
        self.values: Tuple[int, ...] = tuple(values)
        self.name = name
        if len(self.values) != len(source):
            raise LawViolation("map.total", len(self.values), f"{name or 'map'} needs one value per point")
        for x, v in enumerate(self.values):
            if not 0 <= v < len(target):
                raise LawViolation("map.total", x, f"{name or 'map'} sends {x} outside the target")
        witness = self.monotonicity_witness()
        if witness is not None:
            raise LawViolation("map.monotone", witness, f"{name or 'map'} is not continuous at {witness}")

    @classmethod
    def identity(cls, space: FiniteSpace) -> "ContinuousMap":
        return cls(space, space, range(len(space)), name="id")

    @classmethod
    def constant(cls, source: FiniteSpace, target: FiniteSpace, value: int = 0) -> "ContinuousMap":
        return cls(source, target, [value] * len(source), name="const")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ContinuousMap) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"<ContinuousMap {self.name or ''} {self.values}>"

    def monotonicity_witness(self) -> Optional[Tuple[int, int]]:
        for x, y in self.source.order_pairs():
            if not self.target.leq(self.values[x], self.values[y]):
                return (x, y)
        return None

    @cached_property
    def fibers(self) -> Tuple[int, ...]:
        fibers = [0] * len(self.target)
        for x, v in enumerate(self.values):
            fibers[v] |= bit(x)
        return tuple(fibers)

    def preimage(self, mask: int) -> int:
        acc = 0
        for z in iter_bits(mask):
            acc |= self.fibers[z]
        return acc

    def image(self, mask: int) -> int:
        acc = 0
        for x in iter_bits(mask):
            acc |= bit(self.values[x])
        return acc

    def direct_image(self, mask: int) -> int:
        """Left adjoint of preimage: the up-closure of the image."""
        return self.target.up_closure(self.image(mask))

    def open_witness(self) -> Optional[Tuple[int, int]]:
        """A point ``x`` and ``y >= f(x)`` with no ``x' >= x`` over ``y``."""
        for x in range(len(self.source)):
            reached = self.image(self.source.up[x])
            missing = self.target.up[self.values[x]] & ~reached
            if missing:
                return (x, next(iter_bits(missing)))
        return None

    def is_open(self) -> bool:
        return self.open_witness() is None

    def is_surjective(self) -> bool:
        return self.image(self.source.full) == self.target.full

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def compose(self, inner: "ContinuousMap", name: str = "") -> "ContinuousMap":
        """``self`` after ``inner``."""
        return ContinuousMap(inner.source, self.target, [self.values[v] for v in inner.values], name=name)

    def inverse(self) -> Optional["ContinuousMap"]:
        """The inverse homeomorphism, or ``None`` if this is not one."""
        if not (self.is_injective() and self.is_surjective()):
            return None
        back = [0] * len(self.target)
        for x, v in enumerate(self.values):
            back[v] = x
        for x, y in self.target.order_pairs():
            if not self.source.leq(back[x], back[y]):
                return None
        return ContinuousMap(self.target, self.source, back, name=f"{self.name}^-1")

    def restrict(self, mask: int) -> "ContinuousMap":
        sub, points = self.source.subspace(mask)
        return ContinuousMap(sub, self.target, [self.values[x] for x in points], name=self.name)


def fibered_product(
    f: ContinuousMap, g: ContinuousMap, name: str = ""
) -> Tuple[FiniteSpace, ContinuousMap, ContinuousMap, List[Tuple[int, int]]]:
    """Points ``(x, y)`` with ``f(x) = g(y)``, ordered componentwise.

    Returns the space, both projections and the list of index pairs.
    """
    if f.target is not g.target and f.target.up != g.target.up:
        raise LawViolation("pullback.codomain", None, "maps must share a codomain")
    pairs = [(x, y) for x in range(len(f.source)) for y in range(len(g.source)) if f(x) == g(y)]
    position = {p: i for i, p in enumerate(pairs)}
    up = []
    for x, y in pairs:
        acc = 0
        for x2 in iter_bits(f.source.up[x]):
            for y2 in iter_bits(g.source.up[y]):
                i = position.get((x2, y2))
                if i is not None:
                    acc |= bit(i)
        up.append(acc)
    labels = [(f.source.labels[x], g.source.labels[y]) for x, y in pairs]
    space = FiniteSpace(labels, up, name=name)
    pr1 = ContinuousMap(space, f.source, [x for x, _ in pairs], name="pr1")
    pr2 = ContinuousMap(space, g.source, [y for _, y in pairs], name="pr2")
    return space, pr1, pr2, pairs
