"""Maps between finite lattices and their adjoints."""

import logging
from functools import cached_property
from typing import Callable, Dict, Mapping, Optional, Tuple, Union

from qlab.errors import JoinPreservationError, LawViolation
from qlab.order.lattice import FiniteSupLattice

logger = logging.getLogger(__name__)

MapLike = Union[Callable[[int], int], Mapping[int, int]]


class MonotoneMap:
    """A map of finite lattices, evaluated lazily and memoised.

    Args:
        source: Domain lattice.
        target: Codomain lattice.
        fn: Callable or mapping on element masks.
        name: Display name.
    """

    def __init__(self, source: FiniteSupLattice, target: FiniteSupLattice, fn: MapLike, name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        if isinstance(fn, Mapping):
            self._memo: Dict[int, int] = dict(fn)
            self._fn: Callable[[int], int] = self._missing
        else:
            self._memo = {}
            self._fn = fn

    def _missing(self, mask: int) -> int:
        raise LawViolation("map.total", mask, f"{self!r} is undefined at {mask:#x}")

    def __call__(self, mask: int) -> int:
        try:
            return self._memo[mask]
        except KeyError:
            value = self._fn(mask)
            self._memo[mask] = value
            return value

    def __repr__(self) -> str:
        name = self.name or type(self).__name__
        return f"<{name}: {self.source!r} -> {self.target!r}>"

    @cached_property
    def table(self) -> Dict[int, int]:
        return {a: self(a) for a in self.source.elements}

    def index_table(self) -> Tuple[int, ...]:
        """Values as target indices, in source order."""
        return tuple(self.target.index(self(a)) for a in self.source.elements)

    def compose(self, inner: "MonotoneMap", name: str = "") -> "MonotoneMap":
        """``self`` after ``inner``."""
        cls = SupHom if isinstance(self, SupHom) and isinstance(inner, SupHom) else MonotoneMap
        outer = self
        if cls is SupHom:
            return SupHom(inner.source, outer.target, lambda a: outer(inner(a)), name=name, validate=False)
        return MonotoneMap(inner.source, outer.target, lambda a: outer(inner(a)), name=name)

    def range_witness(self) -> Optional[int]:
        for a in self.source.elements:
            if self(a) not in self.target:
                return a
        return None

    def monotonicity_witness(self) -> Optional[Tuple[int, int]]:
        """A pair ``a <= b`` with ``f(a) not <= f(b)``.

        Only pairs ``(a, a v j)`` with ``j`` a generator are examined, which
        suffices because every ``b >= a`` is reached by such steps.
        """
        src = self.source
        for a in src.elements:
            fa = self(a)
            for j in src.generators:
                b = src.join(a, j)
                if fa & ~self(b):
                    return (a, b)
        return None

    def differs_from(self, other: "MonotoneMap") -> Optional[int]:
        for a in self.source.elements:
            if self(a) != other(a):
                return a
        return None

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.source)

    def is_surjective(self) -> bool:
        return set(self.table.values()) == set(self.target.elements)


def join_preservation_witness(f: MonotoneMap) -> Optional[Tuple[int, ...]]:
    """A tuple of elements whose join ``f`` fails to preserve, or ``None``.

    The empty tuple means ``f`` does not send bottom to bottom. On a
    distributive source it is enough to compare each element with the join of
    the images of the generators below it; otherwise all pairs are checked.
    """
    src, tgt = f.source, f.target
    if f(src.bottom) != tgt.bottom:
        return ()
    if src.is_distributive:
        for a in src.elements:
            below = src.generators_below(a)
            if f(a) != tgt.join_all(f(j) for j in below):
                return tuple(below)
        return None
    elems = src.elements
    for i, a in enumerate(elems):
        for b in elems[i + 1 :]:
            if f(src.join(a, b)) != tgt.join(f(a), f(b)):
                return (a, b)
    return None


def meet_preservation_witness(f: MonotoneMap) -> Optional[Tuple[int, ...]]:
    """A tuple of elements whose meet ``f`` fails to preserve, or ``None``."""
    src, tgt = f.source, f.target
    if f(src.top) != tgt.top:
        return ()
    elems = src.elements
    for i, a in enumerate(elems):
        for b in elems[i + 1 :]:
            if f(a & b) != f(a) & f(b):
                return (a, b)
    return None


class SupHom(MonotoneMap):
    """A join-preserving map, validated on construction unless told otherwise."""

    def __init__(self, source, target, fn: MapLike, name: str = "", validate: bool = True):
        super().__init__(source, target, fn, name=name)
        self.validated = validate
        if validate:
            witness = join_preservation_witness(self)
            if witness is not None:
                raise JoinPreservationError(witness)

    @classmethod
    def from_generators(
        cls, source: FiniteSupLattice, target: FiniteSupLattice, values: Mapping[int, int], name: str = ""
    ) -> "SupHom":
        """Extend values on the generators of ``source`` by joins."""
        values = dict(values)

        def extend(a: int) -> int:
            return target.join_all(values[j] for j in source.generators_below(a))

        return cls(source, target, extend, name=name, validate=False)


def identity(lattice: FiniteSupLattice) -> SupHom:
    return SupHom(lattice, lattice, lambda a: a, name="id", validate=False)


def right_adjoint(f: MonotoneMap, name: str = "") -> MonotoneMap:
    """Right adjoint of a join-preserving map: ``f_*(y) = V{x : f(x) <= y}``.

    The set being joined is down-closed, so its join is the join of the
    generators it contains.

    Raises:
        JoinPreservationError: ``f`` does not preserve joins; carries the
            witnessing subset.
    """
    if not getattr(f, "validated", False):
        witness = join_preservation_witness(f)
        if witness is not None:
            raise JoinPreservationError(witness)
    src = f.source
    gens = src.generators

    def upper(y: int) -> int:
        return src.join_all(j for j in gens if f(j) & ~y == 0)

    return MonotoneMap(f.target, src, upper, name=name or f"{f.name or 'f'}_*")


def left_adjoint(g: MonotoneMap, name: str = "") -> SupHom:
    """Left adjoint of a meet-preserving map ``g: M -> L``.

    ``g_!(x) = /\\{y : x <= g(y)}``, computed on the generators of ``L`` and
    extended by joins.
    """
    src, tgt = g.target, g.source
    values = {}
    for j in src.generators:
        values[j] = tgt.meet_all(y for y in tgt.elements if j & ~g(y) == 0)
    return SupHom.from_generators(src, tgt, values, name=name or f"{g.name or 'g'}_!")


def adjunction_witness(left: MonotoneMap, right: MonotoneMap) -> Optional[Tuple[str, int]]:
    """Check ``left -| right`` through unit and counit.

    Returns ``("unit", x)`` when ``x <= right(left(x))`` fails, ``("counit", y)``
    when ``left(right(y)) <= y`` fails, or ``None``.
    """
    for x in left.source.elements:
        if x & ~right(left(x)):
            return ("unit", x)
    for y in right.source.elements:
        if left(right(y)) & ~y:
            return ("counit", y)
    if left.monotonicity_witness() is not None:
        return ("monotone", left.monotonicity_witness()[0])
    if right.monotonicity_witness() is not None:
        return ("monotone", right.monotonicity_witness()[0])
    return None


def inverse(f: MonotoneMap, name: str = "") -> Optional[MonotoneMap]:
    """Inverse of a bijective map whose inverse is also monotone, else ``None``."""
    if not (f.is_injective() and f.is_surjective()):
        return None
    back = {v: k for k, v in f.table.items()}
    g = MonotoneMap(f.target, f.source, back, name=name or f"{f.name or 'f'}^-1")
    if g.monotonicity_witness() is not None:
        return None
    return g
