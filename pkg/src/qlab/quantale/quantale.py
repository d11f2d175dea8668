"""Based quantales and their laws.

A based quantale is a sup-lattice ``Q`` with an associative join-preserving
multiplication, an involution, and two actions of a frame ``A``: the left
restriction ``left(a, q)`` and the right restriction ``right(q, a)``. It
may carry a support ``Q -> A`` and a reflexivity map ``Q -> A``.

Laws that are join-preserving in a variable are checked on the
join-irreducibles of that variable, which is exact for finite lattices.
"""

import logging
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from qlab.errors import HypothesisError, LawViolation
from qlab.order.lattice import FiniteFrame, FiniteSupLattice
from qlab.order.maps import MonotoneMap, adjunction_witness, join_preservation_witness
from qlab.order.tensor import bilinearity_witness
from qlab.quantale.tensor import RelativeTensor, relative_tensor
from qlab.report import Report

logger = logging.getLogger(__name__)

Op1 = Union[Callable[[int], int], Mapping[int, int]]
Op2 = Union[Callable[[int, int], int], Mapping[Tuple[int, int], int]]


def _memo1(op: Op1) -> Callable[[int], int]:
    if isinstance(op, Mapping):
        table = dict(op)
        return table.__getitem__
    cache: Dict[int, int] = {}

    def call(x: int) -> int:
        try:
            return cache[x]
        except KeyError:
            cache[x] = value = op(x)
            return value

    return call


def _memo2(op: Op2) -> Callable[[int, int], int]:
    if isinstance(op, Mapping):
        table = dict(op)
        return lambda x, y: table[(x, y)]
    cache: Dict[Tuple[int, int], int] = {}

    def call(x: int, y: int) -> int:
        try:
            return cache[(x, y)]
        except KeyError:
            cache[(x, y)] = value = op(x, y)
            return value

    return call


class BasedQuantale:
    """An involutive quantale over a base frame.

    Args:
        base: The base frame ``A``.
        lattice: The quantale's lattice ``Q``.
        mul: Multiplication ``Q x Q -> Q``.
        star: Involution.
        left: Left restriction ``(a, q) -> left(a, q)``.
        right: Right restriction ``(q, a) -> right(q, a)``.
        support: Optional support ``Q -> A``.
        reflexive: Optional reflexivity map ``Q -> A``.
        name: Display name.

    Operations may be callables or tables keyed by element masks.
    """

    def __init__(
        self,
        base: FiniteFrame,
        lattice: FiniteSupLattice,
        mul: Op2,
        star: Op1,
        left: Op2,
        right: Op2,
        support: Optional[Op1] = None,
        reflexive: Optional[Op1] = None,
        name: str = "",
    ):
        self.base = base
        self.lattice = lattice
        self.name = name
        self._ops = dict(mul=mul, star=star, left=left, right=right, support=support, reflexive=reflexive)
        self.mul = _memo2(mul)
        self.star = _memo1(star)
        self.left = _memo2(left)
        self.right = _memo2(right)
        self._support = None if support is None else _memo1(support)
        self._reflexive = None if reflexive is None else _memo1(reflexive)

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<BasedQuantale{name} |Q|={len(self.lattice)} |A|={len(self.base)}>"

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def has_support(self) -> bool:
        return self._support is not None

    @property
    def has_reflexive(self) -> bool:
        return self._reflexive is not None

    def spp(self, x: int) -> int:
        if self._support is None:
            raise HypothesisError("quantale.support", f"{self!r} has no support")
        return self._support(x)

    def upsilon(self, x: int) -> int:
        if self._reflexive is None:
            raise HypothesisError("quantale.reflexive", f"{self!r} has no reflexivity map")
        return self._reflexive(x)

    @cached_property
    def support_map(self) -> MonotoneMap:
        return MonotoneMap(self.lattice, self.base, self.spp, name="spp")

    @cached_property
    def reflexive_map(self) -> MonotoneMap:
        return MonotoneMap(self.lattice, self.base, self.upsilon, name="upsilon")

    def replace(self, name: str = "", **ops) -> "BasedQuantale":
        """A copy with some operations replaced, e.g. ``support=...``."""
        merged = {**self._ops, **ops}
        return BasedQuantale(self.base, self.lattice, name=name or self.name, **merged)

    # -- distinguished elements --------------------------------------------------

    @cached_property
    def unit(self) -> Optional[int]:
        """The two-sided multiplicative unit, if there is one."""
        gens = self.lattice.generators
        for e in self.lattice.elements:
            if all(self.mul(e, j) == j and self.mul(j, e) == j for j in gens):
                return e
        return None

    @cached_property
    def right_sided(self) -> Tuple[int, ...]:
        return tuple(q for q in self.lattice.elements if self.mul(q, self.top) & ~q == 0)

    @cached_property
    def left_sided(self) -> Tuple[int, ...]:
        return tuple(q for q in self.lattice.elements if self.mul(self.top, q) & ~q == 0)

    @cached_property
    def two_sided(self) -> Tuple[int, ...]:
        left = set(self.left_sided)
        return tuple(q for q in self.right_sided if q in left)

    def partial_units(self) -> List[int]:
        """Elements ``s`` with ``s*s v ss* <= e``."""
        e = self.unit
        if e is None:
            raise HypothesisError("quantale.unital", f"{self!r} has no unit, so partial units are undefined")
        found = []
        for s in self.lattice.elements:
            s_ = self.star(s)
            if self.lattice.join(self.mul(s_, s), self.mul(s, s_)) & ~e == 0:
                found.append(s)
        return found

    def tables(self) -> Dict[str, object]:
        """All operations as index tables, for serialization."""
        Q, A = self.lattice, self.base
        q_elems, a_elems = Q.elements, A.elements
        out: Dict[str, object] = {
            "mul": [[Q.index(self.mul(x, y)) for y in q_elems] for x in q_elems],
            "star": [Q.index(self.star(x)) for x in q_elems],
            "left": [[Q.index(self.left(a, q)) for q in q_elems] for a in a_elems],
            "right": [[Q.index(self.right(q, a)) for a in a_elems] for q in q_elems],
        }
        if self.has_support:
            out["support"] = [A.index(self.spp(x)) for x in q_elems]
        if self.has_reflexive:
            out["reflexive"] = [A.index(self.upsilon(x)) for x in q_elems]
        return out

    @classmethod
    def from_tables(
        cls,
        base: FiniteFrame,
        lattice: FiniteSupLattice,
        mul: Sequence[Sequence[int]],
        star: Sequence[int],
        left: Sequence[Sequence[int]],
        right: Sequence[Sequence[int]],
        support: Optional[Sequence[int]] = None,
        reflexive: Optional[Sequence[int]] = None,
        name: str = "",
    ) -> "BasedQuantale":
        """Build from index tables as produced by :meth:`tables`."""
        q, a = lattice.elements, base.elements
        try:
            mul_t = {(q[i], q[j]): q[v] for i, row in enumerate(mul) for j, v in enumerate(row)}
            star_t = {q[i]: q[v] for i, v in enumerate(star)}
            left_t = {(a[i], q[j]): q[v] for i, row in enumerate(left) for j, v in enumerate(row)}
            right_t = {(q[i], a[j]): q[v] for i, row in enumerate(right) for j, v in enumerate(row)}
            spp_t = None if support is None else {q[i]: a[v] for i, v in enumerate(support)}
            ups_t = None if reflexive is None else {q[i]: a[v] for i, v in enumerate(reflexive)}
        except IndexError as exc:
            raise LawViolation("quantale.tables", None, f"table index out of range: {exc}")
        for label, table, size in (("mul", mul_t, len(q) ** 2), ("star", star_t, len(q)), ("left", left_t, len(a) * len(q)), ("right", right_t, len(a) * len(q))):
            if len(table) != size:
                raise LawViolation("quantale.tables", label, f"{label} table must have {size} entries")
        return cls(base, lattice, mul_t, star_t, left_t, right_t, spp_t, ups_t, name=name)


# -- laws ------------------------------------------------------------------------------


def _first(items):
    for item in items:
        return item
    return None


def check_based_quantale(quantale: BasedQuantale) -> Report:
    """Quantale, bimodule and involution laws."""
    Q = quantale
    L, A = Q.lattice, Q.base
    gq, ga = L.generators, A.generators
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        witness = bilinearity_witness(Q.mul, L, L, L)
        if witness is None:
            star_joins = join_preservation_witness(MonotoneMap(L, L, Q.star))
            witness = None if star_joins is None else ("star", star_joins)
        if witness is None:
            witness = bilinearity_witness(Q.left, A, L, L)
        if witness is None:
            witness = bilinearity_witness(Q.right, L, A, L)
        report.witness("quantale.join_preserving", witness)
        if not report.passed:
            return report
        report.witness(
            "quantale.assoc",
            _first((x, y, z) for x in gq for y in gq for z in gq if Q.mul(Q.mul(x, y), z) != Q.mul(x, Q.mul(y, z))),
        )
        report.witness(
            "quantale.involution",
            _first(("twice", x) for x in L.elements if Q.star(Q.star(x)) != x)
            or _first(("product", x, y) for x in gq for y in gq if Q.star(Q.mul(x, y)) != Q.mul(Q.star(y), Q.star(x))),
        )
        bimodule = _first(("left unit", q) for q in gq if Q.left(A.top, q) != q) or _first(
            ("right unit", q) for q in gq if Q.right(q, A.top) != q
        )
        if bimodule is None:
            for a in ga:
                for b in ga:
                    for q in gq:
                        if Q.left(a, Q.left(b, q)) != Q.left(a & b, q):
                            bimodule = ("left assoc", a, b, q)
                        elif Q.right(Q.right(q, a), b) != Q.right(q, a & b):
                            bimodule = ("right assoc", q, a, b)
                        elif Q.right(Q.left(a, q), b) != Q.left(a, Q.right(q, b)):
                            bimodule = ("compatible", a, q, b)
                        if bimodule:
                            break
                    if bimodule:
                        break
                if bimodule:
                    break
        report.witness("quantale.bimodule", bimodule)
        mult = None
        for a in ga:
            for x in gq:
                for y in gq:
                    if Q.mul(Q.left(a, x), y) != Q.left(a, Q.mul(x, y)):
                        mult = ("left", a, x, y)
                    elif Q.mul(Q.right(x, a), y) != Q.mul(x, Q.left(a, y)):
                        mult = ("middle", x, a, y)
                    elif Q.right(Q.mul(x, y), a) != Q.mul(x, Q.right(y, a)):
                        mult = ("right", x, y, a)
                    if mult:
                        break
                if mult:
                    break
            if mult:
                break
        report.witness("quantale.bimodule_mult", mult)
        report.witness(
            "quantale.bimodule_involution",
            _first(
                (a, x, b)
                for a in ga
                for b in ga
                for x in gq
                if Q.star(Q.left(a, Q.right(x, b))) != Q.left(b, Q.right(Q.star(x), a))
            ),
        )
    return report


def check_support(quantale: BasedQuantale) -> Report:
    """The support laws: top to top, restriction below ``xx*y``, and ``x`` fixed by its support."""
    Q = quantale
    L = Q.lattice
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        witness = join_preservation_witness(Q.support_map)
        if witness is not None:
            report.check("quantale.support", False, ("joins", witness))
            return report
        if Q.spp(Q.top) != Q.base.top:
            report.check("quantale.support", False, ("top", Q.top))
            return report
        for x in L.elements:
            s = Q.spp(x)
            if Q.left(s, x) != x:
                report.check("quantale.support", False, ("fix", x))
                return report
            xx = Q.mul(x, Q.star(x))
            for y in L.generators:
                if Q.left(s, y) & ~Q.mul(xx, y):
                    report.check("quantale.support", False, ("restrict", x, y))
                    return report
        report.check("quantale.support", True)
    return report


def check_equivariant(quantale: BasedQuantale) -> Report:
    """``spp(left(a, x)) = a & spp(x)``, and right-sided elements match the base."""
    Q = quantale
    L, A = Q.lattice, Q.base
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        report.witness(
            "quantale.equivariant",
            _first((a, x) for a in A.generators for x in L.elements if Q.spp(Q.left(a, x)) != a & Q.spp(x)),
        )
        sided = _first(("base", a) for a in A.elements if Q.spp(Q.left(a, Q.top)) != a)
        if sided is None:
            sided = _first(("right-sided", x) for x in Q.right_sided if Q.left(Q.spp(x), Q.top) != x)
        report.witness("quantale.sided_iso", sided)
    return report


def _variable(quantale: BasedQuantale) -> Tuple[int, ...]:
    """Elements to quantify a support law over: generators when the support preserves joins."""
    if join_preservation_witness(quantale.support_map) is None:
        return quantale.lattice.generators
    return quantale.lattice.elements


def check_stable(quantale: BasedQuantale) -> Report:
    """The three stability conditions, each checked on its own, and their agreement."""
    Q = quantale
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        xs = _variable(Q)
        ys = Q.lattice.generators if xs is Q.lattice.generators else Q.lattice.elements
        product = _first((x, y) for x in xs for y in ys if Q.spp(Q.mul(x, y)) & ~Q.spp(x))
        top = _first(x for x in xs if Q.spp(Q.mul(x, Q.top)) & ~Q.spp(x))
        formula = _first((x, y) for x in xs for y in ys if Q.spp(Q.mul(x, y)) != Q.spp(Q.right(x, Q.spp(y))))
        report.witness("quantale.stable.product", product)
        report.witness("quantale.stable.top", top)
        report.witness("quantale.stable.formula", formula)
        outcomes = (product is None, top is None, formula is None)
        report.check("quantale.stable.equivalent", len(set(outcomes)) == 1, outcomes)
    return report


def sided_elements(quantale: BasedQuantale) -> Tuple[List[int], List[int], List[int]]:
    """Right-, left- and two-sided elements."""
    return list(quantale.right_sided), list(quantale.left_sided), list(quantale.two_sided)


def partial_units(quantale: BasedQuantale) -> List[int]:
    return quantale.partial_units()


def check_quantal_frame(quantale: BasedQuantale) -> Report:
    """``Q`` is a frame and the restrictions commute with meets."""
    Q = quantale
    L, A = Q.lattice, Q.base
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        if not L.is_distributive:
            report.check("quantale.quantal_frame", False, ("distributive", L.distributivity_witness()))
            return report
        witness = None
        for a in A.generators:
            for q in L.generators:
                for m in L.generators:
                    if Q.left(a, q) & m != Q.left(a, q & m):
                        witness = ("left", a, q, m)
                    elif m & Q.right(q, a) != Q.right(q & m, a):
                        witness = ("right", a, q, m)
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        report.witness("quantale.quantal_frame", witness)
    return report


def check_reflexive(quantale: BasedQuantale) -> Report:
    """The reflexivity map is a frame homomorphism splitting both base embeddings."""
    Q = quantale
    L, A = Q.lattice, Q.base
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        ups = Q.reflexive_map
        witness = None
        if ups(L.top) != A.top:
            witness = ("top", L.top)
        if witness is None:
            witness = _first(("meet", x, y) for x in L.generators for y in L.generators if ups(x & y) != ups(x) & ups(y))
        if witness is None:
            joins = join_preservation_witness(ups)
            witness = None if joins is None else ("joins", joins)
        if witness is None:
            witness = _first(
                ("split", a) for a in A.elements if ups(Q.left(a, Q.top)) != a or ups(Q.right(Q.top, a)) != a
            )
        report.witness("quantale.reflexive", witness)
    return report


def multiplication_tensor(quantale: BasedQuantale, cross_check: bool = True) -> RelativeTensor:
    """``Q (x)_A Q``, identifying ``right(x, a) (x) y`` with ``x (x) left(a, y)``."""
    Q = quantale
    return relative_tensor(
        Q.lattice,
        Q.lattice,
        Q.base,
        lambda a: Q.right(Q.top, a),
        lambda a: Q.left(a, Q.top),
        cross_check=cross_check,
        name="QxQ",
    )


def check_multiplicative(quantale: BasedQuantale, cross_check: bool = True) -> Report:
    """Multiplication factors through ``Q (x)_A Q`` and its right adjoint preserves joins."""
    Q = quantale
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        tensor = multiplication_tensor(Q, cross_check=cross_check)
        witness = tensor.lift_witness(Q.mul)
        if witness is not None:
            report.check("quantale.multiplicative", False, ("relations", witness))
            return report
        mu_star = tensor.right_adjoint_of(Q.mul, Q.lattice, name="mu_*")
        joins = join_preservation_witness(mu_star)
        report.check("quantale.multiplicative", joins is None, None if joins is None else ("joins", joins))
        if joins is None and cross_check:
            with report.bounded("quantale.multiplicative"):
                mu = tensor.lift(Q.mul, Q.lattice, name="mu_A")
                adjunction = adjunction_witness(mu, mu_star)
                if adjunction is not None:
                    report.check("quantale.multiplicative", False, ("adjunction", adjunction))
    return report


def check_unit_laws(quantale: BasedQuantale) -> Report:
    """Every ``a`` is the join of ``left(upsilon(x), y)`` over ``xy <= a``.

    Both sides of a factorization can be shrunk to generators without
    changing the join, so only generator pairs are enumerated.
    """
    Q = quantale
    L = Q.lattice
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        gens = L.generators
        pairs = [(Q.mul(j, k), Q.left(Q.upsilon(j), k)) for j in gens for k in gens]
        witness = None
        for a in L.elements:
            if L.join_all(part for prod, part in pairs if prod & ~a == 0) != a:
                witness = a
                break
        report.witness("quantale.unit_laws", witness)
    return report


def check_inverse_laws(quantale: BasedQuantale) -> Report:
    """``left(upsilon(a), 1)`` is the join of the ``x`` with ``xx* <= a``."""
    Q = quantale
    L = Q.lattice
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        squares = [(j, Q.mul(j, Q.star(j))) for j in L.generators]
        witness = None
        for a in L.elements:
            if Q.left(Q.upsilon(a), Q.top) != L.join_all(j for j, sq in squares if sq & ~a == 0):
                witness = a
                break
        report.witness("quantale.inverse_laws", witness)
    return report


def is_groupoid_quantale(quantale: BasedQuantale, cross_check: bool = True) -> Report:
    """Multiplicative, equivariantly supported, reflexive quantal frame with unit and inverse laws."""
    Q = quantale
    report = Report(subject=Q.name or "quantale")
    for step in (
        check_based_quantale,
        check_support,
        check_equivariant,
        check_quantal_frame,
        check_reflexive,
    ):
        report.extend(step(Q))
        if not report.passed:
            return report
    report.extend(check_multiplicative(Q, cross_check=cross_check))
    report.extend(check_unit_laws(Q))
    report.extend(check_inverse_laws(Q))
    logger.info("%r groupoid quantale: %s", Q, report.passed)
    return report


def is_inverse_quantal_frame(quantale: BasedQuantale) -> Report:
    """Unital stable quantal frame whose partial units join to the top."""
    Q = quantale
    report = Report(subject=Q.name or "quantale")
    with report.timed():
        report.check("quantale.unital", Q.unit is not None, detail="no two-sided unit" if Q.unit is None else "")
        if Q.unit is None:
            return report
    report.extend(check_quantal_frame(Q))
    report.extend(check_stable(Q))
    covered = Q.lattice.join_all(Q.partial_units())
    report.check("quantale.inverse_quantal_frame", covered == Q.top, covered)
    return report


def unit_groupoid_quantale(frame: FiniteFrame, name: str = "") -> BasedQuantale:
    """``A`` as a quantale over itself: meet as multiplication, identity support."""
    return BasedQuantale(
        frame,
        frame,
        mul=lambda x, y: x & y,
        star=lambda x: x,
        left=lambda a, q: a & q,
        right=lambda q, a: q & a,
        support=lambda x: x,
        reflexive=lambda x: x,
        name=name or f"({frame.name or 'A'}, &)",
    )


def quantale_iso_witness(
    first: BasedQuantale,
    second: BasedQuantale,
    lattice_map: Callable[[int], int],
    base_map: Callable[[int], int],
) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """Where the given bijections fail to carry ``first`` onto ``second``.

    Structure is compared on generators, where it is determined.
    """
    P, Q = first, second
    phi, psi = lattice_map, base_map
    images = {phi(x) for x in P.lattice.elements}
    if len(images) != len(P.lattice) or images != set(Q.lattice.elements):
        return ("lattice", ())
    if {psi(a) for a in P.base.elements} != set(Q.base.elements):
        return ("base", ())
    for x in P.lattice.elements:
        for y in P.lattice.elements:
            if (x & ~y == 0) != (phi(x) & ~phi(y) == 0):
                return ("order", (x, y))
    gq, ga = P.lattice.generators, P.base.generators
    for x in gq:
        if phi(P.star(x)) != Q.star(phi(x)):
            return ("star", (x,))
        if P.has_support and Q.has_support and psi(P.spp(x)) != Q.spp(phi(x)):
            return ("support", (x,))
        if P.has_reflexive and Q.has_reflexive and psi(P.upsilon(x)) != Q.upsilon(phi(x)):
            return ("reflexive", (x,))
        for y in gq:
            if phi(P.mul(x, y)) != Q.mul(phi(x), phi(y)):
                return ("mul", (x, y))
        for a in ga:
            if phi(P.left(a, x)) != Q.left(psi(a), phi(x)) or phi(P.right(x, a)) != Q.right(phi(x), psi(a)):
                return ("restriction", (a, x))
    return None
