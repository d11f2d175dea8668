"""Finite topological groupoids.

Arrows compose like functions. An arrow ``g`` goes from ``d(g)`` to ``r(g)``;
the product ``gh`` is defined when ``d(g) = r(h)``, and then
``d(gh) = d(h)`` and ``r(gh) = r(g)``. In the pair groupoid of a space the
arrow ``(y, x)`` goes from ``x`` to ``y`` and ``(z, y)(y, x) = (z, x)``.

Every reader of arrows in qlab (quantales, actions, bundles) relies on this
convention.
"""

import logging
from functools import cached_property
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from qlab.errors import LawViolation
from qlab.locale.maps import LocaleMap
from qlab.locale.space import ContinuousMap, FiniteSpace, fibered_product
from qlab.order.bits import bit, iter_bits
from qlab.report import Report

logger = logging.getLogger(__name__)


class FiniteOpenGroupoid:
    """A groupoid in finite spaces.

    Args:
        objects: Space of objects ``G0``.
        arrows: Space of arrows ``G1``.
        d: Domain of each arrow.
        r: Range of each arrow.
        u: Identity arrow of each object.
        i: Inverse of each arrow.
        m: Product ``gh`` of each composable pair ``(g, h)``.
        name: Display name.

    Only shapes are checked here; :func:`validate_groupoid` checks the laws.
    """

    def __init__(
        self,
        objects: FiniteSpace,
        arrows: FiniteSpace,
        d: Sequence[int],
        r: Sequence[int],
        u: Sequence[int],
        i: Sequence[int],
        m: Mapping[Tuple[int, int], int],
        name: str = "",
    ):
        self.objects = objects
        self.arrows = arrows
        self.d = tuple(d)
        self.r = tuple(r)
        self.u = tuple(u)
        self.i = tuple(i)
        self.m: Dict[Tuple[int, int], int] = dict(m)
        self.name = name
        n0, n1 = len(objects), len(arrows)
        for label, values, size, bound in (("d", self.d, n1, n0), ("r", self.r, n1, n0), ("u", self.u, n0, n1), ("i", self.i, n1, n1)):
            if len(values) != size:
                raise LawViolation(f"groupoid.{label}", len(values), f"{label} needs {size} values")
            for v in values:
                if not 0 <= v < bound:
                    raise LawViolation(f"groupoid.{label}", v, f"{label} value {v} out of range")
        for (g, h), gh in self.m.items():
            if not (0 <= g < n1 and 0 <= h < n1 and 0 <= gh < n1):
                raise LawViolation("groupoid.m_total", (g, h), "product out of range")

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<FiniteOpenGroupoid{name} objects={len(self.objects)} arrows={len(self.arrows)}>"

    def arrow_label(self, g: int) -> Hashable:
        return self.arrows.labels[g]

    @cached_property
    def composable(self) -> List[Tuple[int, int]]:
        n1 = len(self.arrows)
        return [(g, h) for g in range(n1) for h in range(n1) if self.d[g] == self.r[h]]

    def mul(self, g: int, h: int) -> int:
        try:
            return self.m[(g, h)]
        except KeyError:
            raise LawViolation("groupoid.m_total", (g, h), f"no product for {(g, h)}")

    def hom(self, x: int, y: int) -> List[int]:
        """Arrows from ``x`` to ``y``."""
        return [g for g in range(len(self.arrows)) if self.d[g] == x and self.r[g] == y]

    # -- structure maps as continuous maps ----------------------------------------

    @cached_property
    def d_map(self) -> ContinuousMap:
        return ContinuousMap(self.arrows, self.objects, self.d, name="d")

    @cached_property
    def r_map(self) -> ContinuousMap:
        return ContinuousMap(self.arrows, self.objects, self.r, name="r")

    @cached_property
    def u_map(self) -> ContinuousMap:
        return ContinuousMap(self.objects, self.arrows, self.u, name="u")

    @cached_property
    def i_map(self) -> ContinuousMap:
        return ContinuousMap(self.arrows, self.arrows, self.i, name="i")

    @cached_property
    def _composable_space(self):
        return fibered_product(self.d_map, self.r_map, name="G2")

    @property
    def composable_space(self) -> FiniteSpace:
        """``G2``, the pullback of ``d`` and ``r``."""
        return self._composable_space[0]

    @cached_property
    def m_map(self) -> ContinuousMap:
        space, _, _, pairs = self._composable_space
        return ContinuousMap(space, self.arrows, [self.mul(g, h) for g, h in pairs], name="m")

    @cached_property
    def d_locale(self) -> LocaleMap:
        return LocaleMap.of(self.d_map, name="d")

    @cached_property
    def r_locale(self) -> LocaleMap:
        return LocaleMap.of(self.r_map, name="r")

    @cached_property
    def u_locale(self) -> LocaleMap:
        return LocaleMap.of(self.u_map, name="u")

    @cached_property
    def i_locale(self) -> LocaleMap:
        return LocaleMap.of(self.i_map, name="i")


def _first(items) -> Optional[object]:
    for item in items:
        return item
    return None


def validate_groupoid(groupoid: FiniteOpenGroupoid, cross_check: bool = True) -> Report:
    """Check the groupoid laws, continuity and openness of the structure maps."""
    G = groupoid
    report = Report(subject=G.name or "groupoid")
    n0, n1 = len(G.objects), len(G.arrows)
    d, r, u, i = G.d, G.r, G.u, G.i
    with report.timed():
        report.witness("groupoid.d_u", _first(x for x in range(n0) if d[u[x]] != x))
        report.witness("groupoid.r_u", _first(x for x in range(n0) if r[u[x]] != x))
        report.witness("groupoid.i_involution", _first(g for g in range(n1) if i[i[g]] != g))
        report.witness("groupoid.d_i", _first(g for g in range(n1) if d[i[g]] != r[g]))
        report.witness("groupoid.r_i", _first(g for g in range(n1) if r[i[g]] != d[g]))
        missing = _first(p for p in G.composable if p not in G.m)
        extra = _first(p for p in G.m if d[p[0]] != r[p[1]])
        report.witness("groupoid.m_total", missing if missing is not None else extra)
        if not report.passed:
            return report
        m = G.m
        report.witness("groupoid.m_domain", _first((g, h) for g, h in G.composable if d[m[g, h]] != d[h]))
        report.witness("groupoid.m_range", _first((g, h) for g, h in G.composable if r[m[g, h]] != r[g]))
        report.witness(
            "groupoid.m_unit",
            _first(g for g in range(n1) if m[u[r[g]], g] != g or m[g, u[d[g]]] != g),
        )
        report.witness(
            "groupoid.m_inverse",
            _first(g for g in range(n1) if m.get((g, i[g])) != u[r[g]] or m.get((i[g], g)) != u[d[g]]),
        )
        if not report.passed:
            return report
        assoc = None
        for g, h in G.composable:
            gh = m[g, h]
            for k in range(n1):
                if r[k] == d[h] and m[gh, k] != m[g, m[h, k]]:
                    assoc = (g, h, k)
                    break
            if assoc:
                break
        report.witness("groupoid.m_assoc", assoc)
        try:
            for attr in ("d_map", "r_map", "u_map", "i_map", "m_map"):
                getattr(G, attr)
        except LawViolation as exc:
            report.check("groupoid.continuous", False, exc.witness, detail=str(exc))
            return report
        report.check("groupoid.continuous", True)
        for statement, locale_map in (("groupoid.d_open", G.d_locale), ("groupoid.r_open", G.r_locale)):
            result = locale_map.is_open(cross_check=cross_check)
            report.check(statement, result.open, result.witness)
        m_witness = G.m_map.open_witness()
        report.check("groupoid.m_open", m_witness is None, m_witness)
    logger.info("validated %r: %s", G, "pass" if report.passed else "fail")
    return report


def is_etale(groupoid: FiniteOpenGroupoid) -> Tuple[bool, Optional[int]]:
    """Whether ``d`` is a local homeomorphism, with a failing arrow otherwise.

    The smallest open around an arrow ``g`` is ``up(g)``, so ``d`` is a local
    homeomorphism exactly when each ``up(g)`` maps isomorphically onto
    ``up(d(g))``.
    """
    G = groupoid
    d = G.d_map
    for g in range(len(G.arrows)):
        nbhd = G.arrows.up[g]
        restricted = d.restrict(nbhd)
        if not restricted.is_injective():
            return False, g
        if d.image(nbhd) != G.objects.up[G.d[g]]:
            return False, g
        sub, points = G.arrows.subspace(nbhd)
        for a in range(len(points)):
            for b in range(len(points)):
                if sub.leq(a, b) != G.objects.leq(restricted(a), restricted(b)):
                    return False, g
    return True, None


# -- constructors -------------------------------------------------------------------


def pair_groupoid(space: FiniteSpace, name: str = "") -> FiniteOpenGroupoid:
    """``Pair(X)``: one arrow ``(y, x)`` from ``x`` to ``y`` for every pair of points."""
    n = len(space)
    arrows = space.product(space, name=f"{space.name}^2")

    def index(y: int, x: int) -> int:
        return y * n + x

    d = [x for y in range(n) for x in range(n)]
    r = [y for y in range(n) for x in range(n)]
    u = [index(x, x) for x in range(n)]
    i = [index(x, y) for y in range(n) for x in range(n)]
    m = {}
    for z in range(n):
        for y in range(n):
            for x in range(n):
                m[index(z, y), index(y, x)] = index(z, x)
    return FiniteOpenGroupoid(space, arrows, d, r, u, i, m, name=name or f"Pair({space.name})")


def group_groupoid(
    table: Sequence[Sequence[int]],
    order: Sequence[Tuple[int, int]] = (),
    labels: Optional[Sequence[Hashable]] = None,
    name: str = "",
) -> FiniteOpenGroupoid:
    """A finite group as a one-object groupoid.

    ``table[g][h]`` is the product ``gh``; the identity is found from the
    table. ``order`` generates a specialization order on the elements.
    """
    n = len(table)
    identity = _first(e for e in range(n) if all(table[e][g] == g == table[g][e] for g in range(n)))
    if identity is None:
        raise LawViolation("groupoid.m_unit", None, "group table has no identity")
    inverse = []
    for g in range(n):
        inv = _first(h for h in range(n) if table[g][h] == identity and table[h][g] == identity)
        if inv is None:
            raise LawViolation("groupoid.m_inverse", g, f"element {g} has no inverse")
        inverse.append(inv)
    arrows = FiniteSpace.from_order(list(labels or range(n)), order, name=name or "G")
    objects = FiniteSpace.point()
    m = {(g, h): table[g][h] for g in range(n) for h in range(n)}
    return FiniteOpenGroupoid(objects, arrows, [0] * n, [0] * n, [identity], inverse, m, name=name)


def cyclic_group(n: int) -> FiniteOpenGroupoid:
    """``Z/n`` as a discrete one-object groupoid."""
    table = [[(g + h) % n for h in range(n)] for g in range(n)]
    return group_groupoid(table, name=f"Z/{n}")


def unit_groupoid(space: FiniteSpace, name: str = "") -> FiniteOpenGroupoid:
    """The groupoid with only identity arrows."""
    n = len(space)
    ident = list(range(n))
    return FiniteOpenGroupoid(
        space, space, ident, ident, ident, ident, {(x, x): x for x in range(n)}, name=name or f"unit({space.name})"
    )


def cech_groupoid(space: FiniteSpace, cover: Sequence[int], name: str = "") -> FiniteOpenGroupoid:
    """The Cech groupoid of an open cover.

    Objects are pairs ``(a, x)`` with ``x`` in the open ``cover[a]``; arrows
    are triples ``(a, b, x)`` with ``x`` in both, going from ``(b, x)`` to
    ``(a, x)``.
    """
    covered = 0
    for u_mask in cover:
        if not space.is_open(u_mask):
            raise LawViolation("cech.cover", u_mask, "cover members must be open")
        covered |= u_mask
    if covered != space.full:
        raise LawViolation("cech.cover", covered, "the opens do not cover the space")
    objects = [(a, x) for a, u_mask in enumerate(cover) for x in iter_bits(u_mask)]
    obj_index = {o: k for k, o in enumerate(objects)}
    arrows = [
        (a, b, x) for a, ua in enumerate(cover) for b, ub in enumerate(cover) for x in iter_bits(ua & ub)
    ]
    arr_index = {t: k for k, t in enumerate(arrows)}
    obj_up = [sum(bit(obj_index[(a, y)]) for y in iter_bits(space.up[x] & cover[a])) for a, x in objects]
    arr_up = [
        sum(bit(arr_index[(a, b, y)]) for y in iter_bits(space.up[x] & cover[a] & cover[b])) for a, b, x in arrows
    ]
    G0 = FiniteSpace([(a, space.labels[x]) for a, x in objects], obj_up, name="cover")
    G1 = FiniteSpace([(a, b, space.labels[x]) for a, b, x in arrows], arr_up, name="overlaps")
    d = [obj_index[(b, x)] for a, b, x in arrows]
    r = [obj_index[(a, x)] for a, b, x in arrows]
    u = [arr_index[(a, a, x)] for a, x in objects]
    i = [arr_index[(b, a, x)] for a, b, x in arrows]
    m = {}
    for g, (a, b, x) in enumerate(arrows):
        for h, (b2, c, x2) in enumerate(arrows):
            if b2 == b and x2 == x:
                m[g, h] = arr_index[(a, c, x)]
    return FiniteOpenGroupoid(G0, G1, d, r, u, i, m, name=name or f"Cech({space.name})")


def disjoint_union(first: FiniteOpenGroupoid, second: FiniteOpenGroupoid, name: str = "") -> FiniteOpenGroupoid:
    objects = first.objects.disjoint_union(second.objects)
    arrows = first.arrows.disjoint_union(second.arrows)
    s0, s1 = len(first.objects), len(first.arrows)
    d = list(first.d) + [x + s0 for x in second.d]
    r = list(first.r) + [x + s0 for x in second.r]
    u = list(first.u) + [g + s1 for g in second.u]
    i = list(first.i) + [g + s1 for g in second.i]
    m = dict(first.m)
    for (g, h), gh in second.m.items():
        m[g + s1, h + s1] = gh + s1
    return FiniteOpenGroupoid(objects, arrows, d, r, u, i, m, name=name or f"{first.name}+{second.name}")
