"""The quantale of a finite open groupoid, and the groupoid of a quantale.

With arrows composing like functions, opens of ``G1`` multiply as
``UV = {gh : g in U, h in V}``, the left restriction keeps arrows whose
range lies in ``a`` and the right restriction those whose domain does. The
support is the direct image of ``r`` and the reflexivity map is ``u*``.

Going back, the points of ``Q`` are the arrows and the points of ``A`` the
objects: ``r(g)`` is the point whose open is the support of ``g``'s open,
``d(g)`` that of ``g*``, and products of point opens are point opens.
"""

import logging
from typing import List, Optional, Tuple

from qlab.errors import HypothesisError, LawViolation
from qlab.groupoid.groupoid import FiniteOpenGroupoid, validate_groupoid
from qlab.locale.spatial import spatialize
from qlab.order.bits import bit, iter_bits
from qlab.quantale.quantale import BasedQuantale, is_groupoid_quantale, quantale_iso_witness
from qlab.report import Report

logger = logging.getLogger(__name__)


def quantale_of_groupoid(groupoid: FiniteOpenGroupoid, check: bool = True) -> BasedQuantale:
    """``O(G)`` over ``O(G0)``.

    With ``check`` the result is verified to be a groupoid quantale, and a
    failure raises :class:`~qlab.errors.LawViolation`.
    """
    G = groupoid
    after: List[List[Tuple[int, int]]] = [[] for _ in range(len(G.arrows))]
    for (g, h), gh in G.m.items():
        after[g].append((h, gh))
    d, r, u, i = G.d_map, G.r_map, G.u_map, G.i_map

    def mul(x: int, y: int) -> int:
        acc = 0
        for g in iter_bits(x):
            for h, gh in after[g]:
                if y >> h & 1:
                    acc |= bit(gh)
        return acc

    quantale = BasedQuantale(
        G.objects.frame,
        G.arrows.frame,
        mul=mul,
        star=i.image,
        left=lambda a, q: r.preimage(a) & q,
        right=lambda q, a: q & d.preimage(a),
        support=r.direct_image,
        reflexive=u.preimage,
        name=f"O({G.name})",
    )
    if check:
        report = is_groupoid_quantale(quantale)
        if not report.passed:
            failure = report.first_failure
            raise LawViolation(failure.statement, failure.witness, f"{quantale!r} is not a groupoid quantale")
    logger.info("built %r from %r", quantale, G)
    return quantale


def _point_of(generators, element: int, what: str) -> int:
    try:
        return generators.index(element)
    except ValueError:
        raise HypothesisError("quantale.groupoid", f"{what} {element:#x} is not a point open")


def groupoid_of_quantale(quantale: BasedQuantale, check: bool = True, cross_check: bool = True) -> FiniteOpenGroupoid:
    """``G(Q)`` on the points of ``A`` and ``Q``.

    Requires a groupoid quantale; with ``check`` that is verified first and
    the result is validated as an open groupoid.
    """
    Q = quantale
    if check:
        report = is_groupoid_quantale(Q, cross_check=cross_check)
        if not report.passed:
            raise HypothesisError("quantale.groupoid", f"{Q!r} is not a groupoid quantale: {report.first_failure.line()}")
    A, L = Q.base, Q.lattice
    objects = spatialize(A).space
    arrows = spatialize(L).space
    a_gens, q_gens = list(A.generators), list(L.generators)
    r = [_point_of(a_gens, Q.spp(j), "support of") for j in q_gens]
    d = [_point_of(a_gens, Q.spp(Q.star(j)), "support of the involute of") for j in q_gens]
    i = [_point_of(q_gens, Q.star(j), "involute") for j in q_gens]
    u = []
    for x, jx in enumerate(a_gens):
        over = [j for j in q_gens if jx & ~Q.upsilon(j) == 0]
        least = [j for j in over if all(j & ~k == 0 for k in over)]
        if len(least) != 1:
            raise HypothesisError("quantale.groupoid", f"no identity arrow at object {x}")
        u.append(q_gens.index(least[0]))
    m = {}
    for g, jg in enumerate(q_gens):
        for h, jh in enumerate(q_gens):
            if d[g] == r[h]:
                m[g, h] = _point_of(q_gens, Q.mul(jg, jh), "product")
    G = FiniteOpenGroupoid(objects, arrows, d, r, u, i, m, name=f"G({Q.name})")
    if check:
        report = validate_groupoid(G, cross_check=cross_check)
        if not report.passed:
            raise HypothesisError("quantale.groupoid", f"{G!r} is not an open groupoid: {report.first_failure.line()}")
    return G


def groupoid_iso_witness(
    first: FiniteOpenGroupoid, second: FiniteOpenGroupoid, objects: List[int], arrows: List[int]
) -> Optional[Tuple[str, object]]:
    """Where the given point bijections fail to be an isomorphism of groupoids."""
    G, H = first, second
    for space, other, values, what in ((G.objects, H.objects, objects, "objects"), (G.arrows, H.arrows, arrows, "arrows")):
        if sorted(values) != list(range(len(other))) or len(values) != len(space):
            return (what, "not a bijection")
        for x in range(len(space)):
            for y in range(len(space)):
                if space.leq(x, y) != other.leq(values[x], values[y]):
                    return (what, (x, y))
    for g in range(len(G.arrows)):
        if objects[G.d[g]] != H.d[arrows[g]]:
            return ("d", g)
        if objects[G.r[g]] != H.r[arrows[g]]:
            return ("r", g)
        if arrows[G.i[g]] != H.i[arrows[g]]:
            return ("i", g)
    for x in range(len(G.objects)):
        if arrows[G.u[x]] != H.u[objects[x]]:
            return ("u", x)
    for (g, h), gh in G.m.items():
        if H.m.get((arrows[g], arrows[h])) != arrows[gh]:
            return ("m", (g, h))
    return None


def check_groupoid_roundtrip(groupoid: FiniteOpenGroupoid, cross_check: bool = True) -> Report:
    """``G(O(G))`` is ``G``, witnessed by the identity on point indices."""
    G = groupoid
    report = Report(subject=f"G(O({G.name}))")
    with report.timed():
        Q = quantale_of_groupoid(G, check=False)
        report.extend(is_groupoid_quantale(Q, cross_check=cross_check))
        if not report.passed:
            return report
        H = groupoid_of_quantale(Q, check=False)
        witness = groupoid_iso_witness(G, H, list(range(len(G.objects))), list(range(len(G.arrows))))
        report.witness("quantale.roundtrip", witness, detail="identity on objects and arrows")
    return report


def check_quantale_roundtrip(quantale: BasedQuantale, cross_check: bool = True) -> Report:
    """``O(G(Q))`` is ``Q``, witnessed by the spatial presentations of ``Q`` and ``A``."""
    Q = quantale
    report = Report(subject=f"O(G({Q.name}))")
    with report.timed():
        report.extend(is_groupoid_quantale(Q, cross_check=cross_check))
        if not report.passed:
            return report
        G = groupoid_of_quantale(Q, check=False)
        back = quantale_of_groupoid(G, check=False)
        lattice_map = spatialize(Q.lattice).to_space
        base_map = spatialize(Q.base).to_space
        witness = quantale_iso_witness(Q, back, lattice_map, base_map)
        report.witness("quantale.iso", witness, detail="spatial presentation")
    return report
