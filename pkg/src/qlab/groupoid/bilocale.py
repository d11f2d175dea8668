"""Bilocales and their composition.

A ``G``-``H``-bilocale is a space with a left ``G``-action and a right
``H``-action that commute. ``X (x)_H Y`` is the quotient of ``X x_H0 Y`` by
``(x.h, y) ~ (x, h.y)``, computed as a coequalizer of locales.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from qlab import settings
from qlab.errors import EnumerationBoundError, LawViolation
from qlab.groupoid.action import GLocale, RightGLocale, check_g_locale, check_right_g_locale
from qlab.groupoid.groupoid import FiniteOpenGroupoid
from qlab.locale.limits import Coequalizer, coequalizer
from qlab.locale.maps import LocaleMap
from qlab.locale.space import ContinuousMap, FiniteSpace, fibered_product
from qlab.order.bits import bit, iter_bits
from qlab.report import Report

logger = logging.getLogger(__name__)


@dataclass
class Bilocale:
    """A left ``G``-action and a right ``H``-action on the same space."""

    left: GLocale
    right: RightGLocale
    name: str = ""

    def __post_init__(self):
        if self.left.space is not self.right.space and self.left.space.up != self.right.space.up:
            raise LawViolation("bilocale.space", None, "both actions must be on the same space")

    @property
    def space(self) -> FiniteSpace:
        return self.left.space

    @property
    def left_groupoid(self) -> FiniteOpenGroupoid:
        return self.left.groupoid

    @property
    def right_groupoid(self) -> FiniteOpenGroupoid:
        return self.right.groupoid


def check_bilocale(bilocale: Bilocale) -> Report:
    B = bilocale
    report = Report(subject=B.name or "bilocale")
    with report.timed():
        report.extend(check_g_locale(B.left))
        report.extend(check_right_g_locale(B.right))
        if not report.passed:
            return report
        left, right = B.left, B.right
        witness = None
        for g, x in left.acting_pairs:
            if right.anchor[left.action[g, x]] != right.anchor[x]:
                witness = ("right anchor", g, x)
                break
        if witness is None:
            for x, h in right.acting_pairs:
                if left.anchor[right.action[x, h]] != left.anchor[x]:
                    witness = ("left anchor", x, h)
                    break
        if witness is None:
            for g, x in left.acting_pairs:
                for h in range(len(right.groupoid.arrows)):
                    if right.anchor[x] != right.groupoid.r[h]:
                        continue
                    if right.action[left.action[g, x], h] != left.action[g, right.action[x, h]]:
                        witness = ("commute", g, x, h)
                        break
                if witness is not None:
                    break
        report.witness("bilocale.commute", witness)
    return report


def unit_bilocale(groupoid: FiniteOpenGroupoid) -> Bilocale:
    """``G1`` with ``G`` multiplying on both sides, anchored by ``r`` and ``d``."""
    G = groupoid
    left = GLocale(G, G.arrows, G.r, G.m, name=f"{G.name} on arrows")
    right = RightGLocale(G, G.arrows, G.d, G.m, name=f"arrows of {G.name}")
    return Bilocale(left, right, name=f"unit({G.name})")


def _same_tables(first: FiniteOpenGroupoid, second: FiniteOpenGroupoid) -> bool:
    return (
        first.objects.up == second.objects.up
        and first.arrows.up == second.arrows.up
        and (first.d, first.r, first.u, first.i) == (second.d, second.r, second.u, second.i)
        and first.m == second.m
    )


def with_groupoids(
    bilocale: Bilocale, left: Optional[FiniteOpenGroupoid] = None, right: Optional[FiniteOpenGroupoid] = None
) -> Bilocale:
    """``bilocale`` acted on by ``left`` and ``right`` in place of its own groupoids.

    The replacements must have the same tables; composition needs the
    middle groupoids of two bilocales to be one object.
    """
    B = bilocale
    G = left or B.left_groupoid
    H = right or B.right_groupoid
    for new, old in ((G, B.left_groupoid), (H, B.right_groupoid)):
        if new is not old and not _same_tables(new, old):
            raise LawViolation("bilocale.groupoid", new.name, f"{new!r} and {old!r} differ")
    return Bilocale(
        GLocale(G, B.space, B.left.anchor, B.left.action, name=B.left.name),
        RightGLocale(H, B.space, B.right.anchor, B.right.action, name=B.right.name),
        name=B.name,
    )


# -- composition -------------------------------------------------------------------------


@dataclass
class BilocaleTensor:
    """``X (x)_H Y`` with the data it was computed from."""

    first: Bilocale
    second: Bilocale
    pairs: List[Tuple[int, int]]
    pairs_space: FiniteSpace
    coequalizer: Coequalizer
    result: Bilocale

    def project(self, x: int, y: int) -> int:
        """The point ``[x, y]`` of the composite."""
        return self.coequalizer.projection(self.position[(x, y)])

    @cached_property
    def position(self) -> Dict[Tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}


def tensor_over(first: Bilocale, second: Bilocale, name: str = "") -> BilocaleTensor:
    """Compose a ``G``-``H``-bilocale with an ``H``-``K``-bilocale."""
    X, Y = first, second
    H = X.right_groupoid
    if H is not Y.left_groupoid:
        raise LawViolation("bilocale.groupoid", None, "the middle groupoids must be the same object")
    qx, py = X.right.anchor_map, Y.left.anchor_map
    pair_space, _, _, pairs = fibered_product(qx, py, name="XxY")
    position = {p: i for i, p in enumerate(pairs)}

    triples = [
        (x, h, y)
        for x in range(len(X.space))
        for h in range(len(H.arrows))
        for y in range(len(Y.space))
        if X.right.anchor[x] == H.r[h] and H.d[h] == Y.left.anchor[y]
    ]
    triple_index = {t: k for k, t in enumerate(triples)}
    up = []
    for x, h, y in triples:
        acc = 0
        for x2 in iter_bits(X.space.up[x]):
            for h2 in iter_bits(H.arrows.up[h]):
                for y2 in iter_bits(Y.space.up[y]):
                    k = triple_index.get((x2, h2, y2))
                    if k is not None:
                        acc |= bit(k)
        up.append(acc)
    triple_space = FiniteSpace(triples, up, name="XxHxY")
    act_right = ContinuousMap(
        triple_space, pair_space, [position[(X.right.action[x, h], y)] for x, h, y in triples], name="xh"
    )
    act_left = ContinuousMap(
        triple_space, pair_space, [position[(x, Y.left.action[h, y])] for x, h, y in triples], name="hy"
    )
    coeq = coequalizer(LocaleMap.of(act_right), LocaleMap.of(act_left), name=name or "XoY")
    T = coeq.space
    project = coeq.projection

    def induced(values: Dict[int, int], what: str) -> List[int]:
        out: List[Optional[int]] = [None] * len(T)
        for k, v in values.items():
            t = project(k)
            if out[t] is None:
                out[t] = v
            elif out[t] != v:
                raise LawViolation("bilocale.induced", k, f"{what} is not constant on a class")
        return out  # type: ignore[return-value]

    G, K = X.left_groupoid, Y.right_groupoid
    p_t = induced({k: X.left.anchor[x] for k, (x, y) in enumerate(pairs)}, "left anchor")
    q_t = induced({k: Y.right.anchor[y] for k, (x, y) in enumerate(pairs)}, "right anchor")

    left_action: Dict[Tuple[int, int], int] = {}
    right_action: Dict[Tuple[int, int], int] = {}
    for k, (x, y) in enumerate(pairs):
        t = project(k)
        for g in range(len(G.arrows)):
            if G.d[g] == X.left.anchor[x]:
                value = project(position[(X.left.action[g, x], y)])
                if left_action.setdefault((g, t), value) != value:
                    raise LawViolation("bilocale.induced", (g, k), "left action is not well defined")
        for c in range(len(K.arrows)):
            if Y.right.anchor[y] == K.r[c]:
                value = project(position[(x, Y.right.action[y, c])])
                if right_action.setdefault((t, c), value) != value:
                    raise LawViolation("bilocale.induced", (k, c), "right action is not well defined")
    result = Bilocale(
        GLocale(G, T, p_t, left_action, name=name or f"{X.name}(x){Y.name}"),
        RightGLocale(K, T, q_t, right_action, name=name or f"{X.name}(x){Y.name}"),
        name=name or f"{X.name}(x){Y.name}",
    )
    logger.debug("composite %s has %d points from %d pairs", result.name, len(T), len(pairs))
    return BilocaleTensor(X, Y, pairs, pair_space, coeq, result)


def find_bilocale_iso(first: Bilocale, second: Bilocale, bound: Optional[int] = None) -> Optional[List[int]]:
    """Search for an isomorphism of bilocales over the same groupoids.

    Returns the point map as a list, or ``None``.
    """
    A, B = first, second
    if len(A.space) != len(B.space):
        return None
    limit = settings.resolve_bound(bound)
    n = len(A.space)
    candidates = []
    for a in range(n):
        key = (A.left.anchor[a], A.right.anchor[a], bin(A.space.up[a]).count("1"))
        candidates.append(
            [
                b
                for b in range(n)
                if (B.left.anchor[b], B.right.anchor[b], bin(B.space.up[b]).count("1")) == key
            ]
        )
    tried = 0
    assignment: List[int] = []
    used = set()

    def consistent(a: int, b: int) -> bool:
        for a2, b2 in enumerate(assignment):
            if A.space.leq(a, a2) != B.space.leq(b, b2) or A.space.leq(a2, a) != B.space.leq(b2, b):
                return False
        return True

    def full_check() -> bool:
        for (g, a), a2 in A.left.action.items():
            if B.left.action.get((g, assignment[a])) != assignment[a2]:
                return False
        for (a, c), a2 in A.right.action.items():
            if B.right.action.get((assignment[a], c)) != assignment[a2]:
                return False
        return True

    def search(a: int) -> bool:
        nonlocal tried
        if a == n:
            tried += 1
            if tried > limit:
                raise EnumerationBoundError("bilocale bijections", tried, limit)
            return full_check()
        for b in candidates[a]:
            if b in used or not consistent(a, b):
                continue
            assignment.append(b)
            used.add(b)
            if search(a + 1):
                return True
            assignment.pop()
            used.discard(b)
        return False

    return list(assignment) if search(0) else None


def check_unit_laws(bilocale: Bilocale) -> Report:
    """``unit(G) (x)_G X`` and ``X (x)_H unit(H)`` are ``X`` via the unitors
    ``x -> [u(p(x)), x]`` and ``x -> [x, u(q(x))]``."""
    X = bilocale
    G, H = X.left_groupoid, X.right_groupoid
    report = Report(subject=X.name or "bilocale")
    with report.timed():
        left = tensor_over(unit_bilocale(G), X)
        values = [left.project(G.u[X.left.anchor[x]], x) for x in range(len(X.space))]
        report.check("bibundle.unit", _is_iso_map(X, left.result, values), values, detail="left unitor")
        right = tensor_over(X, unit_bilocale(H))
        values = [right.project(x, H.u[X.right.anchor[x]]) for x in range(len(X.space))]
        report.check("bibundle.unit", _is_iso_map(X, right.result, values), values, detail="right unitor")
    return report


def check_associativity(first: Bilocale, second: Bilocale, third: Bilocale, bound: Optional[int] = None) -> Report:
    """``(X (x) Y) (x) Z`` and ``X (x) (Y (x) Z)`` are isomorphic bilocales.

    The associator is found by search; hitting the bound is inconclusive.
    """
    report = Report(subject=f"{first.name}, {second.name}, {third.name}")
    with report.timed(), report.bounded("bibundle.assoc"):
        left = tensor_over(tensor_over(first, second).result, third).result
        right = tensor_over(first, tensor_over(second, third).result).result
        iso = find_bilocale_iso(left, right, bound=bound)
        report.check("bibundle.assoc", iso is not None, iso)
    return report


def _is_iso_map(A: Bilocale, B: Bilocale, values: List[int]) -> bool:
    if sorted(values) != list(range(len(B.space))):
        return False
    for a in range(len(A.space)):
        for a2 in range(len(A.space)):
            if A.space.leq(a, a2) != B.space.leq(values[a], values[a2]):
                return False
    for (g, a), a2 in A.left.action.items():
        if B.left.action.get((g, values[a])) != values[a2]:
            return False
    for (a, c), a2 in A.right.action.items():
        if B.right.action.get((values[a], c)) != values[a2]:
            return False
    return all(A.left.anchor[a] == B.left.anchor[values[a]] for a in range(len(A.space)))
