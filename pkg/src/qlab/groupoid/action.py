"""Groupoid actions on finite spaces.

A left ``G``-locale is a space ``X`` with an anchor ``p: X -> G0`` and an
action defined on pairs ``(g, x)`` with ``d(g) = p(x)``, landing over
``r(g)``. Right actions are defined on pairs ``(x, g)`` with
``q(x) = r(g)`` and land over ``d(g)``.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from qlab.errors import LawViolation
from qlab.groupoid.groupoid import FiniteOpenGroupoid
from qlab.locale.limits import Square
from qlab.locale.maps import LocaleMap
from qlab.locale.space import ContinuousMap, FiniteSpace, fibered_product
from qlab.order.bits import bit
from qlab.report import Report

logger = logging.getLogger(__name__)


class GLocale:
    """A left action of ``groupoid`` on ``space``.

    Args:
        groupoid: The acting groupoid.
        space: The space acted on.
        anchor: ``p(x)`` for each point, an object of the groupoid.
        action: ``g.x`` for each pair with ``d(g) = p(x)``.
        name: Display name.
    """

    def __init__(
        self,
        groupoid: FiniteOpenGroupoid,
        space: FiniteSpace,
        anchor: Sequence[int],
        action: Mapping[Tuple[int, int], int],
        name: str = "",
    ):
        self.groupoid = groupoid
        self.space = space
        self.anchor = tuple(anchor)
        self.action: Dict[Tuple[int, int], int] = dict(action)
        self.name = name
        if len(self.anchor) != len(space):
            raise LawViolation("glocale.anchor", len(self.anchor), "anchor needs one value per point")
        for (g, x), y in self.action.items():
            if not (0 <= g < len(groupoid.arrows) and 0 <= x < len(space) and 0 <= y < len(space)):
                raise LawViolation("glocale.total", (g, x), "action value out of range")

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<GLocale{name} points={len(self.space)} over {self.groupoid!r}>"

    def act(self, g: int, x: int) -> int:
        try:
            return self.action[(g, x)]
        except KeyError:
            raise LawViolation("glocale.total", (g, x), f"no action of arrow {g} on point {x}")

    @cached_property
    def acting_pairs(self) -> List[Tuple[int, int]]:
        G = self.groupoid
        return [(g, x) for g in range(len(G.arrows)) for x in range(len(self.space)) if G.d[g] == self.anchor[x]]

    @cached_property
    def anchor_map(self) -> ContinuousMap:
        return ContinuousMap(self.space, self.groupoid.objects, self.anchor, name="p")

    @cached_property
    def _pairs_space(self):
        return fibered_product(self.groupoid.d_map, self.anchor_map, name="G1xX")

    @property
    def pairs_space(self) -> FiniteSpace:
        """``G1 x_G0 X``, the pullback of ``d`` and the anchor."""
        return self._pairs_space[0]

    @property
    def pairs_projections(self) -> Tuple[ContinuousMap, ContinuousMap]:
        return self._pairs_space[1], self._pairs_space[2]

    @cached_property
    def action_map(self) -> ContinuousMap:
        space, _, _, pairs = self._pairs_space
        return ContinuousMap(space, self.space, [self.act(g, x) for g, x in pairs], name="act")

    @cached_property
    def anchor_locale(self) -> LocaleMap:
        return LocaleMap.of(self.anchor_map, name="p")

    @cached_property
    def action_locale(self) -> LocaleMap:
        return LocaleMap.of(self.action_map, name="act")

    def translate(self, arrows: int, points: int) -> int:
        """The set ``{g.x}`` for ``g`` in ``arrows``, ``x`` in ``points``, composable."""
        acc = 0
        for g, x in self.acting_pairs:
            if arrows >> g & 1 and points >> x & 1:
                acc |= bit(self.action[(g, x)])
        return acc

    def orbit(self, x: int) -> int:
        return self.translate(self.groupoid.arrows.full, bit(x))

    def action_square(self) -> Square:
        """``act`` and ``pr1`` over the anchor and the range map."""
        pr1, _ = self.pairs_projections
        return Square(
            top=self.action_locale,
            left=LocaleMap.of(pr1, name="pr1"),
            right=self.anchor_locale,
            bottom=self.groupoid.r_locale,
        )


def check_g_locale(glocale: GLocale, cross_check: bool = True) -> Report:
    """Check the action laws, continuity, openness and the pullback square."""
    L = glocale
    G = L.groupoid
    report = Report(subject=L.name or "G-locale")
    with report.timed():
        missing = next((p for p in L.acting_pairs if p not in L.action), None)
        extra = next((p for p in L.action if G.d[p[0]] != L.anchor[p[1]]), None)
        report.witness("glocale.total", missing if missing is not None else extra)
        if not report.passed:
            return report
        act = L.action
        report.witness("glocale.anchor", next(((g, x) for g, x in L.acting_pairs if L.anchor[act[g, x]] != G.r[g]), None))
        report.witness("glocale.unit", next((x for x in range(len(L.space)) if act.get((G.u[L.anchor[x]], x)) != x), None))
        if not report.passed:
            return report
        assoc = None
        for g, h in G.composable:
            for x in range(len(L.space)):
                if L.anchor[x] == G.d[h] and act[g, act[h, x]] != act[G.m[g, h], x]:
                    assoc = (g, h, x)
                    break
            if assoc:
                break
        report.witness("glocale.assoc", assoc)
        try:
            L.anchor_map
            L.action_map
        except LawViolation as exc:
            report.check("glocale.continuous", False, exc.witness, detail=str(exc))
            return report
        report.check("glocale.continuous", True)
        report.witness("glocale.pullback", L.action_square().pullback_witness())
        witness = L.action_map.open_witness()
        report.check("glocale.open", witness is None, witness)
        if cross_check and witness is None:
            with report.bounded("glocale.open"):
                L.action_locale.is_open(cross_check=True)
    return report


@dataclass
class EquivariantMap:
    """A map of points ``source.space -> target.space`` commuting with the actions."""

    source: GLocale
    target: GLocale
    values: Tuple[int, ...]
    name: str = ""

    @cached_property
    def point_map(self) -> ContinuousMap:
        return ContinuousMap(self.source.space, self.target.space, self.values, name=self.name or "f")

    @cached_property
    def locale_map(self) -> LocaleMap:
        return LocaleMap.of(self.point_map, name=self.name or "f")


def check_equivariant_map(f: EquivariantMap) -> Report:
    report = Report(subject=f.name or "equivariant map")
    src, tgt = f.source, f.target
    with report.timed():
        try:
            f.point_map
        except LawViolation as exc:
            report.check("map.monotone", False, exc.witness)
            return report
        witness: Optional[Tuple[int, ...]] = next(
            ((x,) for x in range(len(src.space)) if tgt.anchor[f.values[x]] != src.anchor[x]), None
        )
        if witness is None:
            witness = next(
                ((g, x) for g, x in src.acting_pairs if f.values[src.act(g, x)] != tgt.act(g, f.values[x])),
                None,
            )
        report.witness("glocale.equivariant", witness)
    return report


# -- right actions ----------------------------------------------------------------------


class RightGLocale:
    """A right action: ``x.g`` for ``q(x) = r(g)``, landing over ``d(g)``."""

    def __init__(
        self,
        groupoid: FiniteOpenGroupoid,
        space: FiniteSpace,
        anchor: Sequence[int],
        action: Mapping[Tuple[int, int], int],
        name: str = "",
    ):
        self.groupoid = groupoid
        self.space = space
        self.anchor = tuple(anchor)
        self.action: Dict[Tuple[int, int], int] = dict(action)
        self.name = name

    def act(self, x: int, g: int) -> int:
        try:
            return self.action[(x, g)]
        except KeyError:
            raise LawViolation("glocale.total", (x, g), f"no action of arrow {g} on point {x}")

    @cached_property
    def acting_pairs(self) -> List[Tuple[int, int]]:
        G = self.groupoid
        return [(x, g) for x in range(len(self.space)) for g in range(len(G.arrows)) if self.anchor[x] == G.r[g]]

    @cached_property
    def anchor_map(self) -> ContinuousMap:
        return ContinuousMap(self.space, self.groupoid.objects, self.anchor, name="q")


def check_right_g_locale(glocale: RightGLocale) -> Report:
    """The right action laws, checked through the associated left action."""
    report = check_g_locale(to_left(glocale))
    report.subject = glocale.name or "right G-locale"
    return report


def to_right(glocale: GLocale) -> RightGLocale:
    """``x.g = g^-1 . x``."""
    G = glocale.groupoid
    action = {(x, G.i[g]): y for (g, x), y in glocale.action.items()}
    return RightGLocale(G, glocale.space, glocale.anchor, action, name=glocale.name)


def to_left(glocale: RightGLocale) -> GLocale:
    """``g.x = x.g^-1``."""
    G = glocale.groupoid
    action = {(G.i[g], x): y for (x, g), y in glocale.action.items()}
    return GLocale(G, glocale.space, glocale.anchor, action, name=glocale.name)


def canonical_action(groupoid: FiniteOpenGroupoid) -> GLocale:
    """``G`` acting on its objects: ``g.d(g) = r(g)``."""
    G = groupoid
    action = {(g, G.d[g]): G.r[g] for g in range(len(G.arrows))}
    return GLocale(G, G.objects, list(range(len(G.objects))), action, name=f"{G.name} on objects")


def left_regular_action(groupoid: FiniteOpenGroupoid) -> GLocale:
    """``G`` acting on its arrows by left multiplication, anchored by ``r``."""
    G = groupoid
    return GLocale(G, G.arrows, G.r, {(g, h): gh for (g, h), gh in G.m.items()}, name=f"{G.name} on arrows")


def trivial_action(groupoid: FiniteOpenGroupoid, space: FiniteSpace, name: str = "") -> GLocale:
    """A one-object groupoid acting trivially on ``space``."""
    G = groupoid
    if len(G.objects) != 1:
        raise LawViolation("glocale.anchor", len(G.objects), "trivial actions need a single object")
    action = {(g, x): x for g in range(len(G.arrows)) for x in range(len(space))}
    return GLocale(G, space, [0] * len(space), action, name=name or f"{G.name} trivially on {space.name}")

