"""Pulling principal bundles back, and maps of bundles over maps of bases."""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from qlab.bundle.bundle import GBundle, PrincipalGBundle, check_principal, principal_bundle
from qlab.errors import HypothesisError, LawViolation
from qlab.groupoid.action import EquivariantMap, GLocale, check_equivariant_map
from qlab.locale.limits import Square
from qlab.locale.maps import LocaleMap
from qlab.locale.space import ContinuousMap, fibered_product
from qlab.report import Report

logger = logging.getLogger(__name__)


@dataclass
class PulledBackBundle:
    """``f*(X) = X x_M N`` over ``N``, with its map back to ``X``."""

    bundle: PrincipalGBundle
    source: PrincipalGBundle
    base_map: ContinuousMap
    map_to_source: EquivariantMap


def pullback_bundle(principal: PrincipalGBundle, f: ContinuousMap, cross_check: bool = True) -> PulledBackBundle:
    """Pull ``principal`` back along ``f: N -> M``.

    The pulled-back bundle is checked to be principal; a failure raises
    :class:`~qlab.errors.LawViolation`.
    """
    P = principal
    if f.target is not P.base and f.target.up != P.base.up:
        raise LawViolation("pullback.codomain", None, "f must land in the base of the bundle")
    L = P.glocale
    space, pr1, pr2, pairs = fibered_product(P.bundle.projection_map, f, name=f"{P.name} x {f.name or 'N'}")
    position = {p: k for k, p in enumerate(pairs)}
    anchor = [L.anchor[x] for x, _ in pairs]
    G = L.groupoid
    action = {
        (g, k): position[(L.act(g, x), n)]
        for k, (x, n) in enumerate(pairs)
        for g in range(len(G.arrows))
        if G.d[g] == anchor[k]
    }
    name = f"{f.name or 'f'}*({P.name})"
    glocale = GLocale(G, space, anchor, action, name=name)
    bundle = principal_bundle(GBundle(glocale, f.source, pr2.values, name=name), cross_check=cross_check)
    back = EquivariantMap(glocale, L, pr1.values, name="f~")
    logger.info("pulled %s back along %s: %d points", P.name, f.name or "f", len(space))
    return PulledBackBundle(bundle, P, f, back)


def pullback_comparison(
    pulled: PulledBackBundle, other: GBundle, f_values: Sequence[int]
) -> Tuple[Optional[ContinuousMap], Report]:
    """Compare ``other`` over ``N`` with the pulled-back bundle.

    ``f_values`` is an equivariant map ``other -> X`` over the base map. The
    comparison ``x -> (f'(x), pi'(x))`` must be an equivariant isomorphism
    through which ``f'`` factors.
    """
    P = pulled.source
    report = Report(subject=f"{other.name} vs {pulled.bundle.name}")
    with report.timed():
        f_prime = EquivariantMap(other.glocale, P.glocale, tuple(f_values), name="f'")
        report.extend(check_equivariant_map(f_prime))
        if not report.passed:
            return None, report
        over = next(
            (x for x in range(len(other.space)) if P.bundle.projection[f_values[x]] != pulled.base_map(other.projection[x])),
            None,
        )
        report.witness("bundle.over", over)
        if over is not None:
            return None, report
        target = pulled.bundle.bundle
        _, _, _, pairs = fibered_product(P.bundle.projection_map, pulled.base_map)
        position = {p: k for k, p in enumerate(pairs)}
        phi = ContinuousMap(
            other.space,
            target.space,
            [position[(f_values[x], other.projection[x])] for x in range(len(other.space))],
            name="phi",
        )
        iso = phi.inverse() is not None
        report.check("bundle.pullback", iso, None if iso else phi.values, detail="comparison is an isomorphism")
        equivariant = check_equivariant_map(EquivariantMap(other.glocale, target.glocale, phi.values, name="phi"))
        report.extend(equivariant)
        factor = next(
            (x for x in range(len(other.space)) if pulled.map_to_source.values[phi(x)] != f_values[x]), None
        )
        report.witness("bundle.pullback", factor, detail="f' factors through the comparison")
    return (phi if report.passed else None), report


def induced_map_on_orbits(
    source: PrincipalGBundle, target: PrincipalGBundle, f_values: Sequence[int]
) -> Tuple[ContinuousMap, Report]:
    """``f/G: M -> N`` for an equivariant ``f: X -> Y``.

    The report checks that the square of ``f``, the projections and ``f/G``
    is a pullback, and that ``f`` is an isomorphism or open exactly when
    ``f/G`` is.
    """
    f = EquivariantMap(source.glocale, target.glocale, tuple(f_values), name="f")
    report = check_equivariant_map(f)
    if not report.passed:
        raise LawViolation("glocale.equivariant", report.first_failure.witness, "map is not equivariant")
    values: list = [None] * len(source.base)
    for x in range(len(source.space)):
        m, n = source.bundle.projection[x], target.bundle.projection[f_values[x]]
        if values[m] is None:
            values[m] = n
        elif values[m] != n:
            raise LawViolation("bundle.induced", x, "f does not descend to the bases")
    quotient = ContinuousMap(source.base, target.base, values, name="f/G")
    with report.timed():
        square = Square(
            top=f.locale_map,
            left=source.bundle.projection_locale,
            right=target.bundle.projection_locale,
            bottom=LocaleMap.of(quotient, name="f/G"),
        )
        report.witness("bundle.induced_square", square.pullback_witness())
        f_iso, q_iso = f.point_map.inverse() is not None, quotient.inverse() is not None
        report.check("bundle.iso_transfer", f_iso == q_iso, (f_iso, q_iso))
        f_open, q_open = f.point_map.is_open(), quotient.is_open()
        report.check("bundle.open_transfer", f_open == q_open, (f_open, q_open))
    return quotient, report


def check_two_pullbacks(
    bundles: Tuple[GBundle, GBundle, GBundle, GBundle],
    top: Sequence[int],
    left: Sequence[int],
    right: Sequence[int],
    bottom: Sequence[int],
    cross_check: bool = True,
) -> Report:
    """A square of principal bundles is a pullback exactly when the square of
    their bases is.

    ``bundles`` are the corners ``(A, B, C, D)``: ``top: A -> B``,
    ``left: A -> C``, ``right: B -> D`` and ``bottom: C -> D``.
    """
    a, b, c, d = bundles
    report = Report(subject="bundle square")
    with report.timed():
        principals = []
        for corner in bundles:
            stage = check_principal(corner, cross_check=cross_check)
            if not stage.passed:
                raise HypothesisError("bundle.principal", f"{corner.name} is not principal: {stage.first_failure.line()}")
            principals.append(principal_bundle(corner, cross_check=False))
        pa, pb, pc, pd = principals
        top_q, r1 = induced_map_on_orbits(pa, pb, top)
        left_q, r2 = induced_map_on_orbits(pa, pc, left)
        right_q, r3 = induced_map_on_orbits(pb, pd, right)
        bottom_q, r4 = induced_map_on_orbits(pc, pd, bottom)
        for part in (r1, r2, r3, r4):
            report.checks.extend(c for c in part.checks if c.statement == "glocale.equivariant")

        def locale(space_values, source, target, name):
            return LocaleMap.of(ContinuousMap(source, target, space_values, name=name), name=name)

        total = Square(
            top=locale(top, a.space, b.space, "top"),
            left=locale(left, a.space, c.space, "left"),
            right=locale(right, b.space, d.space, "right"),
            bottom=locale(bottom, c.space, d.space, "bottom"),
        )
        base = Square(
            top=LocaleMap.of(top_q, name="top/G"),
            left=LocaleMap.of(left_q, name="left/G"),
            right=LocaleMap.of(right_q, name="right/G"),
            bottom=LocaleMap.of(bottom_q, name="bottom/G"),
        )
        commutes = total.commutes_witness()
        report.witness("locale.square.commutes", commutes)
        if commutes is not None:
            return report
        total_witness, base_witness = total.pullback_witness(), base.pullback_witness()
        outcome = (total_witness is None, base_witness is None)
        report.check(
            "bundle.two_pullbacks",
            outcome[0] == outcome[1],
            (total_witness, base_witness),
            detail=f"bundles {'are' if outcome[0] else 'are not'} a pullback, bases {'are' if outcome[1] else 'are not'}",
        )
    return report
