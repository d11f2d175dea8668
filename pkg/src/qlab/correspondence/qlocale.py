"""Q-locales and the G-locales they come from.

A Q-locale is a stably supported module whose action has a join-preserving
right adjoint ``alpha_*`` and satisfies ``V{left(u(q), y) : q.y <= x} = x``.
Over a groupoid quantale it is the module of a ``G(Q)``-locale: the anchor
is the point map of ``a -> left(a, 1)`` and the action is the point map of
``alpha_*``.
"""

import logging
from typing import Optional, Tuple

from qlab.errors import CrossValidationError, HypothesisError, LawViolation
from qlab.groupoid.action import GLocale, check_g_locale
from qlab.groupoid.groupoid import FiniteOpenGroupoid
from qlab.locale.maps import LocaleMap
from qlab.locale.spatial import point_map_from_inverse_image, spatialize
from qlab.order.maps import join_preservation_witness
from qlab.qmodule.module import QModule, check_stably_supported
from qlab.quantale.groupoid_quantale import groupoid_of_quantale
from qlab.report import Report

logger = logging.getLogger(__name__)


def check_q_locale(module: QModule) -> Report:
    """The Q-locale axioms of a stably supported module."""
    M = module
    Q = M.quantale
    stable = check_stably_supported(M)
    if not stable.passed:
        raise HypothesisError("module.stable.product", f"{M!r} is not stably supported: {stable.first_failure.line()}")
    report = Report(subject=M.name or "Q-locale")
    with report.timed():
        report.witness("qlocale.Q1", join_preservation_witness(M.alpha_star))
        X = M.lattice
        covering = None
        for x in X.elements:
            below = (
                M.base_act(Q.upsilon(q), y)
                for q in Q.lattice.generators
                for y in X.generators
                if M.act(q, y) & ~x == 0
            )
            if X.join_all(below) != x:
                covering = x
                break
        report.witness("qlocale.Q2", covering)
        report.witness(
            "qlocale.beck_chevalley",
            next((q for q in Q.lattice.generators if M.act(q, M.top) != M.base_act(Q.spp(q), M.top)), None),
        )
    return report


def _g_locale(module: QModule, groupoid: FiniteOpenGroupoid) -> GLocale:
    M = module
    Q = M.quantale
    G = groupoid
    points = spatialize(M.lattice)
    anchor = LocaleMap(M.lattice, Q.base, lambda a: M.base_act(a, M.top), name="p").point_map
    square = M.tensor.square
    if tuple(square.f.point_map.values) != G.d:
        raise CrossValidationError(f"the right action of {Q!r} does not restrict along d")
    action_map = point_map_from_inverse_image(
        lambda c: M.alpha_star(points.from_space(c)), square.space, points.space
    )
    action = {pair: action_map(k) for k, pair in enumerate(square.pairs)}
    return GLocale(G, points.space, anchor.values, action, name=f"pt({M.name})")


def q_locale_to_g_locale(
    module: QModule, groupoid: Optional[FiniteOpenGroupoid] = None, check: bool = True
) -> GLocale:
    """The ``G(Q)``-locale of a Q-locale.

    With ``check`` the axioms are verified first and the result is checked
    as a G-locale; failures raise.
    """
    M = module
    if check:
        report = check_q_locale(M)
        if not report.passed:
            failure = report.first_failure
            raise LawViolation(failure.statement, failure.witness, f"{M!r} is not a Q-locale")
    G = groupoid or groupoid_of_quantale(M.quantale, check=check)
    glocale = _g_locale(M, G)
    if check:
        report = check_q_locale_correspondence(M, glocale)
        if not report.passed:
            failure = report.first_failure
            raise LawViolation(failure.statement, failure.witness, f"{glocale!r} does not recover {M!r}")
    return glocale


def check_q_locale_correspondence(module: QModule, glocale: GLocale) -> Report:
    """``glocale`` is a G-locale whose anchor is open with direct image the
    support of ``module``, and whose action recovers ``alpha_*``."""
    M = module
    Q = M.quantale
    points = spatialize(M.lattice)
    base_points = spatialize(Q.base)
    report = check_g_locale(glocale)
    report.subject = M.name or "Q-locale"
    if not report.passed:
        return report
    with report.timed():
        anchor = glocale.anchor_map
        opened = anchor.is_open()
        support = next(
            (x for x in M.lattice.elements if anchor.direct_image(points.to_space(x)) != base_points.to_space(M.spp(x))),
            None,
        )
        report.check("qlocale.anchor", opened and support is None, support if opened else anchor.open_witness())
        report.witness(
            "qlocale.action",
            next(
                (x for x in M.lattice.elements if glocale.action_map.preimage(points.to_space(x)) != M.alpha_star(x)),
                None,
            ),
        )
    return report


def q_locale_roundtrip_witness(module: QModule, other: QModule) -> Optional[Tuple[str, object]]:
    """Where ``other`` differs from ``module`` once both are read on points.

    ``other`` is over the quantale of ``G(Q)`` and acts on the spatial
    presentation of ``module``'s frame.
    """
    M, N = module, other
    Q = M.quantale
    x_pts, q_pts, a_pts = spatialize(M.lattice), spatialize(Q.lattice), spatialize(Q.base)
    for x in M.lattice.generators:
        xs = x_pts.to_space(x)
        for q in Q.lattice.generators:
            if N.act(q_pts.to_space(q), xs) != x_pts.to_space(M.act(q, x)):
                return ("act", (q, x))
        for a in Q.base.generators:
            if N.base_act(a_pts.to_space(a), xs) != x_pts.to_space(M.base_act(a, x)):
                return ("base_act", (a, x))
    if M.has_support and N.has_support:
        for x in M.lattice.elements:
            if N.spp(x_pts.to_space(x)) != a_pts.to_space(M.spp(x)):
                return ("support", x)
    if M.has_inner and N.has_inner:
        for x in M.lattice.generators:
            for y in M.lattice.generators:
                if N.inner(x_pts.to_space(x), x_pts.to_space(y)) != q_pts.to_space(M.inner(x, y)):
                    return ("inner", (x, y))
    return None
