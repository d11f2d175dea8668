"""The module of a G-locale.

``O(X)`` is a module over ``O(G)`` with ``q.x`` the image of the pairs
``(g, y)`` in ``q x_G0 x`` under the action, and with ``a`` restricting
``x`` to ``p*(a) & x``. When the anchor is open its direct image is the
support.
"""

import logging
from typing import Callable, Optional

from qlab.errors import CrossValidationError
from qlab.groupoid.action import EquivariantMap, GLocale
from qlab.order.bits import bit
from qlab.qmodule.module import QModule, check_module, homomorphism_witness
from qlab.quantale.groupoid_quantale import quantale_of_groupoid
from qlab.quantale.quantale import BasedQuantale
from qlab.report import Report

logger = logging.getLogger(__name__)


def module_of_g_locale(
    glocale: GLocale,
    quantale: Optional[BasedQuantale] = None,
    inner: Optional[Callable[[int, int], int]] = None,
    name: str = "",
) -> QModule:
    """``O(X)`` as an ``O(G)``-module.

    The support is attached when the anchor is open. An inner product can be
    supplied by the caller; principal bundles supply theirs.
    """
    L = glocale
    G = L.groupoid
    Q = quantale or quantale_of_groupoid(G, check=False)
    _, _, _, pairs = L._pairs_space
    action_map = L.action_map
    arrows_of = [bit(g) for g, _ in pairs]
    points_of = [bit(y) for _, y in pairs]

    def act(q: int, x: int) -> int:
        mask = 0
        for k in range(len(pairs)):
            if q & arrows_of[k] and x & points_of[k]:
                mask |= bit(k)
        return action_map.direct_image(mask)

    anchor = L.anchor_map

    def base_act(a: int, x: int) -> int:
        return anchor.preimage(a) & x

    support = anchor.direct_image if anchor.is_open() else None
    if support is None:
        logger.info("anchor of %r is not open; module has no support", L)
    return QModule(Q, L.space.frame, act, base_act, inner=inner, support=support, name=name or f"O({L.name})")


def check_g_module(glocale: GLocale, module: Optional[QModule] = None) -> Report:
    """Module laws of ``O(X)`` and agreement of ``alpha_*`` with ``act*``."""
    M = module or module_of_g_locale(glocale)
    L = glocale
    report = check_module(M)
    if not report.passed:
        return report
    with report.timed():
        tensor = M.tensor
        _, _, _, pairs = L._pairs_space
        if list(tensor.square.pairs) != list(pairs):
            raise CrossValidationError(f"Q (x)_A X and G1 x_G0 X disagree for {L!r}")
        witness = tensor.lift_witness(M.act)
        if witness is None:
            action_map = L.action_map
            witness = next(
                (x for x in M.lattice.elements if M.alpha_star(x) != action_map.preimage(x)),
                None,
            )
        report.witness("module.alpha_adjoint", witness)
    return report


def check_projection_formulas(module: QModule) -> Report:
    """Direct images of the two projections out of ``Q (x)_A X``.

    ``pi1_!(q (x) x) = right(q, spp_X(x))`` and
    ``pi2_!(q (x) x) = left(spp(q*), x)``, on generators.
    """
    M = module
    Q = M.quantale
    report = Report(subject=M.name or "module")
    with report.timed():
        square = M.tensor.square
        first, second = square.pi1.direct_image, square.pi2.direct_image
        witness = None
        for q in Q.lattice.generators:
            for x in M.lattice.generators:
                rect = M.tensor.embed(q, x)
                if first(rect) != Q.right(q, M.spp(x)):
                    witness = ("pi1", q, x)
                elif second(rect) != M.base_act(Q.spp(Q.star(q)), x):
                    witness = ("pi2", q, x)
                if witness:
                    break
            if witness:
                break
        report.witness("module.projections", witness)
    return report


def check_equivariant_module_map(f: EquivariantMap, source: QModule, target: QModule) -> Report:
    """The inverse image of an equivariant map is a module homomorphism."""
    report = Report(subject=f.name or "equivariant map")
    with report.timed():
        witness = homomorphism_witness(f.point_map.preimage, target, source)
        report.witness("module.homomorphism", witness)
    return report
