"""Checkers for stability properties of open maps under pullback.

Each checker takes a :class:`~qlab.locale.limits.Square`::

    A --top--> B
    |          |
   left      right
    v          v
    C --bottom-> D

verifies its hypotheses (raising :class:`~qlab.errors.HypothesisError` when
one fails) and reports on the conclusion.
"""

import logging
from typing import Optional, Tuple

from qlab.errors import HypothesisError
from qlab.locale.limits import Square, coequalizer
from qlab.locale.maps import LocaleMap
from qlab.report import Report

logger = logging.getLogger(__name__)


def _require_pullback(square: Square) -> None:
    commutes = square.commutes_witness()
    if commutes is not None:
        raise HypothesisError("locale.square.commutes", f"square does not commute at {commutes:#x}")
    witness = square.pullback_witness()
    if witness is not None:
        raise HypothesisError("locale.square.pullback", f"square is not a pullback: {witness}")


def _require_open(f: LocaleMap, role: str, surjective: bool = False) -> None:
    result = f.is_open()
    if not result:
        raise HypothesisError("locale.map.open", f"{role} map is not open: {result.witness}")
    if surjective and not f.is_surjective():
        raise HypothesisError("locale.map.surjective", f"{role} map is not surjective")


def check_beck_chevalley(square: Square) -> Report:
    """Pullback of an open ``right`` map along ``bottom``.

    Concludes that ``left`` is open and ``bottom* . right_! = left_! . top*``.
    """
    report = Report(subject="beck-chevalley")
    with report.timed():
        _require_pullback(square)
        _require_open(square.right, "right")
        pulled = square.left.is_open()
        report.check("open.stable", pulled.open, pulled.witness)
        if pulled:
            right_direct = square.right.direct_image
            witness: Optional[int] = None
            for b in square.top.target.generators:
                lhs = square.bottom.inv(right_direct(b))
                rhs = pulled.direct_image(square.top.inv(b))
                if lhs != rhs:
                    witness = b
                    break
            report.witness("open.beck_chevalley", witness)
    return report


def check_openness_reflection(square: Square) -> Report:
    """With ``top`` open and ``right``, ``left`` open surjections, ``bottom`` is
    open and ``bottom_! = right_! . top_! . left*``."""
    report = Report(subject="openness-reflection")
    with report.timed():
        _require_pullback(square)
        _require_open(square.top, "top")
        _require_open(square.right, "right", surjective=True)
        _require_open(square.left, "left", surjective=True)
        result = square.bottom.is_open()
        witness: Optional[int] = None
        if result:
            top_direct = square.top.direct_image
            right_direct = square.right.direct_image
            for c in square.bottom.source.generators:
                if result.direct_image(c) != right_direct(top_direct(square.left.inv(c))):
                    witness = c
                    break
        report.check("open.reflection", bool(result) and witness is None, witness if result else result.witness)
    return report


def check_iso_reflection(square: Square, coequalized: Tuple[LocaleMap, LocaleMap]) -> Report:
    """Reflection of isomorphisms along a coequalizer.

    The square is ``P --pi2--> Y``, ``P --pi1--> X``, ``Y --p--> B``,
    ``X --q--> B``. Hypotheses: it is a pullback, ``pi1`` is an isomorphism,
    ``pi2`` is an open surjection and ``q`` is the coequalizer of the pair
    ``coequalized``. Conclusion: ``p`` is an isomorphism, and its inverse is
    exhibited and checked.
    """
    report = Report(subject="iso-reflection")
    with report.timed():
        _require_pullback(square)
        if not square.left.is_iso():
            raise HypothesisError("iso.left", "left map is not an isomorphism")
        _require_open(square.top, "top", surjective=True)
        u1, u2 = coequalized
        q = square.bottom
        if q.compose(u1).differs_from(q.compose(u2)) is not None:
            raise HypothesisError("locale.coequalizer", "bottom map does not coequalize the pair")
        coeq = coequalizer(u1, u2)
        if not coeq.factor(q).is_iso():
            raise HypothesisError("locale.coequalizer", "bottom map is not the coequalizer of the pair")
        inverse = square.right.invert()
        ok = inverse is not None
        witness = None
        if ok:
            identity_b = LocaleMap.identity(square.right.target)
            identity_y = LocaleMap.identity(square.right.source)
            witness = square.right.compose(inverse).differs_from(identity_b)
            if witness is None:
                witness = inverse.compose(square.right).differs_from(identity_y)
            ok = witness is None
        report.check("iso.reflection", ok, witness, detail="inverse exhibited" if ok else "")
    return report
