"""Principal Q-locales and the correspondence with principal G-bundles."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Optional, Tuple, Union

from qlab.bundle.bundle import GBundle, PrincipalGBundle, principal_bundle
from qlab.correspondence.qlocale import (
    check_q_locale,
    q_locale_roundtrip_witness,
    q_locale_to_g_locale,
)
from qlab.errors import HypothesisError, LawViolation
from qlab.locale.maps import LocaleMap
from qlab.locale.spatial import spatialize
from qlab.order.lattice import FiniteFrame
from qlab.order.maps import MonotoneMap, join_preservation_witness, right_adjoint
from qlab.qmodule.action import module_of_g_locale
from qlab.qmodule.module import QModule, check_stably_supported
from qlab.quantale.groupoid_quantale import groupoid_iso_witness
from qlab.quantale.tensor import RelativeTensor, relative_tensor
from qlab.report import Report

logger = logging.getLogger(__name__)


@dataclass
class PrincipalQLocale:
    """A Q-locale ``X`` with a map ``tau: X -> M`` onto a base frame.

    ``tau`` is the direct image of the projection; its right adjoint is the
    inverse image ``pi*``.
    """

    module: QModule
    base: FiniteFrame
    tau: Callable[[int], int]
    name: str = ""
    report: Optional[Report] = field(default=None, repr=False)

    @cached_property
    def tau_map(self) -> MonotoneMap:
        return MonotoneMap(self.module.lattice, self.base, self.tau, name="tau")

    @cached_property
    def projection(self) -> LocaleMap:
        """``pi: X -> M`` with inverse image the right adjoint of ``tau``."""
        return LocaleMap(self.module.lattice, self.base, right_adjoint(self.tau_map, name="pi*"), name="pi")

    @cached_property
    def kernel(self) -> RelativeTensor:
        """``X (x)_M X``."""
        inv = self.projection.inv
        X = self.module.lattice
        return relative_tensor(X, X, self.base, inv, inv, name="XxX")

    def phi(self, x: int, y: int) -> int:
        """``x (x) y -> alpha_*(x) & (1 (x) y)`` in ``Q (x)_A X``."""
        M = self.module
        return M.alpha_star(x) & M.tensor.embed(M.quantale.top, y)

    @cached_property
    def phi_map(self) -> MonotoneMap:
        return self.kernel.lift(self.phi, self.module.tensor.frame, name="phi")


def check_principal_q_locale(qlocale: PrincipalQLocale) -> Report:
    """P1: ``tau`` is the direct image of an open surjection onto ``M``.
    P2: ``tau(q.x) = tau(left(spp(q*), x))``.
    P3: ``phi`` is an isomorphism ``X (x)_M X -> Q (x)_A X``.
    """
    L = qlocale
    M = L.module
    Q = M.quantale
    X = M.lattice
    report = Report(subject=L.name or "principal Q-locale")
    with report.timed():
        witness = join_preservation_witness(L.tau_map)
        if witness is None and L.tau(M.top) != L.base.top:
            witness = ("top", M.top)
        if witness is None:
            frame_hom = L.projection.frame_hom_witness()
            witness = None if frame_hom is None else ("pi*", frame_hom)
        if witness is None:
            frobenius = L.projection.frobenius_witness(L.tau_map)
            witness = None if frobenius is None else ("frobenius", frobenius)
        report.witness("qlocale.P1", witness)
        report.witness(
            "qlocale.P2",
            next(
                (
                    (q, x)
                    for q in Q.lattice.generators
                    for x in X.generators
                    if L.tau(M.act(q, x)) != L.tau(M.base_act(Q.spp(Q.star(q)), x))
                ),
                None,
            ),
        )
        if not report.passed:
            return report
        alpha = join_preservation_witness(M.alpha_star)
        if alpha is not None:
            report.check("qlocale.P3", False, ("alpha_* does not preserve joins", alpha))
            return report
        report.witness("qlocale.P3", _phi_iso_witness(L))
    return report


def _phi_iso_witness(qlocale: PrincipalQLocale) -> Optional[Tuple[str, object]]:
    L = qlocale
    kernel, target = L.kernel, L.module.tensor
    relation = kernel.lift_witness(L.phi)
    if relation is not None:
        return ("relations", relation)
    phi = L.phi_map
    principal: Dict[int, int] = {up: k for k, up in enumerate(target.square.space.up)}
    sigma = []
    for k, up in enumerate(kernel.square.space.up):
        image = phi(up)
        if image not in principal:
            return ("not principal", k)
        sigma.append(principal[image])
    if sorted(sigma) != list(range(len(target.square.space))):
        return ("not bijective", sigma)
    source_space, target_space = kernel.square.space, target.square.space
    for a in range(len(source_space)):
        for b in range(len(source_space)):
            if source_space.leq(a, b) != target_space.leq(sigma[a], sigma[b]):
                return ("order", (a, b))
    return None


def check_principal_bridge(qlocale: PrincipalQLocale, principal: PrincipalGBundle) -> Report:
    """``phi`` is the inverse image of the pairing ``(g, x) -> (g.x, x)``."""
    L, P = qlocale, principal
    report = Report(subject=L.name or P.name)
    with report.timed():
        kernel = L.kernel.square
        if list(kernel.pairs) != list(P.bundle.kernel_pairs):
            report.check("qlocale.bridge", False, "kernel points differ")
            return report
        report.witness(
            "qlocale.bridge",
            next(
                (k for k, up in enumerate(kernel.space.up) if L.phi_map(up) != P.pairing.preimage(up)),
                None,
            ),
        )
    return report


def principal_q_locale_candidate(bundle: Union[GBundle, PrincipalGBundle], name: str = "") -> PrincipalQLocale:
    """The module of ``bundle`` with ``tau = pi_!``, unchecked.

    A principal bundle contributes its inner product; any other bundle gives
    a module without one, which can still be tested against P1 to P3.
    """
    if isinstance(bundle, PrincipalGBundle):
        module, plain = bundle.module, bundle.bundle
    else:
        module, plain = module_of_g_locale(bundle.glocale, name=f"O({bundle.name})"), bundle
    return PrincipalQLocale(
        module,
        plain.base.frame,
        plain.projection_map.direct_image,
        name=name or f"O({plain.name})",
    )


def g_bundle_to_principal_q_locale(
    principal: PrincipalGBundle, check: bool = True, cross_check: bool = True
) -> PrincipalQLocale:
    """The principal Q-locale of a principal bundle with open anchor.

    With ``check`` every axiom is verified and the first failure raises
    :class:`~qlab.errors.LawViolation`; the full report is kept on the result.
    """
    P = principal
    if not P.glocale.anchor_map.is_open():
        raise HypothesisError("glocale.fully_open", f"the anchor of {P.name} is not open")
    L = principal_q_locale_candidate(P)
    if check:
        report = check_stably_supported(L.module)
        if report.passed:
            report.extend(check_q_locale(L.module))
            report.extend(check_principal_q_locale(L))
        if report.passed:
            report.extend(check_principal_bridge(L, P))
        report.subject = L.name
        L.report = report
        if not report.passed:
            failure = report.first_failure
            raise LawViolation(failure.statement, failure.witness, f"{L.name} is not a principal Q-locale")
    logger.info("%s is a principal %s-locale", L.name, L.module.quantale.name)
    return L


def principal_q_locale_to_g_bundle(qlocale: PrincipalQLocale, check: bool = True) -> PrincipalGBundle:
    """The principal ``G(Q)``-bundle of a principal Q-locale."""
    L = qlocale
    if check:
        report = check_principal_q_locale(L)
        if not report.passed:
            failure = report.first_failure
            raise LawViolation(failure.statement, failure.witness, f"{L.name} is not a principal Q-locale")
    glocale = q_locale_to_g_locale(L.module, check=check)
    projection = L.projection.point_map
    base = spatialize(L.base).space
    return principal_bundle(GBundle(glocale, base, projection.values, name=f"pt({L.name})"))


def roundtrip_check(principal: PrincipalGBundle) -> Report:
    """Bundle to Q-locale and back recovers the bundle on the nose."""
    P = principal
    G = P.groupoid
    report = Report(subject=f"roundtrip {P.name}")
    with report.timed():
        L = g_bundle_to_principal_q_locale(P)
        report.extend(L.report)
        back = principal_q_locale_to_g_bundle(L)
        H = back.groupoid
        witness = groupoid_iso_witness(G, H, list(range(len(G.objects))), list(range(len(G.arrows))))
        if witness is None:
            witness = _bundle_difference(P, back)
        report.witness("roundtrip.bundle", witness, detail="identity on points")
    return report


def _bundle_difference(first: PrincipalGBundle, second: PrincipalGBundle) -> Optional[Tuple[str, object]]:
    a, b = first.bundle, second.bundle
    if a.space.up != b.space.up:
        return ("space", None)
    if a.base.up != b.base.up:
        return ("base", None)
    if a.glocale.anchor != b.glocale.anchor:
        return ("anchor", None)
    if a.projection != b.projection:
        return ("projection", None)
    differing = next((p for p, v in a.glocale.action.items() if b.glocale.action.get(p) != v), None)
    if differing is not None:
        return ("action", differing)
    return None


def roundtrip_check_q_locale(qlocale: PrincipalQLocale) -> Report:
    """Q-locale to bundle and back recovers the module, support, inner product and ``tau``."""
    L = qlocale
    report = Report(subject=f"roundtrip {L.name}")
    with report.timed():
        P = principal_q_locale_to_g_bundle(L)
        back = g_bundle_to_principal_q_locale(P)
        report.extend(back.report)
        witness = q_locale_roundtrip_witness(L.module, back.module)
        if witness is None:
            x_pts, m_pts = spatialize(L.module.lattice), spatialize(L.base)
            witness = next(
                (("tau", x) for x in L.module.lattice.elements if back.tau(x_pts.to_space(x)) != m_pts.to_space(L.tau(x))),
                None,
            )
        report.witness("roundtrip.qlocale", witness)
    return report
