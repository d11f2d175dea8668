"""Principal groupoid bundles.

A ``G``-bundle is a ``G``-locale ``X`` with an invariant map ``pi: X -> M``.
It is principal when ``pi`` is an open surjection and the pairing
``(g, x) -> (g.x, x)`` is an isomorphism ``G1 x_G0 X -> X x_M X``. The
inverse of the pairing followed by the first projection is ``theta``, which
sends ``(y, x)`` to the unique arrow carrying ``x`` to ``y``.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from qlab.errors import LawViolation
from qlab.groupoid.action import GLocale, check_g_locale
from qlab.groupoid.groupoid import FiniteOpenGroupoid
from qlab.locale.limits import Coequalizer, Square, coequalizer
from qlab.locale.maps import LocaleMap
from qlab.locale.space import ContinuousMap, FiniteSpace, fibered_product
from qlab.order.bits import bit, iter_bits
from qlab.qmodule.action import module_of_g_locale
from qlab.qmodule.module import QModule
from qlab.report import Report

logger = logging.getLogger(__name__)


@dataclass
class GBundle:
    """A ``G``-locale with a projection to a base space.

    Args:
        glocale: The action.
        base: The base space ``M``.
        projection: ``pi(x)`` for each point of the total space.
        name: Display name.
    """

    glocale: GLocale
    base: FiniteSpace
    projection: Tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        self.projection = tuple(self.projection)
        if not self.name:
            self.name = self.glocale.name

    @property
    def groupoid(self) -> FiniteOpenGroupoid:
        return self.glocale.groupoid

    @property
    def space(self) -> FiniteSpace:
        return self.glocale.space

    @cached_property
    def projection_map(self) -> ContinuousMap:
        return ContinuousMap(self.space, self.base, self.projection, name="pi")

    @cached_property
    def projection_locale(self) -> LocaleMap:
        return LocaleMap.of(self.projection_map, name="pi")

    @cached_property
    def _kernel(self):
        return fibered_product(self.projection_map, self.projection_map, name="XxX")

    @property
    def kernel(self) -> FiniteSpace:
        """``X x_M X``."""
        return self._kernel[0]

    @property
    def kernel_pairs(self) -> List[Tuple[int, int]]:
        return self._kernel[3]


def check_bundle(bundle: GBundle, cross_check: bool = True) -> Report:
    """The action laws and invariance of the projection."""
    B = bundle
    report = check_g_locale(B.glocale, cross_check=cross_check)
    report.subject = B.name or "bundle"
    if not report.passed:
        return report
    with report.timed():
        try:
            B.projection_map
        except LawViolation as exc:
            report.check("map.monotone", False, exc.witness, detail="projection")
            return report
        L = B.glocale
        report.witness(
            "bundle.invariant",
            next(((g, x) for g, x in L.acting_pairs if B.projection[L.act(g, x)] != B.projection[x]), None),
        )
    return report


@dataclass
class PrincipalGBundle:
    """A bundle known to be principal, with its pairing and ``theta``."""

    bundle: GBundle
    pairing: ContinuousMap
    theta: ContinuousMap

    @property
    def glocale(self) -> GLocale:
        return self.bundle.glocale

    @property
    def groupoid(self) -> FiniteOpenGroupoid:
        return self.bundle.groupoid

    @property
    def space(self) -> FiniteSpace:
        return self.bundle.space

    @property
    def base(self) -> FiniteSpace:
        return self.bundle.base

    @property
    def name(self) -> str:
        return self.bundle.name

    @cached_property
    def _kernel_of(self) -> List[List[int]]:
        """``_kernel_of[x]``: kernel points ``(x', y')`` with ``x' = x``."""
        rows: List[List[int]] = [[] for _ in range(len(self.space))]
        for k, (x, _) in enumerate(self.bundle.kernel_pairs):
            rows[x].append(k)
        return rows

    def inner(self, x: int, y: int) -> int:
        """``<x, y>``: the arrows carrying a point of ``y`` into ``x`` within a fibre."""
        pairs = self.bundle.kernel_pairs
        mask = 0
        for x1 in iter_bits(x):
            for k in self._kernel_of[x1]:
                if y >> pairs[k][1] & 1:
                    mask |= bit(k)
        return self.theta.direct_image(mask)

    @cached_property
    def module(self) -> QModule:
        """``O(X)`` with the inner product of the bundle."""
        return module_of_g_locale(self.glocale, inner=self.inner, name=f"O({self.name})")

    def tau(self, x: int) -> int:
        """``pi_!(x)``."""
        return self.bundle.projection_map.direct_image(x)


def _pairing_witness(pairing_values: Sequence[int], source: FiniteSpace, target: FiniteSpace) -> Optional[Tuple[str, object]]:
    seen: Dict[int, int] = {}
    for k, v in enumerate(pairing_values):
        if v in seen:
            return ("not injective", (seen[v], k))
        seen[v] = k
    missing = next((v for v in range(len(target)) if v not in seen), None)
    if missing is not None:
        return ("not surjective", missing)
    for v, w in target.order_pairs():
        if not source.leq(seen[v], seen[w]):
            return ("inverse not continuous", (v, w))
    return None


def _principal(bundle: GBundle, report: Report, cross_check: bool) -> Optional[PrincipalGBundle]:
    B = bundle
    L, G = B.glocale, B.groupoid
    report.extend(check_bundle(B, cross_check=cross_check))
    if not report.passed:
        return None
    pi = B.projection_locale
    opened = pi.is_open(cross_check=cross_check)
    onto = pi.is_surjective(cross_check=cross_check)
    report.check(
        "principal.open_surjection",
        opened.open and onto,
        opened.witness if not opened.open else (None if onto else "not surjective"),
    )
    if not report.passed:
        return None
    pairs_space, _, _, pairs = L._pairs_space
    position = {p: k for k, p in enumerate(B.kernel_pairs)}
    values = [position[(L.act(g, x), x)] for g, x in pairs]
    witness = _pairing_witness(values, pairs_space, B.kernel)
    report.witness("principal.pairing_iso", witness)
    if witness is not None:
        return None
    pairing = ContinuousMap(pairs_space, B.kernel, values, name="<act,pr2>")
    back = pairing.inverse()
    theta = ContinuousMap(B.kernel, G.arrows, [pairs[back(k)][0] for k in range(len(B.kernel))], name="theta")
    kernel_pairs = B.kernel_pairs
    report.witness(
        "principal.theta_involution",
        next(
            ((x1, x2) for k, (x1, x2) in enumerate(kernel_pairs) if theta(position[(x2, x1)]) != G.i[theta(k)]),
            None,
        ),
    )
    equivariant = None
    for k, (x1, x2) in enumerate(kernel_pairs):
        for g in range(len(G.arrows)):
            if G.d[g] == L.anchor[x1] and theta(position[(L.act(g, x1), x2)]) != G.m[g, theta(k)]:
                equivariant = (g, x1, x2)
                break
        if equivariant:
            break
    report.witness("principal.theta_equivariant", equivariant)
    report.witness("principal.theta_open", theta.open_witness())
    pr2 = ContinuousMap(B.kernel, B.space, [x2 for _, x2 in kernel_pairs], name="pr2")
    square = Square(
        top=LocaleMap.of(theta, name="theta"),
        left=LocaleMap.of(pr2, name="pr2"),
        right=G.d_locale,
        bottom=L.anchor_locale,
    )
    report.witness("principal.theta_pullback", square.pullback_witness())
    orbits = orbit_locale(L, cross_check=cross_check)
    k_map = orbits.factor(pi, name="X/G->M")
    iso = k_map.invert() is not None
    report.check("principal.orbits", iso, None if iso else k_map.point_map.values)
    principal = PrincipalGBundle(B, pairing, theta)
    anchor = L.anchor_map
    if report.passed and anchor.is_open():
        gens = B.space.frame.generators
        witness = None
        for x in gens:
            for y in gens:
                support = G.r_map.direct_image(principal.inner(x, y))
                if support & ~anchor.direct_image(x) or (x == y and support != anchor.direct_image(x)):
                    witness = (x, y)
                    break
            if witness:
                break
        report.witness("principal.inner_support", witness)
    return principal if report.passed else None


def check_principal(bundle: GBundle, cross_check: bool = True) -> Report:
    """Staged principality check; stops at the first failing stage."""
    report = Report(subject=bundle.name or "bundle")
    with report.timed():
        _principal(bundle, report, cross_check)
    return report


def principal_bundle(bundle: GBundle, cross_check: bool = True) -> PrincipalGBundle:
    """``bundle`` with its pairing and ``theta``; raises if it is not principal."""
    report = Report(subject=bundle.name or "bundle")
    principal = _principal(bundle, report, cross_check)
    if principal is None:
        failure = report.first_failure
        raise LawViolation(failure.statement, failure.witness, f"{bundle.name or 'bundle'} is not principal")
    logger.info("%s is a principal %s-bundle over %s", bundle.name, bundle.groupoid.name, bundle.base.name)
    return principal


def orbit_locale(glocale: GLocale, cross_check: bool = True) -> Coequalizer:
    """``X/G``, the coequalizer of the action and the second projection."""
    L = glocale
    _, pr2 = L.pairs_projections
    return coequalizer(L.action_locale, LocaleMap.of(pr2, name="pr2"), cross_check=cross_check, name=f"{L.name}/G")


def quotient_bundle(glocale: GLocale, cross_check: bool = True) -> GBundle:
    """``X`` over its orbit locale."""
    orbits = orbit_locale(glocale, cross_check=cross_check)
    return GBundle(glocale, orbits.space, orbits.projection.values, name=f"{glocale.name} -> X/G")


def disjoint_union_bundle(first: GBundle, second: GBundle, name: str = "") -> GBundle:
    """Side by side, over the disjoint union of the bases."""
    G = first.groupoid
    if second.groupoid is not G:
        raise LawViolation("bundle.groupoid", None, "both bundles must be over the same groupoid")
    n, m = len(first.space), len(first.base)
    space = first.space.disjoint_union(second.space)
    base = first.base.disjoint_union(second.base)
    anchor = list(first.glocale.anchor) + list(second.glocale.anchor)
    action = dict(first.glocale.action)
    action.update({(g, x + n): y + n for (g, x), y in second.glocale.action.items()})
    projection = list(first.projection) + [b + m for b in second.projection]
    name = name or f"{first.name}+{second.name}"
    return GBundle(GLocale(G, space, anchor, action, name=name), base, projection, name=name)
