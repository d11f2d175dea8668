"""Modules over groupoid quantales.

A :class:`QModule` is a frame ``X`` with an action ``act(q, x)`` of the
quantale and a restriction ``base_act(a, x)`` by the base frame. It may
carry an inner product ``X x X -> Q`` and a support ``X -> A``.
"""

import logging
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from qlab import settings
from qlab.errors import EnumerationBoundError, HypothesisError, LawViolation
from qlab.order.lattice import FiniteFrame
from qlab.order.maps import MonotoneMap, adjunction_witness, join_preservation_witness
from qlab.order.tensor import bilinearity_witness
from qlab.quantale.quantale import BasedQuantale, Op1, Op2, _memo1, _memo2
from qlab.quantale.tensor import RelativeTensor, relative_tensor
from qlab.report import Report

logger = logging.getLogger(__name__)


def _first(items):
    for item in items:
        return item
    return None


class QModule:
    """A left module over a based quantale.

    Args:
        quantale: The acting quantale ``Q`` over ``A``.
        lattice: The frame ``X``.
        act: ``q.x``.
        base_act: The restriction of ``x`` to ``a``.
        inner: Optional inner product.
        support: Optional support ``X -> A``.
        name: Display name.
    """

    def __init__(
        self,
        quantale: BasedQuantale,
        lattice: FiniteFrame,
        act: Op2,
        base_act: Op2,
        inner: Optional[Op2] = None,
        support: Optional[Op1] = None,
        name: str = "",
    ):
        self.quantale = quantale
        self.lattice = lattice
        self.name = name
        self._ops = dict(act=act, base_act=base_act, inner=inner, support=support)
        self.act = _memo2(act)
        self.base_act = _memo2(base_act)
        self._inner = None if inner is None else _memo2(inner)
        self._support = None if support is None else _memo1(support)

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<QModule{name} |X|={len(self.lattice)} over {self.quantale!r}>"

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def has_inner(self) -> bool:
        return self._inner is not None

    @property
    def has_support(self) -> bool:
        return self._support is not None

    def inner(self, x: int, y: int) -> int:
        if self._inner is None:
            raise HypothesisError("module.hilbert", f"{self!r} has no inner product")
        return self._inner(x, y)

    def spp(self, x: int) -> int:
        if self._support is None:
            raise HypothesisError("module.support", f"{self!r} has no support")
        return self._support(x)

    @cached_property
    def support_map(self) -> MonotoneMap:
        return MonotoneMap(self.lattice, self.quantale.base, self.spp, name="spp_X")

    @cached_property
    def anchor_inverse(self) -> MonotoneMap:
        """``a -> base_act(a, 1)``."""
        return MonotoneMap(self.quantale.base, self.lattice, lambda a: self.base_act(a, self.top), name="p*")

    def replace(self, name: str = "", **ops) -> "QModule":
        merged = {**self._ops, **ops}
        return QModule(self.quantale, self.lattice, name=name or self.name, **merged)

    # -- the action through the relative tensor ------------------------------------

    @cached_property
    def tensor(self) -> RelativeTensor:
        """``Q (x)_A X``, identifying ``right(q, a) (x) x`` with ``q (x) base_act(a, x)``."""
        Q = self.quantale
        return relative_tensor(
            Q.lattice,
            self.lattice,
            Q.base,
            lambda a: Q.right(Q.top, a),
            lambda a: self.base_act(a, self.top),
            name="QxX",
        )

    @cached_property
    def alpha(self) -> MonotoneMap:
        """The action as a map out of ``Q (x)_A X``."""
        return self.tensor.lift(self.act, self.lattice, name="alpha")

    @cached_property
    def alpha_star(self) -> MonotoneMap:
        """Right adjoint of :attr:`alpha`: ``x -> V{q (x) y : q.y <= x}``."""
        return self.tensor.right_adjoint_of(self.act, self.lattice, name="alpha_*")

    def tables(self) -> Dict[str, object]:
        Q, X, A = self.quantale.lattice, self.lattice, self.quantale.base
        out: Dict[str, object] = {
            "act": [[X.index(self.act(q, x)) for x in X.elements] for q in Q.elements],
            "base_act": [[X.index(self.base_act(a, x)) for x in X.elements] for a in A.elements],
        }
        if self.has_inner:
            out["inner"] = [[Q.index(self.inner(x, y)) for y in X.elements] for x in X.elements]
        if self.has_support:
            out["support"] = [A.index(self.spp(x)) for x in X.elements]
        return out

    @classmethod
    def from_tables(
        cls,
        quantale: BasedQuantale,
        lattice: FiniteFrame,
        act: Sequence[Sequence[int]],
        base_act: Sequence[Sequence[int]],
        inner: Optional[Sequence[Sequence[int]]] = None,
        support: Optional[Sequence[int]] = None,
        name: str = "",
    ) -> "QModule":
        q, x, a = quantale.lattice.elements, lattice.elements, quantale.base.elements
        try:
            act_t = {(q[i], x[j]): x[v] for i, row in enumerate(act) for j, v in enumerate(row)}
            base_t = {(a[i], x[j]): x[v] for i, row in enumerate(base_act) for j, v in enumerate(row)}
            inner_t = None if inner is None else {(x[i], x[j]): q[v] for i, row in enumerate(inner) for j, v in enumerate(row)}
            spp_t = None if support is None else {x[i]: a[v] for i, v in enumerate(support)}
        except IndexError as exc:
            raise LawViolation("module.tables", None, f"table index out of range: {exc}")
        if len(act_t) != len(q) * len(x) or len(base_t) != len(a) * len(x):
            raise LawViolation("module.tables", None, "action tables are not total")
        return cls(quantale, lattice, act_t, base_t, inner_t, spp_t, name=name)


# -- module laws ------------------------------------------------------------------------


def check_module(module: QModule) -> Report:
    """Module laws and the compatibility of the two actions."""
    M = module
    Q = M.quantale
    X, L, A = M.lattice, Q.lattice, Q.base
    gx, gq, ga = X.generators, L.generators, A.generators
    report = Report(subject=M.name or "module")
    with report.timed():
        witness = bilinearity_witness(M.act, L, X, X)
        if witness is None:
            witness = bilinearity_witness(M.base_act, A, X, X)
        report.witness("module.join_preserving", witness)
        if not report.passed:
            return report
        report.witness(
            "module.assoc",
            _first((p, q, x) for p in gq for q in gq for x in gx if M.act(Q.mul(p, q), x) != M.act(p, M.act(q, x))),
        )
        base = _first(("unit", x) for x in gx if M.base_act(A.top, x) != x)
        if base is None:
            base = _first(
                ("assoc", a, b, x)
                for a in ga
                for b in ga
                for x in gx
                if M.base_act(a, M.base_act(b, x)) != M.base_act(a & b, x)
            )
        report.witness("module.base_action", base)
        report.witness(
            "module.modgq1",
            _first((a, q, x) for a in ga for q in gq for x in gx if M.act(Q.left(a, q), x) != M.base_act(a, M.act(q, x))),
        )
        report.witness(
            "module.modgq2",
            _first((q, a, x) for a in ga for q in gq for x in gx if M.act(Q.right(q, a), x) != M.act(q, M.base_act(a, x))),
        )
        report.witness(
            "module.modgq3",
            _first((a, x, y) for a in ga for x in gx for y in gx if M.base_act(a, x & y) != M.base_act(a, x) & y),
        )
        report.witness(
            "module.base_meet",
            _first((a, x) for a in ga for x in X.elements if M.base_act(a, x) != M.base_act(a, M.top) & x),
        )
    return report


def check_inner(module: QModule) -> Report:
    """The pre-Hilbert laws of the inner product, and ``<x,y>q = <x, q*.y>``."""
    M = module
    Q = M.quantale
    X, L, A = M.lattice, Q.lattice, Q.base
    gx, gq = X.generators, L.generators
    report = Report(subject=M.name or "module")
    with report.timed():
        linear = None
        for y in X.elements:
            linear = join_preservation_witness(MonotoneMap(X, L, lambda x: M.inner(x, y)))
            if linear is not None:
                linear = (y, linear)
                break
        report.witness("module.hilbertmod3", linear)
        report.witness(
            "module.hilbertmod4",
            _first((x, y) for x in X.elements for y in X.elements if M.inner(x, y) != Q.star(M.inner(y, x))),
        )
        if not report.passed:
            return report
        report.witness(
            "module.hilbertmod1",
            _first((q, x, y) for q in gq for x in gx for y in gx if M.inner(M.act(q, x), y) != Q.mul(q, M.inner(x, y))),
        )
        report.witness(
            "module.hilbertmod2",
            _first(
                (a, x)
                for a in A.generators
                for x in gx
                if Q.left(a, M.inner(x, M.top)) != M.inner(M.base_act(a, x), M.top)
            ),
        )
        report.witness(
            "module.hilbertmod5",
            _first(
                (x, y, q)
                for x in gx
                for y in gx
                for q in gq
                if Q.mul(M.inner(x, y), q) != M.inner(x, M.act(Q.star(q), y))
            ),
        )
    return report


def check_module_support(module: QModule) -> Report:
    """The support laws and the identity ``x = <x,x>.1 & x``."""
    M = module
    X = M.lattice
    report = Report(subject=M.name or "module")
    with report.timed():
        monotone = M.support_map.monotonicity_witness()
        report.witness("map.monotone", monotone, detail="support")
        report.check("module.sppmod1", M.spp(M.top) == M.quantale.base.top, M.top)
        report.witness(
            "module.sppmod2",
            _first(x for x in X.elements if M.base_act(M.spp(x), M.top) & ~M.act(M.inner(x, x), M.top)),
        )
        report.witness("module.sppmod4", _first(x for x in X.elements if M.base_act(M.spp(x), x) != x))
        report.witness("module.sppmod5", _first(x for x in X.elements if M.act(M.inner(x, x), M.top) & x != x))
    return report


def _stability(module: QModule) -> Tuple[Optional[tuple], Optional[tuple], Optional[tuple]]:
    M = module
    Q = M.quantale
    X, L = M.lattice, Q.lattice
    formula = _first(
        (q, x) for q in L.elements for x in X.elements if M.spp(M.act(q, x)) != Q.spp(Q.right(q, M.spp(x)))
    )
    product = _first((q, x) for q in L.elements for x in X.elements if M.spp(M.act(q, x)) & ~Q.spp(q))
    top = _first((q,) for q in L.elements if M.spp(M.act(q, M.top)) & ~Q.spp(q))
    return formula, product, top


def check_stably_supported(module: QModule) -> Report:
    """Module, inner product and support laws, then ``spp(q.x) <= spp(q)``."""
    M = module
    report = Report(subject=M.name or "module")
    report.extend(check_module(M))
    report.extend(check_inner(M))
    report.extend(check_module_support(M))
    if not report.passed:
        return report
    with report.timed():
        _, product, _ = _stability(M)
        report.witness("module.stable.product", product)
    return report


def check_stability_equivalences(module: QModule) -> Report:
    """The three formulations of stability, evaluated independently."""
    M = module
    report = Report(subject=M.name or "module")
    with report.timed():
        formula, product, top = _stability(M)
        report.witness("module.stable.formula", formula)
        report.witness("module.stable.product", product)
        report.witness("module.stable.top", top)
        outcomes = (formula is None, product is None, top is None)
        report.check("module.stable.equivalent", len(set(outcomes)) == 1, outcomes)
    return report


def check_theorem_support_formulas(module: QModule) -> Report:
    """Consequences of stability: support formulas, equivariance, the corollary,
    the adjunction with ``a -> base_act(a, 1)`` and uniqueness of the support."""
    M = module
    Q = M.quantale
    X, L, A = M.lattice, Q.lattice, Q.base
    stable = check_stably_supported(M)
    if not stable.passed:
        raise HypothesisError("module.stable.product", f"{M!r} is not stably supported: {stable.first_failure.line()}")
    report = Report(subject=M.name or "module")
    with report.timed():
        report.witness(
            "module.support_formula",
            _first(
                x
                for x in X.elements
                if not M.spp(x) == Q.spp(M.inner(x, x)) == Q.spp(M.inner(x, M.top))
            ),
        )
        report.witness(
            "module.support_equivariant",
            _first((a, x) for a in A.elements for x in X.elements if M.spp(M.base_act(a, x)) != a & M.spp(x)),
        )
        report.witness(
            "module.support_corollary",
            _first(
                (x, q)
                for x in X.elements
                for q in L.generators
                if Q.left(M.spp(x), q) != Q.mul(M.inner(x, x), Q.top) & q
            ),
        )
        adjunction = adjunction_witness(M.support_map, M.anchor_inverse)
        if adjunction is None:
            joins = join_preservation_witness(M.support_map)
            adjunction = None if joins is None else ("joins", joins)
        report.witness("module.support_adjunction", adjunction)
        unique = None
        for x in X.elements:
            xx1 = M.act(M.inner(x, x), M.top)
            for b in A.elements:
                if M.base_act(b, M.top) & ~xx1 == 0 and M.base_act(b, x) == x and b != M.spp(x):
                    unique = (x, b)
                    break
            if unique:
                break
        report.witness("module.support_unique", unique)
    return report


def find_supports(module: QModule, bound: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Every monotone ``X -> A`` satisfying the support laws, as tuples in element order.

    The laws constrain each value separately, so candidates are computed per
    element and combined by a monotone backtracking search.
    """
    M = module
    X, A = M.lattice, M.quantale.base
    limit = settings.resolve_bound(bound)
    elems = X.elements
    candidates: List[List[int]] = []
    for x in elems:
        xx1 = M.act(M.inner(x, x), M.top)
        options = [a for a in A.elements if M.base_act(a, x) == x and M.base_act(a, M.top) & ~xx1 == 0]
        if x == M.top:
            options = [a for a in options if a == A.top]
        candidates.append(options)
    below = [[k for k in range(i) if elems[k] & ~elems[i] == 0] for i in range(len(elems))]
    found: List[Tuple[int, ...]] = []
    chosen: List[int] = []
    visited = 0

    def search(i: int) -> None:
        nonlocal visited
        if i == len(elems):
            found.append(tuple(chosen))
            return
        for a in candidates[i]:
            visited += 1
            if visited > limit:
                raise EnumerationBoundError(f"supports of {M!r}", visited, limit)
            if all(chosen[k] & ~a == 0 for k in below[i]):
                chosen.append(a)
                search(i + 1)
                chosen.pop()

    search(0)
    if len(found) > 1:
        logger.warning("%r has %d supports", M, len(found))
    return found


def with_support(module: QModule, values: Sequence[int], name: str = "") -> QModule:
    """``module`` with the support given by ``values`` in element order."""
    table = dict(zip(module.lattice.elements, values))
    return module.replace(name=name, support=table)


# -- maps of modules ---------------------------------------------------------------------


def homomorphism_witness(
    f: Callable[[int], int], source: QModule, target: QModule
) -> Optional[Tuple[str, int, int]]:
    """Where ``f: source.lattice -> target.lattice`` fails to commute with both actions.

    ``f`` must preserve joins; actions are compared on generators.
    """
    Q = source.quantale
    for x in source.lattice.generators:
        for q in Q.lattice.generators:
            if f(source.act(q, x)) != target.act(q, f(x)):
                return ("act", q, x)
        for a in Q.base.generators:
            if f(source.base_act(a, x)) != target.base_act(a, f(x)):
                return ("base_act", a, x)
    return None


def check_q_locale_morphism(f: MonotoneMap, source: QModule, target: QModule) -> Report:
    """``f`` is a frame homomorphism, a module homomorphism and preserves supports."""
    report = Report(subject=f.name or "morphism")
    with report.timed():
        witness = None
        if f(source.top) != target.top:
            witness = ("top", source.top)
        if witness is None:
            joins = join_preservation_witness(f)
            witness = None if joins is None else ("joins", joins)
        if witness is None:
            witness = _first(
                ("meet", x, y)
                for x in source.lattice.generators
                for y in source.lattice.generators
                if f(x & y) != f(x) & f(y)
            )
        if witness is None:
            witness = homomorphism_witness(f, source, target)
        if witness is None:
            witness = _first(("support", x) for x in source.lattice.elements if target.spp(f(x)) != source.spp(x))
        report.witness("qlocale.morphism", witness)
    return report
