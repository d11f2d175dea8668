"""Bounded search for small models satisfying (or violating) a predicate.

Candidates are produced family by family from posets of at most a few
points, validated, tested against the predicate and deduplicated up to
isomorphism. Output order depends only on the arguments.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import networkx as nx

from qlab import settings
from qlab.bundle.bundle import principal_bundle, quotient_bundle
from qlab.errors import EnumerationBoundError, LawViolation
from qlab.groupoid.action import left_regular_action
from qlab.groupoid.groupoid import (
    FiniteOpenGroupoid,
    cech_groupoid,
    cyclic_group,
    disjoint_union,
    is_etale,
    pair_groupoid,
    unit_groupoid,
    validate_groupoid,
)
from qlab.io.codec import groupoid_model, model_file, module_model, quantale_model
from qlab.io.schema import ModelFile
from qlab.locale.space import FiniteSpace
from qlab.order.lattice import FiniteFrame, canonical_form
from qlab.order.maps import join_preservation_witness
from qlab.qmodule.module import QModule, check_module_support, check_stably_supported, find_supports, with_support
from qlab.quantale.groupoid_quantale import quantale_of_groupoid
from qlab.quantale.quantale import BasedQuantale, is_groupoid_quantale, is_inverse_quantal_frame
from qlab.report import Report

logger = logging.getLogger(__name__)


@dataclass
class Finding:
    """A model found by :func:`search`, with the report that decided it."""

    kind: str
    obj: object
    report: Report
    model: ModelFile


@dataclass
class SearchResult:
    kind: str
    predicate: str
    negate: bool
    max_size: int
    candidates: int = 0
    findings: List[Finding] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        """No candidate up to ``max_size`` satisfied the predicate."""
        return not self.findings


# -- posets -----------------------------------------------------------------------------


def iter_posets(n: int, bound: Optional[int] = None) -> Iterator[FiniteSpace]:
    """Finite T0 spaces on ``n`` points, one per isomorphism class.

    Every order has a linear extension, so only relations ``x < y`` with
    ``x < y`` as integers are tried: ``2**(n*(n-1)/2)`` candidates.
    """
    limit = settings.resolve_bound(bound)
    pairs = list(combinations(range(n), 2))
    total = 1 << len(pairs)
    if total > limit:
        raise EnumerationBoundError(f"orders on {n} points", total, limit)
    seen = set()
    labels = [str(k) for k in range(n)]
    for mask in range(total):
        relation = [pair for k, pair in enumerate(pairs) if mask >> k & 1]
        space = FiniteSpace.from_order(labels, relation, name=f"P{n}.{len(seen)}")
        form = canonical_form(space.frame, bound=bound)
        if form in seen:
            continue
        seen.add(form)
        yield space


def _open_covers(space: FiniteSpace) -> Iterator[Tuple[int, int]]:
    """Covers by two distinct proper opens."""
    opens = [u for u in space.frame.elements if u not in (0, space.full)]
    for u, v in combinations(opens, 2):
        if u | v == space.full:
            yield u, v


# -- groupoids ------------------------------------------------------------------------------


def groupoid_graph(groupoid: FiniteOpenGroupoid) -> nx.DiGraph:
    """A labelled graph whose isomorphisms are exactly the groupoid isomorphisms.

    Nodes are arrows, tagged as units or not, plus one node per composable
    pair; edges record the order of arrows, inverses and the two factors
    and product of each composable pair.
    """
    G = groupoid
    units = set(G.u)
    graph = nx.DiGraph()
    for g in range(len(G.arrows)):
        graph.add_node(("a", g), tag="unit" if g in units else "arrow")
    for a, b in G.arrows.order_pairs():
        graph.add_edge(("a", a), ("a", b), tag="le")
    for g in range(len(G.arrows)):
        if G.i[g] != g:
            graph.add_edge(("a", g), ("a", G.i[g]), tag="inv")
    for k, ((g, h), gh) in enumerate(sorted(G.m.items())):
        node = ("m", k)
        graph.add_node(node, tag="pair")
        graph.add_edge(node, ("a", g), tag="left")
        graph.add_edge(node, ("a", h), tag="right")
        graph.add_edge(node, ("a", gh), tag="product")
    return graph


class _Dedup:
    """Isomorphism classes bucketed by Weisfeiler-Lehman hash."""

    def __init__(self):
        self.buckets: Dict[str, List[nx.DiGraph]] = {}

    def key(self, graph: nx.DiGraph) -> str:
        return nx.weisfeiler_lehman_graph_hash(graph, node_attr="tag", edge_attr="tag")

    def add(self, graph: nx.DiGraph) -> Optional[str]:
        """The hash of ``graph`` if it is new, ``None`` if an isomorph was seen."""
        key = self.key(graph)
        bucket = self.buckets.setdefault(key, [])
        match = nx.algorithms.isomorphism.categorical_node_match("tag", None)
        edge_match = nx.algorithms.isomorphism.categorical_edge_match("tag", None)
        if any(nx.is_isomorphic(graph, other, node_match=match, edge_match=edge_match) for other in bucket):
            return None
        bucket.append(graph)
        return key


def iter_groupoids(max_arrows: int, bound: Optional[int] = None) -> Iterator[FiniteOpenGroupoid]:
    """Unit, pair and Cech groupoids of small posets, cyclic groups, and
    disjoint unions of two of these, with at most ``max_arrows`` arrows."""
    basic: List[FiniteOpenGroupoid] = []
    for n in range(1, max_arrows + 1):
        for space in iter_posets(n, bound=bound):
            basic.append(unit_groupoid(space))
            if n * n <= max_arrows:
                basic.append(pair_groupoid(space, name=f"Pair({space.name})"))
            for u, v in _open_covers(space):
                G = cech_groupoid(space, [u, v], name=f"Cech({space.name};{u:#x},{v:#x})")
                if len(G.arrows) <= max_arrows:
                    basic.append(G)
    basic.extend(cyclic_group(n) for n in range(2, max_arrows + 1))
    yield from basic
    for first, second in combinations(basic, 2):
        if len(first.arrows) + len(second.arrows) <= max_arrows:
            yield disjoint_union(first, second)


# -- predicates -----------------------------------------------------------------------------


def _open_not_etale(G: FiniteOpenGroupoid) -> Tuple[bool, Report]:
    report = validate_groupoid(G)
    if not report.passed:
        return False, report
    etale, _ = is_etale(G)
    report.note("etale", etale)
    return not etale, report


def _etale(G: FiniteOpenGroupoid) -> Tuple[bool, Report]:
    report = validate_groupoid(G)
    etale = report.passed and is_etale(G)[0]
    report.note("etale", etale)
    return etale, report


def _groupoid_quantale(Q: BasedQuantale) -> Tuple[bool, Report]:
    report = is_groupoid_quantale(Q)
    return report.passed, report


def _inverse_quantal_frame(Q: BasedQuantale) -> Tuple[bool, Report]:
    report = is_inverse_quantal_frame(Q)
    return report.passed, report


def _supported_not_stable(M: QModule) -> Tuple[bool, Report]:
    report = check_module_support(M)
    if not report.passed:
        return False, report
    stable = check_stably_supported(M)
    report.extend(stable)
    if not stable.passed:
        joins = join_preservation_witness(M.support_map)
        report.note("module.support_joins", joins is None)
        if joins is not None:
            logger.warning("%r is supported but its support does not preserve the join of %s", M, joins)
    return not stable.passed, report


def _stably_supported(M: QModule) -> Tuple[bool, Report]:
    report = check_stably_supported(M)
    return report.passed, report


PREDICATES: Dict[str, Dict[str, Callable[[object], Tuple[bool, Report]]]] = {
    "groupoid": {"open-not-etale": _open_not_etale, "etale": _etale},
    "quantale": {"groupoid-quantale": _groupoid_quantale, "inverse-quantal-frame": _inverse_quantal_frame},
    "module": {"supported-not-stable": _supported_not_stable, "stably-supported": _stably_supported},
}


# -- candidates -----------------------------------------------------------------------------


def _meet_quantale(frame: FiniteFrame) -> BasedQuantale:
    """``frame`` with meet as multiplication over the frame of a point."""
    base = FiniteSpace.point().frame
    top = frame.top
    return BasedQuantale(
        base,
        frame,
        mul=lambda x, y: x & y,
        star=lambda x: x,
        left=lambda a, q: q if a else 0,
        right=lambda q, a: q if a else 0,
        support=lambda x: base.top if x else 0,
        reflexive=lambda x: base.top if x == top else 0,
        name=f"({frame.name}, &) over 1",
    )


def _groupoid_candidates(max_arrows: int, bound: Optional[int]) -> Iterator[Tuple[str, FiniteOpenGroupoid]]:
    dedup = _Dedup()
    for G in iter_groupoids(max_arrows, bound=bound):
        key = dedup.add(groupoid_graph(G))
        if key is not None:
            yield key, G


def _quantale_candidates(max_size: int, bound: Optional[int]) -> Iterator[Tuple[str, BasedQuantale]]:
    # a lattice of opens has more elements than points
    for key, G in _groupoid_candidates(max_size - 1, bound):
        if len(G.arrows.frame) <= max_size:
            yield f"O:{key}", quantale_of_groupoid(G, check=False)
    seen = set()
    for n in range(1, max_size):
        for space in iter_posets(n, bound=bound):
            frame = space.frame
            if len(frame) > max_size:
                continue
            form = canonical_form(frame, bound=bound)
            if form not in seen:
                seen.add(form)
                yield f"meet:{form}", _meet_quantale(frame)


def _module_candidates(max_size: int, bound: Optional[int]) -> Iterator[Tuple[str, QModule]]:
    for key, G in _groupoid_candidates(max_size - 1, bound):
        if len(G.arrows.frame) > max_size:
            continue
        try:
            principal = principal_bundle(quotient_bundle(left_regular_action(G)))
        except LawViolation as exc:
            logger.debug("left-regular bundle of %r is not principal: %s", G, exc)
            continue
        module = principal.module
        for k, values in enumerate(find_supports(module, bound=bound)):
            yield f"{key}:{values}", with_support(module, values, name=f"{module.name}#{k}")


_CANDIDATES = {"groupoid": _groupoid_candidates, "quantale": _quantale_candidates, "module": _module_candidates}
_MODELS = {"groupoid": groupoid_model, "quantale": quantale_model, "module": module_model}


def _size(kind: str, obj) -> Tuple[int, ...]:
    if kind == "groupoid":
        return (len(obj.arrows), len(obj.objects))
    if kind == "quantale":
        return (len(obj.lattice), len(obj.base))
    return (len(obj.lattice), len(obj.quantale.lattice))


def search(
    kind: str,
    predicate: str,
    max_size: int,
    negate: bool = False,
    limit: Optional[int] = None,
    bound: Optional[int] = None,
) -> SearchResult:
    """Every candidate of ``kind`` up to ``max_size`` for which ``predicate``
    holds (fails, with ``negate``), at most ``limit`` of them.

    Sizes count arrows for groupoids and lattice elements for quantales and
    modules. Raises :class:`~qlab.errors.EnumerationBoundError` when the
    candidate space exceeds ``bound``.
    """
    try:
        test = PREDICATES[kind][predicate]
    except KeyError:
        known = ", ".join(f"{k}:{p}" for k, ps in PREDICATES.items() for p in ps)
        raise ValueError(f"unknown predicate {kind}:{predicate} (known: {known})")
    result = SearchResult(kind=kind, predicate=predicate, negate=negate, max_size=max_size)
    hits = []
    for key, obj in _CANDIDATES[kind](max_size, bound):
        result.candidates += 1
        holds, report = test(obj)
        if holds != negate:
            hits.append((_size(kind, obj), key, obj, report))
    hits.sort(key=lambda hit: (hit[0], hit[1]))
    description = f"{kind} {'violating' if negate else 'satisfying'} {predicate}"
    for _, _, obj, report in hits[:limit]:
        model = model_file(_MODELS[kind](obj), name=getattr(obj, "name", ""), description=description)
        result.findings.append(Finding(kind=kind, obj=obj, report=report, model=model))
    logger.info(
        "search %s %s%s up to %d: %d of %d candidates",
        kind,
        "not " if negate else "",
        predicate,
        max_size,
        len(result.findings),
        result.candidates,
    )
    return result
