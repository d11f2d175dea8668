"""Graphviz DOT text for Hasse diagrams and groupoid arrow graphs."""

import logging
from functools import singledispatch
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from qlab.bundle.bundle import GBundle
from qlab.correspondence.principal import PrincipalQLocale
from qlab.groupoid.bilocale import Bilocale
from qlab.groupoid.groupoid import FiniteOpenGroupoid
from qlab.locale.maps import LocaleMap
from qlab.locale.space import FiniteSpace
from qlab.order.lattice import FiniteSupLattice
from qlab.qmodule.module import QModule
from qlab.quantale.quantale import BasedQuantale

logger = logging.getLogger(__name__)


def _quote(label: Hashable) -> str:
    text = str(label).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def _digraph(
    name: str, nodes: Sequence[str], edges: Iterable[Tuple[int, int, str]], rankdir: str = "BT"
) -> str:
    lines = [f"digraph {_quote(name or 'G')} {{", f"\tgraph [rankdir={rankdir}];", "\tnode [shape=circle];"]
    for k, label in enumerate(nodes):
        lines.append(f"\t{k} [label={_quote(label)}];")
    for a, b, attrs in edges:
        lines.append(f"\t{a} -> {b}{f' [{attrs}]' if attrs else ''};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _covers(n: int, less: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(less)
    return sorted(nx.transitive_reduction(graph).edges())


def lattice_dot(lattice: FiniteSupLattice, labels: Optional[Sequence[Hashable]] = None) -> str:
    """Hasse diagram of a lattice, bottom at the bottom.

    Nodes are element indices in canonical order, labelled by the element
    labels unless ``labels`` is given.
    """
    L = lattice
    elements = L.elements
    names = [str(l) for l in labels] if labels is not None else [str(L.label(e)) for e in elements]
    less = [(i, j) for i, a in enumerate(elements) for j, b in enumerate(elements) if i != j and a & ~b == 0]
    edges = [(a, b, "") for a, b in _covers(len(elements), less)]
    logger.debug("hasse diagram of %r: %d covers", L, len(edges))
    return _digraph(L.name, names, edges)


def space_dot(space: FiniteSpace) -> str:
    """Specialization order of a finite space, edges ``x -> y`` for covers ``x < y``."""
    edges = [(a, b, "") for a, b in space.hasse()]
    return _digraph(space.name, [str(l) for l in space.labels], edges)


def groupoid_dot(groupoid: FiniteOpenGroupoid) -> str:
    """The arrow graph: one node per arrow, edges for the specialization
    order of ``G1`` and dashed edges ``g -> g*`` to inverses."""
    G = groupoid
    names = [f"{G.arrows.labels[g]}: {G.objects.labels[G.d[g]]}->{G.objects.labels[G.r[g]]}" for g in range(len(G.arrows))]
    edges = [(a, b, "") for a, b in G.arrows.hasse()]
    edges += [(g, G.i[g], "style=dashed") for g in range(len(G.arrows)) if G.i[g] > g]
    lines = _digraph(G.name, names, edges, rankdir="LR").splitlines()
    identities = " ".join(str(u) for u in G.u)
    lines.insert(3, f"\t{{ rank=same; {identities} }}")
    return "\n".join(lines) + "\n"


def groupoid_object_dot(groupoid: FiniteOpenGroupoid) -> str:
    """Objects as nodes and one edge ``d(g) -> r(g)`` per non-identity arrow."""
    G = groupoid
    units = set(G.u)
    edges = [(G.d[g], G.r[g], f"label={_quote(G.arrows.labels[g])}") for g in range(len(G.arrows)) if g not in units]
    return _digraph(G.name, [str(l) for l in G.objects.labels], edges, rankdir="LR")


@singledispatch
def to_dot(obj) -> str:
    """The natural picture of ``obj``: arrow graphs for groupoids, point
    orders for spaces, bundles and bilocales, Hasse diagrams otherwise."""
    raise TypeError(f"no DOT export for {type(obj).__name__}")


to_dot.register(FiniteSupLattice, lattice_dot)
to_dot.register(FiniteSpace, space_dot)
to_dot.register(FiniteOpenGroupoid, groupoid_dot)


@to_dot.register
def _(quantale: BasedQuantale) -> str:
    return lattice_dot(quantale.lattice)


@to_dot.register
def _(module: QModule) -> str:
    return lattice_dot(module.lattice)


@to_dot.register
def _(qlocale: PrincipalQLocale) -> str:
    return lattice_dot(qlocale.module.lattice)


@to_dot.register
def _(f: LocaleMap) -> str:
    return space_dot(f.point_map.source)


@to_dot.register
def _(bundle: GBundle) -> str:
    return space_dot(bundle.space)


@to_dot.register
def _(bibundle: Bilocale) -> str:
    return space_dot(bibundle.space)
