"""Tests for the bounded model search."""

import pytest

from qlab.errors import EnumerationBoundError
from qlab.groupoid import is_etale, pair_groupoid, validate_groupoid
from qlab.io import build
from qlab.qmodule import check_module_support, check_stably_supported
from qlab.search import groupoid_graph, iter_posets, search


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5)])
def test_posets_up_to_isomorphism(n, count):
    assert len(list(iter_posets(n))) == count


def test_groupoid_graph(sierpinski):
    graph = groupoid_graph(pair_groupoid(sierpinski))
    # four arrows and eight composable pairs
    assert graph.number_of_nodes() == 12


def test_open_not_etale():
    result = search("groupoid", "open-not-etale", 4)
    assert not result.empty
    assert any(len(f.obj.arrows) == 4 and len(f.obj.objects) == 2 for f in result.findings)
    for finding in result.findings:
        assert validate_groupoid(finding.obj).passed
        assert not is_etale(finding.obj)[0]
        rebuilt = build(finding.model)
        assert validate_groupoid(rebuilt).passed
        assert not is_etale(rebuilt)[0]


def test_small_groupoids_are_etale():
    result = search("groupoid", "etale", 2, negate=True)
    assert result.empty
    assert result.candidates > 0


def test_limit_and_order():
    first = search("groupoid", "etale", 3, limit=2)
    second = search("groupoid", "etale", 3, limit=2)
    assert len(first.findings) == 2
    assert [f.model.name for f in first.findings] == [f.model.name for f in second.findings]


def test_groupoid_quantales():
    result = search("quantale", "groupoid-quantale", 4)
    assert not result.empty
    for finding in result.findings:
        assert finding.report.passed
        assert finding.model.kind == "quantale"


def test_unknown_predicate():
    with pytest.raises(ValueError):
        search("groupoid", "compact", 3)


def test_bound():
    with pytest.raises(EnumerationBoundError):
        search("groupoid", "etale", 4, bound=2)


@pytest.mark.slow
def test_supported_modules_that_are_not_stable():
    result = search("module", "supported-not-stable", 6)
    for finding in result.findings:
        assert check_module_support(finding.obj).passed
        assert not check_stably_supported(finding.obj).passed
