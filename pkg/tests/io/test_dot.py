"""Tests for the Graphviz export."""

import re

import pytest

from qlab.io import groupoid_dot, groupoid_object_dot, lattice_dot, space_dot, to_dot
from qlab.order import chain

NODE = re.compile(r"^\t\d+ \[label=", re.MULTILINE)


def nodes(text):
    return len(NODE.findall(text))


def test_groupoid_arrow_graph(pair2):
    text = groupoid_dot(pair2)
    assert text.startswith('digraph "Pair(2)" {')
    assert nodes(text) == 4
    assert "\t{ rank=same; 0 3 }" in text
    assert "\t1 -> 2 [style=dashed];" in text


def test_groupoid_objects(pair2):
    text = groupoid_object_dot(pair2)
    assert nodes(text) == 2
    assert text.count(" -> ") == 2


def test_quantale_hasse_diagram(quantale_pair_s):
    text = to_dot(quantale_pair_s)
    assert text == lattice_dot(quantale_pair_s.lattice)
    assert nodes(text) == 6


def test_space(sierpinski):
    text = space_dot(sierpinski)
    assert "\t0 -> 1;" in text
    assert to_dot(sierpinski) == text


def test_labels_are_quoted():
    text = lattice_dot(chain(2), labels=['a"b', "c"])
    assert '[label="a\\"b"]' in text


def test_unsupported_object():
    with pytest.raises(TypeError):
        to_dot(object())
