"""Tests for the per-kind validators."""

import pytest

from qlab.catalog import get_entry
from qlab.errors import LawViolation
from qlab.groupoid import FiniteOpenGroupoid
from qlab.locale import FiniteSpace
from qlab.order import chain, from_sets
from qlab.validate import validate, validate_model, validate_or_raise


def test_etale_groupoid(pair2):
    report = validate(pair2)
    assert report.passed
    assert report.notes["etale"] is True
    assert report.holds("quantale.roundtrip")


def test_open_groupoid_that_is_not_etale(pair_s):
    report = validate(pair_s)
    assert report.passed
    assert report.notes["etale"] is False
    assert "etale witness" in report.notes


def test_frame():
    report = validate(chain(3))
    assert report.holds("frame.distributive")
    assert report.holds("frame.spatial")
    assert report.notes["join-irreducibles"] == 2


def test_non_distributive_lattice_is_a_lattice():
    report = validate(from_sets([0, 1, 2, 4, 7], 3))
    assert report.passed
    assert report.notes["distributive"] is False


def test_locale_map(catalog_model):
    report = validate(catalog_model("point-sierpinski", kind="locale-map"))
    assert report.passed
    assert "open" in report.notes


def test_validate_or_raise():
    point = FiniteSpace.point()
    arrows = FiniteSpace.discrete(["e", "s"])
    m = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
    broken = FiniteOpenGroupoid(point, arrows, [0, 0], [0, 0], [0], [0, 0], m, name="broken")
    with pytest.raises(LawViolation) as exc:
        validate_or_raise(broken)
    assert exc.value.law == "groupoid.i_involution"


def test_structural_failures_become_checks():
    report = validate_model(get_entry("m3", kind="frame").model)
    assert report.first_failure.statement == "frame.distributive"
    assert report.subject == "m3-frame"


def test_unknown_object():
    with pytest.raises(TypeError):
        validate(object())
