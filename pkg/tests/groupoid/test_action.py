"""Tests for groupoid actions, equivariant maps and bilocales."""

import pytest

from qlab.errors import LawViolation
from qlab.groupoid import (
    EquivariantMap,
    GLocale,
    canonical_action,
    check_associativity,
    check_bilocale,
    check_equivariant_map,
    check_g_locale,
    check_right_g_locale,
    check_unit_laws,
    cyclic_group,
    left_regular_action,
    tensor_over,
    to_left,
    to_right,
    trivial_action,
    unit_bilocale,
)
from qlab.locale import FiniteSpace


class TestGLocale:
    @pytest.mark.parametrize("make", [canonical_action, left_regular_action], ids=["objects", "arrows"])
    def test_standard_actions_are_g_locales(self, pair_s, make):
        report = check_g_locale(make(pair_s))
        assert report.passed, str(report)
        assert report.holds("glocale.pullback")

    def test_trivial_action(self):
        L = trivial_action(cyclic_group(2), FiniteSpace.sierpinski())
        assert check_g_locale(L).passed
        assert L.orbit(0) == 0b01

    def test_trivial_action_needs_one_object(self, pair2, two_points):
        with pytest.raises(LawViolation, match="single object"):
            trivial_action(pair2, two_points)

    def test_orbit_of_canonical_action_is_everything(self, pair2):
        assert canonical_action(pair2).orbit(0) == 0b11

    def test_translate(self, pair2):
        L = canonical_action(pair2)
        # the arrow (1, 0) carries object 0 to object 1
        assert L.translate(0b0100, 0b01) == 0b10
        assert L.translate(0b0100, 0b10) == 0

    def test_action_with_wrong_anchor(self, pair2):
        # the arrow (1, 0) sends 0 to 0 instead of 1
        L = GLocale(pair2, pair2.objects, [0, 1], {(0, 0): 0, (1, 1): 0, (2, 0): 0, (3, 1): 1})
        report = check_g_locale(L)
        assert report.first_failure.statement == "glocale.anchor"

    def test_missing_action_value(self, pair2):
        L = GLocale(pair2, pair2.objects, [0, 1], {(0, 0): 0})
        report = check_g_locale(L)
        assert report.first_failure.statement == "glocale.total"

    def test_right_action_round_trip(self, pair_s):
        L = left_regular_action(pair_s)
        R = to_right(L)
        assert check_right_g_locale(R).passed
        assert to_left(R).action == L.action


class TestEquivariantMap:
    def test_range_map_is_equivariant(self, pair2):
        f = EquivariantMap(left_regular_action(pair2), canonical_action(pair2), pair2.r, name="r")
        assert check_equivariant_map(f).passed

    def test_domain_map_is_not_equivariant(self, pair2):
        f = EquivariantMap(left_regular_action(pair2), canonical_action(pair2), pair2.d, name="d")
        report = check_equivariant_map(f)
        assert not report.passed
        assert report.first_failure.statement == "glocale.equivariant"


class TestBilocale:
    def test_unit_bilocale(self, pair2):
        assert check_bilocale(unit_bilocale(pair2)).passed

    def test_unit_laws(self, pair_s):
        report = check_unit_laws(unit_bilocale(pair_s))
        assert report.passed, str(report)

    def test_tensor_of_units_is_the_unit(self, pair2):
        U = unit_bilocale(pair2)
        composite = tensor_over(U, U)
        assert len(composite.result.space) == len(pair2.arrows)
        assert check_bilocale(composite.result).passed

    def test_tensor_needs_the_same_middle_groupoid(self, pair2, pair_s):
        with pytest.raises(LawViolation) as excinfo:
            tensor_over(unit_bilocale(pair2), unit_bilocale(pair_s))
        assert excinfo.value.law == "bilocale.groupoid"

    def test_associativity(self, pair2):
        U = unit_bilocale(pair2)
        assert check_associativity(U, U, U).passed
