"""Tests for finite open groupoids and their constructors."""

import pytest

from qlab.errors import LawViolation
from qlab.groupoid import (
    FiniteOpenGroupoid,
    cech_groupoid,
    cyclic_group,
    disjoint_union,
    group_groupoid,
    is_etale,
    pair_groupoid,
    unit_groupoid,
    validate_groupoid,
)
from qlab.locale import FiniteSpace


class TestConstructors:
    def test_pair_groupoid_shape(self, pair2):
        assert len(pair2.objects) == 2
        assert len(pair2.arrows) == 4
        assert len(pair2.composable) == 8

    def test_pair_arrow_goes_from_second_to_first(self, pair_s):
        # arrow (y, x) has index y * n + x
        g = 1 * 2 + 0
        assert pair_s.d[g] == 0
        assert pair_s.r[g] == 1
        assert pair_s.hom(0, 1) == [g]

    def test_pair_composition(self, pair_s):
        # (1, 0)(0, 0) = (1, 0) and (0, 1)(1, 0) = (0, 0)
        assert pair_s.mul(2, 0) == 2
        assert pair_s.mul(1, 2) == 0

    def test_mul_outside_composable_pairs(self, pair2):
        with pytest.raises(LawViolation) as excinfo:
            pair2.mul(0, 3)
        assert excinfo.value.law == "groupoid.m_total"

    @pytest.mark.parametrize(
        "groupoid",
        [
            pair_groupoid(FiniteSpace.discrete(["a", "b"])),
            pair_groupoid(FiniteSpace.sierpinski()),
            unit_groupoid(FiniteSpace.chain(3)),
            cyclic_group(3),
            cech_groupoid(FiniteSpace.sierpinski(), [0b11, 0b10]),
        ],
        ids=["pair2", "pairS", "unit-C3", "Z3", "cech"],
    )
    def test_constructions_are_open_groupoids(self, groupoid):
        report = validate_groupoid(groupoid)
        assert report.passed, str(report)
        assert report.holds("groupoid.d_open")
        assert report.holds("groupoid.m_open")

    def test_group_groupoid_finds_identity_and_inverses(self):
        table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
        G = group_groupoid(table, name="V4")
        assert G.u == (0,)
        assert G.i == (0, 1, 2, 3)
        assert validate_groupoid(G).passed

    def test_group_table_without_identity(self):
        with pytest.raises(LawViolation, match="no identity"):
            group_groupoid([[0, 0], [0, 0]])

    def test_cech_cover_must_cover(self, sierpinski):
        with pytest.raises(LawViolation) as excinfo:
            cech_groupoid(sierpinski, [0b10])
        assert excinfo.value.law == "cech.cover"

    def test_cech_cover_must_be_open(self, sierpinski):
        with pytest.raises(LawViolation, match="must be open"):
            cech_groupoid(sierpinski, [0b01, 0b10])

    def test_cech_groupoid_of_two_opens(self, sierpinski):
        G = cech_groupoid(sierpinski, [0b11, 0b10])
        # objects: (0, 0), (0, 1), (1, 1); arrows over the overlap {1} connect the copies
        assert len(G.objects) == 3
        assert len(G.arrows) == 5

    def test_disjoint_union(self, pair2, unit_s):
        G = disjoint_union(pair2, unit_s)
        assert len(G.objects) == 4
        assert len(G.arrows) == 6
        assert validate_groupoid(G).passed


class TestValidation:
    def test_wrong_length_structure_map(self, two_points):
        with pytest.raises(LawViolation) as excinfo:
            FiniteOpenGroupoid(two_points, two_points, [0], [0, 1], [0, 1], [0, 1], {})
        assert excinfo.value.law == "groupoid.d"

    def test_inverse_with_wrong_domain(self, two_points):
        G = FiniteOpenGroupoid(two_points, two_points, [0, 1], [0, 1], [0, 1], [1, 0], {(0, 0): 0, (1, 1): 1})
        report = validate_groupoid(G)
        assert not report.passed
        assert report.first_failure.statement == "groupoid.d_i"
        assert report.first_failure.witness == 0

    def test_missing_product(self, two_points):
        G = FiniteOpenGroupoid(two_points, two_points, [0, 1], [0, 1], [0, 1], [0, 1], {(0, 0): 0})
        report = validate_groupoid(G)
        assert report.first_failure.statement == "groupoid.m_total"
        assert report.first_failure.witness == (1, 1)


class TestEtale:
    def test_discrete_pair_groupoid_is_etale(self, pair2):
        assert is_etale(pair2) == (True, None)

    def test_unit_groupoid_is_etale(self, unit_s):
        assert is_etale(unit_s)[0]

    def test_pair_of_sierpinski_is_open_but_not_etale(self, pair_s):
        etale, witness = is_etale(pair_s)
        assert not etale
        assert witness is not None
        assert validate_groupoid(pair_s).passed
