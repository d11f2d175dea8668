"""Tests for based quantales and the quantale of opens of a groupoid."""

import pytest

from qlab.errors import HypothesisError, LawViolation
from qlab.locale import FiniteSpace
from qlab.quantale import (
    BasedQuantale,
    check_based_quantale,
    check_equivariant,
    check_groupoid_roundtrip,
    check_inverse_laws,
    check_multiplicative,
    check_quantal_frame,
    check_quantale_roundtrip,
    check_stable,
    check_support,
    check_unit_laws,
    groupoid_of_quantale,
    is_groupoid_quantale,
    is_inverse_quantal_frame,
    quantale_iso_witness,
    quantale_of_groupoid,
    relative_tensor,
    sided_elements,
    unit_groupoid_quantale,
)


class TestQuantaleOfPairTwo:
    def test_size(self, quantale_pair2):
        assert len(quantale_pair2.lattice) == 16
        assert len(quantale_pair2.base) == 4

    def test_unit_is_the_identity_arrows(self, quantale_pair2):
        # identity arrows (0, 0) and (1, 1) have indices 0 and 3
        assert quantale_pair2.unit == 0b1001

    def test_partial_units_cover(self, quantale_pair2):
        Q = quantale_pair2
        assert Q.lattice.join_all(Q.partial_units()) == Q.top
        assert is_inverse_quantal_frame(Q).passed

    def test_involution_swaps_arrows(self, quantale_pair2):
        # (1, 0) and (0, 1) are each other's inverses
        assert quantale_pair2.star(0b0100) == 0b0010

    def test_multiplication_composes_arrows(self, quantale_pair2):
        assert quantale_pair2.mul(0b0100, 0b0010) == 0b1000
        assert quantale_pair2.mul(0b0100, 0b0100) == 0

    def test_stable(self, quantale_pair2):
        assert check_stable(quantale_pair2).passed


class TestQuantaleOfPairSierpinski:
    def test_size(self, quantale_pair_s):
        assert len(quantale_pair_s.lattice) == 6

    def test_not_unital(self, quantale_pair_s):
        assert quantale_pair_s.unit is None
        report = is_inverse_quantal_frame(quantale_pair_s)
        assert report.first_failure.statement == "quantale.unital"

    def test_partial_units_need_a_unit(self, quantale_pair_s):
        with pytest.raises(HypothesisError) as excinfo:
            quantale_pair_s.partial_units()
        assert excinfo.value.hypothesis == "quantale.unital"

    def test_is_groupoid_quantale(self, quantale_pair_s):
        report = is_groupoid_quantale(quantale_pair_s)
        assert report.passed, str(report)
        for statement in ("quantale.support", "quantale.reflexive", "quantale.multiplicative", "quantale.unit_laws"):
            assert report.holds(statement)

    def test_right_sided_elements_match_the_base(self, quantale_pair_s):
        right, left, _ = sided_elements(quantale_pair_s)
        assert len(right) == len(quantale_pair_s.base)
        assert len(left) == len(quantale_pair_s.base)


class TestRoundTrip:
    def test_groupoid_round_trip(self, pair_s):
        report = check_groupoid_roundtrip(pair_s)
        assert report.passed, str(report)
        assert report.holds("quantale.roundtrip")

    def test_quantale_round_trip(self, quantale_pair2):
        report = check_quantale_roundtrip(quantale_pair2)
        assert report.passed, str(report)
        assert report.holds("quantale.iso")

    def test_groupoid_of_quantale(self, quantale_pair_s):
        G = groupoid_of_quantale(quantale_pair_s)
        assert len(G.objects) == 2
        assert len(G.arrows) == 4

    def test_tables_rebuild_the_quantale(self, quantale_pair_s):
        Q = quantale_pair_s
        rebuilt = BasedQuantale.from_tables(Q.base, Q.lattice, **Q.tables())
        identity = lambda x: x  # noqa: E731
        assert quantale_iso_witness(Q, rebuilt, identity, identity) is None

    def test_short_table_is_rejected(self, quantale_pair_s):
        Q = quantale_pair_s
        tables = Q.tables()
        tables["star"] = tables["star"][:1]
        with pytest.raises(LawViolation) as excinfo:
            BasedQuantale.from_tables(Q.base, Q.lattice, **tables)
        assert excinfo.value.law == "quantale.tables"


class TestUnitGroupoidQuantale:
    def test_frame_as_quantale_over_itself(self, sierpinski):
        Q = unit_groupoid_quantale(sierpinski.frame)
        assert is_groupoid_quantale(Q).passed
        assert Q.unit == Q.top
        assert is_inverse_quantal_frame(Q).passed

    def test_zero_support_fails(self, sierpinski):
        Q = unit_groupoid_quantale(sierpinski.frame).replace(support=lambda x: 0)
        report = check_support(Q)
        assert not report.passed
        assert report.first_failure.witness[0] == "top"

    def test_not_a_groupoid_quantale(self, sierpinski):
        Q = unit_groupoid_quantale(sierpinski.frame).replace(support=lambda x: 0)
        with pytest.raises(HypothesisError) as excinfo:
            groupoid_of_quantale(Q)
        assert excinfo.value.hypothesis == "quantale.groupoid"

    def test_collapsing_involution(self, sierpinski):
        Q = unit_groupoid_quantale(sierpinski.frame).replace(star=lambda x: 0)
        report = check_based_quantale(Q)
        assert report.first_failure.statement == "quantale.involution"
        assert report.first_failure.witness[0] == "twice"


class TestRelativeTensor:
    def test_tensor_over_the_point_is_the_product(self, sierpinski):
        S = sierpinski.frame
        base = FiniteSpace.point().frame
        tensor = relative_tensor(S, S, base, lambda a: S.top if a else 0, lambda a: S.top if a else 0)
        assert len(tensor.frame) == 6
        assert tensor.embed(S.top, S.top) == tensor.frame.top

    def test_multiplication_lifts(self, quantale_pair_s):
        from qlab.quantale.quantale import multiplication_tensor

        tensor = multiplication_tensor(quantale_pair_s)
        assert tensor.lift_witness(quantale_pair_s.mul) is None


def test_quantale_of_groupoid_checks_itself(pair2):
    Q = quantale_of_groupoid(pair2, check=True)
    assert Q.name == "O(Pair(2))"


@pytest.mark.parametrize("fixture", ["quantale_pair2", "quantale_pair_s"])
@pytest.mark.parametrize(
    "check", [check_equivariant, check_quantal_frame, check_multiplicative, check_unit_laws, check_inverse_laws]
)
def test_groupoid_quantale_laws(request, fixture, check):
    report = check(request.getfixturevalue(fixture))
    assert report.passed, str(report)


class TestBrokenLaws:
    def test_support_not_equivariant(self, sierpinski):
        A = sierpinski.frame
        Q = unit_groupoid_quantale(A).replace(support=lambda x: A.top if x else 0)
        assert check_equivariant(Q).first_failure.statement == "quantale.equivariant"

    def test_restriction_not_a_meet(self, sierpinski):
        Q = unit_groupoid_quantale(sierpinski.frame).replace(left=lambda a, q: a | q)
        report = check_quantal_frame(Q)
        assert report.first_failure.witness[0] == "left"

    def test_zero_multiplication(self, sierpinski):
        Q = unit_groupoid_quantale(sierpinski.frame).replace(mul=lambda x, y: 0)
        assert check_unit_laws(Q).first_failure.witness == 0
        assert check_inverse_laws(Q).first_failure.witness == 0
