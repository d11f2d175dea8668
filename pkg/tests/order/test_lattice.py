"""Tests for finite lattices, their constructors and isomorphism search."""

import pytest

from qlab.errors import EnumerationBoundError, LawViolation
from qlab.order import (
    FiniteFrame,
    canonical_form,
    chain,
    find_isomorphism,
    from_order,
    from_sets,
    one_point,
    powerset,
)

M3 = [0b000, 0b001, 0b010, 0b100, 0b111]
N5 = [0b000, 0b001, 0b011, 0b100, 0b111]


class TestConstructors:
    def test_chain(self):
        c = chain(3)
        assert c.elements == (0b0, 0b1, 0b11)
        assert c.bottom == 0 and c.top == 0b11
        assert c.generators == (0b1, 0b11)
        assert c.label(0b11) == 2

    def test_empty_chain(self):
        with pytest.raises(LawViolation) as exc:
            chain(0)
        assert exc.value.law == "lattice.nonempty"

    def test_powerset(self):
        p = powerset(2)
        assert len(p) == 4
        assert p.generators == (0b01, 0b10)
        assert p.union_closed

    def test_one_point(self):
        p = one_point()
        assert len(p) == 1
        assert p.top == p.bottom == 0

    def test_index_of_non_member(self):
        with pytest.raises(LawViolation) as exc:
            chain(3).index(0b10)
        assert exc.value.law == "lattice.member"
        assert exc.value.witness == 0b10

    def test_from_sets_without_top(self):
        with pytest.raises(LawViolation) as exc:
            from_sets([0b00, 0b01, 0b10], 2)
        assert exc.value.law == "lattice.top"

    def test_from_sets_not_meet_closed(self):
        with pytest.raises(LawViolation) as exc:
            from_sets([0b000, 0b011, 0b101, 0b111], 3)
        assert exc.value.law == "lattice.meets"

    def test_from_order_diamond(self):
        lat = from_order(["0", "a", "b", "1"], [(0, 1), (0, 2), (1, 3), (2, 3)], name="diamond")
        assert len(lat) == 4
        assert lat.labels == ["0", "a", "b", "1"]
        assert lat.is_distributive

    def test_from_order_as_frame(self):
        lat = from_order(["0", "a", "1"], [(0, 1), (1, 2)], frame=True)
        assert isinstance(lat, FiniteFrame)

    @pytest.mark.parametrize(
        "labels,leq,law",
        [
            (["a", "b"], [(0, 5)], "order.indices"),
            (["a", "b"], [(0, 1), (1, 0)], "order.antisymmetric"),
            (["a", "b"], [], "lattice.top"),
            (["a", "b", "1"], [(0, 2), (1, 2)], "lattice.meets"),
        ],
    )
    def test_from_order_errors(self, labels, leq, law):
        with pytest.raises(LawViolation) as exc:
            from_order(labels, leq)
        assert exc.value.law == law


class TestOperations:
    def test_join_is_closure_of_union(self):
        m3 = from_sets(M3, 3)
        assert not m3.union_closed
        assert m3.join(0b001, 0b010) == 0b111
        assert m3.meet(0b001, 0b010) == 0

    def test_joins_of_empty_family(self):
        m3 = from_sets(M3, 3)
        assert m3.join_all([]) == m3.bottom
        assert m3.meet_all([]) == m3.top

    def test_every_element_is_a_join_of_generators(self):
        n5 = from_sets(N5, 3)
        for m in n5.elements:
            assert n5.join_all(n5.generators_below(m)) == m

    def test_down_and_up(self):
        c = chain(3)
        assert c.down(0b1) == [0b0, 0b1]
        assert c.up(0b1) == [0b1, 0b11]

    def test_heyting_implication(self):
        p = powerset(2)
        assert p.implies(0b01, 0b00) == 0b10
        assert p.implies(0b01, 0b01) == p.top

    def test_covers(self):
        assert chain(3).covers() == [(0, 1), (1, 2)]


class TestDistributivity:
    @pytest.mark.parametrize("family", [M3, N5], ids=["M3", "N5"])
    def test_not_distributive(self, family):
        lat = from_sets(family, 3)
        assert not lat.is_distributive
        a, b, c = lat.distributivity_witness()
        assert a & lat.join(b, c) != lat.join(a & b, a & c)

    def test_frame_rejects_m3(self):
        with pytest.raises(LawViolation) as exc:
            from_sets(M3, 3, frame=True)
        assert exc.value.law == "frame.distributive"
        assert exc.value.witness is not None

    def test_distributive_non_boolean(self):
        lat = from_sets([0b00, 0b01, 0b11], 2, frame=True)
        assert lat.is_distributive
        assert lat.distributivity_witness() is None

    def test_frame_of_distributive_lattice(self):
        lat = from_order(["0", "a", "b", "1"], [(0, 1), (0, 2), (1, 3), (2, 3)])
        frame = FiniteFrame.of(lat)
        assert frame.elements == lat.elements
        assert FiniteFrame.of(frame) is frame


class TestIsomorphism:
    def test_chain_from_order(self):
        other = from_order(["bot", "mid", "top"], [(0, 1), (1, 2)])
        mapping = find_isomorphism(chain(3), other)
        assert mapping is not None
        assert mapping[0b11] == other.top

    def test_powerset_as_sets(self):
        square = from_sets([0b000, 0b001, 0b100, 0b101], 3)
        mapping = find_isomorphism(powerset(2), square)
        assert mapping is not None
        p = powerset(2)
        for a in p.elements:
            for b in p.elements:
                assert p.leq(a, b) == square.leq(mapping[a], mapping[b])

    def test_different_sizes(self):
        assert find_isomorphism(chain(4), powerset(2)) is None

    def test_m3_and_n5_are_not_isomorphic(self):
        m3, n5 = from_sets(M3, 3), from_sets(N5, 3)
        assert find_isomorphism(m3, n5) is None
        assert canonical_form(m3) != canonical_form(n5)

    def test_canonical_form_is_invariant(self):
        square = from_sets([0b000, 0b001, 0b100, 0b101], 3)
        assert canonical_form(square) == canonical_form(powerset(2))

    def test_canonical_form_bound(self):
        with pytest.raises(EnumerationBoundError):
            canonical_form(powerset(4), bound=10)
