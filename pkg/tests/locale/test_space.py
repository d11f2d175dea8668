"""Tests for finite spaces, their frames and continuous maps."""

import pytest

from qlab.errors import EnumerationBoundError, LawViolation
from qlab.locale import ContinuousMap, FiniteSpace, SpaceFrame, fibered_product, frame_of_space, spatialize
from qlab.locale.spatial import point_map_from_inverse_image
from qlab.order import chain, from_sets


class TestFiniteSpace:
    def test_sierpinski(self, sierpinski):
        assert sierpinski.up == (0b11, 0b10)
        assert sierpinski.frame.elements == (0b00, 0b10, 0b11)
        assert sierpinski.is_open(0b10)
        assert not sierpinski.is_open(0b01)

    @pytest.mark.parametrize(
        "labels,up,law",
        [
            (["a"], [0b1, 0b1], "space.points"),
            (["a"], [0b0], "order.reflexive"),
            (["a", "b", "c"], [0b011, 0b110, 0b100], "order.transitive"),
            (["a", "b"], [0b11, 0b11], "order.antisymmetric"),
        ],
    )
    def test_invalid(self, labels, up, law):
        with pytest.raises(LawViolation) as exc:
            FiniteSpace(labels, up)
        assert exc.value.law == law

    def test_from_order_out_of_range(self):
        with pytest.raises(LawViolation) as exc:
            FiniteSpace.from_order(["a"], [(0, 1)])
        assert exc.value.law == "order.indices"

    def test_unknown_label(self, sierpinski):
        with pytest.raises(LawViolation) as exc:
            sierpinski.index("x")
        assert exc.value.law == "space.point"

    def test_chain(self):
        c3 = FiniteSpace.chain(3)
        assert len(c3.frame) == 4
        assert c3.hasse() == [(0, 1), (1, 2)]

    def test_product(self, sierpinski):
        square = sierpinski.product(sierpinski)
        assert len(square) == 4
        assert len(square.frame) == 6
        assert square.labels[1] == (0, 1)

    def test_disjoint_union(self, sierpinski, point):
        union = sierpinski.disjoint_union(point)
        assert len(union) == 3
        assert len(union.frame) == 6

    def test_subspace(self, sierpinski):
        sub, points = sierpinski.subspace(0b01)
        assert points == [0]
        assert sub.labels == (0,)
        assert len(sub.frame) == 2

    def test_implication(self, sierpinski):
        frame = sierpinski.frame
        assert frame.implies(0b10, 0b00) == 0
        assert frame.implies(0b00, 0b10) == frame.top

    def test_frame_bound(self):
        space = FiniteSpace.discrete(list(range(5)))
        with pytest.raises(EnumerationBoundError):
            SpaceFrame(space, bound=10).elements


class TestContinuousMap:
    def test_not_monotone(self, sierpinski):
        with pytest.raises(LawViolation) as exc:
            ContinuousMap(sierpinski, sierpinski, [1, 0])
        assert exc.value.law == "map.monotone"
        assert exc.value.witness == (0, 1)

    def test_value_out_of_range(self, sierpinski, point):
        with pytest.raises(LawViolation) as exc:
            ContinuousMap(point, sierpinski, [2])
        assert exc.value.law == "map.total"

    def test_open_point_inclusion(self, sierpinski, point):
        f = ContinuousMap(point, sierpinski, [1])
        assert f.is_open()
        assert f.direct_image(0b1) == 0b10

    def test_closed_point_inclusion(self, sierpinski, point):
        f = ContinuousMap(point, sierpinski, [0])
        assert f.open_witness() == (0, 1)
        assert f.direct_image(0b1) == 0b11
        assert f.preimage(0b10) == 0

    def test_inverse(self, sierpinski, two_points):
        ident = ContinuousMap.identity(sierpinski)
        assert ident.inverse() == ident
        bijection = ContinuousMap(two_points, sierpinski, [0, 1])
        assert bijection.is_injective() and bijection.is_surjective()
        assert bijection.inverse() is None

    def test_compose_and_restrict(self, sierpinski, point):
        to_point = ContinuousMap.constant(sierpinski, point)
        pick = ContinuousMap(point, sierpinski, [1])
        assert to_point.compose(pick).values == (0,)
        assert pick.compose(to_point).values == (1, 1)
        assert to_point.restrict(0b10).values == (0,)

    def test_fibered_product_codomain(self, sierpinski, point):
        f = ContinuousMap.identity(sierpinski)
        g = ContinuousMap.identity(point)
        with pytest.raises(LawViolation) as exc:
            fibered_product(f, g)
        assert exc.value.law == "pullback.codomain"


class TestSpatial:
    def test_chain_frame(self):
        c3 = chain(3)
        pres = spatialize(c3)
        assert len(pres.space) == 2
        assert not pres.is_identity
        for a in c3.elements:
            assert pres.from_space(pres.to_space(a)) == a
            assert pres.space.is_open(pres.to_space(a))

    def test_space_frame_is_its_own_presentation(self, sierpinski):
        pres = spatialize(frame_of_space(sierpinski))
        assert pres.is_identity
        assert pres.space is sierpinski

    def test_non_distributive(self):
        m3 = from_sets([0b000, 0b001, 0b010, 0b100, 0b111], 3)
        with pytest.raises(LawViolation) as exc:
            spatialize(m3)
        assert exc.value.law == "frame.distributive"

    def test_point_map_from_inverse_image(self, sierpinski, point):
        f = ContinuousMap(point, sierpinski, [1])
        recovered = point_map_from_inverse_image(f.preimage, point, sierpinski)
        assert recovered == f
