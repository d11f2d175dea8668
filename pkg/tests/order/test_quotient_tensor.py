"""Tests for quotients and tensor products of sup-lattices."""

import itertools

import pytest

from qlab.errors import EnumerationBoundError, LawViolation
from qlab.order import (
    MonotoneMap,
    SupHom,
    TensorLattice,
    bilinearity_witness,
    chain,
    find_isomorphism,
    from_sets,
    identity,
    join_preservation_witness,
    powerset,
    quotient,
    tensor,
)
from qlab.order.quotient import factorization_witness, is_saturated, kernel_pairs
from qlab.order.tensor import brute_force_bi_ideals

M3 = [0b000, 0b001, 0b010, 0b100, 0b111]


class TestQuotient:
    def test_identify_atoms(self):
        p2 = powerset(2)
        q = quotient(p2, [(0b01, 0b10)])
        assert q.carrier.elements == (0b00, 0b11)
        assert q.projection(0b01) == 0b11
        assert q.projection(0) == 0

    def test_factor(self):
        p2 = powerset(2)
        q = quotient(p2, [(0b01, 0b10)])
        h = SupHom(p2, chain(2), lambda a: 1 if a else 0)
        k = q.factor(h)
        assert k(0b11) == 1
        assert k.compose(q.projection).differs_from(h) is None

    def test_factor_rejects_separating_map(self):
        p2 = powerset(2)
        q = quotient(p2, [(0b01, 0b10)])
        assert factorization_witness(q, identity(p2)) == (0b01, 0b10)
        with pytest.raises(LawViolation) as exc:
            q.factor(identity(p2))
        assert exc.value.law == "quotient.factor"

    def test_relations_must_be_elements(self):
        with pytest.raises(LawViolation) as exc:
            quotient(chain(3), [(0b10, 0b11)])
        assert exc.value.law == "lattice.member"
        assert exc.value.witness == 0b10

    def test_is_saturated(self):
        assert is_saturated(0b11, [(0b01, 0b10)])
        assert not is_saturated(0b01, [(0b01, 0b10)])

    def test_quotient_by_kernel_is_the_image(self):
        p3 = powerset(3)
        h = SupHom(p3, p3, lambda a: a & 0b011)
        q = quotient(p3, kernel_pairs(h))
        assert len(q.carrier) == len(set(h.table.values()))


def _sup_homs(source, target):
    """Every join-preserving map ``source -> target``, by choosing values on generators."""
    gens = source.generators
    for values in itertools.product(target.elements, repeat=len(gens)):
        h = SupHom.from_generators(source, target, dict(zip(gens, values)))
        # each map once: its own values on the generators
        if any(h(j) != v for j, v in zip(gens, values)):
            continue
        if join_preservation_witness(h) is None:
            yield h


@pytest.mark.parametrize(
    "source,relations",
    [
        (powerset(2), [(0b01, 0b10)]),
        (chain(3), [(0b01, 0b11)]),
        (from_sets(M3, 3), [(0b001, 0b010)]),
        (powerset(3), [(0b001, 0b010)]),
        (powerset(3), [(0b001, 0b110), (0b010, 0b011)]),
    ],
    ids=["P2-atoms", "chain3-top", "M3-atoms", "P3-atoms", "P3-two-pairs"],
)
@pytest.mark.parametrize("target", [chain(2), chain(3)], ids=["chain2", "chain3"])
def test_quotient_universal_property(source, relations, target):
    q = quotient(source, relations)
    into_carrier = list(_sup_homs(q.carrier, target))
    factored = 0
    for h in _sup_homs(source, target):
        if factorization_witness(q, h) is not None:
            with pytest.raises(LawViolation):
                q.factor(h)
            continue
        factored += 1
        k = q.factor(h)
        assert join_preservation_witness(k) is None
        assert k.compose(q.projection).differs_from(h) is None
        matches = [m for m in into_carrier if m.compose(q.projection).differs_from(h) is None]
        assert len(matches) == 1
        assert matches[0].differs_from(k) is None
    assert factored == len(into_carrier)


class TestTensor:
    def test_chains(self):
        t = tensor(chain(3), chain(3))
        assert len(t.carrier) == 6

    @pytest.mark.parametrize(
        "lattice",
        [chain(3), powerset(2), from_sets(M3, 3)],
        ids=["chain3", "P2", "M3"],
    )
    def test_two_element_chain_is_the_unit(self, lattice):
        t = tensor(chain(2), lattice)
        assert find_isomorphism(t.carrier, lattice) is not None

    def test_bottom_generators_are_zero(self):
        t = tensor(powerset(2), chain(3))
        assert t.embed(0, 0b11) == t.carrier.bottom
        assert t.embed(0b11, 0) == t.carrier.bottom
        assert t.embed(0b11, 0b11) == t.carrier.top

    def test_contains_pair(self):
        t = tensor(powerset(2), powerset(2))
        x = t.embed(0b01, 0b11)
        assert t.contains_pair(x, 0b01, 0b10)
        assert not t.contains_pair(x, 0b10, 0b01)

    @pytest.mark.parametrize(
        "left,right",
        [
            (chain(2), powerset(2)),
            (chain(3), chain(3)),
            (powerset(2), chain(3)),
            (from_sets(M3, 3), chain(3)),
        ],
        ids=["2xP2", "chain3xchain3", "P2xchain3", "M3xchain3"],
    )
    def test_closure_matches_brute_force(self, left, right):
        t = tensor(left, right)
        assert brute_force_bi_ideals(left, right) == set(t.carrier.elements)

    def test_lift_of_meet(self):
        p2 = powerset(2)
        t = tensor(p2, p2)
        h = t.lift(lambda x, y: x & y, p2)
        assert h(t.embed(0b01, 0b11)) == 0b01
        assert h(t.embed(0b01, 0b10)) == 0

    def test_lift_respects_relations(self):
        p2 = powerset(2)
        t = TensorLattice(p2, p2, relations=[((0b01, 0b11), (0b11, 0b01))])
        h = t.lift(lambda x, y: x & y, p2)
        assert h(t.embed(0b01, 0b11)) == 0b01

    def test_lift_rejects_separating_map(self):
        p2 = powerset(2)
        t = TensorLattice(p2, p2, relations=[((0b01, 0b11), (0b10, 0b11))])
        with pytest.raises(LawViolation) as exc:
            t.lift(lambda x, y: x & y, p2)
        assert exc.value.law == "tensor.relations"

    def test_relations_shrink_the_carrier(self):
        p2 = powerset(2)
        full = tensor(p2, p2)
        related = TensorLattice(p2, p2, relations=[((0b01, 0b11), (0b10, 0b11))])
        assert len(related.carrier) < len(full.carrier)

    def test_bilinearity(self):
        p2 = powerset(2)
        assert bilinearity_witness(lambda x, y: x & y, p2, p2, p2) is None
        assert bilinearity_witness(lambda x, y: x | y, p2, p2, p2) == ("left", 0b01, ())

    def test_bound(self):
        with pytest.raises(EnumerationBoundError):
            tensor(chain(3), chain(3), bound=3).carrier

    def test_pair_count_checked_on_construction(self):
        with pytest.raises(EnumerationBoundError) as exc:
            TensorLattice(chain(3), chain(3), bound=8)
        assert exc.value.size == 9
        assert len(TensorLattice(chain(3), chain(3), bound=9).carrier) == 6

    def test_brute_force_bound(self):
        with pytest.raises(EnumerationBoundError):
            brute_force_bi_ideals(powerset(2), powerset(2), bound=100)


def test_monotone_map_into_tensor():
    p2 = powerset(2)
    t = tensor(chain(2), p2)
    f = MonotoneMap(p2, t.carrier, lambda y: t.embed(0b1, y))
    assert f.is_injective()
