"""Tests for principal bundles, their pullbacks and bibundles."""

import pytest

from qlab.bundle import (
    GBundle,
    check_principal,
    check_principal_bibundle,
    check_two_pullbacks,
    compose_bibundles,
    disjoint_union_bundle,
    induced_map_on_orbits,
    orbit_locale,
    principal_bundle,
    pullback_bundle,
    quotient_bundle,
)
from qlab.errors import HypothesisError, LawViolation
from qlab.groupoid import (
    Bilocale,
    canonical_action,
    cyclic_group,
    left_regular_action,
    to_right,
    trivial_action,
    unit_bilocale,
)
from qlab.locale import ContinuousMap, FiniteSpace


@pytest.fixture(scope="module")
def over_point(pair2):
    """``Pair(2)`` on its objects, over the point."""
    return quotient_bundle(canonical_action(pair2))


class TestPrincipal:
    def test_objects_over_the_point(self, over_point):
        assert len(over_point.base) == 1
        report = check_principal(over_point)
        assert report.passed, str(report)
        for statement in ("principal.pairing_iso", "principal.theta_pullback", "principal.orbits"):
            assert report.holds(statement)

    def test_inner_support_on_a_non_discrete_space(self, pair_s):
        report = check_principal(quotient_bundle(canonical_action(pair_s)))
        assert report.passed, str(report)
        assert report.holds("principal.inner_support")

    def test_regular_group_action(self):
        bundle = quotient_bundle(left_regular_action(cyclic_group(2)))
        assert check_principal(bundle).passed

    def test_trivial_action_is_not_principal(self):
        bundle = quotient_bundle(trivial_action(cyclic_group(2), FiniteSpace.point()))
        report = check_principal(bundle)
        assert report.first_failure.statement == "principal.pairing_iso"
        assert report.first_failure.witness[0] == "not injective"

    def test_projection_must_be_invariant(self, pair2, two_points):
        bundle = GBundle(canonical_action(pair2), two_points, [0, 1])
        report = check_principal(bundle)
        assert report.first_failure.statement == "bundle.invariant"

    def test_principal_bundle_raises(self):
        bundle = quotient_bundle(trivial_action(cyclic_group(2), FiniteSpace.point()))
        with pytest.raises(LawViolation) as excinfo:
            principal_bundle(bundle)
        assert excinfo.value.law == "principal.pairing_iso"

    def test_inner_product(self, over_point):
        P = principal_bundle(over_point)
        # the arrow from b to a is (a, b), index 1
        assert P.inner(0b01, 0b10) == 0b0010
        assert P.inner(0b11, 0b11) == P.groupoid.arrows.full

    def test_orbit_locale_of_the_arrows(self, pair_s):
        orbits = orbit_locale(left_regular_action(pair_s))
        assert len(orbits.space) == len(pair_s.objects)

    def test_disjoint_union(self, over_point):
        both = disjoint_union_bundle(over_point, over_point)
        assert len(both.base) == 2
        assert check_principal(both).passed


class TestPullback:
    def test_pullback_along_the_identity(self, over_point):
        P = principal_bundle(over_point)
        pulled = pullback_bundle(P, ContinuousMap.identity(P.base))
        assert len(pulled.bundle.space) == len(P.space)

    def test_pullback_along_a_map_from_two_points(self, over_point):
        P = principal_bundle(over_point)
        f = ContinuousMap.constant(FiniteSpace.discrete(["u", "v"], name="2"), P.base)
        pulled = pullback_bundle(P, f)
        assert len(pulled.bundle.space) == 2 * len(P.space)
        assert len(pulled.bundle.base) == 2

    def test_pullback_needs_the_base(self, over_point):
        P = principal_bundle(over_point)
        f = ContinuousMap.identity(FiniteSpace.sierpinski())
        with pytest.raises(LawViolation) as excinfo:
            pullback_bundle(P, f)
        assert excinfo.value.law == "pullback.codomain"

    def test_induced_map_of_the_identity(self, over_point):
        P = principal_bundle(over_point)
        quotient, report = induced_map_on_orbits(P, P, list(range(len(P.space))))
        assert quotient.values == (0,)
        assert report.passed, str(report)
        assert report.holds("bundle.iso_transfer")

    def test_two_pullbacks(self, over_point):
        identity = list(range(len(over_point.space)))
        report = check_two_pullbacks((over_point,) * 4, identity, identity, identity, identity)
        assert report.passed, str(report)
        assert report.holds("bundle.two_pullbacks")

    def test_two_pullbacks_needs_principal_bundles(self):
        bundle = quotient_bundle(trivial_action(cyclic_group(2), FiniteSpace.point()))
        with pytest.raises(HypothesisError) as excinfo:
            check_two_pullbacks((bundle,) * 4, [0], [0], [0], [0])
        assert excinfo.value.hypothesis == "bundle.principal"


class TestBibundles:
    def test_unit_bibundle_is_principal(self, pair_s):
        assert check_principal_bibundle(unit_bilocale(pair_s)).passed

    def test_composition_with_the_unit(self, pair2):
        U = unit_bilocale(pair2)
        composite, report = compose_bibundles(U, U)
        assert report.passed, str(report)
        assert len(composite.space) == len(pair2.arrows)

    def test_composition_needs_principal_bibundles(self):
        G = cyclic_group(2)
        left = trivial_action(G, FiniteSpace.point())
        bibundle = Bilocale(left, to_right(left), name="trivial")
        with pytest.raises(HypothesisError) as excinfo:
            compose_bibundles(bibundle, unit_bilocale(G))
        assert excinfo.value.hypothesis == "bibundle.principal"
