"""Tests for pullbacks, coequalizers and the open-map lemmas."""

import pytest

from qlab.errors import HypothesisError, LawViolation
from qlab.locale import (
    ContinuousMap,
    FiniteSpace,
    LocaleMap,
    Square,
    check_beck_chevalley,
    check_iso_reflection,
    check_openness_reflection,
    coequalizer,
    locale_map,
    product,
    pullback,
    to_point,
)


@pytest.fixture
def s_times_s(sierpinski):
    return product(sierpinski.frame, sierpinski.frame)


def pick(point, space, x):
    return locale_map(ContinuousMap(point, space, [x]))


class TestPullback:
    def test_product_of_sierpinski(self, s_times_s):
        assert len(s_times_s.space) == 4
        assert len(s_times_s.frame) == 6
        assert s_times_s.crosschecked
        assert s_times_s.square().is_pullback()

    def test_disjoint_points(self, sierpinski, point):
        square = pullback(pick(point, sierpinski, 0), pick(point, sierpinski, 1))
        assert len(square.space) == 0
        assert len(square.frame) == 1
        assert square.crosschecked

    def test_codomain_mismatch(self, sierpinski, point):
        with pytest.raises(LawViolation) as exc:
            pullback(pick(point, sierpinski, 0), LocaleMap.identity(point.frame))
        assert exc.value.law == "pullback.codomain"

    def test_without_cross_check(self, sierpinski, point):
        square = pullback(pick(point, sierpinski, 1), LocaleMap.identity(sierpinski.frame), cross_check=False)
        assert not square.crosschecked
        assert len(square.space) == 1

    def test_pairing(self, sierpinski, s_times_s):
        ident = LocaleMap.identity(sierpinski.frame)
        diagonal = s_times_s.pairing(ident, ident)
        assert s_times_s.pi1.compose(diagonal).differs_from(ident) is None
        assert s_times_s.pi2.compose(diagonal).differs_from(ident) is None

    def test_pairing_requires_a_commuting_pair(self, sierpinski, point):
        square = pullback(pick(point, sierpinski, 1), LocaleMap.identity(sierpinski.frame))
        h = LocaleMap.identity(point.frame)
        k = pick(point, sierpinski, 0)
        with pytest.raises(LawViolation) as exc:
            square.pairing(h, k)
        assert exc.value.law == "locale.square.commutes"

    def test_not_a_pullback(self, sierpinski):
        ident = LocaleMap.identity(sierpinski.frame)
        bang = to_point(sierpinski.frame)
        square = Square(top=ident, left=ident, right=bang, bottom=bang)
        assert square.commutes_witness() is None
        assert square.pullback_witness()[0] == "not surjective"


class TestCoequalizer:
    def test_identify_the_two_points(self, sierpinski, point):
        coeq = coequalizer(pick(point, sierpinski, 0), pick(point, sierpinski, 1))
        assert len(coeq.space) == 1
        assert coeq.crosschecked
        assert len(coeq.subframe) == 2
        assert coeq.couniversal_witness() is None

    def test_equal_pair(self, sierpinski, point):
        f = pick(point, sierpinski, 1)
        coeq = coequalizer(f, f)
        assert len(coeq.space) == 2
        assert coeq.pi.is_iso()

    def test_factor(self, sierpinski, point):
        coeq = coequalizer(pick(point, sierpinski, 0), pick(point, sierpinski, 1))
        k = coeq.factor(to_point(sierpinski.frame))
        assert k.is_iso()

    def test_factor_rejects_non_coequalizing_map(self, sierpinski, point):
        coeq = coequalizer(pick(point, sierpinski, 0), pick(point, sierpinski, 1))
        with pytest.raises(LawViolation) as exc:
            coeq.factor(LocaleMap.identity(sierpinski.frame))
        assert exc.value.law == "locale.coequalizer.factor"


class TestLemmas:
    def test_beck_chevalley(self, s_times_s):
        report = check_beck_chevalley(s_times_s.square())
        assert report.passed
        assert report.holds("open.stable")
        assert report.holds("open.beck_chevalley")

    def test_beck_chevalley_needs_a_pullback(self, sierpinski):
        ident = LocaleMap.identity(sierpinski.frame)
        bang = to_point(sierpinski.frame)
        with pytest.raises(HypothesisError) as exc:
            check_beck_chevalley(Square(top=ident, left=ident, right=bang, bottom=bang))
        assert exc.value.hypothesis == "locale.square.pullback"

    def test_beck_chevalley_needs_an_open_map(self, sierpinski, point):
        square = pullback(pick(point, sierpinski, 0), LocaleMap.identity(sierpinski.frame)).square()
        with pytest.raises(HypothesisError) as exc:
            check_beck_chevalley(square)
        assert exc.value.hypothesis == "locale.map.open"

    def test_openness_reflection(self, s_times_s):
        report = check_openness_reflection(s_times_s.square())
        assert report.holds("open.reflection")

    def test_iso_reflection(self, sierpinski):
        ident = LocaleMap.identity(sierpinski.frame)
        square = pullback(ident, ident).square()
        report = check_iso_reflection(square, (ident, ident))
        assert report.holds("iso.reflection")
        assert report["iso.reflection"].detail == "inverse exhibited"

    def test_iso_reflection_needs_an_iso_on_the_left(self, sierpinski, s_times_s):
        ident = LocaleMap.identity(sierpinski.frame)
        with pytest.raises(HypothesisError) as exc:
            check_iso_reflection(s_times_s.square(), (ident, ident))
        assert exc.value.hypothesis == "iso.left"


S = FiniteSpace.sierpinski()
C3 = FiniteSpace.chain(3)
D2 = FiniteSpace.discrete(["a", "b"])
PT = FiniteSpace.point()


def _map(source, target, values):
    return locale_map(ContinuousMap(source, target, values))


# (open map, any map) into a common codomain
OPEN_PAIRS = {
    "S-S-over-point": (to_point(S.frame), to_point(S.frame)),
    "S-point-over-point": (to_point(S.frame), LocaleMap.identity(PT.frame)),
    "C3-S-over-point": (to_point(C3.frame), to_point(S.frame)),
    "D2-S-over-point": (to_point(D2.frame), to_point(S.frame)),
    "S-C3-over-point": (to_point(S.frame), to_point(C3.frame)),
    "identity-S": (LocaleMap.identity(S.frame), LocaleMap.identity(S.frame)),
    "identity-closed-point": (LocaleMap.identity(S.frame), _map(PT, S, [0])),
    "collapse-open-point": (_map(S, S, [1, 1]), _map(PT, S, [1])),
    "D2-onto-open-point": (_map(D2, S, [1, 1]), LocaleMap.identity(S.frame)),
    "C3-onto-S": (_map(C3, S, [0, 1, 1]), LocaleMap.identity(S.frame)),
    "C3-onto-S-closed-point": (_map(C3, S, [0, 1, 1]), _map(PT, S, [0])),
    "collapse-C3": (_map(S, S, [1, 1]), _map(C3, S, [0, 1, 1])),
}


@pytest.mark.parametrize("name", sorted(OPEN_PAIRS))
def test_beck_chevalley_on_pullbacks_of_open_maps(name):
    f, g = OPEN_PAIRS[name]
    assert f.is_open()
    report = check_beck_chevalley(pullback(f, g).square())
    assert report.passed, str(report)


@pytest.mark.parametrize("first, second", [(S, S), (S, C3), (C3, D2), (D2, S)], ids=["SxS", "SxC3", "C3xD2", "D2xS"])
def test_openness_reflection_on_products(first, second):
    report = check_openness_reflection(product(first.frame, second.frame).square())
    assert report.holds("open.reflection")


@pytest.mark.parametrize("space", [S, C3, D2], ids=["S", "C3", "D2"])
def test_iso_reflection_on_diagonals(space):
    ident = LocaleMap.identity(space.frame)
    report = check_iso_reflection(pullback(ident, ident).square(), (ident, ident))
    assert report.holds("iso.reflection")
