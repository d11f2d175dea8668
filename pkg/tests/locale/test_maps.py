"""Tests for locale maps and their openness."""

from qlab.locale import ContinuousMap, LocaleMap, locale_map, to_point
from qlab.order import chain, one_point


def test_inverse_image_is_a_frame_hom(sierpinski, point):
    f = locale_map(ContinuousMap(point, sierpinski, [0]))
    assert f.frame_hom_witness() is None
    assert f.is_semiopen()


def test_frame_hom_failure(sierpinski):
    frame = sierpinski.frame
    f = LocaleMap(frame, frame, lambda c: 0)
    assert f.frame_hom_witness() == ("top", frame.top)


def test_open_point(sierpinski, point):
    f = locale_map(ContinuousMap(point, sierpinski, [1]), name="open")
    result = f.is_open()
    assert result
    assert result.direct_image(0b1) == 0b10


def test_closed_point(sierpinski, point):
    f = locale_map(ContinuousMap(point, sierpinski, [0]), name="closed")
    result = f.is_open()
    assert not result
    assert result.witness == (0, 1)
    assert result.direct_image is None


def test_maps_to_the_point_are_open():
    f = to_point(chain(3))
    assert not f.is_spatial
    result = f.is_open()
    assert result
    assert result.direct_image(0b1) == 0b1
    assert set(f.point_map.values) == {0}


def test_surjectivity():
    assert to_point(chain(3)).is_surjective()
    # the one-element frame is the empty locale
    assert not to_point(one_point()).is_surjective()


def test_spatial_surjectivity(sierpinski, point):
    assert to_point(sierpinski.frame).is_surjective()
    assert not locale_map(ContinuousMap(point, sierpinski, [1])).is_surjective()


def test_compose(sierpinski, point):
    pick = locale_map(ContinuousMap(point, sierpinski, [1]))
    bang = to_point(sierpinski.frame)
    assert bang.compose(pick).differs_from(LocaleMap.identity(point.frame)) is None
    assert "point_map" in bang.compose(pick).__dict__


def test_invert(sierpinski):
    ident = LocaleMap.identity(sierpinski.frame)
    assert ident.is_iso()
    assert to_point(sierpinski.frame).invert() is None


def test_invert_non_spatial():
    c3 = chain(3)
    ident = LocaleMap.identity(c3)
    back = ident.invert()
    assert back is not None
    assert back.differs_from(ident) is None
