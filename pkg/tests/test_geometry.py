from fractions import Fraction

import pytest

from polyext.geometry import (pt, Point2, orient, point_on_segment,
                              segment_intersection, segments_properly_cross,
                              point_in_triangle, INTERIOR, BOUNDARY, OUTSIDE,
                              SimplePolygon, PolygonError, point_in_polygon,
                              segment_inside_polygon, EndpointOutsideError,
                              primitive_direction, ccw_strictly_between,
                              midpoint)


def test_orient_signs():
    assert orient(pt(0, 0), pt(1, 0), pt(0, 1)) > 0
    assert orient(pt(0, 0), pt(0, 1), pt(1, 0)) < 0
    assert orient(pt(0, 0), pt(1, 1), pt(2, 2)) == 0


def test_orient_exact_near_degenerate():
    # a float cross product would misclassify this
    eps = Fraction(1, 10**40)
    assert orient(pt(0, 0), pt(1, 0), Point2(Fraction(2), eps)) > 0
    assert orient(pt(0, 0), pt(1, 0), Point2(Fraction(2), -eps)) < 0


def test_point_on_segment():
    assert point_on_segment(pt(1, 1), pt(0, 0), pt(2, 2))
    assert point_on_segment(pt(0, 0), pt(0, 0), pt(2, 2))
    assert not point_on_segment(pt(3, 3), pt(0, 0), pt(2, 2))
    assert not point_on_segment(pt(1, 0), pt(0, 0), pt(2, 2))


def test_segment_intersection_kinds():
    kind, p = segment_intersection(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0))
    assert kind == "point" and p == pt(1, 1)
    kind, seg = segment_intersection(pt(0, 0), pt(3, 0), pt(1, 0), pt(5, 0))
    assert kind == "segment" and set(seg) == {pt(1, 0), pt(3, 0)}
    assert segment_intersection(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)) is None


def test_properly_cross_excludes_touching():
    assert segments_properly_cross(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0))
    assert not segments_properly_cross(pt(0, 0), pt(1, 1), pt(1, 1), pt(2, 0))
    assert not segments_properly_cross(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1))


def test_point_in_triangle_classification():
    a, b, c = pt(0, 0), pt(4, 0), pt(0, 4)
    assert point_in_triangle(pt(1, 1), a, b, c) == INTERIOR
    assert point_in_triangle(pt(2, 0), a, b, c) == BOUNDARY
    assert point_in_triangle(pt(0, 0), a, b, c) == BOUNDARY
    assert point_in_triangle(pt(4, 4), a, b, c) == OUTSIDE


def test_simple_polygon_rejects_bad_rings():
    with pytest.raises(PolygonError):
        SimplePolygon.from_points([pt(0, 0), pt(1, 0)])
    with pytest.raises(PolygonError):  # self-crossing bowtie
        SimplePolygon.from_points([pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)])
    with pytest.raises(PolygonError):  # clockwise
        SimplePolygon.from_points([pt(0, 0), pt(0, 2), pt(2, 0)])
    with pytest.raises(PolygonError):  # zero-width spike
        SimplePolygon.from_points([pt(0, 0), pt(4, 0), pt(2, 0), pt(2, 2)])


def test_point_in_polygon(l_polygon):
    assert point_in_polygon(pt(Fraction(1, 2), Fraction(1, 2)), l_polygon) == INTERIOR
    assert point_in_polygon(pt(1, 1), l_polygon) == BOUNDARY
    assert point_in_polygon(Point2(Fraction(3, 2), Fraction(3, 2)), l_polygon) == OUTSIDE


def test_segment_inside_polygon(l_polygon):
    # hugging the reflex corner stays inside (closed region)
    assert segment_inside_polygon(pt(2, 0), pt(0, 2), l_polygon)
    assert segment_inside_polygon(pt(0, 0), pt(1, 1), l_polygon)
    # crossing the notch leaves the polygon
    assert not segment_inside_polygon(pt(2, 1), pt(1, 2), l_polygon)
    with pytest.raises(EndpointOutsideError):
        segment_inside_polygon(pt(0, 0), pt(2, 2), l_polygon)


def test_primitive_direction_and_cones():
    assert primitive_direction(pt(4, 6)) == (2, 3)
    assert primitive_direction(pt(0, -5)) == (0, -1)
    assert ccw_strictly_between((1, 0), (1, 1), (0, 1))
    assert not ccw_strictly_between((1, 0), (0, -1), (0, 1))
    # cone wider than pi
    assert ccw_strictly_between((1, 0), (-1, -1), (0, -1))


def test_midpoint():
    assert midpoint(pt(0, 0), pt(1, 3)) == Point2(Fraction(1, 2), Fraction(3, 2))
