import pytest

from polyext.geometry import SimplePolygon, pt
from polyext.triangulation import (ear_clip, root_dual, validate_triangulation,
                                   TriangulationError, ear_triangles)


def convex_polygon(t):
    # strictly convex lattice-ish polygon via points on a large circle
    from fractions import Fraction
    pts = []
    for k in range(t):
        # rational points on a convex arc
        x = Fraction(k * (t - k), 1)
        pts.append(pt(k, x))
    # fall back to a generic fan shape: use a known convex set
    base = {3: [(0, 0), (4, 0), (2, 3)],
            4: [(0, 0), (4, 0), (4, 4), (0, 4)],
            5: [(0, 0), (4, 0), (6, 3), (3, 6), (-1, 3)],
            6: [(0, 0), (4, 0), (6, 3), (4, 6), (0, 6), (-2, 3)],
            7: [(0, 0), (4, 0), (6, 2), (6, 5), (3, 7), (-1, 5), (-2, 2)],
            8: [(0, 0), (4, 0), (6, 2), (6, 5), (4, 7), (0, 7), (-2, 5),
                (-2, 2)]}
    return SimplePolygon.from_points([pt(x, y) for x, y in base[t]])


@pytest.mark.parametrize("t", [3, 4, 5, 6, 7, 8])
def test_ear_clip_counts(t):
    tri = ear_clip(convex_polygon(t))
    assert len(tri.diagonals) == t - 3
    assert len(tri.triangles) == t - 2
    # re-validates cleanly
    validate_triangulation(tri.polygon, tri.diagonals)


def test_validate_rejects_crossing_diagonals():
    P = convex_polygon(6)
    with pytest.raises(TriangulationError):
        validate_triangulation(P, [(0, 2), (1, 3), (0, 3)])


def test_validate_rejects_exterior_diagonal(l_polygon):
    # (p3, p6) crosses the notch of the L
    with pytest.raises(TriangulationError):
        validate_triangulation(l_polygon, [(2, 5), (0, 2), (2, 4)])


def test_l_polygon_triangulation(l_polygon):
    tri = root_dual(validate_triangulation(l_polygon, [(0, 2), (0, 3), (3, 5)]))
    assert len(tri.triangles) == 4
    assert tri.root is not None


def test_pocket_structure(unit_square):
    tri = root_dual(validate_triangulation(unit_square, [(1, 3)]))
    assert len(tri.pockets) == 5  # 4 boundary edges + 1 diagonal
    root_tri = tri.triangles[tri.root]
    for edge, pocket in tri.pockets.items():
        assert pocket.size >= 1
        if pocket.trivial:
            assert pocket.inner_triangle is None
        else:
            assert pocket.apex is not None
            assert pocket.children is not None
    # root pockets cover all three root triangle edges
    lids = {p.edge for p in tri.root_pockets()}
    assert len(lids) == 3


def test_root_policy(unit_square):
    tri = validate_triangulation(unit_square, [(1, 3)])
    r0 = root_dual(tri, policy=0)
    r1 = root_dual(tri, policy=1)
    assert r0.root == 0 and r1.root == 1
    assert root_dual(tri, policy="ear").root in (0, 1)
    assert ear_triangles(tri)
