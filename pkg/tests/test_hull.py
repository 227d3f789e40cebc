import random

import pytest

from mixvol.errors import DimensionMismatch
from mixvol.hull import check_hull_integrity, convex_hull, hull_volume
from mixvol.linalg import dot


def test_simplex_facets():
    hull = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    normals = sorted(f.normal for f in hull.facets)
    assert normals == [(-1, 0, 0), (0, -1, 0), (0, 0, -1), (1, 1, 1)]
    assert hull.intrinsic_dim == 3
    assert len(hull.facets) == 4


def test_cube_facets():
    pts = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    hull = convex_hull(pts)
    assert len(hull.facets) == 6
    assert len(hull.extreme_ids) == 8
    check_hull_integrity(hull)


def test_collinear_degenerate():
    hull = convex_hull([(0, 0), (1, 0), (2, 0)])
    assert hull.intrinsic_dim == 1
    assert set(hull.vertices) == {(0, 0), (2, 0)}


def test_interior_and_boundary_points_pruned():
    # midpoint of an edge and the centroid are not vertices
    pts = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 0), (1, 1)]
    hull = convex_hull(pts)
    assert set(hull.vertices) == {(0, 0), (2, 0), (0, 2), (2, 2)}


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        convex_hull([(0, 0), (1, 0, 0)])


def test_single_point():
    hull = convex_hull([(3, 4, 5)])
    assert hull.intrinsic_dim == 0
    assert hull.vertices == ((3, 4, 5),)


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_random_integrity(dim):
    rng = random.Random(100 + dim)
    for _ in range(15):
        pts = [
            tuple(rng.randrange(-3, 4) for _ in range(dim))
            for _ in range(rng.randrange(dim + 1, dim + 8))
        ]
        hull = convex_hull(pts)
        if hull.intrinsic_dim < dim:
            continue
        check_hull_integrity(hull)
        for p in pts:
            assert all(dot(f.normal, p) <= f.offset for f in hull.facets)


def test_every_ridge_shared_by_two_facets():
    rng = random.Random(9)
    for _ in range(10):
        pts = [tuple(rng.randrange(0, 4) for _ in range(3)) for _ in range(9)]
        hull = convex_hull(pts)
        if hull.intrinsic_dim < 3:
            continue
        # each adjacency pair shares at least n-1 = 2 vertices
        for a, b in hull.adjacency:
            shared = set(hull.facets[a].vertex_ids) & set(hull.facets[b].vertex_ids)
            assert len(shared) >= 2


def test_volume_caching_and_value():
    hull = convex_hull([(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert hull_volume(hull) == hull_volume(hull)
    from fractions import Fraction

    assert hull_volume(hull) == Fraction(8, 6)
