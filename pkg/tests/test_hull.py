import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from _exact import exhaustive_hull_vertices
from abcdepth import (
    DataMatrix,
    UnsupportedDimensionError,
    contours_from_level_sets,
    convex_hull_2d,
    tukey_median,
)
from abcdepth.depth import AlphaLevel, LevelSet
from abcdepth.generators import gaussian
from abcdepth.hull import point_in_polygon


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def test_square_with_center():
    pts = [(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)]
    assert convex_hull_2d(pts).tolist() == [[0, 0], [1, 0], [1, 1], [0, 1]]


def test_collinear_and_single():
    assert convex_hull_2d([(1, 0), (0, 0), (2, 0)]).tolist() == [[0, 0], [2, 0]]
    assert convex_hull_2d([(3, 4)]).tolist() == [[3, 4]]
    assert convex_hull_2d([(3, 4), (3, 4)]).tolist() == [[3, 4]]


def test_triangle_order():
    # B, C, A: counterclockwise from the lexicographic minimum
    assert convex_hull_2d([(0, 1), (-1, 0), (1, 0)]).tolist() == [[-1, 0], [1, 0], [0, 1]]


def test_hull_rejects_other_dimensions():
    with pytest.raises(UnsupportedDimensionError):
        convex_hull_2d(np.zeros((4, 3)))


def test_drops_points_on_edges():
    pts = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 1)]
    assert convex_hull_2d(pts).tolist() == [[0, 0], [2, 0], [2, 2]]


point_sets = st.integers(1, 12).flatmap(
    lambda n: arrays(
        np.float64,
        (n, 2),
        elements=st.one_of(st.integers(-4, 4).map(float), st.floats(-50, 50, allow_nan=False, width=32)),
    )
)


@given(point_sets)
def test_matches_exhaustive(pts):
    hull = convex_hull_2d(pts)
    assert {tuple(v) for v in hull} == exhaustive_hull_vertices(pts)


@given(point_sets)
def test_ccw_convex_and_contains_input(pts):
    hull = convex_hull_2d(pts)
    k = len(hull)
    assert tuple(hull[0]) == min(map(tuple, hull))
    if k >= 3:
        for i in range(k):
            assert _cross(hull[i], hull[(i + 1) % k], hull[(i + 2) % k]) > 0
    for p in pts:
        assert point_in_polygon(hull, p)


@given(point_sets)
def test_idempotent(pts):
    hull = convex_hull_2d(pts)
    assert np.array_equal(convex_hull_2d(hull), hull)


def _same_cycle(a, b, tol=1e-9):
    if len(a) != len(b):
        return False
    for shift in range(len(b)):
        if np.allclose(a, np.roll(b, shift, axis=0), atol=tol):
            return True
    return False


@given(
    st.integers(3, 12).flatmap(
        lambda n: arrays(np.float64, (n, 2), elements=st.floats(-10, 10, allow_nan=False, width=16))
    ),
    st.floats(0, 2 * np.pi),
    st.tuples(st.floats(-5, 5), st.floats(-5, 5)),
)
def test_rigid_motion_equivariance(pts, theta, shift):
    pts = np.unique(pts, axis=0)
    hull = convex_hull_2d(pts)
    # keep to sets whose hull is robustly non-degenerate under rounding
    if len(hull) < 3:
        return
    k = len(hull)
    turns = [abs(_cross(hull[i], hull[(i + 1) % k], hull[(i + 2) % k])) for i in range(k)]
    interior = [p for p in pts if not any(np.array_equal(p, v) for v in hull)]
    margins = [
        min(_cross(hull[i], hull[(i + 1) % k], p) for i in range(k)) for p in interior
    ]
    if min(turns) < 1e-3 or (margins and min(margins) < 1e-3):
        return
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    moved = convex_hull_2d(pts @ rot.T + shift)
    assert _same_cycle(moved, hull @ rot.T + shift, tol=1e-6)


def test_contours_require_planar_data(line3):
    res = tukey_median(line3)
    with pytest.raises(UnsupportedDimensionError, match="contours require d=2"):
        contours_from_level_sets(res.levels, line3)


def test_gaussian_contours_nested():
    X = gaussian(1000, 2, seed=0)
    res = tukey_median(X)
    contours = contours_from_level_sets(res.levels, res.data)
    entries = list(contours)
    assert [e.level.alpha for e in entries] == sorted(e.level.alpha for e in entries)
    for outer, inner in zip(entries, entries[1:]):
        assert all(point_in_polygon(outer.polygon, v, tol=1e-9) for v in inner.polygon)


def test_single_member_level_gives_one_vertex(tri):
    lv = LevelSet(AlphaLevel(1, 2, 3), (0,))
    (entry,) = contours_from_level_sets([lv], tri)
    assert entry.polygon.tolist() == [[0.0, 1.0]]
    assert json.loads(json.dumps(entry.to_json())) == {"alpha": "2/3", "vertices": [[0.0, 1.0]]}


def test_point_in_polygon_edges():
    square = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)
    assert point_in_polygon(square, [0.5, 0.0])
    assert point_in_polygon(square, [1.0, 1.0])
    assert not point_in_polygon(square, [1.0 + 1e-6, 0.5])
    seg = np.array([[0, 0], [2, 0]], float)
    assert point_in_polygon(seg, [1, 0]) and not point_in_polygon(seg, [3, 0])
