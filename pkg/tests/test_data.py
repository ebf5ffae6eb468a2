import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from abcdepth import (
    DataError,
    DataMatrix,
    ball_contains,
    ball_radius,
    build_ball_index,
    index_for,
    load_csv,
    pairwise_distances,
)
from abcdepth.data import point_distances


def test_load_plain(write_csv):
    X = load_csv(write_csv("0,1\n-1,0\n1,0"))
    assert (X.n_original, X.d) == (3, 2)
    assert X.values.tolist() == [[0, 1], [-1, 0], [1, 0]]


def test_load_header(write_csv):
    X = load_csv(write_csv("x,y\n0,1\n"), has_header=True)
    assert (X.n_original, X.d) == (1, 2)


def test_load_ragged(write_csv):
    with pytest.raises(DataError, match="ragged row at line 2"):
        load_csv(write_csv("0,1\n2"))


def test_load_non_numeric(write_csv):
    with pytest.raises(DataError, match="line 2, column 2"):
        load_csv(write_csv("0,1\n2,abc\n"))


def test_load_empty_and_missing(write_csv, tmp_path):
    with pytest.raises(DataError, match="no data rows"):
        load_csv(write_csv("x,y\n"), has_header=True)
    with pytest.raises(DataError):
        load_csv(str(tmp_path / "nope.csv"))


def test_values_are_read_only():
    X = DataMatrix.from_points([[0.0, 1.0]])
    with pytest.raises(ValueError):
        X.values[0, 0] = 5.0


def test_augmented_keeps_original_count():
    X = DataMatrix.from_points([[0.0], [1.0]]).augmented([[5.0], [6.0], [7.0]])
    assert X.n_original == 2 and X.n_total == 5
    assert X.is_original.tolist() == [True, True, False, False, False]
    with pytest.raises(DataError):
        X.augmented([[1.0, 2.0]])


def test_distance_examples():
    D = pairwise_distances(DataMatrix.from_points([[0.0, 0.0], [3.0, 4.0]]))
    assert len(D) == 1 and D[1, 0] == 5.0
    D = pairwise_distances(DataMatrix.from_points([[0.0], [1.0], [2.0]]))
    assert (D[1, 0], D[2, 0], D[2, 1]) == (1.0, 2.0, 1.0)
    assert len(pairwise_distances(DataMatrix.from_points([[1.0, 2.0]]))) == 0


def test_triangle_neighbors(tri):
    index = index_for(tri)
    # B(-1,0): itself, then A at sqrt(2), then C at 2
    assert index.neighbors[1].tolist() == [1, 0, 2]


def test_ball_examples(line3, tri):
    idx = index_for(line3)
    assert ball_radius(idx, 1, 2) == 1.0
    assert ball_contains(idx, 0, 2, [1.0])
    assert not ball_contains(idx, 2, 2, [0.0])
    t = index_for(tri)
    assert ball_radius(t, 1, 2) == math.sqrt(2)
    assert ball_contains(t, 1, 2, [0.0, 1.0])  # exactly on the sphere
    assert ball_contains(t, 1, 2, 0)


def test_ball_errors(line3):
    idx = index_for(line3)
    with pytest.raises(ValueError):
        ball_radius(idx, 0, 0)
    with pytest.raises(ValueError):
        ball_radius(idx, 0, 4)
    with pytest.raises(DataError):
        ball_contains(idx, 0, 1, [1.0, 2.0])


def test_radius_counts_originals_only():
    X = DataMatrix.from_points([[0.0, 0.0]]).augmented(np.random.default_rng(0).normal(size=(20, 2)))
    idx = index_for(X)
    assert ball_radius(idx, 0, 1) == 0.0
    assert ball_radius(idx, 5, 1, count_original_only=True) == np.linalg.norm(X.values[5])
    assert ball_radius(idx, 0, 2, count_original_only=False) > 0


small_sets = st.integers(1, 40).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda d: arrays(
            np.float64,
            (n, d),
            elements=st.one_of(
                st.integers(-3, 3).map(float),
                st.floats(-100, 100, allow_nan=False, width=32),
            ),
        )
    )
)


@given(small_sets)
def test_neighbors_match_per_row_sort(pts):
    X = DataMatrix.from_points(pts)
    D = pairwise_distances(X)
    index = build_ball_index(D, X)
    for j in range(X.n_total):
        row = [math.dist(pts[j], pts[i]) for i in range(X.n_total)]
        expect = sorted(range(X.n_total), key=lambda i: (D.square[j, i], i))
        assert index.neighbors[j].tolist() == expect
        # the kernel agrees with an independent distance to within rounding
        assert np.allclose(D.square[j], row, rtol=1e-12, atol=1e-12)


@given(small_sets)
def test_distances_symmetric_and_match_query_kernel(pts):
    X = DataMatrix.from_points(pts)
    sq = pairwise_distances(X).square
    assert np.array_equal(sq, sq.T)
    assert np.all(np.diag(sq) == 0)
    for j in range(len(pts)):
        assert np.array_equal(point_distances(X.values, pts[j]), sq[:, j])


@given(small_sets)
def test_radius_monotone_and_ball_holds_m(pts):
    X = DataMatrix.from_points(pts)
    idx = index_for(X)
    n = X.n_original
    for j in range(n):
        radii = [ball_radius(idx, j, m) for m in range(1, n + 1)]
        assert radii == sorted(radii)
        for m in range(1, n + 1):
            inside = np.count_nonzero(idx.distances.square[j] <= radii[m - 1])
            assert inside >= m
            if m < n and radii[m - 1] < radii[m]:
                assert inside == m


@pytest.mark.parametrize("d", [1, 2, 9, 50])
def test_threads_bit_identical(d):
    X = DataMatrix.from_points(np.random.default_rng(d).normal(size=(57, d)))
    one = pairwise_distances(X, threads=1).square
    three = pairwise_distances(X, threads=3).square
    assert np.array_equal(one, three)
    assert np.array_equal(index_for(X, 1).neighbors, index_for(X, 3).neighbors)


def test_distance_store_rows():
    D = pairwise_distances(DataMatrix.from_points([[0.0], [1.0], [3.0]]))
    assert D.n == 3
    assert [r.tolist() for r in D.rows] == [[], [1.0], [3.0, 2.0]]
