"""Datasets, pairwise distances and the sorted ball index.

Every depth computation in this package works on closed Euclidean balls
centred at dataset rows.  A ball of cardinality ``m`` around row ``j`` is the
smallest closed ball containing ``m`` original points; its radius is the
``m``-th smallest distance from ``x_j`` to an original point.
"""
from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class DataError(ValueError):
    """Malformed or inconsistent input data."""


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """``n_total`` points in R^d; the first ``n_original`` rows are the sample.

    Rows after ``n_original`` are artificial points.  They act as ball
    centres and candidates but never carry mass in the counting measure.
    """

    values: np.ndarray
    n_original: int

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise DataError("data must be a non-empty n x d matrix")
        if not np.all(np.isfinite(values)):
            raise DataError("data contains non-finite coordinates")
        if not 1 <= self.n_original <= values.shape[0]:
            raise DataError(
                f"n_original={self.n_original} outside [1, {values.shape[0]}]"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_points(cls, points) -> DataMatrix:
        arr = np.asarray(points, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        return cls(arr, n_original=arr.shape[0])

    @property
    def n_total(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    @property
    def is_original(self) -> np.ndarray:
        mask = np.zeros(self.n_total, dtype=bool)
        mask[: self.n_original] = True
        return mask

    @property
    def original(self) -> np.ndarray:
        return self.values[: self.n_original]

    def augmented(self, points) -> DataMatrix:
        """Return a copy with ``points`` appended as artificial rows."""
        extra = np.asarray(points, dtype=float)
        if extra.size == 0:
            return self
        if extra.ndim == 1 and self.d == 1:
            extra = extra[:, None]
        if extra.ndim != 2 or extra.shape[1] != self.d:
            raise DataError(f"artificial points have shape {extra.shape}, data has d={self.d}")
        if extra.shape[0] == 0:
            return self
        return DataMatrix(np.vstack([self.values, extra]), self.n_original)


def load_csv(path, has_header: bool = False) -> DataMatrix:
    """Read a comma-separated numeric file into a :class:`DataMatrix`."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"no such file: {path}")
    rows = []
    width = None
    with path.open(newline="") as fh:
        for lineno, record in enumerate(csv.reader(fh), start=1):
            if has_header and lineno == 1:
                continue
            if not record or all(not cell.strip() for cell in record):
                continue
            if width is None:
                width = len(record)
            elif len(record) != width:
                raise DataError(f"ragged row at line {lineno}")
            row = []
            for col, cell in enumerate(record, start=1):
                try:
                    row.append(float(cell))
                except ValueError:
                    raise DataError(
                        f"non-numeric cell {cell!r} at line {lineno}, column {col}"
                    ) from None
            rows.append(row)
    if not rows:
        raise DataError(f"no data rows in {path}")
    return DataMatrix.from_points(rows)


def point_distances(points: np.ndarray, q) -> np.ndarray:
    """Euclidean distances from every row of ``points`` to ``q``.

    Squares are accumulated coordinate by coordinate, in the same order as
    :func:`pairwise_distances`, so a query equal to a dataset row reproduces
    the stored distances bit for bit.
    """
    points = np.asarray(points, dtype=float)
    q = np.asarray(q, dtype=float).reshape(-1)
    acc = np.zeros(points.shape[0])
    for k in range(points.shape[1]):
        t = points[:, k] - q[k]
        acc += t * t
    return np.sqrt(acc)


@dataclass(frozen=True, eq=False)
class DistanceStore:
    """Pairwise distances of a :class:`DataMatrix`.

    The lower triangle is what gets computed; it is mirrored into a square
    array because ball membership needs ``d(x_j, x_q)`` for arbitrary pairs.
    """

    square: np.ndarray

    @property
    def n(self) -> int:
        return self.square.shape[0]

    @property
    def rows(self) -> list[np.ndarray]:
        """Row ``i`` holds ``d(x_i, x_j)`` for ``j < i`` (row 0 is empty)."""
        return [self.square[i, :i] for i in range(self.n)]

    def __len__(self) -> int:
        return self.n * (self.n - 1) // 2

    def __getitem__(self, ij) -> float:
        i, j = ij
        return float(self.square[i, j])


def pairwise_distances(X: DataMatrix, threads: int = 1) -> DistanceStore:
    """All pairwise distances, one coordinate at a time (O(n^2 d)).

    Both triangles are evaluated; ``(a - b)**2 == (b - a)**2`` exactly, so
    the result is symmetric without a mirroring pass.
    """
    n, d = X.values.shape
    columns = np.ascontiguousarray(X.values.T)  # strided column reads cost more as d grows
    square = np.zeros((n, n))

    def fill(a, b):
        acc = square[a:b]
        tmp = np.empty_like(acc)
        for k in range(d):
            col = columns[k]
            np.subtract(col[a:b, None], col[None, :], out=tmp)
            np.multiply(tmp, tmp, out=tmp)
            acc += tmp
        np.sqrt(acc, out=acc)

    if threads > 1 and n > 1:
        step = -(-n // threads)
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(lambda a: fill(a, min(a + step, n)), range(0, n, step)))
    else:
        fill(0, n)
    square.setflags(write=False)
    return DistanceStore(square)


@dataclass(frozen=True, eq=False)
class BallIndex:
    """Per-centre neighbour lists sorted by distance (ties by point id).

    ``original_dists[j, m - 1]`` is the radius of the ball around ``x_j``
    holding ``m`` original points.
    """

    data: DataMatrix
    distances: DistanceStore
    neighbors: np.ndarray
    dists: np.ndarray
    original_rank: np.ndarray
    original_dists: np.ndarray
    n_original: int

    @property
    def n_total(self) -> int:
        return self.neighbors.shape[0]


def build_ball_index(D: DistanceStore, X: DataMatrix) -> BallIndex:
    if D.n != X.n_total:
        raise DataError("distance store does not match data matrix")
    n, n_orig = X.n_total, X.n_original
    # stable sort keeps ascending ids among equal distances
    idx_dtype = np.int32 if n < 2**31 else np.int64
    neighbors = np.argsort(D.square, axis=1, kind="stable").astype(idx_dtype)
    dists = np.take_along_axis(D.square, neighbors, axis=1)
    _, cols = np.nonzero(neighbors < n_orig)
    original_rank = cols.reshape(n, n_orig).astype(idx_dtype)
    original_dists = np.take_along_axis(dists, original_rank, axis=1)
    for arr in (neighbors, dists, original_rank, original_dists):
        arr.setflags(write=False)
    return BallIndex(X, D, neighbors, dists, original_rank, original_dists, n_orig)


def index_for(X: DataMatrix, threads: int = 1) -> BallIndex:
    """Distances plus ball index in one call."""
    return build_ball_index(pairwise_distances(X, threads=threads), X)


def _check_m(index: BallIndex, m: int, count_original_only: bool) -> None:
    limit = index.n_original if count_original_only else index.n_total
    if not 1 <= m <= limit:
        raise ValueError(f"ball cardinality m={m} outside [1, {limit}]")


def ball_radius(
    index: BallIndex, center: int, m: int, count_original_only: bool = True
) -> float:
    _check_m(index, m, count_original_only)
    table = index.original_dists if count_original_only else index.dists
    return float(table[center, m - 1])


def ball_contains(
    index: BallIndex,
    center: int,
    m: int,
    q,
    count_original_only: bool = True,
) -> bool:
    """Closed-ball test; ``q`` is a coordinate vector or a row id."""
    _check_m(index, m, count_original_only)
    if isinstance(q, (int, np.integer)):
        dist = index.distances.square[center, q]
    else:
        X = index.data
        q = np.asarray(q, dtype=float).reshape(-1)
        if q.shape[0] != X.d:
            raise DataError(f"query has dimension {q.shape[0]}, data has {X.d}")
        dist = point_distances(X.values[center : center + 1], q)[0]
    return bool(dist <= ball_radius(index, center, m, count_original_only))
