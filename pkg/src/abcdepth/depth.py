"""Ball-intersection level sets, Tukey median, point depth and contour levels.

A candidate row ``q`` lies in the level set of cardinality ``m`` when it is
inside every closed ball, centred at any row, whose radius is chosen so that
it holds ``m`` original points.  Level ``m`` corresponds to the canonical
depth ``(n - m + 1) / n`` with ``n`` the number of original points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .augment import DOMAINS, artificial_points, uniform_in_box
from .data import BallIndex, DataError, DataMatrix, index_for, point_distances


@dataclass(frozen=True)
class AlphaLevel:
    k: int
    m: int
    n: int

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.n - self.m + 1, self.n)

    @property
    def label(self) -> str:
        """Unreduced ``"count/n"`` form of the level."""
        return f"{self.n - self.m + 1}/{self.n}"


@dataclass(frozen=True)
class LevelSet:
    level: AlphaLevel
    members: tuple[int, ...]

    @property
    def is_empty(self) -> bool:
        return not self.members

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def depth(self) -> Fraction:
        return self.level.alpha


@dataclass(frozen=True)
class DepthResult:
    """Depth ``count / n``; ``mode`` is ``"sample"`` or ``"external"``."""

    count: int
    n: int
    k_iterations: int
    mode: str
    n_balls_used: int

    @property
    def depth(self) -> Fraction:
        return Fraction(self.count, self.n)

    @property
    def label(self) -> str:
        return f"{self.count}/{self.n}"


@dataclass(frozen=True)
class AugmentationConfig:
    n_artificial: int = 0
    inflate: float = 1.2
    seed: int = 0
    domain: str = "mixed"
    far_inflate: float = 100.0
    l: int = 4  # noqa: E741
    p: int = 200
    max_reaugment: int = 5
    growth_factor: int = 20

    def __post_init__(self):
        if self.n_artificial < 0:
            raise ValueError("n_artificial must be >= 0")
        if self.inflate < 1:
            raise ValueError("inflate must be >= 1")
        if self.l < 1 or self.p < 1:
            raise ValueError("l and p must be >= 1")
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown augmentation domain {self.domain!r}")


@dataclass
class MedianResult:
    levels: list[LevelSet]
    deepest: LevelSet
    data: DataMatrix
    index: BallIndex = field(repr=False)
    k_iterations: int = 0

    def __iter__(self):
        return iter((self.levels, self.deepest))

    @property
    def depth(self) -> Fraction:
        return self.deepest.depth

    def member_points(self, level: LevelSet | None = None) -> np.ndarray:
        level = self.deepest if level is None else level
        return self.data.values[list(level.members)]


@dataclass
class ContourLevels:
    levels: list[LevelSet]
    data: DataMatrix
    n_reaugmentations: int = 0


def ball_cardinality(n: int, alpha) -> int:
    """``floor(n (1 - alpha) + 1)`` clamped to ``[1, n]``; exact for rationals."""
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha = Fraction(alpha).limit_denominator() if isinstance(alpha, float) else Fraction(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha={alpha} outside (0, 1]")
    m = math.floor(n * (1 - alpha) + 1)
    return min(max(m, 1), n)


def _radii(index: BallIndex, m: int) -> np.ndarray:
    if not 1 <= m <= index.n_original:
        raise ValueError(f"ball cardinality m={m} outside [1, {index.n_original}]")
    return index.original_dists[:, m - 1]


def level_set(index: BallIndex, X: DataMatrix, m: int, candidates=None) -> LevelSet:
    """Rows lying in every ``m``-ball; candidates default to all rows."""
    radii = _radii(index, m)
    square = index.distances.square
    if candidates is None:
        candidates = np.arange(X.n_total)
    candidates = np.asarray(candidates, dtype=np.intp)
    inside = (square[:, candidates] <= radii[:, None]).all(axis=0)
    members = tuple(int(c) for c in np.sort(candidates[inside]))
    return LevelSet(AlphaLevel(1, m, X.n_original), members)


def required_cardinality(index: BallIndex, candidates=None) -> np.ndarray:
    """Smallest ``m`` for which each candidate lies in every ``m``-ball.

    Ball ``j`` at cardinality ``m`` contains ``q`` exactly when fewer than
    ``m`` original points are strictly closer to ``x_j`` than ``q`` is, so the
    threshold is one plus the largest such count over all centres.
    """
    square = index.distances.square
    if candidates is None:
        candidates = np.arange(index.n_total)
    candidates = np.asarray(candidates, dtype=np.intp)
    worst = np.zeros(len(candidates), dtype=np.int64)
    for j in range(index.n_total):
        closer = np.searchsorted(
            index.original_dists[j], square[j, candidates], side="left"
        )
        np.maximum(worst, closer, out=worst)
    return worst + 1


def _augment(X: DataMatrix, aug: AugmentationConfig | None) -> DataMatrix:
    if aug is None or aug.n_artificial == 0:
        return X
    pts = generate_artificial_points(
        X, aug.n_artificial, aug.inflate, aug.seed, domain=aug.domain, far_inflate=aug.far_inflate
    )
    return X.augmented(pts)


def tukey_median(
    X: DataMatrix, aug: AugmentationConfig | None = None, index: BallIndex | None = None
) -> MedianResult:
    """Deepest level set by descending ball cardinality from ``1/(d+1)``.

    If ``index`` is given it must already describe the (augmented) data and
    ``X`` is taken as is.
    """
    if index is None:
        X = _augment(X, aug)
        index = index_for(X)
    levels, deepest, k = median_from_index(index, X)
    return MedianResult(levels, deepest, X, index, k)


def median_from_index(index: BallIndex, X: DataMatrix):
    """Iteration phase of the median search; returns ``(levels, deepest, k)``."""
    n = X.n_original
    members, thresholds = _level_lookup(index)
    m_start = ball_cardinality(n, Fraction(1, X.d + 1))
    levels = _descend(members, m_start, n, step_offset=0)
    k = len(levels)
    nonempty = [lv for lv in levels if not lv.is_empty]
    if not nonempty:
        # the 1/(d+1) level is empty on this candidate set: climb from m = n
        levels = _descend(members, n, n, step_offset=k)
        k += len(levels)
        nonempty = [lv for lv in levels if not lv.is_empty]
    deepest = nonempty[-1]
    if deepest.size == 1 and thresholds[0] < deepest.level.m:
        # a lone survivor stays alone down to its own threshold
        deepest = LevelSet(AlphaLevel(deepest.level.k, int(thresholds[0]), n), deepest.members)
        nonempty[-1] = deepest
    return nonempty, deepest, k


def _level_lookup(index: BallIndex):
    """``members(m)`` for every ``m`` from one pass over the balls."""
    thresholds = required_cardinality(index)
    order = np.argsort(thresholds, kind="stable")
    ordered = thresholds[order]

    def members(m):
        stop = np.searchsorted(ordered, m, side="right")
        return tuple(sorted(int(c) for c in order[:stop]))

    return members, ordered


def _descend(members, m_start: int, n: int, step_offset: int) -> list[LevelSet]:
    levels = []
    m, k = m_start, 1
    while m >= 1:
        level = LevelSet(AlphaLevel(step_offset + k, m, n), members(m))
        levels.append(level)
        if level.size <= 1:
            break
        m -= 1
        k += 1
    return levels


def _check_sample_row(X: DataMatrix, i: int) -> None:
    if not 0 <= i < X.n_original:
        raise IndexError(f"row {i} is not an original point (n={X.n_original})")


def sample_point_depth(index: BallIndex, X: DataMatrix, i: int) -> DepthResult:
    """Depth of original row ``i`` by counting the balls that contain it."""
    _check_sample_row(X, i)
    return _count_depth(index, index.distances.square[:, i], X.n_original, "sample", 2)


def external_point_depth(index: BallIndex, X: DataMatrix, q) -> DepthResult:
    """Depth of an arbitrary point, tested geometrically against every ball."""
    q = np.asarray(q, dtype=float).reshape(-1)
    if q.shape[0] != X.d:
        raise DataError(f"point has dimension {q.shape[0]}, data has {X.d}")
    dist = point_distances(X.values, q)
    return _count_depth(index, dist, X.n_original, "external", 1)


def _count_depth(index, dist, n, mode, k_first) -> DepthResult:
    n_balls = index.n_total
    k = k_first
    while k <= n:
        m = n - k + 1
        inside = np.count_nonzero(dist <= index.original_dists[:, m - 1])
        if inside != n_balls:
            return DepthResult(k - 1, n, k, mode, n_balls)
        k += 1
    return DepthResult(n, n, max(n, 1), mode, n_balls)


def sample_depths(index: BallIndex, X: DataMatrix) -> list[Fraction]:
    """Depths of all original rows at once (same values as the counting loop)."""
    n = X.n_original
    thresholds = required_cardinality(index, np.arange(n))
    return [Fraction(n - int(t) + 1, n) for t in thresholds]


def generate_artificial_points(
    X: DataMatrix,
    count: int,
    inflate: float = 1.2,
    seed=0,
    rng=None,
    domain: str = "mixed",
    far_inflate: float = 100.0,
) -> np.ndarray:
    """Seeded artificial points around the original rows.

    ``domain="box"`` draws from the bounding box scaled by ``inflate``;
    ``"hull"`` from the convex hull; ``"mixed"`` puts half in the hull and
    half in the box scaled by ``far_inflate``.
    """
    rng = rng or np.random.default_rng(seed)
    return artificial_points(X.original, count, rng, domain, inflate, far_inflate)


def contour_levels(X: DataMatrix, aug: AugmentationConfig | None = None) -> ContourLevels:
    """Level sets for every depth from ``1/n`` upward, densified on demand.

    Whenever a level holds fewer than ``aug.l`` rows, ``aug.p`` uniform points
    are added around it and the index is rebuilt before the level is
    recomputed.
    """
    aug = aug or AugmentationConfig()
    n = X.n_original
    rng = np.random.default_rng(aug.seed)
    if aug.n_artificial:
        X = X.augmented(
            artificial_points(
                X.original, aug.n_artificial, rng, aug.domain, aug.inflate, aug.far_inflate
            )
        )
    row_cap = max(aug.growth_factor * n, X.n_total + aug.max_reaugment * aug.p)
    members, _ = _level_lookup(index_for(X))
    levels: list[LevelSet] = []
    n_reaug = 0
    k = 1
    while k <= n:
        m = n - k + 1
        level = LevelSet(AlphaLevel(k, m, n), members(m))
        attempts = 0
        while (
            level.size < aug.l
            and attempts < aug.max_reaugment
            and X.n_total + aug.p <= row_cap
        ):
            region, min_half = _region(X, level, levels)
            pts = uniform_in_box(region, aug.p, aug.inflate, rng, min_half)
            X = X.augmented(pts)
            members, _ = _level_lookup(index_for(X))
            level = LevelSet(AlphaLevel(k, m, n), members(m))
            attempts += 1
            n_reaug += 1
        if level.is_empty:
            break
        levels.append(level)
        if level.size <= 1:
            break
        k += 1
    return ContourLevels(levels, X, n_reaug)


def _region(X: DataMatrix, level: LevelSet, previous: list[LevelSet]):
    """Points whose box frames the new artificial data, plus a minimum half-width.

    A level with fewer than two distinct points has no extent of its own, so
    the half-widths of the last spread-out level are borrowed.
    """
    outer = None
    for lv in reversed(previous):
        pts = X.values[list(lv.members)]
        if np.all(np.ptp(pts, axis=0) > 0):
            outer = pts
            break
    if outer is None:
        outer = X.original
    spread = np.ptp(outer, axis=0) / 2
    if level.is_empty:
        return outer, None
    pts = X.values[list(level.members)]
    if np.all(np.ptp(pts, axis=0) > 0):
        return pts, None
    return pts, spread / 2
