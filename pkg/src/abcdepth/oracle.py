"""Reference depths used to check the ball-intersection approximation.

The planar oracle is exact: coordinates are shifted to integers without
rounding, so every orientation test is decided in integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

import numpy as np

from .data import DataMatrix
from .hull import UnsupportedDimensionError


def exact_depth_1d(xs, x) -> Fraction:
    xs = np.asarray(xs, dtype=float).reshape(-1)
    if xs.size == 0:
        raise ValueError("empty sample")
    left = int(np.count_nonzero(xs <= x))
    right = int(np.count_nonzero(xs >= x))
    return Fraction(min(left, right), xs.size)


def _as_data(X) -> DataMatrix:
    return X if isinstance(X, DataMatrix) else DataMatrix.from_points(X)


def exact_offsets(points, q) -> list[tuple[int, int]]:
    """``points - q`` as integer pairs scaled by a common power of two."""
    pairs = [(Fraction(float(x)) - Fraction(float(q[0])), Fraction(float(y)) - Fraction(float(q[1])))
             for x, y in points]
    denom = 1
    for a, b in pairs:
        denom = max(denom, a.denominator, b.denominator)
    # every denominator is a power of two, so the largest is a common multiple
    return [(int(a * denom), int(b * denom)) for a, b in pairs]


def _half(v) -> int:
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _in_open_half_turn(base, v) -> bool:
    """True when ``v`` lies in the angular range (base, base + pi]."""
    c = base[0] * v[1] - base[1] * v[0]
    if c != 0:
        return c > 0
    return base[0] * v[0] + base[1] * v[1] < 0


def exact_depth_2d(X, q) -> Fraction:
    """Tukey depth of ``q`` w.r.t. the original rows of ``X`` (closed halfplanes).

    The minimum over halfplanes whose boundary passes through ``q`` is
    attained at a boundary direction just past some data direction, so one
    rotating sweep over the angularly sorted offsets suffices.
    """
    X = _as_data(X)
    if X.d != 2:
        raise UnsupportedDimensionError("exact planar depth needs d=2")
    n = X.n_original
    offsets = exact_offsets(X.original, q)
    coincident = sum(1 for v in offsets if v == (0, 0))
    dirs = sorted((v for v in offsets if v != (0, 0)), key=cmp_to_key(_angle_cmp))
    if not dirs:
        return Fraction(coincident, n)
    groups: list[list] = []  # [direction, weight]
    for v in dirs:
        if groups and _angle_cmp(groups[-1][0], v) == 0:
            groups[-1][1] += 1
        else:
            groups.append([v, 1])
    g = len(groups)
    best = len(dirs)
    j, count = 1, 0  # window holds groups i+1 .. j-1 (cyclic)
    for i in range(g):
        if j <= i:
            j, count = i + 1, 0
        while j < i + g and _in_open_half_turn(groups[i][0], groups[j % g][0]):
            count += groups[j % g][1]
            j += 1
        best = min(best, count)
        if j > i + 1:
            count -= groups[(i + 1) % g][1]
    return Fraction(coincident + best, n)


def brute_force_depth_2d(X, q) -> Fraction:
    """Exhaustive O(n^2) check: every boundary line through ``q`` and a data
    point, both sides, each rotated slightly either way."""
    X = _as_data(X)
    n = X.n_original
    offsets = exact_offsets(X.original, q)
    coincident = sum(1 for v in offsets if v == (0, 0))
    others = [v for v in offsets if v != (0, 0)]
    best = len(others)
    for a in others:
        for side in (1, -1):
            for tilt in (1, -1):
                count = 0
                for v in others:
                    c = a[0] * v[1] - a[1] * v[0]
                    if c != 0:
                        count += side * c > 0
                    else:
                        count += tilt * (a[0] * v[0] + a[1] * v[1]) > 0
                best = min(best, count)
    return Fraction(coincident + best, n)


def depth_upper_bound(X, q, n_dirs: int = 100, seed=0, directions=None) -> Fraction:
    """Minimum univariate depth over projections on random unit directions.

    Directions come from one seeded stream, so a larger ``n_dirs`` with the
    same seed extends the previous set and can only lower the bound.
    """
    X = _as_data(X)
    q = np.asarray(q, dtype=float).reshape(-1)
    if directions is None:
        if n_dirs < 1:
            raise ValueError("n_dirs must be >= 1")
        dirs = np.random.default_rng(seed).standard_normal((n_dirs, X.d))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    else:
        dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    # project offsets so that copies of q land exactly on zero
    proj = (X.original - q) @ dirs.T
    left = (proj <= 0).sum(axis=0)
    right = (proj >= 0).sum(axis=0)
    return Fraction(int(np.minimum(left, right).min()), X.n_original)


def exact_depth(X: DataMatrix, q) -> Fraction:
    if X.d == 1:
        return exact_depth_1d(X.original[:, 0], float(np.asarray(q).reshape(-1)[0]))
    if X.d == 2:
        return exact_depth_2d(X, q)
    raise UnsupportedDimensionError(f"no exact oracle for d={X.d}")


@dataclass(frozen=True)
class AccuracyReport:
    n: int
    n_exact_match: int
    mean_abs_error: Fraction

    @property
    def accuracy_percent(self) -> float:
        return 100.0 * self.n_exact_match / self.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "matches": self.n_exact_match,
            "accuracy_percent": self.accuracy_percent,
            "mae": float(self.mean_abs_error),
        }


def accuracy_report(X: DataMatrix, approx_depths) -> AccuracyReport:
    if X.d > 2:
        raise UnsupportedDimensionError("accuracy needs an exact oracle (d <= 2)")
    approx = [Fraction(a) for a in approx_depths]
    if len(approx) != X.n_original:
        raise ValueError("need one approximate depth per original point")
    exact = [exact_depth(X, X.original[i]) for i in range(X.n_original)]
    matches = sum(a == e for a, e in zip(approx, exact))
    mae = sum((abs(a - e) for a, e in zip(approx, exact)), Fraction(0)) / X.n_original
    return AccuracyReport(X.n_original, matches, mae)
