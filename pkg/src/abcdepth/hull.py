"""Planar convex hulls and depth contours."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .data import DataMatrix
    from .depth import AlphaLevel, LevelSet


class UnsupportedDimensionError(ValueError):
    pass


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points) -> np.ndarray:
    """QuickHull.  Returns counterclockwise vertices starting at the
    lexicographically smallest point; points on hull edges are dropped.

    A single distinct point gives one vertex, a collinear set its two
    extremes.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise UnsupportedDimensionError("convex hull needs 2-D points")
    if len(pts) == 0:
        raise ValueError("convex hull of an empty point set")
    pts = np.unique(pts, axis=0)  # lexicographically sorted
    lo, hi = pts[0], pts[-1]
    if len(pts) == 1:
        return pts.copy()
    rest = pts[1:-1]
    side = (hi[0] - lo[0]) * (rest[:, 1] - lo[1]) - (hi[1] - lo[1]) * (rest[:, 0] - lo[0])
    below = rest[side < 0]
    above = rest[side > 0]
    # walking lo -> hi along the lower chain, then back along the upper one
    chain = [lo] + _hull_chain(below, lo, hi) + [hi] + _hull_chain(above, hi, lo)
    return np.array(chain)


def _hull_chain(points: np.ndarray, a, b) -> list:
    """Hull vertices strictly right of the directed line a -> b, in order."""
    out = []
    stack = [(points, a, b)]
    # LIFO: push the far -> b half first so a -> far is emitted before it
    while stack:
        item = stack.pop()
        if isinstance(item, _Emit):
            out.append(item.point)
            continue
        pts, p, q = item
        if len(pts) == 0:
            continue
        dist = (q[0] - p[0]) * (pts[:, 1] - p[1]) - (q[1] - p[1]) * (pts[:, 0] - p[0])
        far = pts[int(np.argmin(dist))]
        left_of_pf = (far[0] - p[0]) * (pts[:, 1] - p[1]) - (far[1] - p[1]) * (pts[:, 0] - p[0])
        left_of_fq = (q[0] - far[0]) * (pts[:, 1] - far[1]) - (q[1] - far[1]) * (pts[:, 0] - far[0])
        stack.append((pts[left_of_fq < 0], far, q))
        stack.append(_Emit(far))
        stack.append((pts[left_of_pf < 0], p, far))
    return out


@dataclass(frozen=True)
class _Emit:
    point: np.ndarray


@dataclass(frozen=True)
class ContourEntry:
    level: AlphaLevel
    members: tuple[int, ...]
    polygon: np.ndarray

    def to_json(self) -> dict:
        return {
            "alpha": self.level.label,
            "vertices": [[float(x), float(y)] for x, y in self.polygon],
        }


@dataclass(frozen=True)
class ContourSet:
    entries: tuple[ContourEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def contours_from_level_sets(levels: list[LevelSet], X: DataMatrix) -> ContourSet:
    if X.d != 2:
        raise UnsupportedDimensionError("contours require d=2")
    entries = []
    for lv in sorted(levels, key=lambda lv: (lv.depth, -lv.size)):
        if lv.is_empty:
            continue
        polygon = convex_hull_2d(X.values[list(lv.members)])
        entries.append(ContourEntry(lv.level, lv.members, polygon))
    return ContourSet(tuple(entries))


def point_in_polygon(polygon, q, tol: float = 1e-9) -> bool:
    """Inside-or-on test for a convex CCW polygon (signed-area criterion)."""
    poly = np.asarray(polygon, dtype=float)
    q = np.asarray(q, dtype=float)
    if len(poly) == 1:
        return bool(np.linalg.norm(q - poly[0]) <= tol)
    if len(poly) == 2:
        a, b = poly
        if abs(_cross(a, b, q)) > tol * max(1.0, np.linalg.norm(b - a)):
            return False
        t = np.dot(q - a, b - a) / np.dot(b - a, b - a)
        return bool(-tol <= t <= 1 + tol)
    for i in range(len(poly)):
        if _cross(poly[i], poly[(i + 1) % len(poly)], q) < -tol:
            return False
    return True
