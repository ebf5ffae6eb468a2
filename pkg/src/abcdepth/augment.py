"""Artificial points added to sparse samples.

Two regions matter.  Depth regions of positive depth live inside the convex
hull of the sample, so that is where candidate points are useful.  Balls
only behave like halfplanes when their centres are far away, so distant
points make good ball centres.  The default ``"mixed"`` domain therefore
splits the budget between the sample's hull and a widely inflated box.
"""
from __future__ import annotations

import numpy as np

from .hull import convex_hull_2d

DOMAINS = ("mixed", "box", "hull")


def uniform_in_box(points, count, inflate, rng, min_half=None) -> np.ndarray:
    """Uniform draws from the bounding box of ``points`` scaled about its centre."""
    if count < 0:
        raise ValueError("count must be >= 0")
    points = np.asarray(points, dtype=float)
    lo, hi = points.min(axis=0), points.max(axis=0)
    center = (lo + hi) / 2
    half = (hi - lo) / 2 * inflate
    if min_half is not None:
        half = np.maximum(half, min_half)
    return rng.uniform(center - half, center + half, size=(count, points.shape[1]))


def uniform_in_hull(points, count, rng, inflate: float = 1.2) -> np.ndarray:
    """Uniform draws from the convex hull of ``points``.

    Exact for d <= 3.  Higher dimensions, and hulls with no volume, fall back
    to the inflated bounding box.
    """
    points = np.asarray(points, dtype=float)
    d = points.shape[1]
    if count == 0:
        return np.empty((0, d))
    if d == 1:
        return rng.uniform(points.min(), points.max(), size=(count, 1))
    simplices = _triangulate(points)
    if simplices is None:
        return uniform_in_box(points, count, inflate, rng)
    vols = np.abs(np.linalg.det(simplices[:, 1:] - simplices[:, :1]))
    pick = rng.choice(len(simplices), size=count, p=vols / vols.sum())
    weights = rng.dirichlet(np.ones(d + 1), size=count)
    return np.einsum("ij,ijk->ik", weights, simplices[pick])


def _triangulate(points):
    d = points.shape[1]
    if d == 2:
        poly = convex_hull_2d(points)
        if len(poly) < 3:
            return None
        return np.stack(
            [np.stack([poly[0], poly[i], poly[i + 1]]) for i in range(1, len(poly) - 1)]
        )
    if d == 3 and len(points) > 3:
        from scipy.spatial import Delaunay, QhullError

        try:
            tri = Delaunay(points)
        except QhullError:
            return None
        simplices = points[tri.simplices]
        vols = np.abs(np.linalg.det(simplices[:, 1:] - simplices[:, :1]))
        if not np.any(vols > 0):
            return None
        return simplices
    return None


def artificial_points(
    points,
    count: int,
    rng,
    domain: str = "mixed",
    inflate: float = 1.2,
    far_inflate: float = 100.0,
) -> np.ndarray:
    if count < 0:
        raise ValueError("count must be >= 0")
    if domain == "box":
        return uniform_in_box(points, count, inflate, rng)
    if domain == "hull":
        return uniform_in_hull(points, count, rng, inflate)
    if domain == "mixed":
        near = count - count // 2
        return np.vstack(
            [
                uniform_in_hull(points, near, rng, inflate),
                uniform_in_box(points, count // 2, far_inflate, rng),
            ]
        )
    raise ValueError(f"unknown augmentation domain {domain!r}; expected one of {DOMAINS}")
