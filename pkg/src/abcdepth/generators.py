"""Seeded synthetic datasets: Gaussian cloud, uniform ring, fixed triangle, box."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import DataMatrix

KINDS = ("gaussian", "ring", "triangle", "uniform_box")

TRIANGLE = np.array([[0.0, 1.0], [-1.0, 0.0], [1.0, 0.0]])


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int = 100
    d: int = 2
    params: dict = field(default_factory=dict)
    seed: int = 0

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind != "triangle" and (self.n < 1 or self.d < 1):
            raise ValueError("n and d must be >= 1")
        if self.kind == "ring":
            r1, r2 = self.params.get("r1", 1.0), self.params.get("r2", 2.0)
            if self.d != 2:
                raise ValueError("ring data is planar (d=2)")
            if not 0 < r1 < r2:
                raise ValueError(f"ring radii need 0 < r1 < r2, got {r1}, {r2}")
        if self.kind == "uniform_box":
            lo, hi = self._box()
            if np.any(hi < lo):
                raise ValueError("box corners out of order")

    def _box(self):
        lo = np.broadcast_to(np.asarray(self.params.get("lo", -1.0), float), (self.d,))
        hi = np.broadcast_to(np.asarray(self.params.get("hi", 1.0), float), (self.d,))
        return lo, hi


def generate(spec: GeneratorSpec) -> DataMatrix:
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "triangle":
        return DataMatrix.from_points(TRIANGLE)
    if spec.kind == "gaussian":
        return DataMatrix.from_points(rng.standard_normal((spec.n, spec.d)))
    if spec.kind == "ring":
        r1, r2 = spec.params.get("r1", 1.0), spec.params.get("r2", 2.0)
        # radius by inverse CDF of the area law, angle uniform
        u = rng.uniform(size=spec.n)
        theta = rng.uniform(0.0, 2 * np.pi, size=spec.n)
        r = np.sqrt(r1 * r1 + u * (r2 * r2 - r1 * r1))
        return DataMatrix.from_points(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))
    lo, hi = spec._box()
    return DataMatrix.from_points(rng.uniform(lo, hi, size=(spec.n, spec.d)))


def gaussian(n: int, d: int = 2, seed=0) -> DataMatrix:
    return generate(GeneratorSpec("gaussian", n, d, seed=seed))


def ring(n: int, r1: float = 1.0, r2: float = 2.0, seed=0) -> DataMatrix:
    return generate(GeneratorSpec("ring", n, 2, {"r1": r1, "r2": r2}, seed))


def triangle() -> DataMatrix:
    return generate(GeneratorSpec("triangle", 3, 2))
