"""Timing harness for the median search on Gaussian samples."""
from __future__ import annotations

import csv
import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from .data import build_ball_index, pairwise_distances
from .depth import median_from_index
from .generators import gaussian

PHASES = ("distances", "index", "iteration")


@dataclass
class BenchRecord:
    n: int
    d: int
    distances: float
    index: float
    iteration: float
    total: float
    k_iterations: int
    repetitions: int

    @property
    def phase_sum(self) -> float:
        return self.distances + self.index + self.iteration


def time_median(n: int, d: int, repetitions: int = 3, seed: int = 0, threads: int = 1) -> BenchRecord:
    """Per-phase median wall time over ``repetitions`` fresh samples."""
    times = {key: [] for key in PHASES + ("total",)}
    k_max = 0
    for rep in range(repetitions):
        X = gaussian(n, d, seed=seed + rep)
        t0 = time.perf_counter()
        D = pairwise_distances(X, threads=threads)
        t1 = time.perf_counter()
        index = build_ball_index(D, X)
        t2 = time.perf_counter()
        _, _, k = median_from_index(index, X)
        t3 = time.perf_counter()
        times["distances"].append(t1 - t0)
        times["index"].append(t2 - t1)
        times["iteration"].append(t3 - t2)
        times["total"].append(t3 - t0)
        k_max = max(k_max, k)
    mid = {key: float(np.median(val)) for key, val in times.items()}
    return BenchRecord(n=n, d=d, k_iterations=k_max, repetitions=repetitions, **mid)


def loglog_slope(x, y) -> float:
    if len(x) < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def linear_r2(x, y) -> float:
    x, y = np.asarray(x, float), np.asarray(y, float)
    if len(x) < 2:
        return float("nan")
    coef = np.polyfit(x, y, 1)
    resid = y - np.polyval(coef, x)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    return 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0


def bench_scaling(
    mode: str,
    grid,
    fixed: int,
    repetitions: int = 3,
    seed: int = 0,
    threads: int = 1,
):
    """Time the median over ``grid`` (values of n or d) with the other fixed.

    Returns ``(records, summary)``.  For ``n_scaling`` the summary carries the
    log-log slope of total time against n; for ``d_scaling`` the linear R^2
    of time against d and per-doubling ratios.  Only the distance phase
    depends on d, so its ratios are the ones to compare against 2.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    grid = sorted(int(g) for g in grid)
    if mode == "n_scaling":
        time_median(grid[0], fixed, 1, seed, threads)  # warm-up, untimed
        records = [time_median(n, fixed, repetitions, seed, threads) for n in grid]
        summary = {
            "mode": mode,
            "d": fixed,
            "exponent_total": loglog_slope(grid, [r.total for r in records]),
            "exponent_distances": loglog_slope(grid, [r.distances for r in records]),
        }
    elif mode == "d_scaling":
        time_median(fixed, grid[0], 1, seed, threads)
        records = [time_median(fixed, d, repetitions, seed, threads) for d in grid]
        dist = [r.distances for r in records]
        total = [r.total for r in records]
        summary = {
            "mode": mode,
            "n": fixed,
            "r2_total": linear_r2(grid, [r.total for r in records]),
            "r2_distances": linear_r2(grid, dist),
            "distance_ratios": {
                f"{a}->{b}": dist[i + 1] / dist[i]
                for i, (a, b) in enumerate(zip(grid, grid[1:]))
                if b == 2 * a
            },
            "total_ratios": {
                f"{a}->{b}": total[i + 1] / total[i]
                for i, (a, b) in enumerate(zip(grid, grid[1:]))
                if b == 2 * a
            },
        }
    else:
        raise ValueError(f"unknown bench mode {mode!r}")
    summary["k_bound_ok"] = all(
        r.k_iterations <= math.ceil(r.n / 2) + 1 for r in records
    )
    return records, summary


def write_records(records, fh) -> None:
    fields = list(asdict(records[0]).keys()) if records else list(BenchRecord.__annotations__)
    writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(asdict(r))
