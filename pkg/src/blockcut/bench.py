"""Planted-partition experiments: profile-likelihood curves and accuracy vs c_in."""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .inference import Variant, detect
from .oracle import fraction_correct
from .sbm import SbmConfig, generate
from .spectral import EigenOptions


def fmt(x: float) -> str:
    return f"{x:.9g}"


@dataclass(frozen=True)
class ThresholdSpec:
    """Symmetric two-group detectability line (c_in - c_out)^2 = 2 (c_in + c_out)."""

    c_sum: float

    @property
    def c_in_critical(self) -> float:
        return (self.c_sum + math.sqrt(2.0 * self.c_sum)) / 2.0


@dataclass
class AccuracyRow:
    c_in: float
    replicate: int
    fraction_correct: float
    eigen_iterations: int
    wall_time: float
    eigen_converged: bool = True


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("BLOCKCUT_THREADS", "1")))
    except ValueError:
        return 1


def profile_curves(n1: int, n2: int, c_in_list, c_sum: float, seed: int, variant="dc",
                   opts: EigenOptions | None = None) -> dict[float, np.ndarray]:
    """One network per c_in (c_out = c_sum - c_in); returns its sweep q values.

    Curves cover the non-isolated vertices, so they have n+1 points unless
    the draw left some vertex without edges.
    """
    curves = {}
    for idx, c_in in enumerate(c_in_list):
        if c_in > c_sum or c_in < 0:
            raise ValueError(f"c_in={c_in} outside [0, c_sum={c_sum}]")
        g, _ = generate(SbmConfig(n1, n2, c_in, c_sum - c_in, seed), idx)
        res = detect(g, variant, opts, strict=False)
        curves[c_in] = res.sweep.q_values
    return curves


def curves_csv(curves: dict[float, np.ndarray]) -> str:
    lines = ["c_in,size,q"]
    for c_in, q in curves.items():
        lines.extend(f"{fmt(c_in)},{i},{fmt(v)}" for i, v in enumerate(q))
    return "\n".join(lines) + "\n"


def _replicate(args) -> AccuracyRow:
    n, c_in, c_sum, seed, idx, rep, variant, opts = args
    t0 = time.perf_counter()
    g, truth = generate(SbmConfig(n // 2, n // 2, c_in, c_sum - c_in, seed), idx, rep)
    res = detect(g, variant, opts, strict=False)
    frac = fraction_correct(res.labels, truth)
    return AccuracyRow(c_in, rep, frac, res.eigen.iterations if res.eigen else 0,
                       time.perf_counter() - t0, res.eigen.converged if res.eigen else True)


def c_in_grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 9) for i in range(max(count, 0))]


def accuracy_experiment(n: int, c_in_values, c_sum: float, reps: int, seed: int, variant="dc",
                        opts: EigenOptions | None = None, workers: int | None = None) -> list[AccuracyRow]:
    """Equal groups of n/2; ``reps`` replicates per c_in on stream (seed, c_in index, replicate)."""
    if n % 2:
        raise ValueError("accuracy experiment needs an even n (equal groups)")
    variant = Variant.parse(variant)
    for c_in in c_in_values:
        if not 0 <= c_in <= c_sum:
            raise ValueError(f"c_in={c_in} outside [0, c_sum={c_sum}]")
    jobs = [(n, c_in, c_sum, seed, idx, rep, variant, opts)
            for idx, c_in in enumerate(c_in_values) for rep in range(reps)]
    workers = workers or worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_replicate, jobs))
    return [_replicate(job) for job in jobs]


def summarize(rows: list[AccuracyRow]) -> dict[float, float]:
    out: dict[float, list[float]] = {}
    for r in rows:
        out.setdefault(r.c_in, []).append(r.fraction_correct)
    return {c: float(np.mean(v)) for c, v in out.items()}


def accuracy_csv(rows: list[AccuracyRow], timing: bool = False) -> str:
    header = "c_in,replicate,fraction_correct,eigen_iterations,eigen_converged"
    lines = [header + (",wall_time" if timing else "")]
    for r in rows:
        line = f"{fmt(r.c_in)},{r.replicate},{fmt(r.fraction_correct)},{r.eigen_iterations},{int(r.eigen_converged)}"
        lines.append(line + (f",{fmt(r.wall_time)}" if timing else ""))
    return "\n".join(lines) + "\n"


def summary_csv(rows: list[AccuracyRow], c_sum: float) -> str:
    crit = ThresholdSpec(c_sum).c_in_critical
    lines = ["c_in,mean_fraction_correct,reps,c_in_critical"]
    counts: dict[float, int] = {}
    for r in rows:
        counts[r.c_in] = counts.get(r.c_in, 0) + 1
    for c_in, mean in summarize(rows).items():
        lines.append(f"{fmt(c_in)},{fmt(mean)},{counts[c_in]},{fmt(crit)}")
    return "\n".join(lines) + "\n"
