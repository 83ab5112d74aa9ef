"""Poisson planted-partition (two-group stochastic block model) generator.

Randomness comes from numpy's ``PCG64`` bit generator seeded through
``SeedSequence(entropy=[seed, *stream])``. That pairing is part of the
output contract: the same config and stream always give the same graph.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

RNG_ALGORITHM = "PCG64/SeedSequence"


@dataclass(frozen=True)
class SbmConfig:
    """Group sizes, scaled Poisson means ``c = n * omega`` and RNG seed."""

    n1: int
    n2: int
    c_in: float
    c_out: float
    seed: int = 0

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError("group sizes must be non-negative")
        if self.n1 + self.n2 < 2:
            raise ValueError("need at least two vertices")
        if self.c_in < 0 or self.c_out < 0:
            raise ValueError("c_in and c_out must be non-negative")

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def omega_in(self) -> float:
        return self.c_in / self.n

    @property
    def omega_out(self) -> float:
        return self.c_out / self.n

    def pair_counts(self) -> tuple[int, int, int]:
        """Number of vertex pairs within group 1, within group 2, and between."""
        return self.n1 * (self.n1 - 1) // 2, self.n2 * (self.n2 - 1) // 2, self.n1 * self.n2

    def expected_edges(self) -> float:
        p1, p2, p12 = self.pair_counts()
        return self.omega_in * (p1 + p2) + self.omega_out * p12


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *map(int, stream)])))


def ground_truth(cfg: SbmConfig) -> np.ndarray:
    labels = np.full(cfg.n, 2, dtype=np.int8)
    labels[: cfg.n1] = 1
    return labels


def _within_pairs(rng: np.random.Generator, size: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    # two uniform draws, redrawing the second endpoint where they coincide
    u = rng.integers(0, size, count)
    v = rng.integers(0, size, count)
    bad = np.flatnonzero(u == v)
    while bad.size:
        v[bad] = rng.integers(0, size, bad.size)
        bad = bad[u[bad] == v[bad]]
    return u, v


def generate(cfg: SbmConfig, *stream: int) -> tuple[Graph, np.ndarray]:
    """Draw a planted-partition graph and its ground-truth labels.

    Each pair class (within group 1, within group 2, between) receives a
    Poisson number of edges with mean omega * (#pairs in class); each edge
    then lands on a uniformly chosen pair of that class. By Poisson thinning
    this matches independent Poisson counts on every pair, at O(n + m) cost.

    ``stream`` adds extra integers to the seed entropy so that replicates get
    independent streams without drawing sequentially from one generator.
    """
    rng = make_rng(cfg.seed, *stream)
    p1, p2, p12 = cfg.pair_counts()
    m1 = rng.poisson(cfg.omega_in * p1) if p1 else 0
    m2 = rng.poisson(cfg.omega_in * p2) if p2 else 0
    m12 = rng.poisson(cfg.omega_out * p12) if p12 else 0

    u1, v1 = _within_pairs(rng, cfg.n1, m1) if m1 else (np.zeros(0, np.int64),) * 2
    u2, v2 = _within_pairs(rng, cfg.n2, m2) if m2 else (np.zeros(0, np.int64),) * 2
    if m12:
        ub = rng.integers(0, cfg.n1, m12)
        vb = rng.integers(0, cfg.n2, m12) + cfg.n1
    else:
        ub = vb = np.zeros(0, np.int64)

    u = np.concatenate([u1, u2 + cfg.n1, ub])
    v = np.concatenate([v1, v2 + cfg.n1, vb])
    return Graph.from_edges(cfg.n, u, v), ground_truth(cfg)


def expected_mean_degree(cfg: SbmConfig) -> float:
    return 2.0 * cfg.expected_edges() / cfg.n
