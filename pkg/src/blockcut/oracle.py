"""Exhaustive references for small graphs, plus accuracy scoring."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .inference import Variant, check_partition, profile_terms

MAX_ORACLE_N = 24
_CHUNK = 1 << 18


class OracleSizeError(ValueError):
    pass


@dataclass
class OracleResult:
    best_partition: np.ndarray
    best_value: float
    evaluated: int


def _guard(g: Graph) -> None:
    if g.n > MAX_ORACLE_N:
        raise OracleSizeError(f"exhaustive search limited to n <= {MAX_ORACLE_N}, got n = {g.n}")


def _labels_from_codes(codes: np.ndarray, n: int) -> np.ndarray:
    """Rows of 0/1 group-2 indicators. Vertex 0 is pinned to group 1 and
    vertex i >= 1 reads bit (n-1-i), so numeric code order is the
    lexicographic order of label vectors."""
    shifts = np.arange(n - 2, -1, -1, dtype=np.int64)
    bits = (codes[:, None] >> shifts[None, :]) & 1
    return np.concatenate([np.zeros((codes.size, 1), np.int64), bits], axis=1)


def brute_force_max_profile(g: Graph, variant="standard") -> OracleResult:
    """Maximise the profile log-likelihood over all 2^(n-1) label-swap classes.

    Ties within a few ulps go to the lexicographically smallest label vector.
    """
    _guard(g)
    variant = Variant.parse(variant)
    n = g.n
    if n < 1:
        raise ValueError("empty graph")
    u, v, w = g.edge_arrays()
    deg = g.degree
    total = 1 << (n - 1)
    best_q = -np.inf
    best_code = 0
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        x = _labels_from_codes(codes, n)
        m_out = ((x[:, u] != x[:, v]) * w).sum(axis=1)
        n2 = x.sum(axis=1)
        k2 = x @ deg
        if variant is Variant.STANDARD:
            q = profile_terms(g.m - m_out, m_out, n - n2, n2)
        else:
            q = profile_terms(g.m - m_out, m_out, 2 * g.m - k2, k2)
        i = int(np.argmax(q))
        if start == 0 or q[i] > best_q + 1e-12 * max(1.0, abs(best_q)):
            best_q, best_code = float(q[i]), int(codes[i])
    labels = (_labels_from_codes(np.array([best_code]), n)[0] + 1).astype(np.int8)
    return OracleResult(labels, best_q, total)


def min_cut_fixed_sizes(g: Graph, n1: int) -> tuple[np.ndarray, int]:
    """Exact minimum cut over all partitions with exactly ``n1`` vertices in group 1."""
    _guard(g)
    n = g.n
    if not 0 <= n1 <= n:
        raise ValueError(f"n1 must lie in [0, {n}]")
    u, v, w = g.edge_arrays()
    shifts = np.arange(n, dtype=np.int64)
    best_cut, best_mask = None, 0
    for start in range(0, 1 << n, _CHUNK):
        masks = np.arange(start, min(1 << n, start + _CHUNK), dtype=np.int64)
        x = (masks[:, None] >> shifts[None, :]) & 1  # 1 = group 1
        sel = x.sum(axis=1) == n1
        if not sel.any():
            continue
        x, masks = x[sel], masks[sel]
        cut = ((x[:, u] != x[:, v]) * w).sum(axis=1)
        i = int(np.argmin(cut))
        if best_cut is None or cut[i] < best_cut:
            best_cut, best_mask = int(cut[i]), int(masks[i])
    labels = np.where((best_mask >> np.arange(n)) & 1, 1, 2).astype(np.int8)
    return labels, int(best_cut)


def fraction_correct(found, truth) -> float:
    """Best agreement over the two ways of matching group labels."""
    found = np.asarray(found)
    truth = np.asarray(truth)
    if found.shape != truth.shape:
        raise ValueError("partitions differ in length")
    check_partition(found, found.size)
    check_partition(truth, truth.size)
    if found.size == 0:
        return 1.0
    agree = int(np.count_nonzero(found == truth))
    return max(agree, found.size - agree) / found.size


def same_partition(a, b) -> bool:
    """Equal up to swapping the two labels."""
    a = np.asarray(a)
    b = np.asarray(b)
    return bool(np.array_equal(a, b) or np.array_equal(a, 3 - b))
