"""Undirected multigraphs in CSR form, edge-list I/O and structure queries.

Vertex ids are dense 0-based integers. Callers holding sparse or string ids
must remap them before building a :class:`Graph`.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc


class EdgeListError(ValueError):
    """Malformed edge-list input. ``lineno`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)


class Graph:
    """Immutable undirected multigraph without self-loops.

    Adjacency is stored as CSR arrays (``indptr``, ``indices``, ``mult``)
    with neighbours sorted per row and both orientations of every edge
    present. ``mult`` holds the positive integer multiplicity A_ij.
    """

    __slots__ = ("n", "m", "indptr", "indices", "mult", "degree", "_csr")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray, mult: np.ndarray):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.mult = np.asarray(mult, dtype=np.int64)
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        self.degree = np.bincount(rows, weights=self.mult, minlength=self.n).astype(np.int64)
        total = int(self.degree.sum())
        if total % 2:
            raise ValueError("adjacency is not symmetric (odd degree sum)")
        self.m = total // 2
        self._csr = None
        for arr in (self.indptr, self.indices, self.mult, self.degree):
            arr.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, u: Iterable[int], v: Iterable[int], w: Iterable[int] | None = None) -> "Graph":
        """Build a graph from endpoint arrays; repeated pairs accumulate multiplicity."""
        u = np.asarray(list(u) if not isinstance(u, np.ndarray) else u, dtype=np.int64)
        v = np.asarray(list(v) if not isinstance(v, np.ndarray) else v, dtype=np.int64)
        if w is None:
            w = np.ones(u.shape, dtype=np.int64)
        else:
            w = np.asarray(list(w) if not isinstance(w, np.ndarray) else w, dtype=np.int64)
        if u.shape != v.shape or u.shape != w.shape:
            raise ValueError("endpoint and multiplicity arrays differ in length")
        if u.size:
            if np.any(u == v):
                raise ValueError("self-loops are not allowed")
            if u.min() < 0 or v.min() < 0 or max(u.max(), v.max()) >= n:
                raise ValueError("vertex id out of range")
            if np.any(w <= 0):
                raise ValueError("multiplicities must be positive")
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        data = np.concatenate([w, w])
        a = sp.csr_matrix((data, (rows, cols)), shape=(n, n), dtype=np.int64)
        a.sum_duplicates()
        a.sort_indices()
        return cls(n, a.indptr, a.indices, a.data)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, np.zeros(n + 1, np.int64), np.zeros(0, np.int64), np.zeros(0, np.int64))

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Sorted neighbour ids of ``v`` and the matching multiplicities."""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return self.indices[lo:hi], self.mult[lo:hi]

    def multiplicity(self, u: int, v: int) -> int:
        nbrs, mult = self.neighbors(u)
        k = np.searchsorted(nbrs, v)
        if k < nbrs.size and nbrs[k] == v:
            return int(mult[k])
        return 0

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, w)`` once per undirected edge, with ``u < v``."""
        u, v, w = self.edge_arrays()
        yield from zip(u.tolist(), v.tolist(), w.tolist())

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        keep = rows < self.indices
        return rows[keep], self.indices[keep], self.mult[keep]

    def adjacency(self) -> sp.csr_matrix:
        """Float64 CSR adjacency matrix (cached)."""
        if self._csr is None:
            self._csr = sp.csr_matrix(
                (self.mult.astype(np.float64), self.indices, self.indptr), shape=(self.n, self.n)
            )
        return self._csr

    def subgraph(self, vertices: np.ndarray) -> "Graph":
        """Induced subgraph, relabelled so ``vertices[i]`` becomes ``i``."""
        vertices = np.asarray(vertices, dtype=np.int64)
        sub = self.adjacency()[vertices][:, vertices].tocsr()
        sub.sort_indices()
        return Graph(vertices.size, sub.indptr, sub.indices, sub.data.astype(np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.mult, other.mult)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ComponentLabeling:
    labels: np.ndarray
    count: int


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise EdgeListError(f"expected an integer, got {tok!r}", lineno) from None


def parse_edge_list(source: str | TextIO) -> Graph:
    """Parse ``u v`` / ``u v w`` lines into a :class:`Graph`.

    A header line ``n <N>`` fixes the vertex count, otherwise it is one more
    than the largest id seen. Lines starting with ``#`` and blank lines are
    skipped. Repeated edges, in either orientation, add up.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    us: list[int] = []
    vs: list[int] = []
    ws: list[int] = []
    header_n: int | None = None
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if toks[0] == "n":
            if len(toks) != 2:
                raise EdgeListError("header must read 'n <N>'", lineno)
            header_n = _parse_int(toks[1], lineno)
            if header_n < 0:
                raise EdgeListError("vertex count must be non-negative", lineno)
            continue
        if len(toks) not in (2, 3):
            raise EdgeListError(f"expected 2 or 3 fields, got {len(toks)}", lineno)
        u = _parse_int(toks[0], lineno)
        v = _parse_int(toks[1], lineno)
        w = _parse_int(toks[2], lineno) if len(toks) == 3 else 1
        if u < 0 or v < 0:
            raise EdgeListError("vertex ids must be non-negative", lineno)
        if u == v:
            raise EdgeListError(f"self-loop on vertex {u}", lineno)
        if w <= 0:
            raise EdgeListError(f"multiplicity must be positive, got {w}", lineno)
        us.append(u)
        vs.append(v)
        ws.append(w)
    max_id = max(max(us), max(vs)) if us else -1
    if header_n is None:
        n = max_id + 1
    else:
        if max_id >= header_n:
            raise EdgeListError(f"vertex id {max_id} exceeds header n={header_n}")
        n = header_n
    return Graph.from_edges(n, np.array(us, np.int64), np.array(vs, np.int64), np.array(ws, np.int64))


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh)


def format_edge_list(g: Graph) -> str:
    """Canonical text: ``n <N>`` header then ``u v w`` per edge with u < v."""
    out = [f"n {g.n}"]
    out.extend(f"{u} {v} {w}" for u, v, w in g.edges())
    return "\n".join(out) + "\n"


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g))


def degree_sums(g: Graph, labels: np.ndarray) -> tuple[int, int]:
    """Total degree of the vertices labelled 1 and of those labelled 2."""
    labels = np.asarray(labels)
    if labels.shape != (g.n,):
        raise ValueError(f"partition has length {labels.size}, graph has {g.n} vertices")
    k1 = int(g.degree[labels == 1].sum())
    return k1, 2 * g.m - k1


def connected_components(g: Graph) -> ComponentLabeling:
    count, labels = _cc(g.adjacency(), directed=False)
    return ComponentLabeling(labels=labels.astype(np.int64), count=int(count))
