import itertools
from pathlib import Path

import numpy as np
import pytest

from blockcut.graph import Graph, read_edge_list

DATA = Path(__file__).parent / "data"


def two_triangles() -> Graph:
    """Triangles 0-1-2 and 3-4-5 joined by the edge 2-5."""
    return Graph.from_edges(6, [0, 0, 1, 3, 3, 4, 2], [1, 2, 2, 4, 5, 5, 5])


def path3() -> Graph:
    return Graph.from_edges(3, [0, 1], [1, 2])


def complete(n: int) -> Graph:
    u, v = zip(*itertools.combinations(range(n), 2))
    return Graph.from_edges(n, u, v)


def random_graph(n: int, p: float, rng: np.random.Generator, max_mult: int = 1) -> Graph:
    u, v = np.triu_indices(n, 1)
    keep = rng.random(u.size) < p
    w = rng.integers(1, max_mult + 1, keep.sum())
    return Graph.from_edges(n, u[keep], v[keep], w)


def dense_adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges():
        a[u, v] = a[v, u] = w
    return a


@pytest.fixture
def bridge_graph():
    return two_triangles()


@pytest.fixture
def karate():
    g = read_edge_list(DATA / "karate.txt")
    truth = np.loadtxt(DATA / "karate_factions.txt", dtype=np.int64)
    return g, truth


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def _report(name: str, passed: bool, detail: str) -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
