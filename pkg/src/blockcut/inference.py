"""Block-model likelihoods, the n+1 candidate sweep and the detection pipeline.

Partitions are integer arrays of length n with labels 1 and 2.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, connected_components
from .spectral import (
    EigenOptions,
    EigenResult,
    EigenSolverError,
    fiedler_vector,
    generalized_fiedler_vector,
    vertex_order,
)

log = logging.getLogger(__name__)

ISOLATED_POLICY = "isolated vertices excluded from the spectral stage, then assigned to the larger group"


class Variant(str, enum.Enum):
    STANDARD = "standard"
    DEGREE_CORRECTED = "degree_corrected"

    @classmethod
    def parse(cls, value: "str | Variant") -> "Variant":
        if isinstance(value, Variant):
            return value
        aliases = {"standard": cls.STANDARD, "sbm": cls.STANDARD, "dc": cls.DEGREE_CORRECTED,
                   "degree_corrected": cls.DEGREE_CORRECTED, "degree-corrected": cls.DEGREE_CORRECTED}
        try:
            return aliases[value.lower()]
        except KeyError:
            raise ValueError(f"unknown variant {value!r}") from None


def check_partition(labels, n: int) -> np.ndarray:
    labels = np.asarray(labels)
    if labels.shape != (n,):
        raise ValueError(f"partition has shape {labels.shape}, expected ({n},)")
    if labels.size and not np.all((labels == 1) | (labels == 2)):
        raise ValueError("partition labels must be 1 or 2")
    return labels.astype(np.int8)


@dataclass(frozen=True)
class SplitStats:
    n1: int
    n2: int
    kappa1: int
    kappa2: int
    m_in: int
    m_out: int

    def swapped(self) -> "SplitStats":
        return SplitStats(self.n2, self.n1, self.kappa2, self.kappa1, self.m_in, self.m_out)


@dataclass(frozen=True)
class ModelParams:
    omega_in: float
    omega_out: float


def split_stats(g: Graph, labels) -> SplitStats:
    """Group sizes, degree sums and within/between edge counts of a partition."""
    labels = check_partition(labels, g.n)
    u, v, w = g.edge_arrays()
    m_out = int(w[labels[u] != labels[v]].sum())
    in1 = labels == 1
    n1 = int(in1.sum())
    k1 = int(g.degree[in1].sum())
    return SplitStats(n1, g.n - n1, k1, 2 * g.m - k1, g.m - m_out, m_out)


def gamma(params: ModelParams) -> float:
    """Balance-penalty coefficient (w_in - w_out) / (ln w_in - ln w_out)."""
    a, b = params.omega_in, params.omega_out
    if not (a > 0 and b > 0):
        raise ValueError("omega_in and omega_out must be positive")
    if not a > b:
        raise ValueError("gamma is defined here for the assortative case omega_in > omega_out only")
    return (a - b) / (math.log(a) - math.log(b))


def full_log_likelihood(g: Graph, labels, params: ModelParams) -> float:
    """Exact Poisson log-likelihood sum_{i<j} [A ln w - w - ln A!], via class counts."""
    a, b = params.omega_in, params.omega_out
    if not (a > 0 and b > 0):
        raise ValueError("omega_in and omega_out must be positive")
    labels = check_partition(labels, g.n)
    s = split_stats(g, labels)
    _, _, w = g.edge_arrays()
    log_fact = sum(math.lgamma(x + 1) for x in w[w > 1].tolist())
    pairs_out = s.n1 * s.n2
    pairs_in = g.n * (g.n - 1) // 2 - pairs_out
    return (s.m_in * math.log(a) + s.m_out * math.log(b)
            - a * pairs_in - b * pairs_out - log_fact)


def penalized_cut_objective(s: SplitStats, gamma_value: float, variant="standard") -> float:
    """-m_out + gamma * n1 n2 (standard) or -m_out + gamma * kappa1 kappa2 (degree corrected)."""
    if Variant.parse(variant) is Variant.STANDARD:
        return -s.m_out + gamma_value * s.n1 * s.n2
    return -s.m_out + gamma_value * s.kappa1 * s.kappa2


def profile_terms(m_in, m_out, a1, a2) -> np.ndarray:
    """Vectorised profile log-likelihood for size-like quantities a1, a2.

    m_in ln(2 m_in / (a1^2 + a2^2)) + m_out ln(m_out / (a1 a2)), zero-count
    terms dropped. Used for both the scalar and the sweep evaluation so the
    two agree bit for bit.
    """
    m_in = np.atleast_1d(np.asarray(m_in, dtype=np.float64))
    m_out = np.atleast_1d(np.asarray(m_out, dtype=np.float64))
    a1 = np.atleast_1d(np.asarray(a1, dtype=np.float64))
    a2 = np.atleast_1d(np.asarray(a2, dtype=np.float64))
    q = np.zeros(np.broadcast(m_in, m_out, a1, a2).shape)
    has_in = m_in > 0
    has_out = m_out > 0
    sq = a1 * a1 + a2 * a2
    prod = a1 * a2
    with np.errstate(divide="ignore", invalid="ignore"):
        t_in = m_in * np.log(2.0 * m_in / sq)
        t_out = m_out * np.log(m_out / prod)
    q += np.where(has_in, t_in, 0.0)
    q += np.where(has_out, t_out, 0.0)
    return q


def profile_log_likelihood(s: SplitStats, variant="standard") -> float:
    """Profile log-likelihood with the ML omegas substituted, constants dropped."""
    if s.m_out > 0 and s.n1 * s.n2 == 0:
        raise ValueError("inconsistent stats: cut edges with an empty group")
    if min(s.n1, s.n2, s.kappa1, s.kappa2, s.m_in, s.m_out) < 0:
        raise ValueError("negative counts in split stats")
    if Variant.parse(variant) is Variant.STANDARD:
        a1, a2 = s.n1, s.n2
    else:
        a1, a2 = s.kappa1, s.kappa2
    return float(profile_terms(s.m_in, s.m_out, a1, a2)[0])


def check_order(order, n: int) -> np.ndarray:
    order = np.asarray(order, dtype=np.int64)
    if order.shape != (n,) or not np.array_equal(np.sort(order), np.arange(n)):
        raise ValueError("order must be a permutation of 0..n-1")
    return order


def sweep_stats(g: Graph, order) -> dict[str, np.ndarray]:
    """SplitStats of every prefix split of ``order`` (prefix = group 1), sizes 0..n.

    Vertices move into group 1 one at a time. Moving i changes the cut by
    (edges from i to group 2) - (edges from i to group 1), so each edge adds
    +w when its earlier endpoint moves and -w when its later one does.
    Everything is a cumulative sum over per-vertex deltas: O(n + m).
    """
    n = g.n
    order = check_order(order, n)
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(g.indptr))
    sign = np.where(pos[g.indices] > pos[rows], 1, -1)
    delta = np.bincount(rows, weights=sign * g.mult, minlength=n).astype(np.int64)

    m_out = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(delta[order], out=m_out[1:])
    kappa1 = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(g.degree[order], out=kappa1[1:])
    n1 = np.arange(n + 1, dtype=np.int64)
    return {
        "n1": n1,
        "n2": n - n1,
        "kappa1": kappa1,
        "kappa2": 2 * g.m - kappa1,
        "m_in": g.m - m_out,
        "m_out": m_out,
    }


def _first_argmax(q: np.ndarray) -> int:
    # ties (to a few ulps) resolve to the smallest index
    top = q.max()
    slack = 1e-12 * max(1.0, abs(top))
    return int(np.flatnonzero(q >= top - slack)[0])


@dataclass
class SweepResult:
    order: np.ndarray
    q_values: np.ndarray
    best_size: int
    best_partition: np.ndarray
    variant: Variant

    @property
    def best_q(self) -> float:
        return float(self.q_values[self.best_size])


def sweep(g: Graph, order, variant="standard") -> SweepResult:
    """Score all n+1 prefix splits of ``order``; return the best (smallest n1 on ties)."""
    variant = Variant.parse(variant)
    order = check_order(order, g.n)
    st = sweep_stats(g, order)
    if variant is Variant.STANDARD:
        q = profile_terms(st["m_in"], st["m_out"], st["n1"], st["n2"])
    else:
        q = profile_terms(st["m_in"], st["m_out"], st["kappa1"], st["kappa2"])
    best = _first_argmax(q)
    labels = np.full(g.n, 2, dtype=np.int8)
    labels[order[:best]] = 1
    return SweepResult(order, q, best, labels, variant)


@dataclass
class DetectionResult:
    labels: np.ndarray
    stats: SplitStats
    q: float
    sweep: SweepResult
    eigen: EigenResult | None
    variant: Variant
    isolated: np.ndarray = field(default_factory=lambda: np.zeros(0, np.int64))
    isolated_policy: str = ISOLATED_POLICY

    @property
    def n(self) -> int:
        return int(self.labels.size)

    def to_dict(self, m: int | None = None) -> dict:
        s = self.stats
        return {
            "n": self.n,
            "m": int(s.m_in + s.m_out if m is None else m),
            "variant": self.variant.value,
            "labels": [int(x) for x in self.labels],
            "n1": s.n1,
            "n2": s.n2,
            "kappa1": s.kappa1,
            "kappa2": s.kappa2,
            "m_in": s.m_in,
            "m_out": s.m_out,
            "q": self.q,
            "eigen_iterations": self.eigen.iterations if self.eigen else 0,
            "eigen_residual": self.eigen.residual if self.eigen else 0.0,
            "eigen_converged": self.eigen.converged if self.eigen else True,
            "eigenvalue": self.eigen.eigenvalue if self.eigen else 0.0,
            "isolated_vertices": [int(x) for x in self.isolated],
            "isolated_vertex_policy": self.isolated_policy,
        }


def detect(g: Graph, variant="standard", opts: EigenOptions | None = None, strict: bool = True) -> DetectionResult:
    """Spectral maximum-likelihood two-group split.

    Eigenvector (Fiedler for the standard model, generalized L v = lambda D v
    for the degree-corrected one) -> descending vertex order -> sweep over
    the n+1 prefix splits -> profile-likelihood argmax.

    Degree-0 vertices skip the spectral stage and join the larger group at
    the end. With ``strict=False`` an unconverged eigenvector is used as is
    (and flagged) instead of raising :class:`EigenSolverError`.
    """
    variant = Variant.parse(variant)
    opts = opts or EigenOptions()
    if g.n < 2:
        raise ValueError("need at least two vertices")
    isolated = np.flatnonzero(g.degree == 0)
    core_ids = np.flatnonzero(g.degree > 0)
    core = g.subgraph(core_ids) if isolated.size else g

    eig = None
    if core.n >= 2:
        if connected_components(core).count > 1:
            log.warning("graph is disconnected; the eigenvector will follow component structure")
        solver = fiedler_vector if variant is Variant.STANDARD else generalized_fiedler_vector
        try:
            eig = solver(core, opts)
        except EigenSolverError as err:
            if strict:
                raise
            log.warning("%s; using best iterate", err)
            eig = err.best
        order = vertex_order(eig.vector)
    else:
        order = np.arange(core.n)
    sw = sweep(core, order, variant)

    labels = np.empty(g.n, dtype=np.int8)
    labels[core_ids] = sw.best_partition
    if isolated.size:
        n1 = int((sw.best_partition == 1).sum())
        labels[isolated] = 1 if n1 >= core.n - n1 else 2
    stats = split_stats(g, labels)
    q = sw.best_q if not isolated.size else profile_log_likelihood(stats, variant)
    return DetectionResult(labels, stats, q, sw, eig, variant, isolated)


def sweep_csv(sw: SweepResult) -> str:
    lines = ["size,q"]
    lines.extend(f"{i},{q:.9g}" for i, q in enumerate(sw.q_values))
    return "\n".join(lines) + "\n"
