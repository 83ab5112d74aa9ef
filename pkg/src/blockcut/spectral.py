"""Second eigenvectors of the graph Laplacian, matrix-free.

Both solvers reduce to "largest eigenpair of a shifted symmetric operator on
the complement of one known eigenvector" and share a thick-restart Lanczos
iteration with full reorthogonalisation. Each step costs one sparse
mat-vec, O(n + m), plus O(n * ncv) for reorthogonalisation.

* standard: L = D - A, operator c*I - L with c = 2 * max degree, deflating
  the constant vector.
* generalized: L v = lambda D v, solved as the normalised Laplacian
  I - D^-1/2 A D^-1/2 in coordinates x = D^1/2 v, deflating sqrt(k).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class EigenOptions:
    tol: float = 1e-8
    max_iter: int | None = None  # None -> 10 * ceil(sqrt(n)) + 200
    seed: int = 0
    ncv: int = 64  # Lanczos basis size before a restart

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter is not None and self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.ncv < 3:
            raise ValueError("ncv must be >= 3")

    def iteration_cap(self, n: int) -> int:
        if self.max_iter is not None:
            return self.max_iter
        return 10 * math.ceil(math.sqrt(n)) + 200


@dataclass
class EigenResult:
    """Approximate second eigenpair.

    ``vector`` has unit Euclidean norm for the standard problem and unit
    D-norm (sum k_i v_i^2 = 1) for the generalized one. ``residual`` is the
    explicitly recomputed ||L v - lambda v|| (resp. ||L v - lambda D v||).
    """

    vector: np.ndarray
    eigenvalue: float
    iterations: int
    residual: float
    converged: bool = True
    kind: str = "standard"
    info: dict = field(default_factory=dict)


class EigenSolverError(RuntimeError):
    """Raised when the iteration cap is hit; ``best`` holds the last iterate."""

    def __init__(self, message: str, best: EigenResult):
        super().__init__(message)
        self.best = best


def laplacian_apply(g: Graph, x: np.ndarray) -> np.ndarray:
    """y = (D - A) x, multiplicity weighted."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({g.n},)")
    return g.degree * x - g.adjacency() @ x


def laplacian_residual(g: Graph, v: np.ndarray, lam: float, generalized: bool = False) -> float:
    r = laplacian_apply(g, v) - lam * (g.degree * v if generalized else v)
    return float(np.linalg.norm(r))


def _orthogonalize(w: np.ndarray, basis: np.ndarray, u: np.ndarray) -> np.ndarray:
    # classical Gram-Schmidt, applied twice
    for _ in range(2):
        w -= (u @ w) * u
        if basis.shape[0]:
            w -= (basis @ w) @ basis
    return w


def _top_eigpair(
    apply_op: Callable[[np.ndarray], np.ndarray],
    n: int,
    u: np.ndarray,
    tol: float,
    max_iter: int,
    ncv: int,
    rng: np.random.Generator,
    accept: Callable[[np.ndarray, float], bool],
) -> tuple[np.ndarray, float, int, bool]:
    """Largest eigenpair of a symmetric operator restricted to u's complement.

    Thick restart: when the basis is full, keep the leading third of the
    Ritz vectors plus the current residual direction and carry on. The
    projected matrix is rebuilt by explicit projection each step, which
    keeps the arrowhead structure after a restart without bookkeeping.

    ``accept(x, theta)`` makes the final explicit residual check; the cheap
    estimate |beta * y_last| only decides when to ask.
    Returns (x, theta, matvecs, converged).
    """
    dim = n - 1  # dimension of the deflated space
    ncv = min(ncv, dim)
    keep = max(1, ncv // 3)
    V = np.zeros((ncv + 1, n))
    H = np.zeros((ncv, ncv))

    q = rng.uniform(-1.0, 1.0, n)
    q = _orthogonalize(q, V[:0], u)
    V[0] = q / np.linalg.norm(q)

    j = 0
    matvecs = 0
    while True:
        w = apply_op(V[j])
        matvecs += 1
        basis = V[: j + 1]
        h = basis @ w
        w -= h @ basis
        c = basis @ w
        w -= c @ basis
        h += c
        w -= (u @ w) * u
        H[: j + 1, j] = h
        H[j, : j + 1] = h
        beta = float(np.linalg.norm(w))

        theta, Y = np.linalg.eigh(H[: j + 1, : j + 1])
        y = Y[:, -1]
        best_theta = float(theta[-1])
        best_x = y @ V[: j + 1]
        scale = max(1.0, abs(best_theta))
        est = abs(beta * y[-1])
        full = j + 1 >= dim
        if est <= tol or full or beta <= 1e-14 * scale:
            if accept(best_x, best_theta):
                return best_x, best_theta, matvecs, True
            if full:
                return best_x, best_theta, matvecs, False
        if matvecs >= max_iter:
            return best_x, best_theta, matvecs, False

        if beta <= 1e-14 * scale:
            # invariant subspace: continue from a fresh random direction
            w = _orthogonalize(rng.uniform(-1.0, 1.0, n), V[: j + 1], u)
            beta = float(np.linalg.norm(w))
        nxt = w / beta

        if j + 1 == ncv:
            V[:keep] = Y[:, -keep:].T @ V[: j + 1]
            V[keep] = nxt
            H[:] = 0.0
            H[np.arange(keep), np.arange(keep)] = theta[-keep:]
            j = keep
        else:
            V[j + 1] = nxt
            j += 1


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))
    return -v if v[i] < 0 else v


def fiedler_vector(g: Graph, opts: EigenOptions | None = None) -> EigenResult:
    """Second-smallest eigenpair of L = D - A.

    Sign is fixed so the largest-magnitude entry is positive. Raises
    :class:`EigenSolverError` when the residual contract
    ||L v - lambda v|| <= tol * ||v|| is not met within the iteration cap.
    """
    opts = opts or EigenOptions()
    n = g.n
    if n < 2:
        raise ValueError("need at least two vertices")
    u = np.full(n, 1.0 / math.sqrt(n))
    shift = 2.0 * float(g.degree.max()) if g.m else 1.0
    adj = g.adjacency()
    deg = g.degree.astype(np.float64)

    def apply_op(x):
        return (shift - deg) * x + adj @ x

    def accept(x, theta):
        return laplacian_residual(g, x / np.linalg.norm(x), shift - theta) <= opts.tol

    rng = np.random.default_rng(opts.seed)
    x, theta, its, ok = _top_eigpair(apply_op, n, u, opts.tol, opts.iteration_cap(n), opts.ncv, rng, accept)
    x = x - (u @ x) * u
    x = _canonical_sign(x / np.linalg.norm(x))
    lam = float(x @ laplacian_apply(g, x))
    res = EigenResult(x, lam, its, laplacian_residual(g, x, lam), ok, "standard")
    if not ok:
        raise EigenSolverError(
            f"Fiedler vector did not converge in {its} iterations (residual {res.residual:.3e})", res
        )
    return res


def generalized_fiedler_vector(g: Graph, opts: EigenOptions | None = None) -> EigenResult:
    """Second-smallest eigenpair of L v = lambda D v.

    Requires every degree to be positive. The returned vector satisfies
    sum_i k_i v_i = 0 and sum_i k_i v_i^2 = 1.
    """
    opts = opts or EigenOptions()
    n = g.n
    if n < 2:
        raise ValueError("need at least two vertices")
    if np.any(g.degree == 0):
        raise ValueError("generalized problem needs all degrees >= 1; strip isolated vertices first")
    deg = g.degree.astype(np.float64)
    sq = np.sqrt(deg)
    inv_sq = 1.0 / sq
    u = sq / np.linalg.norm(sq)
    adj = g.adjacency()
    shift = 2.0

    def apply_op(x):
        # (2 I - (I - D^-1/2 A D^-1/2)) x
        return x + inv_sq * (adj @ (inv_sq * x))

    def accept(x, theta):
        v = inv_sq * (x / np.linalg.norm(x))
        return laplacian_residual(g, v, shift - theta, generalized=True) <= opts.tol

    # the D-weighted residual is at most sqrt(max k) times the normalised one
    inner_tol = opts.tol / math.sqrt(deg.max())
    rng = np.random.default_rng(opts.seed)
    x, theta, its, ok = _top_eigpair(apply_op, n, u, inner_tol, opts.iteration_cap(n), opts.ncv, rng, accept)
    x = x - (u @ x) * u
    x = x / np.linalg.norm(x)
    v = _canonical_sign(inv_sq * x)
    lam = float(v @ laplacian_apply(g, v))  # D-norm of v is 1
    res = EigenResult(v, lam, its, laplacian_residual(g, v, lam, generalized=True), ok, "generalized")
    if not ok:
        raise EigenSolverError(
            f"generalized eigenvector did not converge in {its} iterations (residual {res.residual:.3e})", res
        )
    return res


def vertex_order(v: np.ndarray) -> np.ndarray:
    """Vertices by decreasing ``v``; ties go to the smaller index."""
    v = np.asarray(v, dtype=np.float64)
    return np.lexsort((np.arange(v.size), -v))
