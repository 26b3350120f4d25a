"""Personalized PageRank over word graphs, with incremental tracking.

The stationary distribution of a seeded random walk,

    p = alpha * M p + (1 - alpha) * r,

is solved by dense-vector power iteration against the column-stochastic
transition matrix ``M = A D^{-1}`` (dangling nodes get a self-loop column
so every column keeps unit mass).  When masking deletes edges and turns
``M`` into ``M'``, an existing solution is corrected instead of re-solved:
the mass displaced by the topology change,

    pushout = alpha * (M' - M) p,

is propagated through the new graph via the geometric series

    p' = p + sum_k (alpha * M')^k pushout,

truncated once the running term drops below ``push_tol`` in L1.  The
series converges to the exact stationary distribution of ``M'``, and
``M' - M`` only has non-zero columns at the masked node and its former
neighbors, which keeps each correction step cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import SolverDidNotConverge, TrackerDidNotConverge
from .textgraph import WordGraph


@dataclass
class PprSolverConfig:
    alpha: float = 0.85
    tol: float = 1e-9
    max_iters: int = 1000
    push_tol: float = 1e-10
    push_max_iters: int = 2000

    def __post_init__(self):
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must be in [0, 1), got {self.alpha}")
        if self.tol <= 0 or self.push_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class TransitionMatrix:
    """Column-stochastic sparse transition matrix of a word graph."""

    mat: sp.csr_matrix
    n: int

    def column_sums(self) -> np.ndarray:
        return np.asarray(self.mat.sum(axis=0)).ravel()


def transition_matrix(graph: WordGraph) -> TransitionMatrix:
    """Build ``M = A D^{-1}`` with a self-loop column per dangling node.

    ``M[i, j] = 1/degree(j)`` for every edge ``(i, j)``; a zero-degree
    node ``j`` gets ``M[j, j] = 1`` so its column still sums to one.
    """
    n = graph.n_nodes
    degree = graph.degree
    # Column j holds graph.neighbors(j) with weight 1/degree(j); building
    # in CSC order then converting keeps the construction deterministic.
    col_ptr = np.zeros(n + 1, dtype=np.int64)
    sizes = np.where(degree > 0, degree, 1)
    np.cumsum(sizes, out=col_ptr[1:])
    rows = np.empty(col_ptr[-1], dtype=np.int64)
    data = np.empty(col_ptr[-1], dtype=np.float64)
    for j in range(n):
        lo, hi = col_ptr[j], col_ptr[j + 1]
        if degree[j] > 0:
            rows[lo:hi] = graph.neighbors(j)
            data[lo:hi] = 1.0 / degree[j]
        else:
            rows[lo] = j
            data[lo] = 1.0
    mat = sp.csc_matrix((data, rows, col_ptr), shape=(n, n)).tocsr()
    return TransitionMatrix(mat=mat, n=n)


@dataclass
class PprVector:
    """Converged personalized PageRank vector for one seed node."""

    p: np.ndarray
    seed: int
    alpha: float
    iterations: int = 0
    step_history: list = field(default_factory=list, repr=False)


def fixed_point_residual(p: np.ndarray, M: TransitionMatrix, seed: int,
                         alpha: float) -> float:
    """L1 distance between ``p`` and one application of the PPR map."""
    r = np.zeros(M.n)
    r[seed] = 1.0
    return float(np.abs(p - (alpha * (M.mat @ p) + (1 - alpha) * r)).sum())


def solve_ppr(M: TransitionMatrix, seed: int, cfg: PprSolverConfig) -> PprVector:
    """Power-iterate ``p <- alpha M p + (1-alpha) e_seed`` from ``p = e_seed``.

    Stops once the L1 step between iterates is at most ``cfg.tol``; the
    returned vector then satisfies the fixed-point residual bound
    ``alpha * tol <= tol``.  Raises :class:`SolverDidNotConverge` at the
    iteration cap.
    """
    if not 0 <= seed < M.n:
        raise ValueError(f"seed {seed} out of range [0, {M.n})")
    r = np.zeros(M.n)
    r[seed] = 1.0
    base = (1.0 - cfg.alpha) * r
    p = r.copy()
    steps = []
    for it in range(1, cfg.max_iters + 1):
        p_next = cfg.alpha * (M.mat @ p) + base
        step = float(np.abs(p_next - p).sum())
        steps.append(step)
        p = p_next
        if step <= cfg.tol:
            return PprVector(p=p, seed=seed, alpha=cfg.alpha, iterations=it,
                             step_history=steps)
    raise SolverDidNotConverge(
        f"seed {seed}: residual {steps[-1]:.3e} after {cfg.max_iters} iterations",
        residual=steps[-1], seed=seed)


def solve_ppr_matrix(M: TransitionMatrix, cfg: PprSolverConfig,
                     seeds: np.ndarray | None = None) -> np.ndarray:
    """Solve all seeds in ``seeds`` (default: every node) as one batch.

    Returns an ``n x len(seeds)`` array whose column ``c`` is the PPR
    vector seeded at ``seeds[c]``.  Each column evolves by exactly the
    arithmetic of :func:`solve_ppr`; the batch stops when the worst
    column's L1 step is at most ``cfg.tol``, so every returned column
    meets the same fixed-point residual bound.
    """
    n = M.n
    if seeds is None:
        seeds = np.arange(n)
    R = np.zeros((n, len(seeds)))
    R[seeds, np.arange(len(seeds))] = 1.0
    base = (1.0 - cfg.alpha) * R
    P = R.copy()
    for it in range(1, cfg.max_iters + 1):
        P_next = cfg.alpha * (M.mat @ P) + base
        worst = float(np.abs(P_next - P).sum(axis=0).max())
        P = P_next
        if worst <= cfg.tol:
            return P
    raise SolverDidNotConverge(
        f"batched solve: residual {worst:.3e} after {cfg.max_iters} iterations",
        residual=worst)


def all_ppr(graph: WordGraph, cfg: PprSolverConfig) -> list[PprVector]:
    """One converged PPR vector per node of ``graph``, in node-id order."""
    M = transition_matrix(graph)
    P = solve_ppr_matrix(M, cfg)
    return [PprVector(p=P[:, i].copy(), seed=i, alpha=cfg.alpha)
            for i in range(graph.n_nodes)]


def seed_mass_vector(M: TransitionMatrix, cfg: PprSolverConfig) -> np.ndarray:
    """Solve ``s = alpha M s + (1-alpha) * ones`` by power iteration.

    By linearity ``s`` equals the sum of all per-seed PPR vectors, which
    is all the readout needs when nothing is excluded; this avoids the
    ``n``-fold solve on the bulk train/eval path.
    """
    ones = np.ones(M.n)
    base = (1.0 - cfg.alpha) * ones
    s = ones.copy()
    for _ in range(cfg.max_iters):
        s_next = cfg.alpha * (M.mat @ s) + base
        step = float(np.abs(s_next - s).sum())
        s = s_next
        if step <= cfg.tol:
            return s
    raise SolverDidNotConverge(
        f"aggregate solve: residual {step:.3e} after {cfg.max_iters} iterations",
        residual=step)


def _pushout_series(start: np.ndarray, M_new: TransitionMatrix,
                    cfg: PprSolverConfig, col_l1) -> np.ndarray:
    """Accumulate ``sum_k (alpha M')^k start`` until the term is tiny."""
    carry = start
    acc = carry.copy()
    iters = 0
    while col_l1(carry) >= cfg.push_tol:
        if iters >= cfg.push_max_iters:
            raise TrackerDidNotConverge(
                f"push-out series residual {col_l1(carry):.3e} after "
                f"{cfg.push_max_iters} iterations", residual=col_l1(carry))
        carry = cfg.alpha * (M_new.mat @ carry)
        acc += carry
        iters += 1
    return acc


def track_ppr(p: PprVector, M: TransitionMatrix, M_new: TransitionMatrix,
              cfg: PprSolverConfig) -> PprVector:
    """Correct a converged PPR vector for the topology change ``M -> M'``.

    The displaced mass ``alpha (M' - M) p`` is pushed through ``M'`` until
    the running correction term falls below ``cfg.push_tol`` in L1.
    Intermediate entries may go negative (the correction is signed); the
    final vector clamps entries in ``(-push_tol, 0)`` to zero.
    """
    delta = M_new.mat - M.mat
    pushout = cfg.alpha * (delta @ p.p)
    acc = p.p + _pushout_series(pushout, M_new, cfg,
                                col_l1=lambda v: float(np.abs(v).sum()))
    np.copyto(acc, 0.0, where=(acc > -cfg.push_tol) & (acc < 0.0))
    return PprVector(p=acc, seed=p.seed, alpha=p.alpha)


def track_ppr_matrix(P: np.ndarray, M: TransitionMatrix,
                     M_new: TransitionMatrix, cfg: PprSolverConfig) -> np.ndarray:
    """Track many seeds at once; column ``c`` of ``P`` is one PPR vector.

    Column arithmetic matches :func:`track_ppr`; the series stops when the
    worst column's term drops below ``push_tol``.
    """
    delta = M_new.mat - M.mat
    pushout = cfg.alpha * (delta @ P)
    acc = P + _pushout_series(
        pushout, M_new, cfg,
        col_l1=lambda V: float(np.abs(V).sum(axis=0).max()))
    np.copyto(acc, 0.0, where=(acc > -cfg.push_tol) & (acc < 0.0))
    return acc
