"""Document embeddings: PPR-weighted pooling plus feature standardization.

Each node's hidden vector is its PPR distribution applied to the feature
matrix, ``h_i = p_i^T X``; the document embedding is the sum readout of
those hidden vectors.  Sum pooling scales with article length, so a
per-dimension standardizer fitted on the training set sits between the
embedding and the classifier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyTrainingSet, ShapeError
from .ppr import PprVector


@dataclass
class DocEmbedding:
    u: np.ndarray
    n_nodes: int
    n_edges: int


def node_hidden(p: PprVector, X: np.ndarray) -> np.ndarray:
    """Hidden vector of one node: its PPR weights applied to the rows of X."""
    if p.p.shape[0] != X.shape[0]:
        raise ShapeError(f"PPR vector has {p.p.shape[0]} entries, "
                         f"feature matrix has {X.shape[0]} rows")
    return p.p @ X


def readout_sum(P: list[PprVector], X: np.ndarray,
                excluded: set[int] | None = None,
                n_edges: int = 0) -> DocEmbedding:
    """Sum the hidden vectors of all nodes not in ``excluded``.

    With an empty exclusion set this equals ``(sum_i p_i)^T X`` exactly
    (up to float reassociation), a linearity identity the tests pin down.
    Excluding every node yields the zero embedding.
    """
    if len(P) != X.shape[0]:
        raise ShapeError(f"{len(P)} PPR vectors for {X.shape[0]} feature rows")
    excluded = excluded or set()
    u = np.zeros(X.shape[1])
    for i, p in enumerate(P):
        if i in excluded:
            continue
        u += node_hidden(p, X)
    return DocEmbedding(u=u, n_nodes=len(P), n_edges=n_edges)


@dataclass
class Standardizer:
    """Per-dimension affine map fitted on training embeddings."""

    mu: np.ndarray
    sigma: np.ndarray
    epsilon: float = 1e-8


def fit_standardizer(embeddings: list[DocEmbedding],
                     epsilon: float = 1e-8) -> Standardizer:
    """Mean and population standard deviation over the training embeddings."""
    if not embeddings:
        raise EmptyTrainingSet("cannot fit a standardizer on zero embeddings")
    U = np.stack([e.u for e in embeddings])
    return Standardizer(mu=U.mean(axis=0), sigma=U.std(axis=0), epsilon=epsilon)


def standardize(u: DocEmbedding | np.ndarray, s: Standardizer) -> np.ndarray:
    """Elementwise ``(u - mu) / (sigma + epsilon)``."""
    vec = u.u if isinstance(u, DocEmbedding) else u
    if vec.shape != s.mu.shape:
        raise ShapeError(f"embedding has shape {vec.shape}, "
                         f"standardizer expects {s.mu.shape}")
    return (vec - s.mu) / (s.sigma + s.epsilon)
