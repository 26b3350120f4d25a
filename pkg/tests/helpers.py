"""Shared test utilities: random graphs and independent oracles."""

import numpy as np

from newsgraph.textgraph import WordGraph, _graph_from_edges


def graph_from_edges(n, edges):
    """WordGraph with synthetic words w0..w{n-1} and the given edge pairs."""
    words = [f"w{i}" for i in range(n)]
    index_of = {w: i for i, w in enumerate(words)}
    normalized = {(min(i, j), max(i, j)) for i, j in edges if i != j}
    return _graph_from_edges(words, index_of, normalized)


def random_connected_graph(rng, n, extra_edge_prob=0.15):
    """Random tree on n nodes plus a sprinkle of extra edges."""
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.add((u, v))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < extra_edge_prob:
                edges.add((i, j))
    return graph_from_edges(n, edges)


def random_graph(rng, n, edge_prob=0.2):
    """Erdos-Renyi style graph; may be disconnected or have isolated nodes."""
    edges = {(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < edge_prob}
    return graph_from_edges(n, edges)


def dense_transition(graph):
    """Column-stochastic transition matrix built independently and densely."""
    n = graph.n_nodes
    M = np.zeros((n, n))
    for j in range(n):
        nbrs = graph.neighbors(j)
        if len(nbrs) == 0:
            M[j, j] = 1.0
        else:
            M[nbrs, j] = 1.0 / len(nbrs)
    return M


def exact_ppr(graph, seed, alpha):
    """Oracle: solve (I - alpha M) p = (1-alpha) e_seed with dense linalg."""
    n = graph.n_nodes
    M = dense_transition(graph)
    r = np.zeros(n)
    r[seed] = 1.0
    return np.linalg.solve(np.eye(n) - alpha * M, (1 - alpha) * r)
