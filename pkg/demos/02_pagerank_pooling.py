"""From graph to document vector: personalized PageRank pooling.

Run:  python3 demos/02_pagerank_pooling.py
"""

import numpy as np

from newsgraph import (PprSolverConfig, all_ppr, build_word_graph,
                       hash_only_store, readout_sum, tokenize,
                       transition_matrix)
from newsgraph.embeddings import feature_matrix
from newsgraph.ppr import solve_ppr

np.set_printoptions(precision=4, suppress=True)

graph = build_word_graph(tokenize("I eat an apple"), k=3)
cfg = PprSolverConfig(alpha=0.85)

# The transition matrix pushes a random walker to a uniform neighbor;
# every column sums to one.
M = transition_matrix(graph)
print("transition matrix (columns are walk sources):")
print(M.mat.toarray())
print("column sums:", M.column_sums())
print()

# A personalized PageRank vector is the stationary distribution of a walk
# that teleports back to its seed word with probability 1 - alpha.
seed = graph.index_of["apple"]
vec = solve_ppr(M, seed, cfg)
print(f"PPR seeded at 'apple' (converged in {vec.iterations} iterations):")
for word, mass in zip(graph.words, vec.p):
    print(f"  {word:<6} {mass:.6f}")
print("  mass total:", vec.p.sum())
print()

# Each word's hidden vector is its PPR distribution applied to the word
# vectors; summing them gives the document embedding.
store = hash_only_store(dim=8, fallback_seed=0)
X = feature_matrix(store, graph.words)
P = all_ppr(graph, cfg)
u = readout_sum(P, X, n_edges=graph.n_edges)
print("document embedding u:")
print(u.u)

# Sum pooling satisfies an exact identity: pooling per-seed hidden vectors
# equals projecting the summed PPR mass once.
direct = np.sum([v.p for v in P], axis=0) @ X
print("max |u - (sum_i p_i)^T X|:", np.abs(u.u - direct).max())
