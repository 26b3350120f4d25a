"""Tokenization and word co-occurrence graphs.

An article becomes an undirected, unweighted graph with one node per
distinct word and an edge between every pair of distinct words that
co-occur inside a sliding window of ``k`` consecutive tokens.  Masking a
node removes every edge incident to it while keeping the node set fixed,
which is how per-word contributions are probed downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDocument, InvalidMask

DEFAULT_WINDOW = 3

# Maximal runs of Unicode alphanumerics ([^\W_] is \w minus underscore),
# with apostrophes kept when they sit between word characters.
_WORD_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split it into word tokens.

    Tokens are maximal alphanumeric runs; apostrophes internal to a word
    are retained ("don't" stays one token).  Stop words are kept.  Raises
    :class:`EmptyDocument` if no token survives.
    """
    normalized = text.lower().replace("’", "'")
    tokens = _WORD_RE.findall(normalized)
    if not tokens:
        raise EmptyDocument("text contains no word characters")
    return tokens


@dataclass
class WordGraph:
    """Co-occurrence graph of one article in compressed sparse form.

    ``indptr``/``indices`` hold the symmetric adjacency (CSR layout, the
    neighbor list of node ``i`` is ``indices[indptr[i]:indptr[i+1]]``,
    sorted ascending).  Node ids are dense ``0..n-1`` in first-occurrence
    order; there are no self-loops and no duplicate edges.
    """

    words: list[str]
    index_of: dict[str, int]
    indptr: np.ndarray
    indices: np.ndarray
    degree: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.words)

    @property
    def n_edges(self) -> int:
        return int(self.indices.size // 2)

    def neighbors(self, node: int) -> np.ndarray:
        return self.indices[self.indptr[node]:self.indptr[node + 1]]

    def edge_set(self) -> set[tuple[int, int]]:
        """All edges as (lo, hi) node-id pairs; handy for tests and demos."""
        edges = set()
        for i in range(self.n_nodes):
            for j in self.neighbors(i):
                if i < j:
                    edges.add((i, int(j)))
        return edges

    def word_edge_set(self) -> set[frozenset]:
        return {frozenset((self.words[i], self.words[j])) for i, j in self.edge_set()}


def _graph_from_edges(words: list[str], index_of: dict[str, int],
                      edges: set[tuple[int, int]]) -> WordGraph:
    n = len(words)
    counts = np.zeros(n, dtype=np.int64)
    for i, j in edges:
        counts[i] += 1
        counts[j] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.empty(indptr[-1], dtype=np.int64)
    cursor = indptr[:-1].copy()
    for i, j in sorted(edges):
        indices[cursor[i]] = j
        cursor[i] += 1
        indices[cursor[j]] = i
        cursor[j] += 1
    # sorted(edges) fills each row in ascending neighbor order for the
    # lower endpoint but not the higher one; sort rows to normalize.
    for i in range(n):
        row = indices[indptr[i]:indptr[i + 1]]
        row.sort()
    return WordGraph(words=words, index_of=index_of, indptr=indptr,
                     indices=indices, degree=counts)


def build_word_graph(tokens: list[str], k: int = DEFAULT_WINDOW) -> WordGraph:
    """Build the co-occurrence graph of ``tokens`` with window size ``k``.

    Every unordered pair of distinct words inside a window of ``k``
    consecutive tokens becomes an edge; repeats collapse.  A sequence
    shorter than ``k`` forms a single window.
    """
    if not tokens:
        raise EmptyDocument("cannot build a graph from zero tokens")
    if k < 2:
        raise ValueError(f"window size must be >= 2, got {k}")

    words: list[str] = []
    index_of: dict[str, int] = {}
    ids = np.empty(len(tokens), dtype=np.int64)
    for pos, tok in enumerate(tokens):
        node = index_of.get(tok)
        if node is None:
            node = len(words)
            index_of[tok] = node
            words.append(tok)
        ids[pos] = node

    edges: set[tuple[int, int]] = set()
    n_windows = max(1, len(tokens) - k + 1)
    for start in range(n_windows):
        window = ids[start:start + k]
        m = len(window)
        for a in range(m):
            for b in range(a + 1, m):
                i, j = int(window[a]), int(window[b])
                if i == j:
                    continue
                edges.add((i, j) if i < j else (j, i))
    return _graph_from_edges(words, index_of, edges)


def mask_nodes(graph: WordGraph, mask: set[int]) -> WordGraph:
    """Return a copy of ``graph`` with all edges incident to ``mask`` removed.

    The node set is unchanged and the input graph is not modified.  The
    mask must be a non-empty subset of the graph's node ids.
    """
    if not mask:
        raise InvalidMask("mask set is empty")
    for node in mask:
        if not (0 <= node < graph.n_nodes):
            raise InvalidMask(f"node id {node} out of range [0, {graph.n_nodes})")
    masked = set(mask)
    edges = {(i, j) for i, j in graph.edge_set()
             if i not in masked and j not in masked}
    return _graph_from_edges(list(graph.words), dict(graph.index_of), edges)
