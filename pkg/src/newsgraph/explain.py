"""Per-word explanation of a verdict by masking and incremental tracking.

For each candidate word the document graph is re-scored with that word's
node masked: surviving seeds' PPR vectors are corrected incrementally
(never re-solved from scratch), the masked node is excluded from the
readout, and the classifier is re-applied with frozen parameters.  The
signed change in the reference-class probability is the word's misleading
degree; positive means the word was hindering the verdict.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classifier import MlpModel, Prediction, predict
from .embeddings import EmbeddingStore, feature_matrix
from .encode import DocEmbedding, readout_sum
from .errors import NewsgraphError, UnknownWord
from .ppr import (PprSolverConfig, PprVector, TransitionMatrix, all_ppr,
                  track_ppr_matrix, transition_matrix)
from .textgraph import WordGraph, build_word_graph, mask_nodes, tokenize


def solver_config_for(model: MlpModel) -> PprSolverConfig:
    """Solver settings recorded in the model's pipeline config."""
    pc = model.pipeline_config
    return PprSolverConfig(alpha=pc.get("alpha", 0.85),
                           tol=pc.get("tol", 1e-9),
                           max_iters=pc.get("max_iters", 1000),
                           push_tol=pc.get("push_tol", 1e-10),
                           push_max_iters=pc.get("push_max_iters", 2000))


@dataclass
class AnalyzedDocument:
    """Everything the explainers need about one scored document."""

    graph: WordGraph
    X: np.ndarray
    P: list[PprVector]
    u: DocEmbedding
    base_prediction: Prediction
    M: TransitionMatrix
    P_matrix: np.ndarray = field(repr=False, default=None)
    cfg: PprSolverConfig = None

    @property
    def n_nodes(self) -> int:
        return self.graph.n_nodes


def analyze(text: str, model: MlpModel, store: EmbeddingStore) -> AnalyzedDocument:
    """Tokenize, build the graph, solve all PPR seeds, and classify."""
    tokens = tokenize(text)
    k = int(model.pipeline_config.get("window_k", 3))
    graph = build_word_graph(tokens, k=k)
    X = feature_matrix(store, graph.words)
    cfg = solver_config_for(model)
    P = all_ppr(graph, cfg)
    u = readout_sum(P, X, n_edges=graph.n_edges)
    base = predict(model, u)
    M = transition_matrix(graph)
    P_matrix = np.column_stack([vec.p for vec in P])
    return AnalyzedDocument(graph=graph, X=X, P=P, u=u, base_prediction=base,
                            M=M, P_matrix=P_matrix, cfg=cfg)


def _masked_prediction(doc: AnalyzedDocument, model: MlpModel,
                       mask: set[int]) -> Prediction:
    """Re-score the document with ``mask`` nodes cut out of the graph.

    Surviving seeds are tracked incrementally against the masked
    transition matrix; masked nodes contribute nothing to the readout.
    """
    masked_graph = mask_nodes(doc.graph, mask)
    M_new = transition_matrix(masked_graph)
    kept = np.array([i for i in range(doc.n_nodes) if i not in mask],
                    dtype=np.int64)
    if kept.size == 0:
        u_masked = np.zeros(doc.X.shape[1])
    else:
        P_new = track_ppr_matrix(doc.P_matrix[:, kept], doc.M, M_new, doc.cfg)
        u_masked = P_new.sum(axis=1) @ doc.X
    emb = DocEmbedding(u=u_masked, n_nodes=doc.n_nodes,
                       n_edges=masked_graph.n_edges)
    return predict(model, emb)


def misleading_degree(doc: AnalyzedDocument, model: MlpModel, node: int,
                      reference_class: int) -> tuple[float, Prediction]:
    """Signed probability change for the reference class when ``node`` is masked."""
    if not 0 <= node < doc.n_nodes:
        raise ValueError(f"node {node} out of range [0, {doc.n_nodes})")
    masked = _masked_prediction(doc, model, {node})
    degree = masked[reference_class] - doc.base_prediction[reference_class]
    return degree, masked


@dataclass
class MisleadingEntry:
    word: str
    node_id: int
    misleading_degree: float
    masked_prediction: Prediction

    def as_dict(self) -> dict:
        return {"word": self.word, "node_id": self.node_id,
                "misleading_degree": self.misleading_degree,
                "masked_prediction": {
                    "p_real": self.masked_prediction.p_real,
                    "p_fake": self.masked_prediction.p_fake}}


@dataclass
class MisleadingReport:
    """Per-word misleading degrees, ranked most misleading first."""

    entries: list[MisleadingEntry]
    reference_class: int

    def as_dict(self) -> dict:
        return {"reference_class": self.reference_class,
                "entries": [e.as_dict() for e in self.entries]}


def explain_all(doc: AnalyzedDocument, model: MlpModel,
                reference_class: int | None = None, workers: int = 1,
                progress_callback=None) -> MisleadingReport:
    """Mask every word in turn and rank the resulting misleading degrees.

    ``reference_class`` defaults to the argmax of the base prediction
    (inference mode); pass the ground-truth class in evaluation mode.
    Candidate words run on up to ``workers`` threads; the output is
    assembled in node order and sorted afterwards, so it is identical
    for any worker count.
    """
    ref = doc.base_prediction.argmax if reference_class is None else reference_class

    def one(node: int) -> MisleadingEntry:
        word = doc.graph.words[node]
        try:
            degree, masked = misleading_degree(doc, model, node, ref)
        except NewsgraphError as exc:
            raise type(exc)(f"while masking word {word!r}: {exc}") from exc
        if progress_callback is not None:
            progress_callback(node)
        return MisleadingEntry(word=word, node_id=node,
                               misleading_degree=degree,
                               masked_prediction=masked)

    nodes = range(doc.n_nodes)
    if workers <= 1:
        entries = [one(node) for node in nodes]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(one, nodes))
    entries.sort(key=lambda e: (-e.misleading_degree, e.node_id))
    return MisleadingReport(entries=entries, reference_class=ref)


def what_if(doc: AnalyzedDocument, model: MlpModel,
            words: set[str]) -> Prediction:
    """Prediction with all named words masked simultaneously.

    An empty set returns the base prediction unchanged; words absent from
    the document raise :class:`UnknownWord` listing every miss.
    """
    if not words:
        return doc.base_prediction
    missing = sorted(w for w in words if w not in doc.graph.index_of)
    if missing:
        raise UnknownWord(f"words not in document: {', '.join(missing)}",
                          words=missing)
    mask = {doc.graph.index_of[w] for w in words}
    return _masked_prediction(doc, model, mask)
