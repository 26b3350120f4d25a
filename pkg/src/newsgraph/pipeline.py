"""End-to-end orchestration: records -> features -> trained model -> metrics.

Bulk feature extraction uses the aggregate-seed solve (the sum of all
per-seed PPR vectors solved as one linear system), which the readout
identity makes equivalent to pooling every seed separately; interactive
prediction and explanation go through :func:`newsgraph.explain.analyze`
so that a document's base prediction and its masked variants always come
from the same arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .classifier import LABEL_NAMES, MlpModel, TrainConfig, predict, train
from .data import (MetricsReport, NewsRecord, compute_metrics, split,
                   split_indices)
from .embeddings import EmbeddingStore, feature_matrix, hash_only_store, load_embeddings
from .encode import DocEmbedding
from .errors import ModelFormatError
from .ppr import PprSolverConfig, seed_mass_vector, transition_matrix
from .textgraph import build_word_graph, tokenize


def make_pipeline_config(store: EmbeddingStore, window_k: int = 3,
                         cfg: PprSolverConfig | None = None,
                         embeddings_path: str | None = None) -> dict:
    """Everything a model file needs to rebuild its preprocessing."""
    cfg = cfg or PprSolverConfig()
    mode = "word2vec-text" if store.table else "hash-fallback"
    return {
        "window_k": window_k,
        "alpha": cfg.alpha,
        "tol": cfg.tol,
        "max_iters": cfg.max_iters,
        "push_tol": cfg.push_tol,
        "push_max_iters": cfg.push_max_iters,
        "dim": store.dim,
        "embedding": {
            "mode": mode,
            "path": embeddings_path,
            "dim": store.dim,
            "fallback_seed": store.fallback_seed,
            "source_meta": store.source_meta,
        },
        "label_names": list(LABEL_NAMES),
    }


def store_for_model(model: MlpModel,
                    embeddings_path: str | None = None) -> EmbeddingStore:
    """Reconstruct the embedding store a model was trained with.

    An explicit ``embeddings_path`` wins; otherwise hash-fallback models
    rebuild from recorded dim+seed and word2vec models reload from the
    recorded path.
    """
    emb = model.pipeline_config.get("embedding", {})
    dim = int(emb.get("dim", model.input_dim))
    seed = int(emb.get("fallback_seed", 0))
    if embeddings_path is not None:
        return load_embeddings(embeddings_path, fallback_seed=seed)
    if emb.get("mode", "hash-fallback") == "hash-fallback":
        return hash_only_store(dim=dim, fallback_seed=seed)
    path = emb.get("path")
    if not path:
        raise ModelFormatError(
            "model was trained with file-based embeddings but records no "
            "path; pass an embeddings file explicitly")
    return load_embeddings(path, fallback_seed=seed)


def embed_document(text: str, store: EmbeddingStore,
                   cfg: PprSolverConfig | None = None,
                   window_k: int = 3) -> DocEmbedding:
    """Document embedding via the aggregate-seed solve (bulk path)."""
    cfg = cfg or PprSolverConfig()
    graph = build_word_graph(tokenize(text), k=window_k)
    M = transition_matrix(graph)
    s = seed_mass_vector(M, cfg)
    X = feature_matrix(store, graph.words)
    return DocEmbedding(u=s @ X, n_nodes=graph.n_nodes, n_edges=graph.n_edges)


def extract_features(records: list[NewsRecord], store: EmbeddingStore,
                     cfg: PprSolverConfig | None = None,
                     window_k: int = 3) -> list[tuple[DocEmbedding, int]]:
    """Embeddings plus labels for a record list, in record order."""
    cfg = cfg or PprSolverConfig()
    return [(embed_document(r.article_text(), store, cfg, window_k), r.label)
            for r in records]


@dataclass
class TrainResult:
    model: MlpModel
    metrics: MetricsReport


def evaluate_model(model: MlpModel,
                   features: list[tuple[DocEmbedding, int]],
                   n_train: int = 0, seed: int | None = None) -> MetricsReport:
    predictions = [predict(model, emb).argmax for emb, _ in features]
    labels = [label for _, label in features]
    return compute_metrics(predictions, labels, n_train=n_train, seed=seed)


def train_pipeline(records: list[NewsRecord], store: EmbeddingStore,
                   train_cfg: TrainConfig,
                   solver_cfg: PprSolverConfig | None = None,
                   window_k: int = 3, test_fraction: float = 0.2,
                   embeddings_path: str | None = None,
                   split_seed: int | None = None) -> TrainResult:
    """Split, embed, train, and score on the held-out side."""
    solver_cfg = solver_cfg or PprSolverConfig()
    seed = train_cfg.rng_seed if split_seed is None else split_seed
    train_records, test_records = split(records, test_fraction, seed)
    train_features = extract_features(train_records, store, solver_cfg, window_k)
    test_features = extract_features(test_records, store, solver_cfg, window_k)
    pipeline_config = make_pipeline_config(store, window_k, solver_cfg,
                                           embeddings_path)
    model = train(train_features, train_cfg, pipeline_config=pipeline_config)
    metrics = evaluate_model(model, test_features,
                             n_train=len(train_records), seed=seed)
    return TrainResult(model=model, metrics=metrics)


@dataclass
class EvalSummary:
    """Mean and standard deviation of the metrics over repeated splits."""

    runs: list[MetricsReport]

    def aggregate(self) -> dict:
        names = ["accuracy", "precision", "recall", "f1"]
        out = {}
        for name in names:
            values = np.array([getattr(r, name) for r in self.runs])
            out[name] = {"mean": float(values.mean()),
                         "std": float(values.std())}
        out["n_runs"] = len(self.runs)
        return out


def evaluate_splits(records: list[NewsRecord], store: EmbeddingStore,
                    train_cfg: TrainConfig, seeds: list[int],
                    solver_cfg: PprSolverConfig | None = None,
                    window_k: int = 3,
                    test_fraction: float = 0.2) -> EvalSummary:
    """Repeat the split/train/score protocol once per seed.

    Features are extracted once; only the split, the shuffle, and the
    weight initialization vary with the seed.
    """
    solver_cfg = solver_cfg or PprSolverConfig()
    features = extract_features(records, store, solver_cfg, window_k)
    runs = []
    for seed in seeds:
        train_idx, test_idx = split_indices(len(records), test_fraction, seed)
        model = train([features[i] for i in train_idx],
                      replace(train_cfg, rng_seed=seed))
        report = evaluate_model(model, [features[i] for i in test_idx],
                                n_train=len(train_idx), seed=seed)
        runs.append(report)
    return EvalSummary(runs=runs)
