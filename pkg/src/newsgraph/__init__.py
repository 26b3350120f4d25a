"""Explainable news-article classification over word co-occurrence graphs.

An article becomes a word graph; pretrained (or hash-fallback) word
vectors are pooled with personalized-PageRank weights into a document
embedding; a small MLP scores it real vs fake; and each word's influence
on the verdict is measured by masking its node and tracking the PageRank
vectors incrementally, without retraining anything.
"""

__version__ = "0.1.0"

from .classifier import (MlpModel, Prediction, TrainConfig, forward,
                         init_mlp, load_model, loss, predict, save_model,
                         train)
from .data import (MetricsReport, NewsRecord, compute_metrics, load_corpus,
                   split, synthetic_corpus, write_corpus_csv)
from .embeddings import (EmbeddingStore, fallback_vector, feature_matrix,
                         hash_only_store, load_embeddings)
from .encode import (DocEmbedding, Standardizer, fit_standardizer,
                     node_hidden, readout_sum, standardize)
from .errors import (CorpusError, EmbeddingParseError, EmptyDocument,
                     EmptyTrainingSet, InvalidMask, LengthMismatch,
                     MissingClass, ModelFormatError, NewsgraphError,
                     NumericalError, ShapeError, SolverDidNotConverge,
                     TrackerDidNotConverge, UnknownWord)
from .explain import (AnalyzedDocument, MisleadingEntry, MisleadingReport,
                      analyze, explain_all, misleading_degree, what_if)
from .pipeline import (embed_document, evaluate_splits, extract_features,
                       make_pipeline_config, store_for_model, train_pipeline)
from .ppr import (PprSolverConfig, PprVector, TransitionMatrix, all_ppr,
                  solve_ppr, track_ppr, transition_matrix)
from .textgraph import WordGraph, build_word_graph, mask_nodes, tokenize
