import numpy as np
import pytest

from newsgraph.classifier import TrainConfig, train
from newsgraph.data import synthetic_corpus
from newsgraph.embeddings import hash_only_store
from newsgraph.errors import ModelFormatError
from newsgraph.explain import analyze
from newsgraph.pipeline import (embed_document, evaluate_splits,
                                extract_features, make_pipeline_config,
                                store_for_model, train_pipeline)

STORE = hash_only_store(dim=20, fallback_seed=4)


def small_model():
    records = synthetic_corpus(40, seed=8)
    features = extract_features(records, STORE)
    return train(features, TrainConfig(epochs=2, rng_seed=0),
                 pipeline_config=make_pipeline_config(STORE))


class TestEmbedDocument:
    def test_matches_full_per_seed_readout(self):
        # The bulk path solves sum_i p_i directly; the interactive path
        # sums per-seed solves. Both approximate the same exact vector.
        model = small_model()
        rng = np.random.default_rng(0)
        vocab = [f"v{i}" for i in range(15)]
        for _ in range(10):
            text = " ".join(vocab[int(rng.integers(15))]
                            for _ in range(int(rng.integers(5, 60))))
            fast = embed_document(text, STORE)
            full = analyze(text, model, STORE)
            assert np.abs(fast.u - full.u.u).max() < 1e-6
            assert fast.n_nodes == full.graph.n_nodes
            assert fast.n_edges == full.graph.n_edges


class TestStoreForModel:
    def test_hash_fallback_reconstructed(self):
        model = small_model()
        store = store_for_model(model)
        assert store.dim == STORE.dim
        assert store.fallback_seed == STORE.fallback_seed
        np.testing.assert_array_equal(store.lookup("anything"),
                                      STORE.lookup("anything"))

    def test_word2vec_reloaded_from_recorded_path(self, tmp_path):
        path = tmp_path / "vectors.txt"
        path.write_text("2 4\nalpha 1 2 3 4\nbeta 4 3 2 1\n")
        from newsgraph.embeddings import load_embeddings
        file_store = load_embeddings(str(path))
        records = synthetic_corpus(40, seed=8)
        features = extract_features(records, file_store)
        model = train(features, TrainConfig(epochs=1, rng_seed=0),
                      pipeline_config=make_pipeline_config(
                          file_store, embeddings_path=str(path)))
        store = store_for_model(model)
        np.testing.assert_array_equal(store.lookup("alpha"), [1, 2, 3, 4])

    def test_word2vec_without_path_is_an_error(self):
        model = small_model()
        model.pipeline_config["embedding"] = {"mode": "word2vec-text",
                                              "dim": 20, "fallback_seed": 4}
        with pytest.raises(ModelFormatError):
            store_for_model(model)

    def test_explicit_override_wins(self, tmp_path):
        path = tmp_path / "vectors.txt"
        path.write_text("1 20\n" + "zeta " + " ".join(["7"] * 20) + "\n")
        model = small_model()
        store = store_for_model(model, embeddings_path=str(path))
        np.testing.assert_array_equal(store.lookup("zeta"), [7.0] * 20)


class TestTrainPipeline:
    def test_returns_model_and_heldout_metrics(self):
        records = synthetic_corpus(100, seed=9)
        result = train_pipeline(records, STORE,
                                TrainConfig(epochs=2, rng_seed=1))
        assert result.model.input_dim == STORE.dim
        assert result.metrics.n_test == 20
        assert result.metrics.n_train == 80
        assert 0.0 <= result.metrics.accuracy <= 1.0

    def test_pipeline_config_recorded(self):
        records = synthetic_corpus(60, seed=10)
        result = train_pipeline(records, STORE,
                                TrainConfig(epochs=1, rng_seed=1),
                                window_k=4)
        pc = result.model.pipeline_config
        assert pc["window_k"] == 4
        assert pc["alpha"] == 0.85
        assert pc["embedding"]["mode"] == "hash-fallback"


class TestEvaluateSplits:
    def test_seed_list_order_does_not_matter(self):
        records = synthetic_corpus(80, seed=11)
        cfg = TrainConfig(epochs=1)
        fwd = evaluate_splits(records, STORE, cfg, seeds=[0, 1, 2])
        rev = evaluate_splits(records, STORE, cfg, seeds=[2, 1, 0])
        assert fwd.aggregate() == rev.aggregate()

    def test_single_seed_zero_std(self):
        records = synthetic_corpus(60, seed=12)
        summary = evaluate_splits(records, STORE, TrainConfig(epochs=1),
                                  seeds=[5])
        agg = summary.aggregate()
        assert agg["accuracy"]["std"] == 0.0
        assert agg["n_runs"] == 1
