import json

import pytest

from newsgraph.cli import main
from newsgraph.data import synthetic_corpus, write_corpus_csv


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("corpus")
    write_corpus_csv(synthetic_corpus(120, seed=1), directory)
    return directory


@pytest.fixture(scope="module")
def model_path(tmp_path_factory, corpus_dir):
    out = tmp_path_factory.mktemp("model") / "model.json"
    code = main(["train", "--data", str(corpus_dir), "--out", str(out),
                 "--seed", "7", "--epochs", "3", "--hash-dim", "32"])
    assert code == 0
    return out


SAMPLE = "bako kode lima wasa tena bako kode"


class TestTrain:
    def test_writes_model_and_metrics(self, model_path):
        assert model_path.exists()
        metrics = json.loads((model_path.parent / "model.json.metrics.json")
                             .read_text())
        assert set(metrics) >= {"accuracy", "precision", "recall", "f1",
                                "n_train", "n_test", "seed"}

    def test_same_seed_byte_identical(self, corpus_dir, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            code = main(["train", "--data", str(corpus_dir), "--out",
                         str(out), "--seed", "3", "--epochs", "2",
                         "--hash-dim", "16"])
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_missing_corpus_dir_exits_2(self, tmp_path, capsys):
        code = main(["train", "--data", str(tmp_path / "nope"),
                     "--out", str(tmp_path / "m.json")])
        assert code == 2
        assert "nope" in capsys.readouterr().err

    def test_missing_embeddings_file_exits_2(self, corpus_dir, tmp_path,
                                             capsys):
        code = main(["train", "--data", str(corpus_dir),
                     "--embeddings", str(tmp_path / "vectors.txt"),
                     "--out", str(tmp_path / "m.json")])
        assert code == 2
        assert "vectors.txt" in capsys.readouterr().err


class TestPredict:
    def test_text_flag(self, model_path, capsys):
        code = main(["predict", "--model", str(model_path),
                     "--text", SAMPLE])
        assert code == 0
        out = capsys.readouterr().out
        assert "p_real:" in out and "p_fake:" in out
        p_real = float(out.split("p_real:")[1].split()[0])
        p_fake = float(out.split("p_fake:")[1].split()[0])
        assert abs(p_real + p_fake - 1.0) < 1e-9
        # at least 9 decimal digits printed
        assert len(out.split("p_real:")[1].split()[0].split(".")[1]) >= 9

    def test_json_flag_sums_to_one(self, model_path, capsys):
        code = main(["predict", "--model", str(model_path),
                     "--text", SAMPLE, "--json"])
        assert code == 0
        body = json.loads(capsys.readouterr().out)
        assert abs(body["p_real"] + body["p_fake"] - 1.0) < 1e-12
        assert body["n_nodes"] > 0

    def test_deterministic_output(self, model_path, capsys):
        main(["predict", "--model", str(model_path), "--text", SAMPLE])
        first = capsys.readouterr().out
        main(["predict", "--model", str(model_path), "--text", SAMPLE])
        assert capsys.readouterr().out == first

    def test_stdin_source(self, model_path, capsys, monkeypatch):
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(SAMPLE))
        assert main(["predict", "--model", str(model_path), "--stdin"]) == 0
        assert "p_fake:" in capsys.readouterr().out

    def test_empty_stdin_exits_3(self, model_path, capsys, monkeypatch):
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(""))
        assert main(["predict", "--model", str(model_path), "--stdin"]) == 3

    def test_file_source(self, model_path, tmp_path, capsys):
        f = tmp_path / "article.txt"
        f.write_text(SAMPLE)
        assert main(["predict", "--model", str(model_path),
                     "--file", str(f)]) == 0

    def test_bad_model_file_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        assert main(["predict", "--model", str(bad), "--text", "x"]) == 2


class TestExplain:
    def test_default_prints_ranked_table(self, model_path, capsys):
        code = main(["explain", "--model", str(model_path),
                     "--text", SAMPLE])
        assert code == 0
        out = capsys.readouterr().out
        assert "rank" in out
        assert "misleading_degree" in out

    def test_top_k_zero_prediction_only(self, model_path, capsys):
        code = main(["explain", "--model", str(model_path),
                     "--text", SAMPLE, "--top-k", "0"])
        assert code == 0
        out = capsys.readouterr().out
        assert "p_fake:" in out
        assert "rank" not in out

    def test_top_k_all_and_sorted(self, model_path, capsys):
        code = main(["explain", "--model", str(model_path),
                     "--text", SAMPLE, "--top-k", "-1", "--json"])
        assert code == 0
        body = json.loads(capsys.readouterr().out)
        entries = body["entries"]
        distinct = len(set(SAMPLE.split()))
        assert len(entries) == distinct
        degrees = [e["misleading_degree"] for e in entries]
        assert degrees == sorted(degrees, reverse=True)

    def test_top_k_larger_than_vocab_prints_all(self, model_path, capsys):
        code = main(["explain", "--model", str(model_path),
                     "--text", SAMPLE, "--top-k", "99", "--json"])
        assert code == 0
        body = json.loads(capsys.readouterr().out)
        assert len(body["entries"]) == len(set(SAMPLE.split()))

    def test_workers_do_not_change_output(self, model_path, capsys):
        main(["explain", "--model", str(model_path), "--text", SAMPLE,
              "--workers", "1", "--json"])
        one = capsys.readouterr().out
        main(["explain", "--model", str(model_path), "--text", SAMPLE,
              "--workers", "8", "--json"])
        assert capsys.readouterr().out == one


class TestEval:
    def test_aggregates_over_runs(self, corpus_dir, capsys):
        code = main(["eval", "--data", str(corpus_dir), "--runs", "3",
                     "--epochs", "2", "--hash-dim", "16", "--json"])
        assert code == 0
        body = json.loads(capsys.readouterr().out)
        assert body["n_runs"] == 3
        for name in ("accuracy", "precision", "recall", "f1"):
            assert 0.0 <= body[name]["mean"] <= 1.0
            assert body[name]["std"] >= 0.0

    def test_single_run_has_zero_std(self, corpus_dir, capsys):
        code = main(["eval", "--data", str(corpus_dir), "--runs", "1",
                     "--epochs", "1", "--hash-dim", "16", "--json"])
        assert code == 0
        body = json.loads(capsys.readouterr().out)
        assert body["accuracy"]["std"] == 0.0
