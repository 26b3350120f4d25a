"""Command-line entry point: train, eval, predict, explain, serve.

Exit codes: 0 success, 1 internal error, 2 unreadable/malformed input
files, 3 unusable query text.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classifier import TrainConfig, load_model, save_model
from .data import load_corpus
from .embeddings import hash_only_store, load_embeddings
from .errors import (CorpusError, EmbeddingParseError, EmptyDocument,
                     ModelFormatError, NewsgraphError, UnknownWord)
from .explain import analyze, explain_all
from .pipeline import (evaluate_splits, store_for_model, train_pipeline)
from .ppr import PprSolverConfig

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_BAD_INPUT = 2
EXIT_BAD_TEXT = 3


def _add_text_source(parser):
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--text", help="article text on the command line")
    src.add_argument("--file", help="read article text from a file")
    src.add_argument("--stdin", action="store_true",
                     help="read article text from standard input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newsgraph",
        description="Graph-based, explainable news-article classification")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a model on a corpus")
    p_train.add_argument("--data", required=True, help="corpus directory")
    p_train.add_argument("--embeddings", help="word2vec text-format file "
                         "(omit to use hash-fallback vectors)")
    p_train.add_argument("--out", required=True, help="model file to write")
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--epochs", type=int, default=20)
    p_train.add_argument("--batch", type=int, default=64)
    p_train.add_argument("--lr", type=float, default=1e-4)
    p_train.add_argument("--window", type=int, default=3)
    p_train.add_argument("--alpha", type=float, default=0.85)
    p_train.add_argument("--test-fraction", type=float, default=0.2)
    p_train.add_argument("--hash-dim", type=int, default=300,
                         help="fallback vector dimension when no file given")
    p_train.add_argument("--json", action="store_true")

    p_pred = sub.add_parser("predict", help="classify one article")
    p_pred.add_argument("--model", required=True)
    _add_text_source(p_pred)
    p_pred.add_argument("--embeddings",
                        help="override the embedding source recorded in the model")
    p_pred.add_argument("--json", action="store_true")

    p_exp = sub.add_parser("explain", help="rank words by misleading degree")
    p_exp.add_argument("--model", required=True)
    _add_text_source(p_exp)
    p_exp.add_argument("--embeddings")
    p_exp.add_argument("--top-k", type=int, default=25,
                       help="entries to print; 0 = prediction only, -1 = all")
    p_exp.add_argument("--workers", type=int, default=1)
    p_exp.add_argument("--json", action="store_true")

    p_eval = sub.add_parser("eval", help="repeated-split evaluation protocol")
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--embeddings")
    p_eval.add_argument("--splits", type=float, default=0.2,
                        help="test fraction per run")
    p_eval.add_argument("--runs", type=int, default=10)
    p_eval.add_argument("--seed", type=int, default=0,
                        help="first split seed; run i uses seed+i")
    p_eval.add_argument("--epochs", type=int, default=20)
    p_eval.add_argument("--batch", type=int, default=64)
    p_eval.add_argument("--lr", type=float, default=1e-4)
    p_eval.add_argument("--window", type=int, default=3)
    p_eval.add_argument("--alpha", type=float, default=0.85)
    p_eval.add_argument("--hash-dim", type=int, default=300)
    p_eval.add_argument("--json", action="store_true")

    p_srv = sub.add_parser("serve", help="run the HTTP API and demo UI")
    p_srv.add_argument("--model", help="model file (omit for a bare server)")
    p_srv.add_argument("--port", type=int, default=8080)
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--embeddings")
    p_srv.add_argument("--workers", type=int, default=2,
                       help="threads per explanation job")
    p_srv.add_argument("--ui-dir", help="directory of built web UI assets")
    return parser


def _load_store(args):
    if getattr(args, "embeddings", None):
        return load_embeddings(args.embeddings), args.embeddings
    return hash_only_store(dim=args.hash_dim), None


def _read_text(args) -> str:
    if args.text is not None:
        return args.text
    if args.file is not None:
        with open(args.file, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _model_and_store(args):
    model = load_model(args.model)
    store = store_for_model(model, embeddings_path=args.embeddings or None)
    return model, store


def cmd_train(args) -> int:
    records, dropped = load_corpus(args.data)
    store, emb_path = _load_store(args)
    train_cfg = TrainConfig(learning_rate=args.lr, batch_size=args.batch,
                            epochs=args.epochs, rng_seed=args.seed)
    solver_cfg = PprSolverConfig(alpha=args.alpha)
    result = train_pipeline(records, store, train_cfg,
                            solver_cfg=solver_cfg, window_k=args.window,
                            test_fraction=args.test_fraction,
                            embeddings_path=emb_path)
    save_model(result.model, args.out)
    metrics = result.metrics.as_dict()
    metrics["dropped_records"] = dropped
    metrics_path = f"{args.out}.metrics.json"
    with open(metrics_path, "w", encoding="utf-8") as fh:
        json.dump(metrics, fh, indent=2)
        fh.write("\n")
    if args.json:
        print(json.dumps({"model": args.out, "metrics": metrics}))
    else:
        print(f"model written to {args.out}")
        print(f"metrics written to {metrics_path}")
        for name in ("accuracy", "precision", "recall", "f1"):
            print(f"  {name:>9}: {metrics[name]:.4f}")
    return EXIT_OK


def cmd_predict(args) -> int:
    model, store = _model_and_store(args)
    doc = analyze(_read_text(args), model, store)
    body = {"p_real": doc.base_prediction.p_real,
            "p_fake": doc.base_prediction.p_fake,
            "n_nodes": doc.graph.n_nodes,
            "n_edges": doc.graph.n_edges}
    if args.json:
        print(json.dumps(body))
    else:
        print(f"p_real: {body['p_real']:.12f}")
        print(f"p_fake: {body['p_fake']:.12f}")
        print(f"n_nodes: {body['n_nodes']}")
        print(f"n_edges: {body['n_edges']}")
    return EXIT_OK


def cmd_explain(args) -> int:
    model, store = _model_and_store(args)
    doc = analyze(_read_text(args), model, store)
    if args.top_k == 0:
        entries = []
        report = None
    else:
        report = explain_all(doc, model, workers=args.workers)
        entries = report.entries
        if args.top_k > 0:
            entries = entries[:args.top_k]
    if args.json:
        body = {"p_real": doc.base_prediction.p_real,
                "p_fake": doc.base_prediction.p_fake,
                "n_nodes": doc.graph.n_nodes,
                "n_edges": doc.graph.n_edges}
        if report is not None:
            body["reference_class"] = report.reference_class
            body["entries"] = [e.as_dict() for e in entries]
        print(json.dumps(body))
    else:
        print(f"p_real: {doc.base_prediction.p_real:.12f}")
        print(f"p_fake: {doc.base_prediction.p_fake:.12f}")
        if report is not None:
            ref_name = model.label_names[report.reference_class]
            print(f"reference class: {ref_name}")
            print(f"{'rank':>4}  {'word':<20} {'misleading_degree':>20} "
                  f"{'masked_p_' + ref_name:>18}")
            for rank, e in enumerate(entries, start=1):
                masked = e.masked_prediction[report.reference_class]
                print(f"{rank:>4}  {e.word:<20} {e.misleading_degree:>+20.12f} "
                      f"{masked:>18.12f}")
    return EXIT_OK


def cmd_eval(args) -> int:
    records, dropped = load_corpus(args.data)
    store, _ = _load_store(args)
    train_cfg = TrainConfig(learning_rate=args.lr, batch_size=args.batch,
                            epochs=args.epochs)
    solver_cfg = PprSolverConfig(alpha=args.alpha)
    seeds = [args.seed + i for i in range(args.runs)]
    summary = evaluate_splits(records, store, train_cfg, seeds,
                              solver_cfg=solver_cfg, window_k=args.window,
                              test_fraction=args.splits)
    agg = summary.aggregate()
    agg["dropped_records"] = dropped
    agg["test_fraction"] = args.splits
    if args.json:
        print(json.dumps(agg))
    else:
        print(f"{args.runs} runs at test fraction {args.splits}")
        for name in ("accuracy", "precision", "recall", "f1"):
            stats = agg[name]
            print(f"  {name:>9}: {stats['mean']:.4f} +/- {stats['std']:.4f}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    model = load_model(args.model) if args.model else None
    store = None
    if model is not None:
        store = store_for_model(model, embeddings_path=args.embeddings or None)
    app = create_app(model=model, store=store, ui_dir=args.ui_dir,
                     explain_workers=args.workers)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {"train": cmd_train, "predict": cmd_predict,
             "explain": cmd_explain, "eval": cmd_eval, "serve": cmd_serve}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CorpusError, EmbeddingParseError, ModelFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (EmptyDocument, UnknownWord) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_TEXT
    except NewsgraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
