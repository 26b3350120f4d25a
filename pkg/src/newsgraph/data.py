"""Corpus ingestion, splits, metrics, and a synthetic two-class corpus.

The on-disk layout mirrors the public fake/real political-news corpus:
``Fake.csv`` and ``True.csv``, RFC-4180 quoting, with columns title, text,
subject, date.  Records whose title+text tokenize to nothing are dropped
(and counted).  The synthetic generator produces a corpus of the same
shape from two overlapping word distributions, for tests and desk-scale
runs where the real corpus and pretrained vectors are not on hand.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import numpy as np

from .classifier import FAKE, REAL
from .errors import CorpusError, EmptyDocument, LengthMismatch, MissingClass
from .textgraph import tokenize

CORPUS_HEADER = ["title", "text", "subject", "date"]


@dataclass
class NewsRecord:
    title: str
    text: str
    subject: str
    date: str
    label: int  # 0 = real, 1 = fake

    def article_text(self) -> str:
        """Title and body concatenated; the unit the pipeline consumes."""
        return f"{self.title} {self.text}".strip()


@dataclass
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    n_train: int = 0
    n_test: int = 0
    seed: int | None = None

    def as_dict(self) -> dict:
        return {"accuracy": self.accuracy, "precision": self.precision,
                "recall": self.recall, "f1": self.f1,
                "n_train": self.n_train, "n_test": self.n_test,
                "seed": self.seed}


def _tokenizes_to_nothing(record: NewsRecord) -> bool:
    try:
        tokenize(record.article_text())
        return False
    except EmptyDocument:
        return True


def _read_csv(path, label: int) -> list[NewsRecord]:
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusError(f"{path}: file is empty")
        if [h.strip().lower() for h in header] != CORPUS_HEADER:
            raise CorpusError(f"{path}: expected header {CORPUS_HEADER}, "
                              f"got {header}")
        for row_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise CorpusError(f"{path}: row {row_number} has {len(row)} "
                                  f"fields, expected 4")
            records.append(NewsRecord(title=row[0], text=row[1],
                                      subject=row[2], date=row[3],
                                      label=label))
    return records


def load_corpus(directory) -> tuple[list[NewsRecord], int]:
    """Load ``Fake.csv`` + ``True.csv`` under ``directory``.

    Returns ``(records, n_dropped)`` where dropped records are those with
    no word characters in title+text.  Order is deterministic: fake rows
    in file order, then real rows.
    """
    fake_path = os.path.join(directory, "Fake.csv")
    true_path = os.path.join(directory, "True.csv")
    for path in (fake_path, true_path):
        if not os.path.exists(path):
            raise CorpusError(f"missing corpus file: {path}")
    records = _read_csv(fake_path, FAKE) + _read_csv(true_path, REAL)
    kept = [r for r in records if not _tokenizes_to_nothing(r)]
    return kept, len(records) - len(kept)


def split_indices(n: int, test_fraction: float,
                  seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Seeded uniform permutation of ``range(n)``, cut into train/test.

    The test side takes the last ``floor(n * test_fraction)`` positions of
    the shuffle.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    n_test = int(n * test_fraction)
    return order[:n - n_test], order[n - n_test:]


def split(records: list, test_fraction: float,
          seed: int) -> tuple[list, list]:
    """Seeded uniform shuffle, then train prefix / test suffix.

    Raises :class:`MissingClass` if either class is absent from the train
    side.
    """
    train_idx, test_idx = split_indices(len(records), test_fraction, seed)
    train = [records[i] for i in train_idx]
    test = [records[i] for i in test_idx]
    train_labels = {r.label for r in train}
    for cls in (REAL, FAKE):
        if cls not in train_labels:
            raise MissingClass(f"class {cls} missing from training split")
    return train, test


def compute_metrics(predictions: list, labels: list, n_train: int = 0,
                    seed: int | None = None) -> MetricsReport:
    """Accuracy, precision, recall, F1 with fake (1) as the positive class.

    Zero denominators yield 0 by convention.
    """
    if len(predictions) != len(labels):
        raise LengthMismatch(f"{len(predictions)} predictions vs "
                             f"{len(labels)} labels")
    if not labels:
        raise LengthMismatch("empty prediction/label lists")
    pred = np.asarray(predictions)
    lab = np.asarray(labels)
    tp = int(((pred == FAKE) & (lab == FAKE)).sum())
    fp = int(((pred == FAKE) & (lab == REAL)).sum())
    fn = int(((pred == REAL) & (lab == FAKE)).sum())
    accuracy = float((pred == lab).mean())
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall > 0 else 0.0)
    return MetricsReport(accuracy=accuracy, precision=precision,
                         recall=recall, f1=f1, n_train=n_train,
                         n_test=len(labels), seed=seed)


# ---------------------------------------------------------------------------
# Synthetic corpus: two overlapping word distributions, one per class.

_SYLLABLES = ["ba", "co", "de", "fi", "gu", "ha", "ji", "ko", "lu", "ma",
              "ne", "po", "qui", "ro", "sa", "te", "vu", "wa", "xi", "zo"]


def _synth_word(rng) -> str:
    return "".join(rng.choice(_SYLLABLES) for _ in range(rng.integers(2, 5)))


def synthetic_corpus(n_articles: int, seed: int = 0,
                     shared_vocab: int = 300, class_vocab: int = 120,
                     class_mix: float = 0.5,
                     doc_len: tuple[int, int] = (30, 80)) -> list[NewsRecord]:
    """Balanced fake/real corpus drawn from two overlapping lexicons.

    Both classes share ``shared_vocab`` common words; each class also owns
    ``class_vocab`` private words that appear with probability
    ``class_mix`` per token.  Deterministic per seed.
    """
    rng = np.random.default_rng(seed)
    vocab = set()
    while len(vocab) < shared_vocab + 2 * class_vocab:
        vocab.add(_synth_word(rng))
    words = sorted(vocab)
    rng.shuffle(words)
    shared = words[:shared_vocab]
    real_lex = words[shared_vocab:shared_vocab + class_vocab]
    fake_lex = words[shared_vocab + class_vocab:]

    records = []
    for i in range(n_articles):
        label = FAKE if i % 2 == 0 else REAL
        lex = fake_lex if label == FAKE else real_lex
        length = int(rng.integers(doc_len[0], doc_len[1] + 1))
        tokens = []
        for _ in range(length):
            pool = lex if rng.random() < class_mix else shared
            tokens.append(pool[int(rng.integers(len(pool)))])
        title = " ".join(tokens[:5])
        body = " ".join(tokens[5:])
        records.append(NewsRecord(title=title, text=body,
                                  subject="synthetic", date="2020-01-01",
                                  label=label))
    return records


def write_corpus_csv(records: list[NewsRecord], directory) -> None:
    """Write records as Fake.csv / True.csv in the loader's format."""
    os.makedirs(directory, exist_ok=True)
    by_label = {FAKE: [], REAL: []}
    for r in records:
        by_label[r.label].append(r)
    for label, name in ((FAKE, "Fake.csv"), (REAL, "True.csv")):
        with open(os.path.join(directory, name), "w", encoding="utf-8",
                  newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CORPUS_HEADER)
            for r in by_label[label]:
                writer.writerow([r.title, r.text, r.subject, r.date])
