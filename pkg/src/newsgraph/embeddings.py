"""Per-word input feature vectors.

Vectors come from a word2vec-style text file when one is available.  Words
outside that vocabulary (or every word, when running without a vector
file) get a deterministic small-magnitude fallback vector derived from an
FNV-1a 64-bit hash of the word, so out-of-vocabulary words still carry a
reproducible, non-zero contribution that masking can remove.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmbeddingParseError

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(word: str) -> int:
    """FNV-1a 64-bit hash over the UTF-8 bytes of ``word``."""
    h = _FNV_OFFSET
    for byte in word.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


def fallback_vector(word: str, d: int, seed: int) -> np.ndarray:
    """Deterministic pseudo-random vector for an out-of-vocabulary word.

    Entries are uniform in ``[-0.5/d, +0.5/d]`` from a PCG64 generator
    keyed on ``(fnv1a_64(word), seed)``; the same inputs always produce
    bitwise-identical output.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rng = np.random.default_rng(np.random.SeedSequence([fnv1a_64(word), seed & _MASK64]))
    half = 0.5 / d
    return rng.uniform(-half, half, size=d)


@dataclass
class EmbeddingStore:
    """Immutable word -> vector table with a deterministic fallback."""

    dim: int
    table: dict[str, np.ndarray] = field(default_factory=dict)
    fallback_seed: int = 0
    source_meta: str = "hash-fallback"

    def lookup(self, word: str) -> np.ndarray:
        """Stored vector if present, else the hash-seeded fallback; never fails."""
        vec = self.table.get(word)
        if vec is not None:
            return vec
        return fallback_vector(word, self.dim, self.fallback_seed)

    def __contains__(self, word: str) -> bool:
        return word in self.table

    def __len__(self) -> int:
        return len(self.table)


def hash_only_store(dim: int = 300, fallback_seed: int = 0) -> EmbeddingStore:
    """Store with an empty vocabulary: every lookup uses the fallback."""
    return EmbeddingStore(dim=dim, fallback_seed=fallback_seed,
                          source_meta="hash-fallback")


def load_embeddings(path, fallback_seed: int = 0) -> EmbeddingStore:
    """Load a word2vec text-format file.

    Expected layout: a header line ``"<vocab_size> <dim>"`` followed by one
    ``"<word> <v1> ... <vd>"`` line per word.  Malformed headers or rows,
    inconsistent dimensionality, and non-finite values raise
    :class:`EmbeddingParseError` carrying the 1-based line number.
    """
    table: dict[str, np.ndarray] = {}
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise EmbeddingParseError(
                f"line 1: expected header '<vocab_size> <dim>', got {header!r}",
                line_number=1)
        try:
            vocab_size, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise EmbeddingParseError(
                f"line 1: non-integer header fields in {header!r}", line_number=1)
        if vocab_size < 0 or dim < 1:
            raise EmbeddingParseError(
                f"line 1: invalid header values {vocab_size} {dim}", line_number=1)

        rows = 0
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split(" ")
            fields = [f for f in fields if f != ""]
            if len(fields) != dim + 1:
                raise EmbeddingParseError(
                    f"line {lineno}: expected 1 word + {dim} values, "
                    f"got {len(fields)} fields", line_number=lineno)
            word = fields[0]
            try:
                vec = np.array(fields[1:], dtype=np.float64)
            except ValueError:
                raise EmbeddingParseError(
                    f"line {lineno}: non-numeric vector entry", line_number=lineno)
            if not np.isfinite(vec).all():
                raise EmbeddingParseError(
                    f"line {lineno}: non-finite vector entry", line_number=lineno)
            table[word] = vec
            rows += 1

    if rows != vocab_size:
        raise EmbeddingParseError(
            f"header promised {vocab_size} rows, file delivered {rows}")
    return EmbeddingStore(dim=dim, table=table, fallback_seed=fallback_seed,
                          source_meta=f"word2vec-text:{path}")


def lookup(store: EmbeddingStore, word: str) -> np.ndarray:
    """Function-style alias for :meth:`EmbeddingStore.lookup`."""
    return store.lookup(word)


def feature_matrix(store: EmbeddingStore, words: list[str]) -> np.ndarray:
    """Stack lookups for ``words`` into an ``n x d`` float64 matrix."""
    X = np.empty((len(words), store.dim), dtype=np.float64)
    for i, w in enumerate(words):
        X[i] = store.lookup(w)
    return X
