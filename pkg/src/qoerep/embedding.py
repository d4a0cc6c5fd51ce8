"""Vocabulary, fixed-length encoding, GloVe parsing and the embedding matrix."""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ParseError
from .ingest import rng_for
from .preprocess import TokenSequence

PAD_INDEX = 0
OOV_INDEX = 1
PAD_TOKEN = "<pad>"
OOV_TOKEN = "<oov>"


@dataclass(frozen=True)
class Vocabulary:
    index_to_word: tuple[str, ...]
    frequencies: tuple[int, ...]
    word_to_index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "word_to_index", {w: i for i, w in enumerate(self.index_to_word)})

    pad_index = PAD_INDEX
    oov_index = OOV_INDEX

    def __len__(self) -> int:
        return len(self.index_to_word)

    def lookup(self, word: str) -> int:
        return self.word_to_index.get(word, OOV_INDEX)

    def dump(self) -> str:
        """``index<TAB>word<TAB>frequency`` lines."""
        return "".join(
            f"{i}\t{w}\t{f}\n" for i, (w, f) in enumerate(zip(self.index_to_word, self.frequencies))
        )

    def digest(self) -> str:
        return hashlib.sha256(self.dump().encode("utf-8")).hexdigest()

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dump(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        words, freqs = [], []
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
            parts = line.split("\t")
            if len(parts) != 3 or int(parts[0]) != lineno - 1:
                raise ParseError("expected index<TAB>word<TAB>frequency", line=lineno, path=str(path))
            words.append(parts[1])
            freqs.append(int(parts[2]))
        if words[:2] != [PAD_TOKEN, OOV_TOKEN]:
            raise ParseError("vocabulary must start with the pad and oov entries", path=str(path))
        return cls(tuple(words), tuple(freqs))


def build_vocabulary(corpus: Iterable[TokenSequence | Sequence[str]], min_freq: int = 1) -> Vocabulary:
    """Index words by descending corpus frequency, ties broken lexicographically.

    Indices 0 and 1 are always the padding and out-of-vocabulary entries.
    """
    if min_freq < 1:
        raise ValueError("min_freq must be positive")
    counts: Counter[str] = Counter()
    for seq in corpus:
        counts.update(seq.tokens if isinstance(seq, TokenSequence) else seq)
    ranked = sorted((w for w, c in counts.items() if c >= min_freq), key=lambda w: (-counts[w], w))
    return Vocabulary(
        (PAD_TOKEN, OOV_TOKEN, *ranked),
        (0, 0, *(counts[w] for w in ranked)),
    )


@dataclass(frozen=True, eq=False)
class PaddedSample:
    indices: np.ndarray
    label: int | None
    source_id: str = ""

    @property
    def length(self) -> int:
        """Number of leading non-pad positions."""
        nz = np.flatnonzero(self.indices != PAD_INDEX)
        return int(nz[-1]) + 1 if nz.size else 0


def encode_and_pad(tokens: TokenSequence | Sequence[str], vocab: Vocabulary, max_len: int = 50,
                   label: int | None = None, source_id: str | None = None) -> PaddedSample:
    """Map tokens to indices, keep the first ``max_len`` and right-pad with 0."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if isinstance(tokens, TokenSequence):
        words, sid = tokens.tokens, tokens.source_id
    else:
        words, sid = tuple(tokens), ""
    idx = np.zeros(max_len, dtype=np.int64)
    head = [vocab.lookup(w) for w in words[:max_len]]
    idx[: len(head)] = head
    return PaddedSample(idx, label, sid if source_id is None else source_id)


def pad_indices(indices: Sequence[int], max_len: int) -> list[int]:
    head = list(indices[:max_len])
    return head + [PAD_INDEX] * (max_len - len(head))


def load_glove(path: str | Path, dim: int) -> dict[str, np.ndarray]:
    """Parse a GloVe text file, requiring exactly ``dim`` components per line."""
    vectors: dict[str, np.ndarray] = {}
    with Path(path).open("r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            parts = line.split(" ")
            word, comps = parts[0], parts[1:]
            if len(comps) != dim:
                raise ParseError(f"expected {dim} components, found {len(comps)}", line=lineno, path=str(path))
            try:
                vectors[word] = np.array([float(c) for c in comps], dtype=np.float64)
            except ValueError as exc:
                raise ParseError(f"non-numeric component ({exc})", line=lineno, path=str(path)) from exc
    return vectors


def write_glove(vectors: Mapping[str, np.ndarray], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as handle:
        for word, vec in vectors.items():
            handle.write(word + " " + " ".join(repr(float(v)) for v in vec) + "\n")


@dataclass(eq=False)
class EmbeddingMatrix:
    values: np.ndarray
    trainable: bool = False

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def vocab_size(self) -> int:
        return self.values.shape[0]


def random_row(seed: int, index: int, dim: int) -> np.ndarray:
    return rng_for(seed, index).uniform(-0.05, 0.05, dim)


def build_embedding_matrix(vocab: Vocabulary, glove: Mapping[str, np.ndarray], dim: int = 100,
                           seed: int = 0, trainable: bool = False) -> EmbeddingMatrix:
    """Stack GloVe rows by vocabulary index.

    Row 0 is zero.  Rows without a GloVe vector (including the OOV row) get
    uniform(-0.05, 0.05) noise from a generator keyed by ``(seed, index)``.
    """
    values = np.zeros((len(vocab), dim), dtype=np.float64)
    for i, word in enumerate(vocab.index_to_word):
        if i == PAD_INDEX:
            continue
        vec = glove.get(word) if i != OOV_INDEX else None
        if vec is None:
            values[i] = random_row(seed, i, dim)
        else:
            vec = np.asarray(vec, dtype=np.float64)
            if vec.shape != (dim,):
                raise ValueError(f"glove vector for {word!r} has shape {vec.shape}, expected ({dim},)")
            values[i] = vec
    return EmbeddingMatrix(values, trainable)
