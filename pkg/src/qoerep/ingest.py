"""Review loading, invalid-review filtering, dataset splitting and synthetic corpora.

Class labels are the strings ``"positive"`` and ``"negative"``; their integer
indices are fixed project-wide by :data:`LABELS` (index 0 is positive).

All randomness goes through numpy's PCG64 generator seeded from explicit
integers, so splits and corpora are reproducible bit-for-bit.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError, ValidationError

LOGGER = logging.getLogger(__name__)

LABELS: tuple[str, str] = ("positive", "negative")
POSITIVE, NEGATIVE = 0, 1

CSV_HEADER = ["id", "provider", "text", "label", "source"]

URL_RE = re.compile(r"^(https?://|www\.)", re.IGNORECASE)

DEFAULT_PROVIDERS = (
    "amazon-s3",
    "amazon-ec2",
    "aws-lambda",
    "amazon-rds",
    "amazon-dynamodb",
    "amazon-sqs",
    "amazon-sns",
    "amazon-cloudfront",
    "amazon-route53",
    "amazon-cloudwatch",
    "aws-iam",
    "amazon-ecs",
    "amazon-eks",
    "amazon-api-gateway",
    "amazon-kinesis",
)


def label_index(label: str) -> int:
    try:
        return LABELS.index(label)
    except ValueError:
        raise ValidationError(f"unknown label {label!r}; expected one of {LABELS}") from None


def rng_for(*seed: int) -> np.random.Generator:
    """PCG64 generator keyed by a tuple of unsigned integers."""
    return np.random.Generator(np.random.PCG64(list(seed)))


@dataclass(frozen=True)
class ReviewRecord:
    id: str
    provider: str
    text: str
    label: str | None = None
    source: str = ""

    def __post_init__(self):
        if self.label is not None and self.label not in LABELS:
            raise ValidationError(f"record {self.id}: unknown label {self.label!r}")

    def to_json(self) -> dict:
        out = {"id": self.id, "provider": self.provider, "text": self.text}
        if self.label is not None:
            out["label"] = self.label
        if self.source:
            out["source"] = self.source
        return out


@dataclass(frozen=True)
class DatasetSplit:
    train: list[ReviewRecord]
    validation: list[ReviewRecord]
    test: list[ReviewRecord]
    seed: int


@dataclass(frozen=True)
class CorpusSpec:
    n_reviews: int = 2000
    positive_ratio: float = 0.95
    seed: int = 1
    min_tokens: int = 12
    max_tokens: int = 40
    providers: tuple[str, ...] = DEFAULT_PROVIDERS

    def class_counts(self) -> tuple[int, int]:
        n_pos = int(round(self.n_reviews * self.positive_ratio))
        return n_pos, self.n_reviews - n_pos

    def validate(self) -> None:
        if self.n_reviews < 2:
            raise ValueError("n_reviews must be at least 2")
        if not 0.0 < self.positive_ratio < 1.0:
            raise ValueError("positive_ratio must lie in (0, 1)")
        if not 1 <= self.min_tokens <= self.max_tokens:
            raise ValueError("need 1 <= min_tokens <= max_tokens")
        if not self.providers:
            raise ValueError("at least one provider is required")
        n_pos, n_neg = self.class_counts()
        if n_pos < 1 or n_neg < 1:
            raise ValueError(
                f"positive_ratio={self.positive_ratio} with n={self.n_reviews} leaves a class empty"
            )


# --------------------------------------------------------------------------
# Loading
# --------------------------------------------------------------------------


def _record_from_mapping(row: dict, line: int, path: str) -> ReviewRecord:
    for key in ("id", "provider", "text"):
        if key not in row or row[key] is None:
            raise ParseError(f"missing field {key!r}", line=line, path=path)
        if not isinstance(row[key], str):
            raise ParseError(f"field {key!r} must be a string", line=line, path=path)
    label = row.get("label") or None
    if label is not None and label not in LABELS:
        raise ValidationError(f"{path}:{line}: unknown label {label!r}")
    return ReviewRecord(
        id=row["id"],
        provider=row["provider"],
        text=row["text"],
        label=label,
        source=row.get("source") or "",
    )


def load_reviews(path: str | Path, format: str | None = None) -> list[ReviewRecord]:
    """Read reviews from a JSONL or CSV file, in file order.

    ``format`` defaults to the file suffix (``.jsonl``/``.json`` or ``.csv``).
    """
    path = Path(path)
    fmt = format or ("csv" if path.suffix.lower() == ".csv" else "jsonl")
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unknown review format {fmt!r}")
    records = []
    with path.open("r", encoding="utf-8", newline="") as handle:
        if fmt == "jsonl":
            for lineno, raw in enumerate(handle, start=1):
                if not raw.strip():
                    continue
                try:
                    row = json.loads(raw)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"invalid JSON ({exc.msg})", line=lineno, path=str(path)) from exc
                if not isinstance(row, dict):
                    raise ParseError("expected a JSON object", line=lineno, path=str(path))
                records.append(_record_from_mapping(row, lineno, str(path)))
        else:
            reader = csv.DictReader(handle, strict=True)
            try:
                missing = [k for k in ("id", "provider", "text") if k not in (reader.fieldnames or [])]
                if missing:
                    raise ParseError(f"CSV header lacks {missing}", line=1, path=str(path))
                for row in reader:
                    # header is line 1; line_num accounts for quoted newlines
                    records.append(_record_from_mapping(row, reader.line_num, str(path)))
            except csv.Error as exc:
                raise ParseError(f"malformed CSV ({exc})", line=reader.line_num, path=str(path)) from exc
    return records


def write_reviews(records: Iterable[ReviewRecord], path: str | Path, format: str | None = None) -> None:
    path = Path(path)
    fmt = format or ("csv" if path.suffix.lower() == ".csv" else "jsonl")
    with path.open("w", encoding="utf-8", newline="") as handle:
        if fmt == "jsonl":
            for rec in records:
                handle.write(json.dumps(rec.to_json(), ensure_ascii=False, sort_keys=False) + "\n")
        else:
            writer = csv.writer(handle, lineterminator="\r\n")
            writer.writerow(CSV_HEADER)
            for rec in records:
                writer.writerow([rec.id, rec.provider, rec.text, rec.label or "", rec.source])


# --------------------------------------------------------------------------
# Filtering and splitting
# --------------------------------------------------------------------------


def invalid_reason(text: str) -> str | None:
    tokens = text.split()
    if not tokens:
        return "empty"
    half = len(tokens) / 2
    if sum(tok.startswith("@") for tok in tokens) > half:
        return "mostly_usernames"
    if sum(bool(URL_RE.match(tok)) for tok in tokens) > half:
        return "mostly_urls"
    return None


def filter_invalid(
    reviews: Sequence[ReviewRecord],
) -> tuple[list[ReviewRecord], list[tuple[ReviewRecord, str]]]:
    """Split reviews into valid ones and ``(record, reason)`` rejections.

    A review is rejected when its text is blank, or when strictly more than
    half of its whitespace tokens are ``@`` mentions or URLs.
    """
    valid, rejected = [], []
    for rec in reviews:
        reason = invalid_reason(rec.text)
        if reason is None:
            valid.append(rec)
        else:
            rejected.append((rec, reason))
    return valid, rejected


def dedup_exact(reviews: Sequence[ReviewRecord]) -> list[ReviewRecord]:
    """Drop reviews whose text exactly repeats an earlier one."""
    seen: set[str] = set()
    out = []
    for rec in reviews:
        if rec.text not in seen:
            seen.add(rec.text)
            out.append(rec)
    return out


def split_dataset(
    reviews: Sequence[ReviewRecord],
    train_ratio: float = 0.8,
    val_ratio: float = 0.1,
    seed: int = 0,
) -> DatasetSplit:
    """Shuffle with PCG64(seed) and cut into train/validation/test.

    Part sizes are ``floor(n * train_ratio)`` and ``floor(n * val_ratio)``;
    the remainder becomes the test set.
    """
    if not (0.0 < train_ratio < 1.0 and 0.0 <= val_ratio < 1.0 and train_ratio + val_ratio < 1.0):
        raise ValueError(f"bad split ratios train={train_ratio} val={val_ratio}")
    unlabeled = [r.id for r in reviews if r.label is None]
    if unlabeled:
        raise ValidationError(f"{len(unlabeled)} unlabeled record(s), first: {unlabeled[0]}")
    n = len(reviews)
    order = rng_for(seed).permutation(n)
    shuffled = [reviews[i] for i in order]
    n_train = math.floor(n * train_ratio)
    n_val = math.floor(n * val_ratio)
    return DatasetSplit(
        train=shuffled[:n_train],
        validation=shuffled[n_train : n_train + n_val],
        test=shuffled[n_train + n_val :],
        seed=seed,
    )


# --------------------------------------------------------------------------
# Synthetic corpus
# --------------------------------------------------------------------------


def _read_wordlist(name: str) -> list[str]:
    text = resources.files("qoerep.data").joinpath(name).read_text(encoding="utf-8")
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


@dataclass(frozen=True)
class SynthLexicons:
    positive: list[str] = field(default_factory=lambda: _read_wordlist("synth_positive.txt"))
    negative: list[str] = field(default_factory=lambda: _read_wordlist("synth_negative.txt"))
    neutral: list[str] = field(default_factory=lambda: _read_wordlist("synth_neutral.txt"))


_PUNCT = ("", "", "", ",", ".", "!")


def _synth_text(rng: np.random.Generator, label: int, spec: CorpusSpec, lex: SynthLexicons) -> str:
    length = int(rng.integers(spec.min_tokens, spec.max_tokens + 1))
    n_opinion = max(1, int(round(length * rng.uniform(0.2, 0.35))))
    # the class lexicon supplies at least 60% of opinion tokens
    share = rng.uniform(0.6, 1.0)
    n_class = max(math.ceil(0.6 * n_opinion), int(round(share * n_opinion)))
    n_class = min(n_class, n_opinion)
    own, other = (lex.positive, lex.negative) if label == POSITIVE else (lex.negative, lex.positive)
    words = [own[i] for i in rng.integers(0, len(own), n_class)]
    words += [other[i] for i in rng.integers(0, len(other), n_opinion - n_class)]
    n_filler = max(0, length - n_opinion)
    words += [lex.neutral[i] for i in rng.integers(0, len(lex.neutral), n_filler)]
    words = [words[i] for i in rng.permutation(len(words))]
    out = []
    for i, w in enumerate(words):
        if i == 0:
            w = w.capitalize()
        if i < len(words) - 1:
            w += _PUNCT[int(rng.integers(0, len(_PUNCT)))]
        out.append(w)
    return " ".join(out) + ("!" if rng.random() < 0.3 else ".")


def generate_synthetic_corpus(spec: CorpusSpec, lexicons: SynthLexicons | None = None) -> list[ReviewRecord]:
    """Seeded stand-in corpus of learnably separable microservice reviews.

    Each text mixes neutral filler with opinion words, at least 60% of which
    come from the lexicon of the record's class.  Exactly
    ``round(n * positive_ratio)`` records are positive.
    """
    spec.validate()
    lex = lexicons or SynthLexicons()
    if set(lex.positive) & set(lex.negative):
        raise ValueError("positive and negative lexicons must be disjoint")
    rng = rng_for(spec.seed)
    n_pos, _ = spec.class_counts()
    labels = np.full(spec.n_reviews, NEGATIVE)
    labels[rng.permutation(spec.n_reviews)[:n_pos]] = POSITIVE
    width = len(str(spec.n_reviews))
    records = []
    for i, lab in enumerate(labels):
        provider = spec.providers[int(rng.integers(0, len(spec.providers)))]
        records.append(
            ReviewRecord(
                id=f"syn-{i:0{width}d}",
                provider=provider,
                text=_synth_text(rng, int(lab), spec, lex),
                label=LABELS[int(lab)],
                source="synthetic",
            )
        )
    return records
