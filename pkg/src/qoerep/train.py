"""Mini-batch Adam training with per-epoch learning curves, and evaluation."""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Sequence

import numpy as np

from .embedding import PAD_INDEX, EmbeddingMatrix
from .errors import NumericalError, ValidationError
from .ingest import rng_for
from .metrics import ConfusionMatrix
from .model import ARCHS, ModelParams, backward, forward, init_params, loss_from_probs, predict, predict_probs
from .numeric import AdamState, adam_step
from .resample import METHODS, class_counts, resample_training_set

LOGGER = logging.getLogger(__name__)


@dataclass
class TrainConfig:
    epochs: int = 20
    lr: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    batch_size: int = 32
    seed: int = 0
    max_len: int = 50
    hidden_size: int = 128
    arch: str = "lstm"
    resampling: str = "none"
    mask_stop: bool = False
    fine_tune_embeddings: bool = False
    smote_k: int = 5
    adasyn_beta: float = 1.0

    def validate(self) -> None:
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not self.lr > 0:
            raise ValueError("lr must be positive")
        if self.arch not in ARCHS:
            raise ValueError(f"arch must be one of {ARCHS}")
        if self.resampling not in METHODS:
            raise ValueError(f"resampling must be one of {METHODS}")
        if self.max_len < 1 or self.hidden_size < 1:
            raise ValueError("max_len and hidden_size must be >= 1")

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: float | None
    epoch_ms: float


@dataclass
class LearningCurve:
    records: list[EpochRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def to_csv(self, include_timing: bool = False) -> str:
        """``epoch,train_loss,val_loss,epoch_ms``; timing is left blank unless requested."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["epoch", "train_loss", "val_loss", "epoch_ms"])
        for r in self.records:
            writer.writerow([
                r.epoch,
                repr(r.train_loss),
                "" if r.val_loss is None else repr(r.val_loss),
                f"{r.epoch_ms:.3f}" if include_timing else "",
            ])
        return buf.getvalue()

    def write_csv(self, path: str | Path, include_timing: bool = False) -> None:
        Path(path).write_text(self.to_csv(include_timing), encoding="utf-8")


@dataclass
class TrainResult:
    params: ModelParams
    curve: LearningCurve
    train_counts: dict[int, int]
    n_steps: int


def mean_loss(params: ModelParams, samples: Sequence, batch_size: int = 256) -> float:
    probs = predict_probs(samples, params, batch_size)
    return loss_from_probs(probs, [int(s.label) for s in samples])


def train(train_samples: Sequence, val_samples: Sequence, config: TrainConfig,
          embedding: EmbeddingMatrix, params: ModelParams | None = None) -> TrainResult:
    """Train one classifier for exactly ``config.epochs`` epochs.

    Resampling is applied to ``train_samples`` only.  Epoch ``e`` visits the
    training set in the order given by a generator keyed ``(seed, e)``.
    """
    config.validate()
    counts = class_counts(train_samples)
    if len(counts) < 2:
        raise ValidationError(f"training set has a single class {sorted(counts)}; both are required")
    if config.fine_tune_embeddings != embedding.trainable:
        embedding = EmbeddingMatrix(embedding.values.copy(), config.fine_tune_embeddings)
    data = resample_training_set(train_samples, config.resampling, embedding, seed=config.seed,
                                 k=config.smote_k, beta=config.adasyn_beta)
    counts = class_counts(data)
    LOGGER.info("training set after %s resampling: positive=%d negative=%d",
                config.resampling, counts.get(0, 0), counts.get(1, 0))
    if params is None:
        params = init_params(config.arch, embedding, config.hidden_size, config.seed, config.mask_stop)
    state = AdamState()
    curve = LearningCurve()
    n = len(data)
    steps = 0
    for epoch in range(1, config.epochs + 1):
        started = time.perf_counter()
        order = rng_for(config.seed, epoch).permutation(n)
        total = 0.0
        for b, start in enumerate(range(0, n, config.batch_size)):
            batch = [data[i] for i in order[start : start + config.batch_size]]
            labels = [int(s.label) for s in batch]
            try:
                probs, cache = forward(batch, params)
            except NumericalError as exc:
                raise NumericalError(f"epoch {epoch}, batch {b}: {exc}") from exc
            loss = loss_from_probs(probs, labels)
            if not math.isfinite(loss):
                raise NumericalError(f"epoch {epoch}, batch {b}: loss is {loss}")
            total += loss * len(batch)
            grads = backward(cache, probs, labels, params)
            adam_step(params.trainable(), grads, state, config.lr, config.beta1, config.beta2, config.eps)
            if params.embedding.trainable:
                params.embedding.values[PAD_INDEX] = 0.0
            params.version += 1
            steps += 1
        val_loss = mean_loss(params, val_samples) if len(val_samples) else None
        elapsed = (time.perf_counter() - started) * 1000.0
        curve.records.append(EpochRecord(epoch, total / n, val_loss, elapsed))
        LOGGER.info("epoch %d/%d train_loss=%.6f val_loss=%s (%.0f ms)", epoch, config.epochs,
                    total / n, "n/a" if val_loss is None else f"{val_loss:.6f}", elapsed)
    return TrainResult(params, curve, counts, steps)


def evaluate(params: ModelParams, samples: Sequence) -> ConfusionMatrix:
    """Tally predictions against labels with positive (index 0) as the reference class."""
    if not samples:
        raise ValueError("cannot evaluate on an empty sample list")
    preds = [lab for lab, _ in predict(samples, params)]
    return ConfusionMatrix.from_pairs(preds, [int(s.label) for s in samples])


def predicted_labels(params: ModelParams, samples: Sequence) -> list[int]:
    return [lab for lab, _ in predict(samples, params)]


def accuracy(params: ModelParams, samples: Sequence) -> float:
    preds = np.array(predicted_labels(params, samples))
    golds = np.array([int(s.label) for s in samples])
    return float(np.mean(preds == golds))
