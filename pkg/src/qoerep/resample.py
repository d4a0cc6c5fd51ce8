"""Training-set rebalancing: random over/undersampling, SMOTE and ADASYN.

Random over/undersampling works on any labeled samples.  SMOTE and ADASYN
interpolate, so they run on embedded sequences: each sample becomes its
(max_len, D) embedding matrix, flattened for Euclidean neighbour search.
The model accepts these matrices directly, bypassing the embedding lookup.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .embedding import PAD_INDEX, EmbeddingMatrix, PaddedSample
from .errors import ValidationError
from .ingest import rng_for

METHODS = ("none", "oversample", "undersample", "smote", "adasyn")


@dataclass(frozen=True, eq=False)
class EmbeddedSample:
    matrix: np.ndarray
    label: int
    source_id: str = ""
    synthetic: bool = False
    parent_ids: tuple[str, ...] = ()
    delta: float | None = None

    def __post_init__(self):
        if self.synthetic and not self.parent_ids:
            raise ValueError("synthetic samples must name their parents")


def embed_samples(samples: Sequence[PaddedSample], embedding: EmbeddingMatrix) -> list[EmbeddedSample]:
    out = []
    for s in samples:
        m = embedding.values[s.indices].copy()
        m[s.indices == PAD_INDEX] = 0.0
        out.append(EmbeddedSample(m, int(s.label), s.source_id))
    return out


def class_counts(samples) -> dict[int, int]:
    counts: dict[int, int] = {}
    for s in samples:
        counts[int(s.label)] = counts.get(int(s.label), 0) + 1
    return counts


def _minority_majority(samples) -> tuple[int, int]:
    counts = class_counts(samples)
    if len(counts) < 2:
        raise ValidationError(f"resampling needs both classes, found only {sorted(counts)}")
    # ties: class 1 counts as the minority so the choice is deterministic
    minority = min(counts, key=lambda c: (counts[c], -c))
    majority = max(counts, key=lambda c: (counts[c], -c))
    return minority, majority


def random_oversample(samples: Sequence, seed: int = 0) -> list:
    """Originals followed by minority duplicates drawn with replacement."""
    minority, majority = _minority_majority(samples)
    pool = [s for s in samples if int(s.label) == minority]
    deficit = sum(int(s.label) == majority for s in samples) - len(pool)
    picks = rng_for(seed).integers(0, len(pool), size=deficit)
    return list(samples) + [pool[i] for i in picks]


def random_undersample(samples: Sequence, seed: int = 0) -> list:
    """Drop majority samples (without replacement) down to the minority count."""
    minority, majority = _minority_majority(samples)
    maj_pos = [i for i, s in enumerate(samples) if int(s.label) == majority]
    n_keep = len(samples) - len(maj_pos)
    keep = set(np.asarray(maj_pos)[rng_for(seed).permutation(len(maj_pos))[:n_keep]].tolist())
    return [s for i, s in enumerate(samples) if int(s.label) == minority or i in keep]


def _flat(samples: Sequence[EmbeddedSample]) -> np.ndarray:
    return np.stack([np.asarray(s.matrix, dtype=np.float64).reshape(-1) for s in samples])


def _nearest(points: np.ndarray, queries: np.ndarray, k: int, exclude_self: bool) -> np.ndarray:
    """Indices of the k nearest ``points`` for each query, ties by index."""
    d2 = (
        np.sum(queries**2, axis=1)[:, None]
        - 2.0 * queries @ points.T
        + np.sum(points**2, axis=1)[None, :]
    )
    np.maximum(d2, 0.0, out=d2)
    if exclude_self:
        np.fill_diagonal(d2, np.inf)
    order = np.argsort(d2, axis=1, kind="stable")
    return order[:, :k]


def _interpolate(base: EmbeddedSample, other: EmbeddedSample, delta: float, sid: str) -> EmbeddedSample:
    x = np.asarray(base.matrix, dtype=np.float64)
    y = np.asarray(other.matrix, dtype=np.float64)
    return EmbeddedSample(x + delta * (y - x), base.label, sid, True, (base.source_id, other.source_id), delta)


def smote(minority: Sequence[EmbeddedSample], k: int = 5, n_synthetic: int = 0, seed: int = 0,
          delta: float | None = None, prefix: str = "smote") -> list[EmbeddedSample]:
    """Synthesise ``n_synthetic`` points on segments between minority neighbours.

    Base points cycle through ``minority`` in order; the partner is drawn
    among the base's ``k`` Euclidean nearest minority neighbours.  ``delta``
    pins the interpolation fraction (testing hook); otherwise it is drawn
    uniformly from [0, 1].
    """
    m = len(minority)
    if m < 2:
        raise ValidationError("SMOTE needs at least two minority samples")
    if not 1 <= k <= m - 1:
        raise ValueError(f"k={k} out of range for {m} minority samples")
    if n_synthetic < 0:
        raise ValueError("n_synthetic must be non-negative")
    if n_synthetic == 0:
        return []
    X = _flat(minority)
    nn = _nearest(X, X, k, exclude_self=True)
    rng = rng_for(seed)
    out = []
    for j in range(n_synthetic):
        i = j % m
        partner = nn[i, int(rng.integers(0, k))]
        d = float(rng.random()) if delta is None else float(delta)
        out.append(_interpolate(minority[i], minority[partner], d, f"{prefix}-{j}"))
    return out


def adasyn_allocation(samples: Sequence[EmbeddedSample], k: int = 5, beta: float = 1.0):
    """Density ratios and per-point synthetic counts for the minority class.

    Returns ``(minority_positions, r_hat, g)`` where ``r_hat[i]`` is the
    normalised share of majority points among the k nearest neighbours of
    minority point i in the full set, and ``g[i] = round(r_hat[i] * G)`` with
    ``G = round(beta * (N_maj - N_min))``.
    """
    minority, majority = _minority_majority(samples)
    if not 0.0 < beta <= 1.0:
        raise ValueError("beta must lie in (0, 1]")
    n = len(samples)
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} out of range for {n} samples")
    labels = np.array([int(s.label) for s in samples])
    min_pos = np.flatnonzero(labels == minority)
    n_maj = int(np.sum(labels == majority))
    X = _flat(samples)
    d_nn = _nearest(X, X[min_pos], k + 1, exclude_self=False)
    r = np.empty(len(min_pos))
    for row, pos in enumerate(min_pos):
        neigh = [j for j in d_nn[row] if j != pos][:k]
        r[row] = np.sum(labels[neigh] == majority) / k
    if r.sum() == 0.0:
        r_hat = np.full(len(min_pos), 1.0 / len(min_pos))
    else:
        r_hat = r / r.sum()
    G = round(beta * (n_maj - len(min_pos)))
    g = np.array([round(x * G) for x in r_hat], dtype=np.int64)
    return min_pos, r_hat, g


def adasyn(samples: Sequence[EmbeddedSample], k: int = 5, beta: float = 1.0, seed: int = 0) -> list[EmbeddedSample]:
    """Density-adaptive synthetic minority samples (originals not included)."""
    min_pos, _, g = adasyn_allocation(samples, k, beta)
    minority = [samples[i] for i in min_pos]
    m = len(minority)
    if m < 2:
        raise ValidationError("ADASYN needs at least two minority samples")
    k_min = min(k, m - 1)
    nn = _nearest(_flat(minority), _flat(minority), k_min, exclude_self=True)
    rng = rng_for(seed)
    out = []
    for i in range(m):
        for _ in range(int(g[i])):
            partner = nn[i, int(rng.integers(0, k_min))]
            out.append(_interpolate(minority[i], minority[partner], float(rng.random()), f"adasyn-{len(out)}"))
    return out


def resample_training_set(samples: Sequence[PaddedSample], method: str, embedding: EmbeddingMatrix,
                          seed: int = 0, k: int = 5, beta: float = 1.0) -> list:
    """Apply one rebalancing method to a training set.

    Interpolating methods return the original padded samples followed by
    synthetic :class:`EmbeddedSample` objects.
    """
    if method not in METHODS:
        raise ValueError(f"unknown resampling method {method!r}")
    if method == "none":
        return list(samples)
    if method == "oversample":
        return random_oversample(samples, seed)
    if method == "undersample":
        return random_undersample(samples, seed)
    minority, majority = _minority_majority(samples)
    if method == "smote":
        pool = embed_samples([s for s in samples if int(s.label) == minority], embedding)
        deficit = sum(int(s.label) == majority for s in samples) - len(pool)
        return list(samples) + smote(pool, min(k, len(pool) - 1), deficit, seed)
    return list(samples) + adasyn(embed_samples(samples, embedding), k, beta, seed)


def write_audit(synthetics: Sequence[EmbeddedSample], path: str | Path) -> None:
    """CSV ``synthetic_id,parent_a,parent_b,delta`` for every synthetic sample."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["synthetic_id", "parent_a", "parent_b", "delta"])
        for s in synthetics:
            if s.synthetic:
                writer.writerow([s.source_id, s.parent_ids[0], s.parent_ids[1], repr(s.delta)])
