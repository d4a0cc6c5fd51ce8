"""Activations, loss, initialisation and the Adam optimiser (float64 throughout).

Dense linear algebra is plain numpy; parameters are passed around as
``dict[str, np.ndarray]`` keyed by weight name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, MutableMapping

import numpy as np

from .ingest import rng_for

LOSS_EPS = 1e-12


def sigmoid(x: np.ndarray) -> np.ndarray:
    # split by sign so exp never overflows
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def softmax(v: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max subtraction; accepts a vector or a 2-D batch."""
    v = np.asarray(v, dtype=np.float64)
    if v.size == 0 or v.shape[-1] == 0:
        raise ValueError("softmax of an empty vector")
    z = np.exp(v - v.max(axis=-1, keepdims=True))
    return z / z.sum(axis=-1, keepdims=True)


def cross_entropy(probs: np.ndarray, true_class: int) -> float:
    probs = np.asarray(probs, dtype=np.float64)
    if not 0 <= true_class < probs.shape[-1]:
        raise ValueError(f"class index {true_class} out of range for {probs.shape[-1]} classes")
    return float(-np.log(probs[true_class] + LOSS_EPS))


def mean_cross_entropy(probs: np.ndarray, labels: np.ndarray) -> float:
    picked = probs[np.arange(len(labels)), labels]
    return float(-np.mean(np.log(picked + LOSS_EPS)))


def glorot_uniform(rows: int, cols: int, seed: int | tuple[int, ...]) -> np.ndarray:
    """Entries uniform in +-sqrt(6 / (rows + cols))."""
    limit = np.sqrt(6.0 / (rows + cols))
    seeds = seed if isinstance(seed, tuple) else (seed,)
    return rng_for(*seeds).uniform(-limit, limit, size=(rows, cols))


@dataclass
class AdamState:
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0


def adam_step(
    params: MutableMapping[str, np.ndarray],
    grads: Mapping[str, np.ndarray],
    state: AdamState,
    lr: float = 0.001,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> None:
    """One bias-corrected Adam update, in place on ``params`` and ``state``.

    Only names present in ``grads`` are updated.
    """
    for name, g in grads.items():
        if name not in params:
            raise ValueError(f"gradient for unknown parameter {name!r}")
        if g.shape != params[name].shape:
            raise ValueError(f"shape mismatch for {name}: grad {g.shape} vs param {params[name].shape}")
    state.t += 1
    t = state.t
    c1 = 1.0 - beta1**t
    c2 = 1.0 - beta2**t
    for name, g in grads.items():
        m = state.m.get(name)
        if m is None:
            m = state.m[name] = np.zeros_like(params[name])
            state.v[name] = np.zeros_like(params[name])
        v = state.v[name]
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * g * g
        if lr == 0.0:  # a zero step could still flip 0.0 to -0.0
            continue
        params[name] -= lr * (m / c1) / (np.sqrt(v / c2) + eps)
