"""Recurrent review classifiers (LSTM, vanilla RNN, GRU) with hand-written BPTT.

Conventions
-----------
* Inputs are row vectors; a gate pre-activation is ``x @ W.T + h @ U.T + b``.
* Class index 0 is positive, 1 is negative.
* The classifier reads the final hidden state ``h_T`` through a dense layer
  and softmax.  ``h_0 = c_0 = 0``.
* By default the recurrence runs over every position including trailing
  padding (which embeds to the zero vector).  With ``mask_stop`` the state
  is frozen after the last non-pad position.

Cell equations::

    LSTM  i,f,o = sigmoid(.)   g = tanh(.)   c = f*c' + i*g   h = o*tanh(c)
    GRU   z,r = sigmoid(.)     n = tanh(W_h x + U_h (r*h') + b_h)
          h = z*h' + (1-z)*n
    RNN   h = tanh(W x + U h' + b)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .embedding import PAD_INDEX, EmbeddingMatrix, PaddedSample
from .errors import ContractError, NumericalError
from .numeric import glorot_uniform, mean_cross_entropy, softmax

ARCHS = ("lstm", "rnn", "gru")
GATES = {"lstm": ("i", "f", "o", "c"), "gru": ("z", "r", "h"), "rnn": ("",)}
N_CLASSES = 2


def tanh_sigmoid(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def _names(arch: str, kind: str) -> list[str]:
    return [f"{kind}_{g}" if g else kind for g in GATES[arch]]


@dataclass(eq=False)
class ModelParams:
    arch: str
    hidden_size: int
    embedding: EmbeddingMatrix
    weights: dict[str, np.ndarray]
    mask_stop: bool = False
    version: int = 0

    @property
    def input_dim(self) -> int:
        return self.embedding.dim

    def trainable(self) -> dict[str, np.ndarray]:
        """Arrays the optimiser may update, by name (embedding only if trainable)."""
        out = dict(self.weights)
        if self.embedding.trainable:
            out["embedding"] = self.embedding.values
        return out

    def copy(self) -> "ModelParams":
        emb = EmbeddingMatrix(self.embedding.values.copy(), self.embedding.trainable)
        return ModelParams(self.arch, self.hidden_size, emb,
                           {k: v.copy() for k, v in self.weights.items()}, self.mask_stop)


def init_params(arch: str, embedding: EmbeddingMatrix, hidden_size: int = 128, seed: int = 0,
                mask_stop: bool = False) -> ModelParams:
    """Glorot-uniform matrices, zero biases, LSTM forget bias 1."""
    if arch not in ARCHS:
        raise ValueError(f"unknown arch {arch!r}")
    H, D = hidden_size, embedding.dim
    weights: dict[str, np.ndarray] = {}
    k = 0
    for name in _names(arch, "W"):
        weights[name] = glorot_uniform(H, D, (seed, k)); k += 1
    for name in _names(arch, "U"):
        weights[name] = glorot_uniform(H, H, (seed, k)); k += 1
    for name in _names(arch, "b"):
        weights[name] = np.zeros(H)
    if arch == "lstm":
        weights["b_f"][:] = 1.0
    weights["W_y"] = glorot_uniform(N_CLASSES, H, (seed, k))
    weights["b_y"] = np.zeros(N_CLASSES)
    return ModelParams(arch, H, embedding, weights, mask_stop)


# --------------------------------------------------------------------------
# Single-step cells (reference path; the batched forward inlines the same maths)
# --------------------------------------------------------------------------


def _stack(params: ModelParams, kind: str) -> np.ndarray:
    return np.concatenate([params.weights[n] for n in _names(params.arch, kind)], axis=0)


def lstm_cell_forward(x_t, h_prev, c_prev, params: ModelParams):
    """One LSTM step; returns ``(h_t, c_t, cache)`` with cache keys i, f, o, g, c."""
    _check_cell_shapes(x_t, h_prev, params, c_prev)
    w = params.weights
    i = tanh_sigmoid(w["W_i"] @ x_t + w["U_i"] @ h_prev + w["b_i"])
    f = tanh_sigmoid(w["W_f"] @ x_t + w["U_f"] @ h_prev + w["b_f"])
    o = tanh_sigmoid(w["W_o"] @ x_t + w["U_o"] @ h_prev + w["b_o"])
    g = np.tanh(w["W_c"] @ x_t + w["U_c"] @ h_prev + w["b_c"])
    c = f * c_prev + i * g
    h = o * np.tanh(c)
    return h, c, {"i": i, "f": f, "o": o, "g": g, "c": c}


def gru_cell_forward(x_t, h_prev, params: ModelParams):
    _check_cell_shapes(x_t, h_prev, params)
    w = params.weights
    z = tanh_sigmoid(w["W_z"] @ x_t + w["U_z"] @ h_prev + w["b_z"])
    r = tanh_sigmoid(w["W_r"] @ x_t + w["U_r"] @ h_prev + w["b_r"])
    n = np.tanh(w["W_h"] @ x_t + w["U_h"] @ (r * h_prev) + w["b_h"])
    h = z * h_prev + (1.0 - z) * n
    return h, {"z": z, "r": r, "n": n}


def rnn_cell_forward(x_t, h_prev, params: ModelParams):
    _check_cell_shapes(x_t, h_prev, params)
    w = params.weights
    h = np.tanh(w["W"] @ x_t + w["U"] @ h_prev + w["b"])
    return h, {"h": h}


def _check_cell_shapes(x_t, h_prev, params, c_prev=None):
    if np.shape(x_t) != (params.input_dim,):
        raise ValueError(f"x_t has shape {np.shape(x_t)}, expected ({params.input_dim},)")
    for name, arr in (("h_prev", h_prev), ("c_prev", c_prev)):
        if arr is not None and np.shape(arr) != (params.hidden_size,):
            raise ValueError(f"{name} has shape {np.shape(arr)}, expected ({params.hidden_size},)")


# --------------------------------------------------------------------------
# Batched forward / backward
# --------------------------------------------------------------------------


@dataclass(eq=False)
class SequenceBatch:
    """Embedded inputs ``X`` (N, T, D) plus the index rows they came from.

    ``indices[n]`` is all -1 for samples supplied pre-embedded.
    """

    X: np.ndarray
    indices: np.ndarray
    lengths: np.ndarray

    @property
    def size(self) -> int:
        return self.X.shape[0]


def make_batch(samples: Sequence, embedding: EmbeddingMatrix) -> SequenceBatch:
    """Embed a mixed list of :class:`PaddedSample` and pre-embedded samples.

    A pre-embedded sample is any object with a ``matrix`` attribute of shape
    (max_len, D).
    """
    if not samples:
        raise ValueError("empty batch")
    V, D = embedding.values.shape
    first = samples[0]
    T = len(first.indices) if isinstance(first, PaddedSample) else first.matrix.shape[0]
    X = np.empty((len(samples), T, D))
    idx = np.full((len(samples), T), -1, dtype=np.int64)
    lengths = np.empty(len(samples), dtype=np.int64)
    for n, s in enumerate(samples):
        if isinstance(s, PaddedSample):
            row = np.asarray(s.indices)
            if row.shape != (T,):
                raise ValueError(f"sample {s.source_id!r} has length {row.shape}, expected {T}")
            if row.min() < 0 or row.max() >= V:
                raise ValueError(f"sample {s.source_id!r} has an index outside [0, {V})")
            idx[n] = row
            X[n] = embedding.values[row]
            X[n, row == PAD_INDEX] = 0.0
            lengths[n] = s.length
        else:
            m = np.asarray(s.matrix, dtype=np.float64)
            if m.shape != (T, D):
                raise ValueError(f"pre-embedded sample has shape {m.shape}, expected {(T, D)}")
            X[n] = m
            nz = np.flatnonzero(np.any(m != 0.0, axis=1))
            lengths[n] = nz[-1] + 1 if nz.size else 0
    return SequenceBatch(X, idx, lengths)


@dataclass(eq=False)
class ForwardCache:
    params: ModelParams
    version: int
    batch: SequenceBatch
    steps: dict[str, np.ndarray] = field(default_factory=dict)
    h_T: np.ndarray | None = None


def forward(batch, params: ModelParams):
    """Run the classifier; returns ``(probs (N, 2), cache)``."""
    if not isinstance(batch, SequenceBatch):
        batch = make_batch(batch, params.embedding)
    X = np.ascontiguousarray(batch.X.transpose(1, 0, 2))  # time-major (T, N, D)
    T, N, _ = X.shape
    H = params.hidden_size
    w = params.weights
    Wx = _stack(params, "W")
    bx = np.concatenate([w[n] for n in _names(params.arch, "b")])
    XP = X @ Wx.T + bx
    if params.mask_stop:
        live = (np.arange(T)[:, None] < batch.lengths[None, :])[:, :, None]
    else:
        live = None

    h = np.zeros((N, H))
    steps: dict[str, np.ndarray] = {"h_prev": np.empty((T, N, H))}
    arch = params.arch
    if arch == "lstm":
        U = _stack(params, "U")
        c = np.zeros((N, H))
        for key in ("c_prev", "i", "f", "o", "g", "tc"):
            steps[key] = np.empty((T, N, H))
        for t in range(T):
            steps["h_prev"][t] = h
            steps["c_prev"][t] = c
            a = XP[t] + h @ U.T
            i = tanh_sigmoid(a[:, :H])
            f = tanh_sigmoid(a[:, H : 2 * H])
            o = tanh_sigmoid(a[:, 2 * H : 3 * H])
            g = np.tanh(a[:, 3 * H :])
            c_new = f * c + i * g
            tc = np.tanh(c_new)
            h_new = o * tc
            steps["i"][t], steps["f"][t], steps["o"][t], steps["g"][t], steps["tc"][t] = i, f, o, g, tc
            if live is not None:
                h = np.where(live[t], h_new, h)
                c = np.where(live[t], c_new, c)
            else:
                h, c = h_new, c_new
    elif arch == "gru":
        U_zr = np.concatenate([w["U_z"], w["U_r"]], axis=0)
        U_h = w["U_h"]
        for key in ("z", "r", "n", "rh"):
            steps[key] = np.empty((T, N, H))
        for t in range(T):
            steps["h_prev"][t] = h
            a = XP[t, :, : 2 * H] + h @ U_zr.T
            z = tanh_sigmoid(a[:, :H])
            r = tanh_sigmoid(a[:, H:])
            rh = r * h
            n = np.tanh(XP[t, :, 2 * H :] + rh @ U_h.T)
            h_new = z * h + (1.0 - z) * n
            steps["z"][t], steps["r"][t], steps["n"][t], steps["rh"][t] = z, r, n, rh
            h = np.where(live[t], h_new, h) if live is not None else h_new
    else:
        U = w["U"]
        steps["h"] = np.empty((T, N, H))
        for t in range(T):
            steps["h_prev"][t] = h
            h_new = np.tanh(XP[t] + h @ U.T)
            steps["h"][t] = h_new
            h = np.where(live[t], h_new, h) if live is not None else h_new

    logits = h @ w["W_y"].T + w["b_y"]
    probs = softmax(logits)
    if not np.all(np.isfinite(probs)):
        raise NumericalError(
            f"non-finite output in {arch} forward (max |h_T| = {np.nanmax(np.abs(h)):.3g})"
        )
    if live is not None:
        steps["live"] = live
    cache = ForwardCache(params, params.version, batch, steps, h)
    return probs, cache


def loss_from_probs(probs: np.ndarray, labels) -> float:
    return mean_cross_entropy(probs, np.asarray(labels, dtype=np.int64))


def backward(cache: ForwardCache, probs: np.ndarray, labels, params: ModelParams) -> dict[str, np.ndarray]:
    """Gradients of the batch-mean cross-entropy, keyed like ``params.trainable()``."""
    if cache.params is not params or cache.version != params.version:
        raise ContractError("forward cache does not belong to these parameters (stale or foreign)")
    labels = np.asarray(labels, dtype=np.int64)
    N = probs.shape[0]
    if labels.shape != (N,):
        raise ValueError(f"expected {N} labels, got shape {labels.shape}")
    H = params.hidden_size
    w = params.weights
    s = cache.steps
    T = s["h_prev"].shape[0]
    live = s.get("live")

    dlogits = probs.copy()
    dlogits[np.arange(N), labels] -= 1.0
    dlogits /= N
    grads = {"W_y": dlogits.T @ cache.h_T, "b_y": dlogits.sum(axis=0)}
    dh = dlogits @ w["W_y"]

    arch = params.arch
    G = len(GATES[arch])
    dXP = np.empty((T, N, G * H))
    if arch == "lstm":
        U = _stack(params, "U")
        dc = np.zeros((N, H))
        for t in range(T - 1, -1, -1):
            if live is not None:
                m = live[t]
                dh_new, dh_skip = np.where(m, dh, 0.0), np.where(m, 0.0, dh)
                dc_new, dc_skip = np.where(m, dc, 0.0), np.where(m, 0.0, dc)
            else:
                dh_new, dc_new = dh, dc
            i, f, o, g, tc = s["i"][t], s["f"][t], s["o"][t], s["g"][t], s["tc"][t]
            do = dh_new * tc
            dct = dc_new + dh_new * o * (1.0 - tc * tc)
            da = dXP[t]
            da[:, :H] = dct * g * i * (1.0 - i)
            da[:, H : 2 * H] = dct * s["c_prev"][t] * f * (1.0 - f)
            da[:, 2 * H : 3 * H] = do * o * (1.0 - o)
            da[:, 3 * H :] = dct * i * (1.0 - g * g)
            dh = da @ U
            dc = dct * f
            if live is not None:
                dh += dh_skip
                dc += dc_skip
        dU = dXP.reshape(T * N, G * H).T @ s["h_prev"].reshape(T * N, H)
        for k, name in enumerate(_names(arch, "U")):
            grads[name] = dU[k * H : (k + 1) * H]
    elif arch == "gru":
        U_zr = np.concatenate([w["U_z"], w["U_r"]], axis=0)
        U_h = w["U_h"]
        for t in range(T - 1, -1, -1):
            if live is not None:
                dh_new, dh_skip = np.where(live[t], dh, 0.0), np.where(live[t], 0.0, dh)
            else:
                dh_new = dh
            z, r, n, hp = s["z"][t], s["r"][t], s["n"][t], s["h_prev"][t]
            da = dXP[t]
            da_n = dh_new * (1.0 - z) * (1.0 - n * n)
            drh = da_n @ U_h
            da[:, :H] = dh_new * (hp - n) * z * (1.0 - z)
            da[:, H : 2 * H] = drh * hp * r * (1.0 - r)
            da[:, 2 * H :] = da_n
            dh = dh_new * z + drh * r + da[:, : 2 * H] @ U_zr
            if live is not None:
                dh += dh_skip
        flat = dXP.reshape(T * N, G * H)
        dU_zr = flat[:, : 2 * H].T @ s["h_prev"].reshape(T * N, H)
        grads["U_z"], grads["U_r"] = dU_zr[:H], dU_zr[H:]
        grads["U_h"] = flat[:, 2 * H :].T @ s["rh"].reshape(T * N, H)
    else:
        U = w["U"]
        for t in range(T - 1, -1, -1):
            if live is not None:
                dh_new, dh_skip = np.where(live[t], dh, 0.0), np.where(live[t], 0.0, dh)
            else:
                dh_new = dh
            ht = s["h"][t]
            dXP[t] = dh_new * (1.0 - ht * ht)
            dh = dXP[t] @ U
            if live is not None:
                dh += dh_skip
        grads["U"] = dXP.reshape(T * N, H).T @ s["h_prev"].reshape(T * N, H)

    X = cache.batch.X.transpose(1, 0, 2)
    D = X.shape[2]
    flat = dXP.reshape(T * N, G * H)
    dW = flat.T @ X.reshape(T * N, D)
    db = flat.sum(axis=0)
    for k, name in enumerate(_names(arch, "W")):
        grads[name] = dW[k * H : (k + 1) * H]
    for k, name in enumerate(_names(arch, "b")):
        grads[name] = db[k * H : (k + 1) * H]

    if params.embedding.trainable:
        Wx = _stack(params, "W")
        dX = dXP @ Wx  # (T, N, D)
        idx = cache.batch.indices.T  # (T, N)
        sel = idx > PAD_INDEX
        dE = np.zeros_like(params.embedding.values)
        np.add.at(dE, idx[sel], dX[sel])
        grads["embedding"] = dE
    return grads


def batch_loss(params: ModelParams, batch, labels) -> float:
    probs, _ = forward(batch, params)
    return loss_from_probs(probs, labels)


def predict(samples, params: ModelParams, batch_size: int = 256) -> list[tuple[int, float]]:
    """``(label index, confidence)`` per sample; ties resolve to positive (0)."""
    out: list[tuple[int, float]] = []
    for start in range(0, len(samples), batch_size):
        probs, _ = forward(samples[start : start + batch_size], params)
        labels = np.argmax(probs, axis=1)  # first maximum -> index 0 on ties
        out.extend((int(k), float(p[k])) for k, p in zip(labels, probs))
    return out


def predict_probs(samples, params: ModelParams, batch_size: int = 256) -> np.ndarray:
    chunks = [forward(samples[s : s + batch_size], params)[0] for s in range(0, len(samples), batch_size)]
    return np.concatenate(chunks, axis=0)


def gradient_check(params: ModelParams, batch, labels, eps: float = 1e-5,
                   corrupt: str | None = None) -> float:
    """Max relative error between analytic and central-difference gradients.

    Every scalar of every trainable array is perturbed, except the padding
    row of a trainable embedding (frozen by construction).  ``corrupt``
    zeroes the analytic gradient of one named array to exercise the harness.
    """
    if not isinstance(batch, SequenceBatch):
        batch = make_batch(batch, params.embedding)
    labels = np.asarray(labels, dtype=np.int64)

    def loss_now() -> float:
        # X must be rebuilt when the embedding itself is perturbed
        b = batch
        if params.embedding.trainable:
            b = _reembed(batch, params.embedding)
        return loss_from_probs(forward(b, params)[0], labels)

    probs, cache = forward(batch, params)
    grads = backward(cache, probs, labels, params)
    if corrupt is not None:
        grads[corrupt] = np.zeros_like(grads[corrupt])
    worst = 0.0
    for name, arr in params.trainable().items():
        start = arr.shape[1] if name == "embedding" else 0
        flat = arr.reshape(-1)
        g_flat = grads[name].reshape(-1)
        for j in range(start, flat.size):
            orig = flat[j]
            flat[j] = orig + eps
            lp = loss_now()
            flat[j] = orig - eps
            lm = loss_now()
            flat[j] = orig
            g_num = (lp - lm) / (2.0 * eps)
            g_an = g_flat[j]
            rel = abs(g_an - g_num) / max(abs(g_an), abs(g_num), 1e-8)
            worst = max(worst, rel)
    return worst


def _reembed(batch: SequenceBatch, embedding: EmbeddingMatrix) -> SequenceBatch:
    X = batch.X.copy()
    has_idx = batch.indices[:, 0] >= 0
    for n in np.flatnonzero(has_idx):
        row = batch.indices[n]
        X[n] = embedding.values[row]
        X[n, row == PAD_INDEX] = 0.0
    return SequenceBatch(X, batch.indices, batch.lengths)


def small_problem(arch: str, seed: int = 0, vocab_size: int = 20, dim: int = 8, hidden_size: int = 6,
                  max_len: int = 5, batch_size: int = 4, mask_stop: bool = False):
    """A tiny random model and labeled batch for gradient checking.

    The embedding is trainable so its gradient is checked as well.  Returns
    ``(params, samples, labels)``.
    """
    from .ingest import rng_for

    rng = rng_for(seed, 1)
    values = rng.uniform(-0.5, 0.5, (vocab_size, dim))
    values[PAD_INDEX] = 0.0
    params = init_params(arch, EmbeddingMatrix(values, trainable=True), hidden_size, seed, mask_stop)
    # nonzero output bias so the head gradient is not symmetric by accident
    params.weights["b_y"] = rng.uniform(-0.1, 0.1, N_CLASSES)
    samples = []
    for n in range(batch_size):
        length = int(rng.integers(1, max_len + 1))
        idx = np.zeros(max_len, dtype=np.int64)
        idx[:length] = rng.integers(1, vocab_size, length)
        samples.append(PaddedSample(idx, n % 2, f"toy-{n}"))
    return params, samples, [s.label for s in samples]
