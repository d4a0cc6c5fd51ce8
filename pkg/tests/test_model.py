import math

import numpy as np
import pytest

from qoerep.embedding import EmbeddingMatrix, PaddedSample
from qoerep.errors import ContractError, NumericalError
from qoerep.model import (
    ARCHS,
    backward,
    forward,
    gradient_check,
    gru_cell_forward,
    init_params,
    lstm_cell_forward,
    make_batch,
    predict,
    rnn_cell_forward,
    small_problem,
)
from qoerep.resample import EmbeddedSample


def _sig(x):
    return 1.0 / (1.0 + math.exp(-x))


def _scalar_params(arch, values):
    emb = EmbeddingMatrix(np.zeros((3, 1)))
    params = init_params(arch, emb, hidden_size=1)
    for name, val in values.items():
        params.weights[name] = np.full(params.weights[name].shape, val)
    return params


def test_lstm_cell_hand_trace():
    vals = {"W_i": 0.5, "W_f": -0.3, "W_o": 0.8, "W_c": 1.1, "U_i": 0.2, "U_f": 0.4, "U_o": -0.6,
            "U_c": 0.7, "b_i": 0.1, "b_f": 1.0, "b_o": -0.2, "b_c": 0.05}
    p = _scalar_params("lstm", vals)
    x, h0, c0 = 0.9, -0.4, 0.3
    i = _sig(0.5 * x + 0.2 * h0 + 0.1)
    f = _sig(-0.3 * x + 0.4 * h0 + 1.0)
    o = _sig(0.8 * x - 0.6 * h0 - 0.2)
    g = math.tanh(1.1 * x + 0.7 * h0 + 0.05)
    c = f * c0 + i * g
    h = o * math.tanh(c)
    h_t, c_t, cache = lstm_cell_forward(np.array([x]), np.array([h0]), np.array([c0]), p)
    assert abs(h_t[0] - h) < 1e-12 and abs(c_t[0] - c) < 1e-12
    assert abs(cache["f"][0] - f) < 1e-12


def test_gru_cell_hand_trace():
    vals = {"W_z": 0.3, "W_r": -0.7, "W_h": 0.9, "U_z": 0.5, "U_r": 0.1, "U_h": -0.4,
            "b_z": 0.0, "b_r": 0.2, "b_h": -0.1}
    p = _scalar_params("gru", vals)
    x, h0 = -0.6, 0.25
    z = _sig(0.3 * x + 0.5 * h0)
    r = _sig(-0.7 * x + 0.1 * h0 + 0.2)
    n = math.tanh(0.9 * x - 0.4 * (r * h0) - 0.1)
    h = z * h0 + (1 - z) * n
    h_t, _ = gru_cell_forward(np.array([x]), np.array([h0]), p)
    assert abs(h_t[0] - h) < 1e-12


def test_rnn_cell_hand_trace():
    p = _scalar_params("rnn", {"W": 0.6, "U": -1.2, "b": 0.3})
    h_t, _ = rnn_cell_forward(np.array([0.4]), np.array([0.5]), p)
    assert abs(h_t[0] - math.tanh(0.6 * 0.4 - 1.2 * 0.5 + 0.3)) < 1e-12


@pytest.mark.parametrize("arch", ARCHS)
def test_batched_forward_matches_cells(arch):
    params, samples, _ = small_problem(arch, seed=2)
    probs, _ = forward(samples, params)
    for n, s in enumerate(samples):
        h = np.zeros(params.hidden_size)
        c = np.zeros(params.hidden_size)
        for idx in s.indices:
            x = params.embedding.values[idx] if idx else np.zeros(params.embedding.dim)
            if arch == "lstm":
                h, c, _ = lstm_cell_forward(x, h, c, params)
            elif arch == "gru":
                h, _ = gru_cell_forward(x, h, params)
            else:
                h, _ = rnn_cell_forward(x, h, params)
        logits = params.weights["W_y"] @ h + params.weights["b_y"]
        ref = np.exp(logits - logits.max())
        np.testing.assert_allclose(probs[n], ref / ref.sum(), atol=1e-12)


@pytest.mark.parametrize("arch", ARCHS)
@pytest.mark.parametrize("mask_stop", [False, True])
def test_gradient_check(arch, mask_stop):
    params, samples, labels = small_problem(arch, seed=0, mask_stop=mask_stop)
    assert gradient_check(params, samples, labels) < 1e-4


def test_gradient_check_detects_corruption():
    params, samples, labels = small_problem("lstm")
    assert gradient_check(params, samples, labels, corrupt="U_f") > 1e-2


def test_mask_stop_freezes_state_after_length():
    params, samples, _ = small_problem("gru", mask_stop=True)
    s = samples[0]
    trimmed = PaddedSample(np.concatenate([s.indices[: s.length], np.zeros(3, dtype=np.int64)]), s.label)
    a, _ = forward([s], params)
    b, _ = forward([trimmed], params)
    np.testing.assert_allclose(a, b, atol=1e-14)


def test_backward_rejects_stale_cache():
    params, samples, labels = small_problem("rnn")
    probs, cache = forward(samples, params)
    params.version += 1
    with pytest.raises(ContractError):
        backward(cache, probs, labels, params)
    other = params.copy()
    probs, cache = forward(samples, params)
    with pytest.raises(ContractError):
        backward(cache, probs, labels, other)


def test_pre_embedded_samples_match_indices():
    params, samples, _ = small_problem("lstm")
    embedded = []
    for s in samples:
        m = params.embedding.values[s.indices].copy()
        m[s.indices == 0] = 0.0
        embedded.append(EmbeddedSample(m, s.label))
    np.testing.assert_allclose(forward(samples, params)[0], forward(embedded, params)[0], atol=1e-14)


def test_make_batch_validation():
    params, samples, _ = small_problem("rnn")
    bad = PaddedSample(np.array([1, 99, 0, 0, 0]), 0, "bad")
    with pytest.raises(ValueError):
        make_batch([bad], params.embedding)
    with pytest.raises(ValueError):
        make_batch([], params.embedding)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_forward_non_finite_raises():
    params, samples, _ = small_problem("rnn")
    params.weights["W_y"][:] = np.inf
    with pytest.raises(NumericalError):
        forward(samples, params)


def test_predict_ties_go_to_positive():
    params, samples, _ = small_problem("rnn")
    params.weights["W_y"][:] = 0.0
    params.weights["b_y"][:] = 0.0
    assert [lab for lab, _ in predict(samples, params)] == [0] * len(samples)
    assert all(conf == 0.5 for _, conf in predict(samples, params))
