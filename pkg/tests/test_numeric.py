import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qoerep.numeric import AdamState, adam_step, cross_entropy, glorot_uniform, mean_cross_entropy, sigmoid, softmax

finite = st.floats(-50, 50, allow_nan=False)


def test_softmax_oracle():
    np.testing.assert_allclose(softmax(np.array([math.log(1), math.log(3)])), [0.25, 0.75], atol=1e-15)


def test_softmax_large_logits_are_stable():
    out = softmax(np.array([1000.0, 1000.0 + math.log(3)]))
    np.testing.assert_allclose(out, [0.25, 0.75], atol=1e-12)


@given(arrays(np.float64, st.integers(1, 8), elements=finite))
def test_softmax_is_distribution(v):
    p = softmax(v)
    assert np.all(p >= 0) and abs(p.sum() - 1.0) < 1e-12
    np.testing.assert_allclose(softmax(v + 7.5), p, atol=1e-12)


def test_softmax_empty():
    with pytest.raises(ValueError):
        softmax(np.array([]))


def test_cross_entropy_oracle():
    assert cross_entropy(np.array([0.25, 0.75]), 1) == pytest.approx(math.log(4 / 3), abs=1e-11)
    with pytest.raises(ValueError):
        cross_entropy(np.array([0.5, 0.5]), 2)
    # epsilon keeps log(0) finite
    assert math.isfinite(cross_entropy(np.array([1.0, 0.0]), 1))


def test_mean_cross_entropy():
    probs = np.array([[0.25, 0.75], [0.5, 0.5]])
    assert mean_cross_entropy(probs, np.array([1, 0])) == pytest.approx((math.log(4 / 3) + math.log(2)) / 2)


@given(arrays(np.float64, 10, elements=finite))
def test_sigmoid_symmetry(x):
    np.testing.assert_allclose(sigmoid(x) + sigmoid(-x), 1.0, atol=1e-12)


def test_glorot_bounds_and_seed():
    w = glorot_uniform(30, 20, 3)
    assert np.all(np.abs(w) <= math.sqrt(6 / 50))
    np.testing.assert_array_equal(w, glorot_uniform(30, 20, (3,)))
    assert not np.array_equal(w, glorot_uniform(30, 20, 4))


def test_adam_first_step_magnitude():
    params = {"w": np.array([1.0, -2.0, 0.5])}
    grads = {"w": np.array([0.3, -4.0, 1e-3])}
    adam_step(params, grads, AdamState(), lr=0.001)
    # bias-corrected first step moves each entry by lr * sign(g)
    np.testing.assert_allclose(params["w"], [1.0 - 0.001, -2.0 + 0.001, 0.5 - 0.001], atol=1e-7)


def test_adam_zero_lr_is_identity():
    params = {"w": np.array([0.0, 1.0])}
    adam_step(params, {"w": np.array([1.0, -1.0])}, AdamState(), lr=0.0)
    assert params["w"].tolist() == [0.0, 1.0]
    assert not np.signbit(params["w"][0])


def test_adam_matches_reference_over_steps():
    rng = np.random.default_rng(0)
    p = rng.normal(size=5)
    ours = {"p": p.copy()}
    state = AdamState()
    m = v = np.zeros(5)
    ref = p.copy()
    for t in range(1, 6):
        g = rng.normal(size=5)
        adam_step(ours, {"p": g}, state)
        m = 0.9 * m + 0.1 * g
        v = 0.999 * v + 0.001 * g * g
        ref = ref - 0.001 * (m / (1 - 0.9**t)) / (np.sqrt(v / (1 - 0.999**t)) + 1e-8)
    np.testing.assert_allclose(ours["p"], ref, atol=1e-14)


def test_adam_shape_mismatch():
    with pytest.raises(ValueError):
        adam_step({"w": np.zeros(2)}, {"w": np.zeros(3)}, AdamState())
