import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qoerep.embedding import EmbeddingMatrix, PaddedSample
from qoerep.errors import ValidationError
from qoerep.resample import (
    EmbeddedSample,
    adasyn,
    adasyn_allocation,
    class_counts,
    random_oversample,
    random_undersample,
    resample_training_set,
    smote,
    write_audit,
)


def _pts(coords, label=1, prefix="m"):
    return [EmbeddedSample(np.array(c, dtype=float).reshape(1, -1), label, f"{prefix}{i}") for i, c in enumerate(coords)]


def test_smote_midpoint():
    a, b = _pts([[0.0, 0.0], [2.0, 4.0]])
    (s,) = smote([a, b], k=1, n_synthetic=1, delta=0.5)
    np.testing.assert_array_equal(s.matrix, [[1.0, 2.0]])
    assert s.parent_ids == ("m0", "m1") and s.delta == 0.5 and s.synthetic


@settings(max_examples=40, deadline=None)
@given(m=st.integers(2, 20), t=st.integers(1, 6), d=st.integers(1, 4), n=st.integers(0, 40), seed=st.integers(0, 999))
def test_smote_convex_combination(m, t, d, n, seed):
    rng = np.random.default_rng(seed)
    pool = [EmbeddedSample(rng.normal(size=(t, d)), 1, f"m{i}") for i in range(m)]
    by_id = {s.source_id: s.matrix for s in pool}
    out = smote(pool, k=min(5, m - 1), n_synthetic=n, seed=seed)
    assert len(out) == n
    for s in out:
        a, b = (by_id[p] for p in s.parent_ids)
        assert 0.0 <= s.delta <= 1.0
        assert np.max(np.abs(s.matrix - (a + s.delta * (b - a)))) < 1e-9


def test_smote_partner_is_nearest_neighbour():
    pool = _pts([[0.0], [1.0], [10.0], [11.0]])
    out = smote(pool, k=1, n_synthetic=4, seed=0)
    assert [s.parent_ids for s in out] == [("m0", "m1"), ("m1", "m0"), ("m2", "m3"), ("m3", "m2")]


@pytest.mark.parametrize("m, k", [(1, 1), (3, 3), (3, 0)])
def test_smote_bad_arguments(m, k):
    with pytest.raises((ValueError, ValidationError)):
        smote(_pts([[float(i)] for i in range(m)]), k=k, n_synthetic=1)


def test_adasyn_allocation_prefers_hard_points():
    # m0 sits inside the majority cluster, m2 is isolated from it
    maj = _pts([[0.0], [0.1], [0.2], [0.3], [0.4], [0.5]], label=0, prefix="M")
    mino = _pts([[0.25], [5.0], [5.1]], label=1)
    samples = maj + mino
    pos, r_hat, g = adasyn_allocation(samples, k=3, beta=1.0)
    assert pos.tolist() == [6, 7, 8]
    assert r_hat[0] > r_hat[1] >= r_hat[2]
    assert g[0] >= g[1] >= g[2]
    assert abs(int(g.sum()) - 3) <= 3
    assert np.isclose(r_hat.sum(), 1.0)


def test_adasyn_uniform_when_no_majority_neighbours():
    samples = _pts([[0.0], [0.1], [0.2], [0.3]], label=0, prefix="M") + _pts([[9.0], [9.1]])
    _, r_hat, g = adasyn_allocation(samples, k=1, beta=1.0)
    assert r_hat.tolist() == [0.5, 0.5] and g.tolist() == [1, 1]
    out = adasyn(samples, k=1, beta=1.0, seed=0)
    assert len(out) == 2 and all(s.label == 1 for s in out)


def test_adasyn_beta_range():
    samples = _pts([[0.0], [1.0], [2.0]], label=0, prefix="M") + _pts([[9.0], [8.0]])
    with pytest.raises(ValueError):
        adasyn_allocation(samples, k=2, beta=0.0)


def _padded(n_pos, n_neg, T=4, V=10, seed=0):
    rng = np.random.default_rng(seed)
    return [PaddedSample(rng.integers(1, V, T), int(i >= n_pos), f"s{i}") for i in range(n_pos + n_neg)]


@pytest.mark.parametrize("method", ["oversample", "undersample", "smote", "adasyn"])
def test_resample_balances(method):
    samples = _padded(12, 3)
    emb = EmbeddingMatrix(np.random.default_rng(1).normal(size=(10, 3)))
    out = resample_training_set(samples, method, emb, seed=0, k=2)
    counts = class_counts(out)
    if method == "adasyn":
        assert counts[1] > 3
    else:
        assert counts[0] == counts[1]
    assert len(resample_training_set(samples, method, emb, seed=0, k=2)) == len(out)


def test_oversample_keeps_originals_first():
    samples = _padded(5, 2)
    out = random_oversample(samples, seed=3)
    assert out[:7] == samples and len(out) == 10
    assert all(s.label == 1 for s in out[7:])
    under = random_undersample(samples, seed=3)
    assert class_counts(under) == {0: 2, 1: 2}


def test_single_class_rejected():
    with pytest.raises(ValidationError):
        random_oversample(_padded(4, 0))


def test_audit_csv(tmp_path):
    out = smote(_pts([[0.0], [1.0]]), k=1, n_synthetic=2, seed=0)
    write_audit(out, tmp_path / "audit.csv")
    lines = (tmp_path / "audit.csv").read_text().splitlines()
    assert lines[0] == "synthetic_id,parent_a,parent_b,delta" and len(lines) == 3
