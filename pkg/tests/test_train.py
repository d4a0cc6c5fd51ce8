import numpy as np
import pytest

from qoerep.checkpoint import load_checkpoint, save_checkpoint
from qoerep.config import RunConfig, load_config, parse_config
from qoerep.embedding import EmbeddingMatrix, PaddedSample, build_vocabulary
from qoerep.errors import ParseError, ValidationError
from qoerep.model import forward, small_problem
from qoerep.train import TrainConfig, accuracy, evaluate, train


def _separable(n=16, T=5, seed=0):
    # class is decided by which half of the vocabulary the tokens come from
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        label = i % 2
        lo, hi = (2, 6) if label == 0 else (6, 10)
        out.append(PaddedSample(rng.integers(lo, hi, T), label, f"s{i}"))
    return out


def _embedding():
    return EmbeddingMatrix(np.random.default_rng(5).uniform(-0.5, 0.5, (10, 4)))


@pytest.mark.parametrize("arch", ["lstm", "gru", "rnn"])
def test_train_learns_separable(arch):
    data = _separable()
    cfg = TrainConfig(epochs=60, lr=0.02, batch_size=8, hidden_size=8, arch=arch)
    result = train(data, data[:4], cfg, _embedding())
    assert len(result.curve) == 60
    assert result.curve.records[-1].train_loss < result.curve.records[0].train_loss
    assert accuracy(result.params, data) == 1.0
    assert result.n_steps == 60 * 2


def test_train_is_deterministic():
    cfg = TrainConfig(epochs=3, hidden_size=5, batch_size=4, resampling="smote", smote_k=2)
    data = _separable()[:-5] + [s for s in _separable(seed=2) if s.label == 1][:1]
    a = train(data, [], cfg, _embedding())
    b = train(data, [], cfg, _embedding())
    assert a.curve.to_csv() == b.curve.to_csv()
    for k in a.params.weights:
        np.testing.assert_array_equal(a.params.weights[k], b.params.weights[k])


def test_curve_csv_layout():
    result = train(_separable(), _separable(4, seed=1), TrainConfig(epochs=2, hidden_size=3), _embedding())
    lines = result.curve.to_csv().splitlines()
    assert lines[0] == "epoch,train_loss,val_loss,epoch_ms"
    assert len(lines) == 3 and lines[1].startswith("1,") and lines[1].endswith(",")
    assert result.curve.to_csv(include_timing=True).splitlines()[1].split(",")[3] != ""


def test_fine_tune_updates_embedding_but_not_pad():
    emb = _embedding()
    emb.values[0] = 0.0
    cfg = TrainConfig(epochs=2, hidden_size=3, fine_tune_embeddings=True)
    result = train(_separable(), [], cfg, emb)
    assert not np.array_equal(result.params.embedding.values, emb.values)
    assert np.all(result.params.embedding.values[0] == 0.0)
    frozen = train(_separable(), [], TrainConfig(epochs=2, hidden_size=3), emb)
    np.testing.assert_array_equal(frozen.params.embedding.values, emb.values)


def test_single_class_training_rejected():
    data = [s for s in _separable() if s.label == 0]
    with pytest.raises(ValidationError):
        train(data, [], TrainConfig(epochs=1), _embedding())


@pytest.mark.parametrize("field, value", [("epochs", 0), ("lr", 0.0), ("arch", "cnn"), ("resampling", "x")])
def test_config_validation(field, value):
    cfg = TrainConfig(**{field: value})
    with pytest.raises(ValueError):
        cfg.validate()


def test_evaluate_confusion():
    params, samples, _ = small_problem("rnn")
    cm = evaluate(params, samples)
    assert cm.total == len(samples)
    with pytest.raises(ValueError):
        evaluate(params, [])


def test_checkpoint_roundtrip_bytes(tmp_path):
    params, samples, _ = small_problem("lstm", mask_stop=True)
    vocab = build_vocabulary([[f"w{i}" for i in range(18)]])
    save_checkpoint(params, tmp_path / "a.ckpt", max_len=5, vocab=vocab)
    back, header = load_checkpoint(tmp_path / "a.ckpt", vocab)
    assert header["max_len"] == 5 and back.mask_stop and back.embedding.trainable
    np.testing.assert_array_equal(forward(samples, back)[0], forward(samples, params)[0])
    save_checkpoint(back, tmp_path / "b.ckpt", max_len=5, vocab=vocab)
    assert (tmp_path / "a.ckpt").read_bytes() == (tmp_path / "b.ckpt").read_bytes()


def test_checkpoint_vocab_mismatch_and_corruption(tmp_path):
    params, _, _ = small_problem("gru")
    vocab = build_vocabulary([["a"]])
    path = tmp_path / "m.ckpt"
    save_checkpoint(params, path, 5, vocab)
    with pytest.raises(ValidationError):
        load_checkpoint(path, build_vocabulary([["b"]]))
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(ParseError):
        load_checkpoint(path)
    path.write_bytes(b"junk")
    with pytest.raises(ParseError):
        load_checkpoint(path)


def test_config_parse_and_override(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\narch = gru, rnn\nepochs = 3\nmask_stop = yes\nlr = 0.01  # inline\n")
    cfg = load_config(path, epochs=7, seed=None)
    assert cfg.archs == ["gru", "rnn"] and cfg.epochs == 7 and cfg.mask_stop and cfg.lr == 0.01
    assert cfg.train_config("rnn").arch == "rnn"
    again = parse_config(cfg.dumps())
    assert RunConfig(**again) == cfg


@pytest.mark.parametrize("text, line", [("bogus = 1\n", 1), ("epochs = 1\nepochs\n", 2), ("\nstemming = maybe\n", 2)])
def test_config_errors(text, line):
    with pytest.raises(ParseError) as err:
        parse_config(text)
    assert err.value.line == line


def test_config_rejects_bad_arch():
    with pytest.raises(ValueError):
        load_config(None, arch="lstm,cnn")
