import json

import pytest

from qoerep.cli import balanced_test_set, main
from qoerep.embedding import PaddedSample


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "reviews.jsonl"
    assert main(["synth", "--n", "200", "--pos-ratio", "0.8", "--seed", "3", "--out", str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def trained(corpus, tmp_path_factory):
    out = tmp_path_factory.mktemp("run")
    argv = ["train", "--reviews", str(corpus), "--out", str(out), "--epochs", "2", "--hidden-size", "8",
            "--arch", "lstm,rnn", "--resampling", "oversample"]
    assert main(argv) == 0
    return out


def test_train_artifacts(trained):
    names = {p.name for p in trained.iterdir()}
    assert {"vocab.tsv", "run.cfg", "metrics.json", "model-lstm.ckpt", "model-rnn.ckpt",
            "curve-lstm.csv", "curve-rnn.csv", "train.jsonl", "validation.jsonl", "test.jsonl"} <= names
    metrics = json.loads((trained / "metrics.json").read_text())
    assert [r["arch"] for r in metrics["runs"]] == ["lstm", "rnn"]
    run = metrics["runs"][0]
    assert run["train_counts"]["positive"] == run["train_counts"]["negative"]
    assert {"precision", "recall", "f1"} <= set(metrics["comparison"][0])


def test_eval_balanced(trained, tmp_path, capsys):
    rc = main(["eval-balanced", "--checkpoint", str(trained / "model-lstm.ckpt"), "--n-per-class", "30",
               "--out", str(tmp_path)])
    assert rc == 0
    assert "balanced-test protocol" in capsys.readouterr().out
    report = json.loads((tmp_path / "balanced_report.json").read_text())
    assert report["balanced_test"]["size"] == 60


def test_reputation_from_checkpoint(trained, corpus, capsys):
    assert main(["reputation", "--checkpoint", str(trained / "model-rnn.ckpt"), "--reviews", str(corpus)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split()[0] == "provider" and lines[-1].split()[0] == "community"


def test_reputation_from_confusion(capsys):
    assert main(["reputation", "--from-confusion", "2039", "112"]) == 0
    assert capsys.readouterr().out.strip() == "89.58"


def test_preprocess_command(corpus, tmp_path):
    out = tmp_path / "tokens.jsonl"
    assert main(["preprocess", "--reviews", str(corpus), "--out", str(out)]) == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(rows) == 200 and all(row["tokens"] for row in rows)


@pytest.mark.parametrize("arch", ["lstm", "gru", "rnn"])
def test_gradcheck_command(arch):
    assert main(["gradcheck", "--arch", arch]) == 0


def test_gradcheck_corrupt_fails():
    assert main(["gradcheck", "--arch", "gru", "--corrupt"]) == 1


@pytest.mark.parametrize(
    "argv",
    [["train", "--out", "x"],  # no reviews
     ["train", "--reviews", "missing.jsonl", "--out", "x"],
     ["reputation"]],
)
def test_usage_errors_exit_2(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 2


def test_bad_config_exit_2(tmp_path, corpus):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("arch = cnn\n")
    assert main(["train", "--config", str(cfg), "--reviews", str(corpus), "--out", str(tmp_path / "o")]) == 2


def test_argparse_rejects_unknown_command():
    with pytest.raises(SystemExit) as err:
        main(["nonsense"])
    assert err.value.code == 2


def test_balanced_test_set_sizes():
    pool = [PaddedSample(None, 0, f"p{i}") for i in range(50)] + [PaddedSample(None, 1, f"n{i}") for i in range(3)]
    out = balanced_test_set(pool, 10, seed=0)
    assert [s.label for s in out].count(0) == 10 and [s.label for s in out].count(1) == 10
    assert len({s.source_id for s in out if s.label == 0}) == 10
    assert {s.source_id for s in out if s.label == 1} == {"n0", "n1", "n2"}
    assert [s.source_id for s in balanced_test_set(pool, 10, seed=0)] == [s.source_id for s in out]
