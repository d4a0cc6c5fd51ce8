"""Command-line entry point.

Exit codes: 0 success, 1 gradient check failed, 2 usage/config/data error,
3 numerical or runtime failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .checkpoint import load_checkpoint, save_checkpoint
from .config import RunConfig, load_config
from .embedding import Vocabulary, build_embedding_matrix, build_vocabulary, load_glove
from .errors import ContractError, NumericalError, ParseError, ValidationError
from .ingest import (
    LABELS,
    CorpusSpec,
    dedup_exact,
    filter_invalid,
    generate_synthetic_corpus,
    load_reviews,
    rng_for,
    split_dataset,
    write_reviews,
)
from .metrics import ConfusionMatrix, per_class_report, render_report
from .model import ARCHS, gradient_check, small_problem
from .pipeline import TextPipeline
from .preprocess import PreprocessConfig, load_pos_lexicon, load_stopwords, preprocess_pipeline
from .reputation import format_nbr, nbr, nbr_from_confusion, render_reputation, reports_json, score_providers
from .train import evaluate, predicted_labels, train

LOGGER = logging.getLogger("qoerep")

GRADCHECK_TOLERANCE = 1e-4
RUN_CONFIG_NAME = "run.cfg"
VOCAB_NAME = "vocab.tsv"


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# helpers
# --------------------------------------------------------------------------


def _preprocess_config(cfg: RunConfig) -> PreprocessConfig:
    return PreprocessConfig(
        stopword_list=load_stopwords(cfg.stopwords or None),
        pos_filter_enabled=cfg.pos_filter,
        stemming_enabled=cfg.stemming,
        pos_lexicon=load_pos_lexicon(cfg.pos_lexicon or None),
    )


def _read_reviews(path: str, fmt: str = "") -> list:
    if not path:
        raise UsageError("no review file given (--reviews or 'reviews' in the config)")
    return load_reviews(path, fmt or None)


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _label_counts(samples) -> dict[str, int]:
    counts = {name: 0 for name in LABELS}
    for s in samples:
        counts[LABELS[int(s.label)]] += 1
    return counts


def _table_row(arch: str, report) -> dict:
    return {
        "model": arch.upper(),
        "accuracy": report.accuracy,
        "precision": report.weighted["precision"],
        "recall": report.weighted["recall"],
        "f1": report.weighted["f1"],
    }


def _sibling(checkpoint: str, name: str) -> Path:
    return Path(checkpoint).resolve().parent / name


def _config_for_checkpoint(args) -> RunConfig:
    path = args.config
    if path is None:
        candidate = _sibling(args.checkpoint, RUN_CONFIG_NAME)
        path = str(candidate) if candidate.exists() else None
    return load_config(path)


def _load_model(args):
    vocab_path = args.vocab or _sibling(args.checkpoint, VOCAB_NAME)
    vocab = Vocabulary.load(vocab_path)
    params, header = load_checkpoint(args.checkpoint, vocab)
    cfg = _config_for_checkpoint(args)
    pipeline = TextPipeline(_preprocess_config(cfg), vocab, header["max_len"])
    return params, pipeline, cfg


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_synth(args) -> int:
    spec = CorpusSpec(
        n_reviews=args.n,
        positive_ratio=args.pos_ratio,
        seed=args.seed if args.seed is not None else 1,
        min_tokens=args.min_tokens,
        max_tokens=args.max_tokens,
    )
    records = generate_synthetic_corpus(spec)
    write_reviews(records, args.out, args.format)
    pos = sum(r.label == "positive" for r in records)
    print(f"wrote {len(records)} reviews ({pos} positive, {len(records) - pos} negative) to {args.out}")
    return 0


def cmd_preprocess(args) -> int:
    cfg = load_config(args.config, reviews=args.reviews)
    records = _read_reviews(cfg.reviews, cfg.format)
    valid, rejected = filter_invalid(records)
    pcfg = _preprocess_config(cfg)
    with open(args.out, "w", encoding="utf-8") as handle:
        for rec in valid:
            seq = preprocess_pipeline(rec, pcfg)
            handle.write(json.dumps({"id": rec.id, "label": rec.label, "tokens": list(seq.tokens)}) + "\n")
    for rec, reason in rejected:
        LOGGER.info("rejected %s: %s", rec.id, reason)
    print(f"{len(valid)} reviews preprocessed, {len(rejected)} rejected -> {args.out}")
    return 0


def cmd_train(args) -> int:
    cfg = load_config(
        args.config,
        reviews=args.reviews,
        seed=args.seed,
        arch=args.arch,
        resampling=args.resampling,
        epochs=args.epochs,
        glove=args.glove,
        hidden_size=args.hidden_size,
        batch_size=args.batch_size,
        lr=args.lr,
        max_len=args.max_len,
        mask_stop=args.mask_stop,
        fine_tune_embeddings=args.fine_tune,
        record_timing=args.record_timing,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    records = _read_reviews(cfg.reviews, cfg.format)
    valid, rejected = filter_invalid(records)
    if cfg.dedup:
        valid = dedup_exact(valid)
    LOGGER.info("%d reviews loaded, %d rejected as invalid", len(records), len(rejected))
    split = split_dataset(valid, cfg.train_ratio, cfg.val_ratio, cfg.seed)
    for name, part in (("train", split.train), ("validation", split.validation), ("test", split.test)):
        write_reviews(part, out / f"{name}.jsonl")

    pcfg = _preprocess_config(cfg)
    train_tokens = [preprocess_pipeline(r, pcfg) for r in split.train]
    vocab = build_vocabulary(train_tokens, cfg.min_freq)
    vocab.save(out / VOCAB_NAME)
    glove = {}
    if cfg.glove:
        glove = load_glove(cfg.glove, cfg.embedding_dim)
    else:
        LOGGER.warning("no GloVe file configured; every embedding row is seeded noise")
    embedding = build_embedding_matrix(vocab, glove, cfg.embedding_dim, cfg.seed)
    pipeline = TextPipeline(pcfg, vocab, cfg.max_len)
    train_s, val_s, test_s = (pipeline.encode_all(p) for p in (split.train, split.validation, split.test))
    (out / RUN_CONFIG_NAME).write_text(cfg.dumps(), encoding="utf-8")

    runs, comparison = [], []
    for arch in cfg.archs:
        tcfg = cfg.train_config(arch)
        result = train(train_s, val_s, tcfg, embedding)
        counts = {LABELS[k]: v for k, v in sorted(result.train_counts.items())}
        print(f"[{arch}] training set after {tcfg.resampling} resampling: "
              f"positive={counts.get('positive', 0)} negative={counts.get('negative', 0)}")
        save_checkpoint(result.params, out / f"model-{arch}.ckpt", cfg.max_len, vocab)
        result.curve.write_csv(out / f"curve-{arch}.csv", include_timing=cfg.record_timing)
        run = {"arch": arch, "resampling": tcfg.resampling, "train_counts": counts}
        for name, samples in (("validation", val_s), ("test", test_s)):
            if not samples:
                continue
            preds = predicted_labels(result.params, samples)
            golds = [int(s.label) for s in samples]
            report = per_class_report(preds, golds)
            cm = ConfusionMatrix.from_pairs(preds, golds)
            run[name] = {"report": report.to_json(), "confusion": cm.to_json(),
                         "nbr_tp_tn": nbr_from_confusion(cm) if cm.tp + cm.tn else None}
            if name == "test":
                comparison.append(_table_row(arch, report))
                print(f"\n[{arch}] test-set classification report ({len(samples)} reviews)\n")
                print(render_report(report, percent=args.percent))
        runs.append(run)
    _write_json(out / "metrics.json", {"protocol": "raw-test", "runs": runs, "comparison": comparison})
    return 0


def balanced_test_set(samples, n_per_class: int, seed: int) -> list:
    """Exactly ``n_per_class`` samples per class.

    A class with at least ``n_per_class`` samples is subsampled without
    replacement; a smaller class keeps all its samples and is topped up by
    drawing with replacement.
    """
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    out = []
    for cls in range(len(LABELS)):
        pool = [s for s in samples if int(s.label) == cls]
        if not pool:
            raise ValidationError(f"test set has no {LABELS[cls]} samples")
        rng = rng_for(seed, cls)
        if len(pool) >= n_per_class:
            picks = rng.permutation(len(pool))[:n_per_class]
            out += [pool[i] for i in sorted(picks)]
        else:
            out += pool + [pool[i] for i in rng.integers(0, len(pool), n_per_class - len(pool))]
    return out


def cmd_eval_balanced(args) -> int:
    params, pipeline, cfg = _load_model(args)
    test_path = args.test or str(_sibling(args.checkpoint, "test.jsonl"))
    records, _ = filter_invalid(load_reviews(test_path))
    if any(r.label is None for r in records):
        raise ValidationError("the test set must be labeled")
    raw = pipeline.encode_all(records)
    seed = args.seed if args.seed is not None else cfg.seed
    balanced = balanced_test_set(raw, args.n_per_class, seed)
    result = {"protocol": "balanced-test protocol", "n_per_class": args.n_per_class, "seed": seed}
    for name, samples in (("raw_test", raw), ("balanced_test", balanced)):
        preds = predicted_labels(params, samples)
        golds = [int(s.label) for s in samples]
        report = per_class_report(preds, golds)
        cm = ConfusionMatrix.from_pairs(preds, golds)
        result[name] = {"size": len(samples), "report": report.to_json(), "confusion": cm.to_json(),
                        "nbr_tp_tn": nbr_from_confusion(cm) if cm.tp + cm.tn else None}
        title = "raw test set" if name == "raw_test" else "balanced-test protocol (test set oversampled)"
        print(f"\n{title}: {len(samples)} reviews\n")
        print(render_report(report, percent=args.percent))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(out / "balanced_report.json", result)
    return 0


def cmd_gradcheck(args) -> int:
    seed = args.seed if args.seed is not None else 0
    archs = ARCHS if args.arch == "all" else [args.arch]
    worst = 0.0
    for arch in archs:
        params, samples, labels = small_problem(arch, seed, mask_stop=args.mask_stop)
        corrupt = ("U" if arch == "rnn" else f"U_{'f' if arch == 'lstm' else 'z'}") if args.corrupt else None
        err = gradient_check(params, samples, labels, eps=args.eps, corrupt=corrupt)
        status = "ok" if err < GRADCHECK_TOLERANCE else "FAIL"
        print(f"{arch}: max relative error {err:.3e} ({status}, tolerance {GRADCHECK_TOLERANCE:g})")
        worst = max(worst, err)
    return 0 if worst < GRADCHECK_TOLERANCE else 1


def cmd_reputation(args) -> int:
    if args.from_confusion is not None:
        tp, tn = args.from_confusion
        print(format_nbr(nbr(tp, tn)))
        return 0
    if not args.checkpoint:
        raise UsageError("reputation needs --checkpoint (or --from-confusion TP TN)")
    params, pipeline, cfg = _load_model(args)
    records = _read_reviews(args.reviews or cfg.reviews, cfg.format)
    reports, warnings = score_providers(records, params, pipeline)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(render_reputation(reports), end="")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "reputation.json").write_text(reports_json(reports) + "\n", encoding="utf-8")
        (out / "reputation.txt").write_text(render_reputation(reports), encoding="utf-8")
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--seed", type=int, help="master seed")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="qoerep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[common], help="write a seeded synthetic review corpus")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--pos-ratio", type=float, default=0.95)
    p.add_argument("--min-tokens", type=int, default=CorpusSpec.min_tokens)
    p.add_argument("--max-tokens", type=int, default=CorpusSpec.max_tokens)
    p.add_argument("--format", choices=["jsonl", "csv"])
    p.add_argument("--out", required=True, help="output review file")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("preprocess", parents=[common], help="filter and tokenize reviews")
    p.add_argument("--reviews")
    p.add_argument("--out", required=True, help="output JSONL of token lists")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("train", parents=[common], help="train, evaluate on the test split, write artifacts")
    p.add_argument("--reviews")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--arch", help=f"one of {', '.join(ARCHS)} or a comma-separated list")
    p.add_argument("--resampling", choices=["none", "oversample", "undersample", "smote", "adasyn"])
    p.add_argument("--epochs", type=int)
    p.add_argument("--glove")
    p.add_argument("--hidden-size", type=int)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--max-len", type=int)
    p.add_argument("--mask-stop", action="store_true", default=None)
    p.add_argument("--fine-tune", action="store_true", default=None, help="fine-tune embeddings")
    p.add_argument("--record-timing", action="store_true", default=None,
                   help="write wall-clock epoch_ms into the curve CSV (breaks byte-reproducibility)")
    p.add_argument("--percent", action="store_true", help="print whole percents")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval-balanced", parents=[common], help="balanced-test protocol evaluation")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--vocab")
    p.add_argument("--test", help="labeled review file (default: test.jsonl next to the checkpoint)")
    p.add_argument("--n-per-class", type=int, default=1000)
    p.add_argument("--out", help="output directory for balanced_report.json")
    p.add_argument("--percent", action="store_true")
    p.set_defaults(func=cmd_eval_balanced)

    p = sub.add_parser("gradcheck", parents=[common], help="finite-difference gradient check")
    p.add_argument("--arch", default="lstm", choices=[*ARCHS, "all"])
    p.add_argument("--eps", type=float, default=1e-5)
    p.add_argument("--mask-stop", action="store_true")
    p.add_argument("--corrupt", action="store_true", help="debug: zero one recurrent gradient")
    p.set_defaults(func=cmd_gradcheck)

    p = sub.add_parser("reputation", parents=[common], help="NBR per provider")
    p.add_argument("--checkpoint")
    p.add_argument("--vocab")
    p.add_argument("--reviews")
    p.add_argument("--out", help="output directory for reputation.json/.txt")
    p.add_argument("--from-confusion", nargs=2, type=int, metavar=("TP", "TN"),
                   help="score directly from correctly classified positive/negative counts")
    p.set_defaults(func=cmd_reputation)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ParseError, ValidationError, ValueError, FileNotFoundError) as exc:
        print(f"qoerep {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, ContractError, FloatingPointError, RuntimeError) as exc:
        print(f"qoerep {args.command}: runtime failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
