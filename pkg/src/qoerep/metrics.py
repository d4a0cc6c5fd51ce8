"""Confusion matrices, accuracy/precision/recall/F1 and the classification report.

The positive class (index 0) is the reference class for :func:`compute_metrics`.
A metric whose denominator is zero is reported as 0 and flagged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Sequence

from .ingest import LABELS, POSITIVE


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.tn, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    @classmethod
    def from_pairs(cls, preds: Sequence[int], golds: Sequence[int], positive: int = POSITIVE) -> "ConfusionMatrix":
        if len(preds) != len(golds):
            raise ValueError(f"{len(preds)} predictions vs {len(golds)} gold labels")
        tp = tn = fp = fn = 0
        for p, g in zip(preds, golds):
            if p == positive:
                if g == positive:
                    tp += 1
                else:
                    fp += 1
            elif g == positive:
                fn += 1
            else:
                tn += 1
        return cls(tp, tn, fp, fn)

    def swapped(self) -> "ConfusionMatrix":
        """The same tallies with the other class taken as positive."""
        return ConfusionMatrix(tp=self.tn, tn=self.tp, fp=self.fn, fn=self.fp)

    def to_json(self) -> dict:
        return {"tp": self.tp, "tn": self.tn, "fp": self.fp, "fn": self.fn}


def _ratio(num: int, den: int) -> tuple[float, bool]:
    return (num / den, False) if den else (0.0, True)


def _metrics_with_flags(cm: ConfusionMatrix):
    if cm.total == 0:
        raise ValueError("metrics of an empty confusion matrix are undefined")
    accuracy = (cm.tp + cm.tn) / cm.total
    precision, p_flag = _ratio(cm.tp, cm.tp + cm.fp)
    recall, r_flag = _ratio(cm.tp, cm.tp + cm.fn)
    if precision + recall > 0:
        f1, f_flag = 2 * precision * recall / (precision + recall), False
    else:
        f1, f_flag = 0.0, True
    flags = [n for n, bad in (("precision", p_flag), ("recall", r_flag), ("f1", f_flag)) if bad]
    return (accuracy, precision, recall, f1), flags


def undefined_metrics(cm: ConfusionMatrix) -> list[str]:
    """Names of metrics whose denominator is zero for ``cm``."""
    return _metrics_with_flags(cm)[1]


def compute_metrics(cm: ConfusionMatrix) -> tuple[float, float, float, float]:
    """``(accuracy, precision, recall, f1)`` for the positive class."""
    return _metrics_with_flags(cm)[0]


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class MetricsReport:
    per_class: dict[str, ClassMetrics]
    accuracy: float
    macro: dict[str, float]
    weighted: dict[str, float]
    flags: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_class": {
                name: {"precision": c.precision, "recall": c.recall, "f1": c.f1, "support": c.support}
                for name, c in self.per_class.items()
            },
            "weighted": dict(self.weighted),
            "macro": dict(self.macro),
            "flags": list(self.flags),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def per_class_report(preds: Sequence[int], golds: Sequence[int]) -> MetricsReport:
    if len(preds) != len(golds):
        raise ValueError(f"{len(preds)} predictions vs {len(golds)} gold labels")
    if not golds:
        raise ValueError("empty prediction list")
    cm_pos = ConfusionMatrix.from_pairs(preds, golds, POSITIVE)
    per_class = {}
    flags: list[str] = []
    for idx, name in enumerate(LABELS):
        cm = cm_pos if idx == POSITIVE else cm_pos.swapped()
        (accuracy, p, r, f), bad = _metrics_with_flags(cm)
        flags += [f"{name}.{b}" for b in bad]
        per_class[name] = ClassMetrics(p, r, f, cm.tp + cm.fn)
    total = sum(c.support for c in per_class.values())
    keys = ("precision", "recall", "f1")
    macro = {k: sum(getattr(c, k) for c in per_class.values()) / len(per_class) for k in keys}
    weighted = {k: sum(c.support * getattr(c, k) for c in per_class.values()) / total for k in keys}
    return MetricsReport(per_class, (cm_pos.tp + cm_pos.tn) / total, macro, weighted, tuple(flags))


def format_value(x: float, percent: bool = False) -> str:
    """Two decimals (or whole percent), round-half-even on the decimal repr."""
    if percent:
        return str(Decimal(repr(x * 100)).quantize(Decimal("1"), rounding=ROUND_HALF_EVEN))
    return str(Decimal(repr(x)).quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN))


def render_report(report: MetricsReport, percent: bool = False) -> str:
    fmt = lambda x: format_value(x, percent)  # noqa: E731
    head = f"{'':>14}{'precision':>11}{'recall':>11}{'f1-score':>11}{'support':>11}\n\n"
    lines = [head]
    for name, c in report.per_class.items():
        lines.append(f"{name:>14}{fmt(c.precision):>11}{fmt(c.recall):>11}{fmt(c.f1):>11}{c.support:>11}\n")
    total = sum(c.support for c in report.per_class.values())
    lines.append("\n")
    lines.append(f"{'accuracy':>14}{'':>11}{'':>11}{fmt(report.accuracy):>11}{total:>11}\n")
    for label, avg in (("macro avg", report.macro), ("weighted avg", report.weighted)):
        lines.append(
            f"{label:>14}{fmt(avg['precision']):>11}{fmt(avg['recall']):>11}{fmt(avg['f1']):>11}{total:>11}\n"
        )
    if report.flags:
        lines.append(f"\nundefined (0/0, reported as 0): {', '.join(report.flags)}\n")
    return "".join(lines)
