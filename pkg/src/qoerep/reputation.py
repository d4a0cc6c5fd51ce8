"""Net Brand Reputation from classified reviews.

    NBR = 100 * (positive - negative) / (positive + negative)

The score is computed exactly from the integer counts (one correctly rounded
division).  The two-decimal *reported* score truncates toward zero, so
2039/112 reports 89.58 and 2031/104 reports 90.25.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from fractions import Fraction
from typing import Sequence

from .ingest import POSITIVE, ReviewRecord, filter_invalid
from .metrics import ConfusionMatrix
from .model import ModelParams, predict
from .pipeline import TextPipeline

LOGGER = logging.getLogger(__name__)

COMMUNITY = "community"


def _check_counts(positive_count: int, negative_count: int) -> None:
    if positive_count < 0 or negative_count < 0:
        raise ValueError("review counts must be non-negative")
    if positive_count + negative_count == 0:
        raise ValueError("NBR is undefined with no classified reviews")


def nbr_exact(positive_count: int, negative_count: int) -> float:
    _check_counts(positive_count, negative_count)
    # int / int is correctly rounded in Python, so this is exact up to one rounding
    return 100 * (positive_count - negative_count) / (positive_count + negative_count)


def nbr(positive_count: int, negative_count: int) -> float:
    """NBR reported to two decimals (truncated toward zero)."""
    _check_counts(positive_count, negative_count)
    q = Fraction(100 * (positive_count - negative_count), positive_count + negative_count)
    d = Decimal(q.numerator) / Decimal(q.denominator)
    return float(d.quantize(Decimal("0.01"), rounding=ROUND_DOWN))


def format_nbr(value: float) -> str:
    return f"{value:.2f}"


def nbr_from_confusion(cm: ConfusionMatrix) -> float:
    """Evaluation-mode NBR: correctly classified positives (TP) vs negatives (TN)."""
    return nbr(cm.tp, cm.tn)


@dataclass(frozen=True)
class ReputationReport:
    provider: str
    positive_count: int
    negative_count: int

    @property
    def nbr(self) -> float:
        return nbr(self.positive_count, self.negative_count)

    @property
    def nbr_exact(self) -> float:
        return nbr_exact(self.positive_count, self.negative_count)

    def to_json(self) -> dict:
        return {
            "provider": self.provider,
            "positive": self.positive_count,
            "negative": self.negative_count,
            "nbr": self.nbr,
        }


def reports_from_labels(providers: Sequence[str], labels: Sequence[int]) -> list[ReputationReport]:
    """One report per provider (sorted by name) plus the community aggregate."""
    counts: dict[str, list[int]] = {}
    for prov, lab in zip(providers, labels):
        c = counts.setdefault(prov, [0, 0])
        c[0 if lab == POSITIVE else 1] += 1
    reports = [ReputationReport(p, c[0], c[1]) for p, c in sorted(counts.items())]
    if reports:
        reports.append(
            ReputationReport(
                COMMUNITY,
                sum(r.positive_count for r in reports),
                sum(r.negative_count for r in reports),
            )
        )
    return reports


def score_providers(reviews: Sequence[ReviewRecord], params: ModelParams, pipeline: TextPipeline):
    """Classify reviews and score each provider from the *predicted* labels.

    Returns ``(reports, warnings)``.  Providers whose reviews were all
    rejected as invalid are left out of ``reports`` and named in ``warnings``.
    """
    if not reviews:
        raise ValueError("no reviews to score")
    valid, _ = filter_invalid(reviews)
    warnings = []
    kept = {r.provider for r in valid}
    for prov in sorted({r.provider for r in reviews} - kept):
        msg = f"provider {prov!r} has no classifiable reviews; omitted"
        LOGGER.warning(msg)
        warnings.append(msg)
    if not valid:
        return [], warnings
    samples = pipeline.encode_all(valid)
    labels = [lab for lab, _ in predict(samples, params)]
    return reports_from_labels([r.provider for r in valid], labels), warnings


def reports_json(reports: Sequence[ReputationReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)


def render_reputation(reports: Sequence[ReputationReport]) -> str:
    width = max([len("provider")] + [len(r.provider) for r in reports])
    lines = [f"{'provider':<{width}}  {'positive':>9}  {'negative':>9}  {'nbr':>8}\n"]
    for r in reports:
        lines.append(f"{r.provider:<{width}}  {r.positive_count:>9}  {r.negative_count:>9}  {format_nbr(r.nbr):>8}\n")
    return "".join(lines)
