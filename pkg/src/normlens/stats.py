"""Per-community aggregation, bootstrap CIs, norm strength, and baselines."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .corpus import CommunityId
from .errors import InsufficientDataError, UnknownCommunityError
from .metrics.framing import ValueVector

# Scalar metrics handled by aggregation, in report column order. Binary flags
# aggregate as fractions; skews are expanded per narrative category.
SCALAR_METRICS = (
    "word_count",
    "sentence_count",
    "pct_table",
    "pct_figure",
    "specificity",
    "readability",
    "formality",
    "quant_evidence",
    "skew_background",
    "skew_objective",
    "skew_method",
    "skew_result",
)


@dataclass(frozen=True)
class MetricRecord:
    """All per-document metric values; port-dependent metrics may be absent."""

    doc_id: str
    community: CommunityId
    word_count: int
    sentence_count: int
    has_table: bool
    has_figure: bool
    specificity: float
    readability: float
    value_vector: ValueVector
    formality: float | None = None
    quant_evidence: float | None = None
    skews: dict[str, float] | None = None

    def metric_value(self, metric: str) -> float | None:
        if metric == "pct_table":
            return float(self.has_table)
        if metric == "pct_figure":
            return float(self.has_figure)
        if metric.startswith("skew_"):
            if self.skews is None:
                return None
            return self.skews.get(metric.removeprefix("skew_"))
        return getattr(self, metric)

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "community": self.community,
            "word_count": self.word_count,
            "sentence_count": self.sentence_count,
            "has_table": self.has_table,
            "has_figure": self.has_figure,
            "specificity": self.specificity,
            "readability": self.readability,
            "value_vector": list(self.value_vector.components),
            "formality": self.formality,
            "quant_evidence": self.quant_evidence,
            "skews": self.skews,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricRecord":
        return cls(
            doc_id=d["doc_id"],
            community=d["community"],
            word_count=d["word_count"],
            sentence_count=d["sentence_count"],
            has_table=d["has_table"],
            has_figure=d["has_figure"],
            specificity=d["specificity"],
            readability=d["readability"],
            value_vector=ValueVector(tuple(d["value_vector"])),
            formality=d.get("formality"),
            quant_evidence=d.get("quant_evidence"),
            skews=d.get("skews"),
        )


@dataclass(frozen=True)
class CommunitySummary:
    community: CommunityId
    metric: str
    mean: float
    std: float
    ci_low: float
    ci_high: float
    n: int


@dataclass(frozen=True)
class BaselinePair:
    metric: str
    target: CommunityId
    in_value: float
    others_value: float
    direction: str | None = field(init=False)  # "up" | "down" | None when tied

    def __post_init__(self):
        if self.in_value > self.others_value:
            d = "up"
        elif self.in_value < self.others_value:
            d = "down"
        else:
            d = None
        object.__setattr__(self, "direction", d)


def bootstrap_ci(
    values: Sequence[float],
    resamples: int = 1000,
    level: float = 0.95,
    seed: int = 0,
) -> tuple[float, float]:
    """Seeded percentile bootstrap interval for the mean."""
    data = np.asarray(values, dtype=float)
    n = data.size
    if n < 2:
        raise InsufficientDataError(f"bootstrap needs at least 2 values, got {n}")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, n, size=(resamples, n))
    means = data[idx].mean(axis=1)
    alpha = (1.0 - level) / 2.0
    low, high = np.quantile(means, [alpha, 1.0 - alpha])
    return float(low), float(high)


def _cell_seed(metric: str, community: CommunityId, seed: int) -> int:
    h = hashlib.sha256(f"{metric}|{community}|{seed}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def sample_std(values: Sequence[float]) -> float:
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return 0.0
    return math.sqrt(sum((v - mean) ** 2 for v in values) / (n - 1))


def summarize(
    records: Sequence[MetricRecord],
    metrics: Sequence[str] = SCALAR_METRICS,
    resamples: int = 1000,
    level: float = 0.95,
    seed: int = 0,
) -> list[CommunitySummary]:
    """Per-community mean, sample std-dev, and bootstrap CI for each metric.

    Metrics absent from every record of a community are skipped (never
    zero-filled). Output order is (community, metric), both sorted by the
    given metric order, so it is permutation-invariant in record order.
    """
    if not records:
        raise InsufficientDataError("no records to summarize")
    communities = sorted({r.community for r in records})
    out: list[CommunitySummary] = []
    for community in communities:
        rows = sorted(
            (r for r in records if r.community == community), key=lambda r: r.doc_id
        )
        for metric in metrics:
            values = [v for r in rows if (v := r.metric_value(metric)) is not None]
            if not values:
                continue
            mean = sum(values) / len(values)
            if len(values) >= 2:
                low, high = bootstrap_ci(
                    values, resamples=resamples, level=level,
                    seed=_cell_seed(metric, community, seed),
                )
            else:
                low = high = mean
            out.append(
                CommunitySummary(
                    community=community,
                    metric=metric,
                    mean=mean,
                    std=sample_std(values),
                    ci_low=low,
                    ci_high=high,
                    n=len(values),
                )
            )
    return out


def norm_strength(
    records: Sequence[MetricRecord], metric: str
) -> list[tuple[CommunityId, float]]:
    """Communities ranked by std-dev of a metric, ascending (small = strong norm)."""
    by_community: dict[CommunityId, list[float]] = {}
    for r in records:
        v = r.metric_value(metric)
        if v is not None:
            by_community.setdefault(r.community, []).append(v)
    ranked = [
        (c, sample_std(vals)) for c, vals in by_community.items() if len(vals) >= 2
    ]
    ranked.sort(key=lambda cv: (cv[1], cv[0]))
    return ranked


def baseline_pair(
    summaries: Sequence[CommunitySummary], metric: str, target: CommunityId
) -> BaselinePair:
    """Target-community mean vs the count-weighted mean of all other communities."""
    rows = [s for s in summaries if s.metric == metric]
    communities = {s.community for s in rows}
    if target not in communities:
        raise UnknownCommunityError(f"no summary for community {target!r} and metric {metric!r}")
    if len(communities) < 2:
        raise InsufficientDataError("need summaries for at least 2 communities")
    in_value = next(s.mean for s in rows if s.community == target)
    others = [s for s in rows if s.community != target]
    total_n = sum(s.n for s in others)
    others_value = sum(s.mean * s.n for s in others) / total_n
    return BaselinePair(metric=metric, target=target, in_value=in_value, others_value=others_value)
