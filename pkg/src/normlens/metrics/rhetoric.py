"""Quantitative-evidence rate (LLM judge) and narrative-organization metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Protocol, Sequence

from ..errors import (
    ClassifierUnavailableError,
    InsufficientDataError,
    JudgeUnavailableError,
    ZeroVarianceError,
)
from ..textprep import PreparedText

NARRATIVE_CATEGORIES = ("background", "objective", "method", "result", "other")

JUDGE_PROMPT = resources.files("normlens.data").joinpath("judge_prompt.txt").read_text("utf-8")


def build_judge_payload(sentence: str) -> str:
    """The exact prompt text sent to the judge for one sentence.

    Byte-stable: any change here invalidates comparability of runs, so the
    format is pinned by a fixture test.
    """
    return f"{JUDGE_PROMPT}\nSentence: {sentence}\nAnswer:"


def parse_judge_answer(answer: str) -> bool:
    """Case-insensitive yes/no prefix; anything else counts as "no"."""
    return answer.strip().lower().startswith("yes")


class JudgePort(Protocol):
    def judge(self, sentence: str) -> bool: ...


class NarrativeClassifierPort(Protocol):
    def classify(self, sentences: Sequence[str]) -> list[str]: ...


@dataclass(frozen=True)
class QuantEvidenceResult:
    rate: float
    judged: int
    unjudged: int


def quant_evidence_rate(doc: PreparedText, judge: JudgePort | None) -> QuantEvidenceResult:
    """Fraction of sentences judged to contain quantitative evidence.

    Sentences are judged in their raw (pre-lower-casing) form, one at a time.
    Per-sentence failures are tolerated and reported via ``unjudged``; the
    rate is computed over judged sentences only.
    """
    if judge is None:
        raise JudgeUnavailableError("no judge configured")
    if doc.sentence_count == 0:
        raise JudgeUnavailableError("document has no sentences to judge")
    yes = judged = unjudged = 0
    for sentence in doc.sentences:
        try:
            if judge.judge(sentence):
                yes += 1
            judged += 1
        except Exception:
            unjudged += 1
    if judged == 0:
        raise JudgeUnavailableError("judge failed on every sentence")
    return QuantEvidenceResult(rate=yes / judged, judged=judged, unjudged=unjudged)


def classify_narrative(doc: PreparedText, clf: NarrativeClassifierPort | None) -> list[str]:
    """One narrative category per sentence, order preserved."""
    if clf is None:
        raise ClassifierUnavailableError("no narrative classifier configured")
    if doc.sentence_count == 0:
        return []
    labels = clf.classify(list(doc.sentences))
    if len(labels) != doc.sentence_count:
        raise ClassifierUnavailableError(
            f"classifier returned {len(labels)} labels for {doc.sentence_count} sentences"
        )
    bad = set(labels) - set(NARRATIVE_CATEGORIES)
    if bad:
        raise ClassifierUnavailableError(f"unknown narrative categories: {sorted(bad)}")
    return list(labels)


def narrative_positions(labels: Sequence[str]) -> dict[str, list[float]]:
    """Length-normalized sentence indices grouped by category.

    Sentence i of n maps to i/(n-1); a single-sentence document maps to 0.5.
    The "other" category is dropped.
    """
    n = len(labels)
    positions: dict[str, list[float]] = {}
    for i, label in enumerate(labels):
        if label == "other":
            continue
        pos = 0.5 if n == 1 else i / (n - 1)
        positions.setdefault(label, []).append(pos)
    return positions


def skew(values: Sequence[float]) -> float:
    """Adjusted Fisher-Pearson sample skewness: g1 * sqrt(n(n-1)) / (n-2)."""
    n = len(values)
    if n < 3:
        raise InsufficientDataError(f"skew needs at least 3 values, got {n}")
    if min(values) == max(values):
        raise ZeroVarianceError("skew undefined for constant values")
    mean = sum(values) / n
    m2 = sum((v - mean) ** 2 for v in values) / n
    if m2 == 0:
        raise ZeroVarianceError("skew undefined for constant values")
    m3 = sum((v - mean) ** 3 for v in values) / n
    g1 = m3 / m2**1.5
    return g1 * math.sqrt(n * (n - 1)) / (n - 2)


def positional_density(
    positions: dict[str, Sequence[float]], bins: int = 20
) -> dict[str, list[float]]:
    """Per-category normalized histogram over [0, 1]; non-empty ones sum to 1."""
    if bins < 2:
        raise InsufficientDataError("need at least 2 bins")
    out: dict[str, list[float]] = {}
    for category, vals in positions.items():
        counts = [0] * bins
        for v in vals:
            idx = min(int(v * bins), bins - 1)
            counts[idx] += 1
        total = sum(counts)
        out[category] = [c / total for c in counts] if total else [0.0] * bins
    return out
