"""Lexicon-based research-value detection and framing vectors."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import EmptyDocumentError, MalformedInputError
from ..textprep import PreparedText

VALUE_ORDER = (
    "performance",
    "novelty",
    "efficiency",
    "generalizability",
    "understanding",
    "simplicity",
    "fairness",
    "society",
    "openness",
    "usability",
)


@dataclass(frozen=True)
class ValueVector:
    """Fraction of sentences encoding each of the 10 values, in canonical order."""

    components: tuple[float, ...]

    def __post_init__(self):
        if len(self.components) != len(VALUE_ORDER):
            raise MalformedInputError(f"expected {len(VALUE_ORDER)} components")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(VALUE_ORDER, self.components))

    def __getitem__(self, value: str) -> float:
        return self.components[VALUE_ORDER.index(value)]


@dataclass(frozen=True)
class ValueLexicon:
    phrases: dict[str, frozenset[str]]
    _patterns: dict[str, re.Pattern] = field(init=False, repr=False)

    def __post_init__(self):
        unknown = set(self.phrases) - set(VALUE_ORDER)
        if unknown:
            raise MalformedInputError(f"unknown values in lexicon: {sorted(unknown)}")
        patterns = {}
        for value, terms in self.phrases.items():
            if terms:
                alts = sorted((re.escape(t.lower()) for t in terms), key=len, reverse=True)
                patterns[value] = re.compile(r"(?<![a-z0-9])(?:" + "|".join(alts) + r")(?![a-z0-9])")
        object.__setattr__(self, "_patterns", patterns)

    @classmethod
    def default(cls) -> "ValueLexicon":
        text = resources.files("normlens.data").joinpath("value_lexicon.tsv").read_text("utf-8")
        return cls._parse(text)

    @classmethod
    def from_file(cls, path: str | Path) -> "ValueLexicon":
        return cls._parse(Path(path).read_text("utf-8"))

    @classmethod
    def _parse(cls, text: str) -> "ValueLexicon":
        phrases: dict[str, set[str]] = {v: set() for v in VALUE_ORDER}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            value, phrase = line.split("\t", 1)
            value = value.strip()
            if value not in phrases:
                raise MalformedInputError(f"unknown value tag {value!r}")
            phrases[value].add(phrase.strip().lower())
        return cls(phrases={v: frozenset(p) for v, p in phrases.items()})


def detect_values(sentence: str, lexicon: ValueLexicon) -> set[str]:
    """Values whose lexicon phrases match the sentence (multi-label)."""
    text = sentence.lower()
    return {v for v, pat in lexicon._patterns.items() if pat.search(text)}


def value_vector(doc: PreparedText, lexicon: ValueLexicon) -> ValueVector:
    """Per-value fraction of sentences encoding that value."""
    if doc.sentence_count == 0:
        raise EmptyDocumentError("document has no sentences")
    counts = {v: 0 for v in VALUE_ORDER}
    for sentence in doc.sentences:
        for v in detect_values(sentence, lexicon):
            counts[v] += 1
    return ValueVector(tuple(counts[v] / doc.sentence_count for v in VALUE_ORDER))


def framing_similarity(a: ValueVector, b: ValueVector) -> float:
    """Cosine similarity; 0 if either vector is all-zero."""
    dot = sum(x * y for x, y in zip(a.components, b.components))
    na = math.sqrt(sum(x * x for x in a.components))
    nb = math.sqrt(sum(y * y for y in b.components))
    if na == 0 or nb == 0:
        return 0.0
    return dot / (na * nb)


def mean_vector(vectors: Sequence[ValueVector]) -> ValueVector:
    if not vectors:
        raise EmptyDocumentError("no vectors to average")
    n = len(vectors)
    return ValueVector(
        tuple(sum(v.components[i] for v in vectors) / n for i in range(len(VALUE_ORDER)))
    )


def lexicon_precision(
    lexicon: ValueLexicon, labeled: Iterable[tuple[str, set[str]]]
) -> dict[str, float | None]:
    """Per-value precision against gold label sets.

    Values the lexicon never predicts have undefined precision (None).
    """
    tp = {v: 0 for v in VALUE_ORDER}
    predicted = {v: 0 for v in VALUE_ORDER}
    empty = True
    for sentence, gold in labeled:
        empty = False
        for v in detect_values(sentence, lexicon):
            predicted[v] += 1
            if v in gold:
                tp[v] += 1
    if empty:
        raise EmptyDocumentError("labeled set is empty")
    return {v: (tp[v] / predicted[v] if predicted[v] else None) for v in VALUE_ORDER}
