"""Length metrics and lexicon-based table/figure presence flags."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..textprep import PreparedText


@dataclass(frozen=True)
class StructuralMetrics:
    word_count: int
    sentence_count: int
    has_table: bool
    has_figure: bool


@dataclass(frozen=True)
class ArtifactLexicon:
    table_terms: frozenset[str]
    figure_terms: frozenset[str]

    @classmethod
    def default(cls) -> "ArtifactLexicon":
        text = resources.files("normlens.data").joinpath("artifact_lexicon.tsv").read_text("utf-8")
        return cls._parse(text)

    @classmethod
    def from_file(cls, path: str | Path) -> "ArtifactLexicon":
        return cls._parse(Path(path).read_text("utf-8"))

    @classmethod
    def _parse(cls, text: str) -> "ArtifactLexicon":
        table: set[str] = set()
        figure: set[str] = set()
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            category, term = line.split("\t", 1)
            (table if category.strip() == "table" else figure).add(term.strip().lower())
        return cls(table_terms=frozenset(table), figure_terms=frozenset(figure))


@lru_cache(maxsize=32)
def _term_pattern(terms: frozenset[str]) -> re.Pattern:
    # Boundary-safe: "tab" must not fire inside "stable" or "tabulate".
    # Matching runs on lightly-normalized text (lower-cased, punctuation kept)
    # because several lexicon terms carry a trailing period.
    alts = sorted((re.escape(t) for t in terms), key=len, reverse=True)
    return re.compile(r"(?<![a-z0-9])(?:" + "|".join(alts) + r")(?![a-z0-9])")


def _matches(text: str, terms: frozenset[str]) -> bool:
    return bool(terms) and bool(_term_pattern(terms).search(text))


def structural_metrics(doc: PreparedText, lexicon: ArtifactLexicon | None = None) -> StructuralMetrics:
    """Word/sentence counts plus binary table/figure mentions."""
    lexicon = lexicon or ArtifactLexicon.default()
    text = " ".join(doc.sentences).lower()
    return StructuralMetrics(
        word_count=doc.word_count,
        sentence_count=doc.sentence_count,
        has_table=_matches(text, lexicon.table_terms),
        has_figure=_matches(text, lexicon.figure_terms),
    )
