"""Readability (Flesch reading ease) and formality via a sentence-scoring port."""

from __future__ import annotations

import re
from typing import Protocol, Sequence

from ..errors import EmptyDocumentError, EmptySentenceError, ScorerUnavailableError
from ..textprep import PreparedText

_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


class SentenceScorerPort(Protocol):
    """Scores sentences in [0, 1]; batch output preserves input order."""

    def score_sentences(self, sentences: Sequence[str]) -> list[float]: ...


def count_syllables(word: str) -> int:
    """Vowel-group heuristic: one syllable per [aeiouy]+ run, minus a terminal
    silent "e" (unless the word ends in "le"), floored at 1."""
    w = re.sub(r"[^a-z]", "", word.lower())
    if not w:
        return 1
    count = len(_VOWEL_GROUP_RE.findall(w))
    if w.endswith("e") and not w.endswith("le") and count > 1:
        count -= 1
    return max(count, 1)


def flesch_reading_ease(words: Sequence[str]) -> float:
    """Flesch reading ease of a single sentence (sentences term fixed at 1)."""
    if not words:
        raise EmptySentenceError("sentence has no words")
    syllables = sum(count_syllables(w) for w in words)
    return 206.835 - 1.015 * len(words) - 84.6 * (syllables / len(words))


def readability(doc: PreparedText) -> float:
    """Mean per-sentence Flesch reading ease. Higher = easier to read."""
    if doc.sentence_count == 0:
        raise EmptyDocumentError("document has no sentences")
    scores = [flesch_reading_ease(ws) for ws in doc.words_per_sentence]
    return sum(scores) / len(scores)


def formality(doc: PreparedText, scorer: SentenceScorerPort | None) -> float:
    """Mean sentence formality in [0, 1] from the configured scorer port."""
    if scorer is None:
        raise ScorerUnavailableError("no formality scorer configured")
    if doc.sentence_count == 0:
        raise EmptyDocumentError("document has no sentences")
    scores = scorer.score_sentences(list(doc.sentences))
    if len(scores) != doc.sentence_count:
        raise ScorerUnavailableError(
            f"scorer returned {len(scores)} scores for {doc.sentence_count} sentences"
        )
    for s in scores:
        if not 0.0 <= s <= 1.0:
            raise ScorerUnavailableError(f"formality score {s} outside [0, 1]")
    return sum(scores) / len(scores)
