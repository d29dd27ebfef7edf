"""Deterministic text normalization shared by all metrics.

Pipeline order is fixed: strip URLs, segment into sentences, lower-case,
strip special characters, tokenize. Same input always yields the same
output; there is no model or randomness anywhere in here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
TOKEN_RE = re.compile(r"[a-z0-9'-]+")
# sentence boundary candidate: terminal punctuation followed by whitespace or EOL
_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s|$)")
# a lone initial like "J." never ends a sentence
_INITIAL_RE = re.compile(r"(?:^|[\s(])[A-Za-z]\.$")


def load_abbreviations() -> frozenset[str]:
    """Abbreviation guard list bundled with the package, one entry per line."""
    text = resources.files("normlens.data").joinpath("abbreviations.txt").read_text("utf-8")
    return frozenset(line.strip().lower() for line in text.splitlines() if line.strip())


_DEFAULT_ABBREVIATIONS = load_abbreviations()


@dataclass(frozen=True)
class PreparedText:
    """Sentence-segmented, tokenized view of one document.

    ``sentences`` keep their original casing and punctuation (URLs removed,
    whitespace collapsed); ``words_per_sentence`` holds the fully normalized
    tokens used for counting.
    """

    sentences: tuple[str, ...]
    words_per_sentence: tuple[tuple[str, ...], ...]
    word_count: int = field(init=False)
    sentence_count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "word_count", sum(len(w) for w in self.words_per_sentence))
        object.__setattr__(self, "sentence_count", len(self.sentences))

    @property
    def tokens(self) -> list[str]:
        return [t for ws in self.words_per_sentence for t in ws]


def _split_sentences(text: str, abbreviations: frozenset[str]) -> list[str]:
    sentences = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        prefix = text[: m.end()].rstrip()
        guarded = False
        if prefix.endswith("."):
            lowered = prefix.lower()
            if any(lowered.endswith(a) for a in abbreviations) or _INITIAL_RE.search(prefix):
                guarded = True
        if guarded:
            continue
        sentences.append(text[start : m.end()])
        start = m.end()
    tail = text[start:]
    if tail.strip():
        sentences.append(tail)
    return [" ".join(s.split()) for s in sentences if s.strip()]


def tokenize(sentence: str) -> tuple[str, ...]:
    """Lower-case and split on anything outside [a-z0-9'-]."""
    return tuple(t for t in TOKEN_RE.findall(sentence.lower()) if any(c.isalnum() for c in t))


def prepare(text: str, abbreviations: frozenset[str] | None = None) -> PreparedText:
    """Run the full normalization pipeline. Empty text is fine (zero sentences)."""
    abbreviations = abbreviations if abbreviations is not None else _DEFAULT_ABBREVIATIONS
    stripped = URL_RE.sub(" ", text or "")
    raw_sentences = _split_sentences(stripped, abbreviations)
    sentences = []
    words = []
    for s in raw_sentences:
        toks = tokenize(s)
        if toks:
            sentences.append(s)
            words.append(toks)
    return PreparedText(sentences=tuple(sentences), words_per_sentence=tuple(words))
