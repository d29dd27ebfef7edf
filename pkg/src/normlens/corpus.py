"""Corpus data model, introduction extraction, and venue normalization."""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    DuplicateIdError,
    EmptyCorpusError,
    IntroductionNotFoundError,
    MalformedInputError,
    UnknownVenueError,
)

CommunityId = str

# A heading line is short; running prose (once whitespace-normalized into a
# single long line) must never look like one.
_MAX_HEADING_LEN = 120

_INTRO_HEADING_RE = re.compile(
    r"^\s*(?:(?:\d+(?:\.\d+)*\.?|[ivxlcdm]+[.)])\s+)?[^a-z0-9]*.{0,80}\bintroduction\b",
    re.IGNORECASE,
)
_NUMBERED_HEADING_RE = re.compile(r"^\s*(?:\d+(?:\.\d+)*[.)]?|[IVXLCDM]+[.)])\s+[A-Z]")

_SECTION_KEYWORDS = frozenset(
    {
        "abstract", "background", "related", "method", "methods", "methodology",
        "approach", "model", "models", "preliminaries", "experiments",
        "experimental", "evaluation", "results", "discussion", "conclusion",
        "conclusions", "references", "acknowledgments", "acknowledgements",
        "appendix", "appendices", "limitations", "data", "dataset",
    }
)


@dataclass(frozen=True)
class Document:
    id: str
    venue: str
    community: CommunityId
    intro_text: str
    title: str = ""
    raw_text: str | None = None

    def __post_init__(self):
        if not self.id:
            raise MalformedInputError("document id must be non-empty")
        if not self.intro_text:
            raise MalformedInputError(f"document {self.id!r} has empty intro_text")


@dataclass(frozen=True)
class VenueMap:
    """Case-insensitive venue name -> community tag mapping."""

    entries: dict[str, CommunityId]

    @classmethod
    def from_file(cls, path: str | Path) -> "VenueMap":
        return cls._parse(Path(path).read_text("utf-8"), str(path))

    @classmethod
    def default(cls) -> "VenueMap":
        text = resources.files("normlens.data").joinpath("venue_map.tsv").read_text("utf-8")
        return cls._parse(text, "<bundled venue_map.tsv>")

    @classmethod
    def _parse(cls, text: str, source: str) -> "VenueMap":
        entries: dict[str, CommunityId] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = re.split(r"[\t=]", line, maxsplit=1)
            if len(parts) != 2:
                raise MalformedInputError(f"{source}:{lineno}: expected 'venue<TAB>community'")
            venue, community = parts[0].strip().lower(), parts[1].strip()
            if venue in entries and entries[venue] != community:
                raise MalformedInputError(f"{source}:{lineno}: venue {venue!r} maps to two communities")
            entries[venue] = community
        return cls(entries=entries)

    def resolve(self, venue: str) -> CommunityId:
        try:
            return self.entries[venue.strip().lower()]
        except KeyError:
            raise UnknownVenueError(f"venue {venue!r} not in venue map") from None

    @property
    def communities(self) -> set[CommunityId]:
        return set(self.entries.values())


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    communities: frozenset[CommunityId] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.communities is None:
            object.__setattr__(self, "communities", frozenset(d.community for d in self.documents))
        missing = {d.community for d in self.documents} - set(self.communities)
        if missing:
            raise MalformedInputError(f"documents reference undeclared communities: {sorted(missing)}")

    def __len__(self) -> int:
        return len(self.documents)

    def by_community(self) -> dict[CommunityId, list[Document]]:
        out: dict[CommunityId, list[Document]] = {c: [] for c in sorted(self.communities)}
        for d in self.documents:
            out[d.community].append(d)
        return out


def _is_heading(line: str) -> bool:
    line = line.strip()
    if not line or len(line) > _MAX_HEADING_LEN or line.endswith("."):
        return False
    if _NUMBERED_HEADING_RE.match(line):
        return True
    words = line.split()
    if len(words) <= 8 and words[0][0].isupper():
        first = re.sub(r"[^a-z]", "", words[0].lower())
        return first in _SECTION_KEYWORDS
    return False


def _is_intro_heading(line: str) -> bool:
    line = line.strip()
    if not line or len(line) > _MAX_HEADING_LEN:
        return False
    if len(line.split()) > 8:
        return False
    return bool(_INTRO_HEADING_RE.match(line))


def extract_introduction(raw_text: str) -> str:
    """Return the introduction span of a plain-text paper, whitespace-normalized.

    The span starts after the first heading line containing the word
    "introduction" (optionally numbered: "1", "1.", "I.", "I)") and ends at
    the next top-level heading, or at end of document if none follows.
    """
    if not raw_text or not raw_text.strip():
        raise MalformedInputError("raw_text is empty")
    lines = raw_text.splitlines()
    start = None
    for i, line in enumerate(lines):
        if _is_intro_heading(line):
            start = i + 1
            break
    if start is None:
        raise IntroductionNotFoundError("no introduction heading found")
    body: list[str] = []
    for line in lines[start:]:
        if _is_heading(line) and not _is_intro_heading(line):
            break
        body.append(line)
    intro = " ".join(" ".join(body).split())
    if not intro:
        raise IntroductionNotFoundError("introduction heading found but section is empty")
    return intro


def load_corpus(path: str | Path, venue_map: VenueMap) -> Corpus:
    """Load a UTF-8 line-delimited corpus file (one JSON record per line).

    Records need ``id``, ``venue``, and either ``intro_text`` or ``raw_text``;
    raw text goes through :func:`extract_introduction`.
    """
    docs: list[Document] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise MalformedInputError(f"{path}:{lineno}: invalid JSON: {e}") from None
            doc_id = str(rec.get("id", "")).strip()
            if not doc_id:
                raise MalformedInputError(f"{path}:{lineno}: record has no id")
            if doc_id in seen:
                raise DuplicateIdError(f"duplicate document id {doc_id!r}")
            seen.add(doc_id)
            venue = rec.get("venue", "")
            try:
                community = venue_map.resolve(venue)
            except UnknownVenueError:
                raise UnknownVenueError(f"record {doc_id!r}: venue {venue!r} not in venue map") from None
            intro = rec.get("intro_text")
            raw = rec.get("raw_text")
            if not intro:
                if not raw:
                    raise MalformedInputError(f"record {doc_id!r}: needs intro_text or raw_text")
                intro = extract_introduction(raw)
            docs.append(
                Document(
                    id=doc_id,
                    venue=venue,
                    community=community,
                    intro_text=intro,
                    title=rec.get("title", "") or "",
                    raw_text=raw,
                )
            )
    if not docs:
        raise EmptyCorpusError(f"no documents in {path}")
    return Corpus(documents=tuple(docs))


def corpus_stats(corpus: Corpus) -> dict[CommunityId, int]:
    """Per-community document counts."""
    if not corpus.documents:
        raise EmptyCorpusError("corpus is empty")
    return dict(sorted(Counter(d.community for d in corpus.documents).items()))
