"""Word-community NPMI table and per-document jargon specificity.

Probabilities are token-level over the pooled corpus:
p(w) = count(w)/N, p(c) = tokens-in-c/N, p(w,c) = count(w in c)/N, and
npmi(w,c) = log(p(w,c) / (p(w) p(c))) / (-log p(w,c)), natural log.
Words with total frequency below ``min_freq`` or appearing in fewer than
``min_communities`` communities are dropped. A vocabulary word never used by
a community scores the floor value -1.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from ..corpus import CommunityId, Corpus
from ..errors import (
    EmptyCorpusError,
    InsufficientCommunitiesError,
    MalformedInputError,
    UnknownCommunityError,
)
from ..textprep import PreparedText, prepare

FLOOR = -1.0


@dataclass(frozen=True)
class SpecificityScore:
    value: float
    covered_tokens: int
    total_tokens: int


@dataclass(frozen=True)
class NpmiTable:
    communities: tuple[CommunityId, ...]
    min_freq: int
    min_communities: int
    corpus_hash: str
    # word -> {community -> npmi}; missing pairs take the floor value
    _scores: dict[str, dict[CommunityId, float]] = field(repr=False)
    _word_freq: dict[str, int] = field(repr=False)
    _presence: dict[str, int] = field(repr=False)

    @property
    def vocabulary(self) -> set[str]:
        return set(self._scores)

    def word_freq(self, word: str) -> int:
        return self._word_freq[word]

    def community_presence(self, word: str) -> int:
        return self._presence[word]

    def __contains__(self, word: str) -> bool:
        return word in self._scores

    def score(self, word: str, community: CommunityId) -> float:
        if community not in self.communities:
            raise UnknownCommunityError(f"community {community!r} not in table")
        per = self._scores[word]
        return per.get(community, FLOOR)

    def to_file(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(
                f"# npmi-table v1\tmin_freq={self.min_freq}\t"
                f"min_communities={self.min_communities}\tfloor={FLOOR}\t"
                f"corpus_hash={self.corpus_hash}\n"
            )
            fh.write("word\tcommunity\tscore\tword_freq\tcommunity_presence\n")
            for word in sorted(self._scores):
                for community in self.communities:
                    if community in self._scores[word]:
                        fh.write(
                            f"{word}\t{community}\t{self._scores[word][community]!r}\t"
                            f"{self._word_freq[word]}\t{self._presence[word]}\n"
                        )

    @classmethod
    def from_file(cls, path: str | Path) -> "NpmiTable":
        lines = Path(path).read_text("utf-8").splitlines()
        if not lines or not lines[0].startswith("# npmi-table"):
            raise MalformedInputError(f"{path}: not an NPMI table file")
        header = dict(p.split("=", 1) for p in lines[0].split("\t")[1:] if "=" in p)
        scores: dict[str, dict[CommunityId, float]] = {}
        freq: dict[str, int] = {}
        presence: dict[str, int] = {}
        communities: set[CommunityId] = set()
        for line in lines[2:]:
            if not line.strip():
                continue
            word, community, score, wf, cp = line.split("\t")
            scores.setdefault(word, {})[community] = float(score)
            freq[word] = int(wf)
            presence[word] = int(cp)
            communities.add(community)
        return cls(
            communities=tuple(sorted(communities)),
            min_freq=int(header.get("min_freq", 3)),
            min_communities=int(header.get("min_communities", 2)),
            corpus_hash=header.get("corpus_hash", ""),
            _scores=scores,
            _word_freq=freq,
            _presence=presence,
        )


def build_npmi_table_from_tokens(
    community_tokens: Iterable[tuple[CommunityId, Iterable[str]]],
    min_freq: int = 3,
    min_communities: int = 2,
) -> NpmiTable:
    """Build the table from already-tokenized (community, tokens) pairs."""
    pair_counts: dict[CommunityId, Counter] = {}
    for community, tokens in community_tokens:
        pair_counts.setdefault(community, Counter()).update(tokens)
    communities = tuple(sorted(pair_counts))
    if len(communities) < 2:
        raise InsufficientCommunitiesError(
            f"need at least 2 communities, got {len(communities)}"
        )
    community_totals = {c: sum(pair_counts[c].values()) for c in communities}
    n = sum(community_totals.values())
    if n == 0:
        raise EmptyCorpusError("corpus contains no tokens")

    word_freq: Counter = Counter()
    presence: Counter = Counter()
    for c in communities:
        for w, k in pair_counts[c].items():
            word_freq[w] += k
            presence[w] += 1

    digest = hashlib.sha256()
    for c in communities:
        digest.update(c.encode())
        for w, k in sorted(pair_counts[c].items()):
            digest.update(f"{w}:{k};".encode())

    scores: dict[str, dict[CommunityId, float]] = {}
    for w, f in word_freq.items():
        if f < min_freq or presence[w] < min_communities:
            continue
        p_w = f / n
        per: dict[CommunityId, float] = {}
        for c in communities:
            k = pair_counts[c].get(w, 0)
            if k == 0:
                continue  # floor -1, stored implicitly
            p_wc = k / n
            p_c = community_totals[c] / n
            # degenerate single-token corpus: -log p(w,c) would be 0
            denom = -math.log(p_wc)
            per[c] = math.log(p_wc / (p_w * p_c)) / denom if denom > 0 else 0.0
        scores[w] = per
    return NpmiTable(
        communities=communities,
        min_freq=min_freq,
        min_communities=min_communities,
        corpus_hash=digest.hexdigest()[:16],
        _scores=scores,
        _word_freq={w: word_freq[w] for w in scores},
        _presence={w: presence[w] for w in scores},
    )


def build_npmi_table(corpus: Corpus, min_freq: int = 3, min_communities: int = 2) -> NpmiTable:
    if len(corpus.communities) < 2:
        raise InsufficientCommunitiesError("corpus has fewer than 2 communities")
    pairs = ((d.community, prepare(d.intro_text).tokens) for d in corpus.documents)
    return build_npmi_table_from_tokens(pairs, min_freq=min_freq, min_communities=min_communities)


def specificity(doc: PreparedText, target: CommunityId, table: NpmiTable) -> SpecificityScore:
    """Mean NPMI of the document's in-vocabulary tokens to the target community.

    Out-of-vocabulary tokens are skipped; a document with no covered tokens
    scores a defined 0.
    """
    if target not in table.communities:
        raise UnknownCommunityError(f"community {target!r} not in table")
    total = 0
    covered = 0
    acc = 0.0
    for token in doc.tokens:
        total += 1
        if token in table:
            covered += 1
            acc += table.score(token, target)
    value = acc / covered if covered else 0.0
    return SpecificityScore(value=value, covered_tokens=covered, total_tokens=total)
