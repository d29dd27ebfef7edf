"""Source sampling, adaptation generation, and expected-direction evaluation."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Protocol, Sequence

from .corpus import CommunityId, Corpus, Document
from .errors import ConfigMismatchError, MalformedInputError, UnknownCommunityError
from .metrics.specificity import NpmiTable, specificity
from .stats import BaselinePair, MetricRecord
from .textprep import prepare

# Version-stamped so prompt changes never silently mix across result files.
ADAPT_PROMPT_VERSION = "adapt-prompt-v1"
ADAPT_PROMPT_TEMPLATE = (
    "You are an experienced interdisciplinary researcher. Below is the "
    "introduction of a research paper written for the {source} community. "
    "Rewrite it as an introduction suited to the norms and expectations of "
    "the {target} community. Output only the rewritten introduction.\n---\n{text}"
)


class GenerationPort(Protocol):
    def generate(self, prompt: str, model: str, temperature: float, top_p: float,
                 max_tokens: int) -> tuple[str, bool]: ...


@dataclass(frozen=True)
class SamplingSpec:
    method: str  # "random" | "specific"
    count: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("random", "specific"):
            raise MalformedInputError(f"unknown sampling method {self.method!r}")
        if self.count < 1:
            raise MalformedInputError("sampling count must be >= 1")


@dataclass(frozen=True)
class GenerationSpec:
    model: str
    temperature: float = 0.7
    top_p: float = 1.0
    max_tokens: int = 4096
    samples_per_prompt: int = 5

    def __post_init__(self):
        if self.samples_per_prompt < 1:
            raise MalformedInputError("samples_per_prompt must be >= 1")


@dataclass(frozen=True)
class SampleResult:
    documents: tuple[Document, ...]
    # communities smaller than the requested count (returned whole, flagged)
    truncated_communities: tuple[CommunityId, ...]


@dataclass(frozen=True)
class Adaptation:
    doc_id: str
    source: CommunityId
    target: CommunityId
    method: str
    model: str
    sample_index: int
    text: str
    prompt_hash: str
    prompt_version: str = ADAPT_PROMPT_VERSION
    truncated: bool = False


@dataclass(frozen=True)
class AdaptationResult:
    adaptation: Adaptation
    before: MetricRecord
    after: MetricRecord
    config_hash: str
    # cosine similarity to the target community's mean value vector; framing
    # is pairwise, so it cannot live on the per-document records
    framing_before: float | None = None
    framing_after: float | None = None
    deltas: dict[str, float] = field(init=False)

    def __post_init__(self):
        deltas = {}
        from .stats import SCALAR_METRICS

        for metric in SCALAR_METRICS:
            b = self.before.metric_value(metric)
            a = self.after.metric_value(metric)
            if b is not None and a is not None:
                deltas[metric] = a - b
        if self.framing_before is not None and self.framing_after is not None:
            deltas["framing_sim"] = self.framing_after - self.framing_before
        object.__setattr__(self, "deltas", deltas)


@dataclass(frozen=True)
class DeltaCell:
    target: CommunityId
    model: str
    method: str
    metric: str
    mean_delta: float
    direction: str | None
    verdict: str  # "match" | "mismatch" | "no-change" | "undefined"
    n: int


def sample_sources(
    corpus: Corpus,
    target: CommunityId,
    spec: SamplingSpec,
    table: NpmiTable | None = None,
) -> SampleResult:
    """Pick adaptation sources from every non-target community.

    random: seeded uniform sample per source community.
    specific: per source community, the top-count documents by specificity to
    the target, ties broken by document id.
    """
    if target not in corpus.communities:
        raise UnknownCommunityError(f"community {target!r} not in corpus")
    if spec.method == "specific" and table is None:
        raise MalformedInputError("specific sampling requires a built NPMI table")
    chosen: list[Document] = []
    truncated: list[CommunityId] = []
    for community, docs in corpus.by_community().items():
        if community == target:
            continue
        docs = sorted(docs, key=lambda d: d.id)
        if len(docs) <= spec.count:
            take = docs
            truncated.append(community)
        elif spec.method == "random":
            rng = random.Random(f"{spec.seed}|{community}|{target}")
            take = rng.sample(docs, spec.count)
            take.sort(key=lambda d: d.id)
        else:
            scored = [
                (-specificity(prepare(d.intro_text), target, table).value, d.id, d)
                for d in docs
            ]
            scored.sort(key=lambda t: (t[0], t[1]))
            take = [d for _, _, d in scored[: spec.count]]
        chosen.extend(take)
    return SampleResult(documents=tuple(chosen), truncated_communities=tuple(truncated))


def adapt_text(
    doc: Document,
    target: CommunityId,
    gen: GenerationSpec,
    client: GenerationPort,
    method: str = "random",
) -> list[Adaptation]:
    """Generate ``samples_per_prompt`` adaptations of one document."""
    prompt = ADAPT_PROMPT_TEMPLATE.format(
        source=doc.community, target=target, text=doc.intro_text
    )
    prompt_hash = hashlib.sha256(prompt.encode()).hexdigest()[:16]
    out = []
    for i in range(gen.samples_per_prompt):
        text, truncated = client.generate(
            prompt, gen.model, gen.temperature, gen.top_p, gen.max_tokens
        )
        out.append(
            Adaptation(
                doc_id=doc.id,
                source=doc.community,
                target=target,
                method=method,
                model=gen.model,
                sample_index=i,
                text=text,
                prompt_hash=prompt_hash,
                truncated=truncated,
            )
        )
    return out


def trend_match(delta: float, direction: str | None) -> str:
    """Table-coloring rule: does the mean delta move in the expected direction?"""
    if direction is None:
        return "undefined"
    if delta == 0:
        return "no-change"
    if (delta > 0) == (direction == "up"):
        return "match"
    return "mismatch"


def evaluate_adaptations(
    results: Sequence[AdaptationResult],
    baselines: Sequence[BaselinePair],
) -> list[DeltaCell]:
    """Mean delta and trend verdict per (target, model, method, metric)."""
    if not results:
        return []
    hashes = {r.config_hash for r in results}
    if len(hashes) > 1:
        raise ConfigMismatchError(
            f"before/after metrics computed under different configurations: {sorted(hashes)}"
        )
    directions = {(b.target, b.metric): b.direction for b in baselines}
    # adaptation should always move framing closer to the target community
    for r in results:
        directions.setdefault((r.adaptation.target, "framing_sim"), "up")
    groups: dict[tuple, list[AdaptationResult]] = {}
    for r in results:
        key = (r.adaptation.target, r.adaptation.model, r.adaptation.method)
        groups.setdefault(key, []).append(r)
    cells: list[DeltaCell] = []
    for (target, model, method), rows in sorted(groups.items()):
        metrics = sorted({m for r in rows for m in r.deltas})
        for metric in metrics:
            deltas = [r.deltas[metric] for r in rows if metric in r.deltas]
            mean_delta = sum(deltas) / len(deltas)
            direction = directions.get((target, metric))
            cells.append(
                DeltaCell(
                    target=target,
                    model=model,
                    method=method,
                    metric=metric,
                    mean_delta=mean_delta,
                    direction=direction,
                    verdict=trend_match(mean_delta, direction),
                    n=len(deltas),
                )
            )
    return cells
