"""Wiring: one place that turns documents into MetricRecords.

Port-backed metrics (formality, quantitative evidence, narrative skew) are
computed only when their port is configured; otherwise the record carries
None for them and the run still succeeds.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import __version__
from .corpus import CommunityId, Document
from .errors import InsufficientDataError, ZeroVarianceError
from .metrics.framing import ValueLexicon, value_vector
from .metrics.rhetoric import classify_narrative, narrative_positions, quant_evidence_rate, skew
from .metrics.specificity import NpmiTable, specificity
from .metrics.structural import ArtifactLexicon, structural_metrics
from .metrics.style import SentenceScorerPort, formality, readability
from .stats import MetricRecord
from .textprep import prepare


@dataclass
class MetricConfig:
    artifact_lexicon: ArtifactLexicon = field(default_factory=ArtifactLexicon.default)
    value_lexicon: ValueLexicon = field(default_factory=ValueLexicon.default)
    formality_scorer: SentenceScorerPort | None = None
    judge: object | None = None
    narrative_classifier: object | None = None
    bins: int = 20

    def config_hash(self) -> str:
        """Stable digest of everything that affects metric values."""
        desc = {
            "version": __version__,
            "table_terms": sorted(self.artifact_lexicon.table_terms),
            "figure_terms": sorted(self.artifact_lexicon.figure_terms),
            "value_phrases": {v: sorted(p) for v, p in sorted(self.value_lexicon.phrases.items())},
            "formality": type(self.formality_scorer).__name__ if self.formality_scorer else None,
            "judge": type(self.judge).__name__ if self.judge else None,
            "narrative": type(self.narrative_classifier).__name__ if self.narrative_classifier else None,
            "bins": self.bins,
        }
        return hashlib.sha256(json.dumps(desc, sort_keys=True).encode()).hexdigest()[:16]


def compute_record(
    doc_id: str,
    community: CommunityId,
    text: str,
    table: NpmiTable,
    config: MetricConfig,
) -> MetricRecord:
    """All per-document metrics, with specificity taken to ``community``."""
    prepared = prepare(text)
    struct = structural_metrics(prepared, config.artifact_lexicon)
    spec_score = specificity(prepared, community, table)
    read = readability(prepared) if prepared.sentence_count else 0.0
    vec = value_vector(prepared, config.value_lexicon) if prepared.sentence_count else None
    if vec is None:
        from .metrics.framing import VALUE_ORDER, ValueVector

        vec = ValueVector((0.0,) * len(VALUE_ORDER))

    form = None
    if config.formality_scorer is not None and prepared.sentence_count:
        form = formality(prepared, config.formality_scorer)

    quant = None
    if config.judge is not None and prepared.sentence_count:
        quant = quant_evidence_rate(prepared, config.judge).rate

    skews = None
    if config.narrative_classifier is not None and prepared.sentence_count:
        labels = classify_narrative(prepared, config.narrative_classifier)
        positions = narrative_positions(labels)
        skews = {}
        for category, vals in positions.items():
            if len(vals) < 3:
                continue  # skew defined only for categories with >= 3 occurrences
            try:
                skews[category] = skew(vals)
            except (InsufficientDataError, ZeroVarianceError):
                pass

    return MetricRecord(
        doc_id=doc_id,
        community=community,
        word_count=struct.word_count,
        sentence_count=struct.sentence_count,
        has_table=struct.has_table,
        has_figure=struct.has_figure,
        specificity=spec_score.value,
        readability=read,
        value_vector=vec,
        formality=form,
        quant_evidence=quant,
        skews=skews,
    )


def compute_records(
    documents: list[Document], table: NpmiTable, config: MetricConfig
) -> list[MetricRecord]:
    return [
        compute_record(d.id, d.community, d.intro_text, table, config) for d in documents
    ]
