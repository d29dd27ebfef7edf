from .structural import ArtifactLexicon, StructuralMetrics, structural_metrics
from .specificity import NpmiTable, SpecificityScore, build_npmi_table, specificity
from .style import flesch_reading_ease, readability, formality, count_syllables
from .rhetoric import (
    NARRATIVE_CATEGORIES,
    build_judge_payload,
    classify_narrative,
    narrative_positions,
    positional_density,
    quant_evidence_rate,
    skew,
)
from .framing import (
    VALUE_ORDER,
    ValueLexicon,
    ValueVector,
    detect_values,
    framing_similarity,
    lexicon_precision,
    value_vector,
)

__all__ = [
    "ArtifactLexicon",
    "StructuralMetrics",
    "structural_metrics",
    "NpmiTable",
    "SpecificityScore",
    "build_npmi_table",
    "specificity",
    "flesch_reading_ease",
    "readability",
    "formality",
    "count_syllables",
    "NARRATIVE_CATEGORIES",
    "build_judge_payload",
    "classify_narrative",
    "narrative_positions",
    "positional_density",
    "quant_evidence_rate",
    "skew",
    "VALUE_ORDER",
    "ValueLexicon",
    "ValueVector",
    "detect_values",
    "framing_similarity",
    "lexicon_precision",
    "value_vector",
]
