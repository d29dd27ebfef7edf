import pytest

from normlens.metrics.specificity import build_npmi_table
from normlens.pipeline import MetricConfig, compute_record, compute_records
from normlens.ports import ConstantScorer, PositionalNarrativeStub, RuleBasedJudgeStub
from tests.conftest import make_corpus

CORPUS = make_corpus({
    "ml": ["the regret bound holds. table 1 lists results. we prove the regret claim. "
           "we test on 50 runs. the gain is 12%."] * 3,
    "nlp": ["the parser output is shown. we see the regret term. figure 2 shows trees. "
            "we parse 10 corpora. the gain is small."] * 3,
})
TABLE = build_npmi_table(CORPUS)


def test_bare_config_omits_port_metrics():
    config = MetricConfig()
    record = compute_record("d", "ml", CORPUS.documents[0].intro_text, TABLE, config)
    assert record.formality is None
    assert record.quant_evidence is None
    assert record.skews is None
    assert record.word_count > 0 and record.sentence_count == 5
    assert record.has_table and not record.has_figure


def test_full_config_fills_everything():
    config = MetricConfig(
        formality_scorer=ConstantScorer(0.5),
        judge=RuleBasedJudgeStub(),
        narrative_classifier=PositionalNarrativeStub(),
    )
    record = compute_record("d", "ml", CORPUS.documents[0].intro_text, TABLE, config)
    assert record.formality == 0.5
    assert record.quant_evidence is not None and record.quant_evidence > 0
    assert record.skews is not None


def test_specificity_targets_given_community():
    config = MetricConfig()
    text = CORPUS.documents[0].intro_text  # an ml document
    as_ml = compute_record("d", "ml", text, TABLE, config)
    as_nlp = compute_record("d", "nlp", text, TABLE, config)
    assert as_ml.specificity > as_nlp.specificity


def test_config_hash_tracks_ports():
    base = MetricConfig().config_hash()
    with_port = MetricConfig(formality_scorer=ConstantScorer()).config_hash()
    assert base != with_port
    assert MetricConfig().config_hash() == base  # stable


def test_compute_records_bulk():
    records = compute_records(list(CORPUS.documents), TABLE, MetricConfig())
    assert len(records) == 6
    assert {r.community for r in records} == {"ml", "nlp"}


def test_empty_text_yields_zero_record():
    record = compute_record("d", "ml", "", TABLE, MetricConfig(
        formality_scorer=ConstantScorer(), judge=RuleBasedJudgeStub(),
        narrative_classifier=PositionalNarrativeStub(),
    ))
    assert record.word_count == 0 and record.sentence_count == 0
    assert record.specificity == 0.0 and record.readability == 0.0
    assert record.formality is None and record.quant_evidence is None
