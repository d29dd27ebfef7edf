import random

import numpy as np
import pytest

from normlens.errors import InsufficientDataError, UnknownCommunityError
from normlens.metrics.framing import VALUE_ORDER, ValueVector
from normlens.stats import (
    SCALAR_METRICS,
    BaselinePair,
    CommunitySummary,
    MetricRecord,
    baseline_pair,
    bootstrap_ci,
    norm_strength,
    sample_std,
    summarize,
)

ZERO_VEC = ValueVector((0.0,) * len(VALUE_ORDER))


def rec(doc_id="d", community="ml", **kw):
    base = dict(
        doc_id=doc_id, community=community, word_count=100, sentence_count=5,
        has_table=False, has_figure=True, specificity=0.1, readability=50.0,
        value_vector=ZERO_VEC,
    )
    base.update(kw)
    return MetricRecord(**base)


def test_metric_value_mapping():
    r = rec(has_table=True, formality=0.7, skews={"background": 0.3})
    assert r.metric_value("pct_table") == 1.0
    assert r.metric_value("pct_figure") == 1.0
    assert r.metric_value("word_count") == 100
    assert r.metric_value("formality") == 0.7
    assert r.metric_value("skew_background") == 0.3
    assert r.metric_value("skew_result") is None
    assert rec().metric_value("formality") is None
    assert rec().metric_value("skew_method") is None


def test_record_dict_roundtrip():
    r = rec(formality=0.5, quant_evidence=0.2, skews={"method": -0.1})
    assert MetricRecord.from_dict(r.to_dict()) == r


def test_bootstrap_degenerate_zero_width():
    low, high = bootstrap_ci([3.0] * 25)
    assert low == high == 3.0


def test_bootstrap_seeded_determinism():
    r = random.Random(3)
    vals = [r.gauss(0, 1) for _ in range(20)]
    a = bootstrap_ci(vals, seed=42)
    b = bootstrap_ci(vals, seed=42)
    c = bootstrap_ci(vals, seed=43)
    assert a == b
    assert a != c


def test_bootstrap_contains_plausible_mean():
    vals = list(np.random.default_rng(1).normal(10.0, 1.0, size=50))
    low, high = bootstrap_ci(vals)
    assert low < 10.0 < high
    assert low < float(np.mean(vals)) < high


def test_bootstrap_needs_two_values():
    with pytest.raises(InsufficientDataError):
        bootstrap_ci([1.0])


def test_sample_std():
    assert sample_std([2.0, 4.0]) == pytest.approx(np.std([2.0, 4.0], ddof=1))
    assert sample_std([5.0]) == 0.0


def test_summarize_basic():
    records = [rec(f"a{i}", "ml", word_count=100 + i) for i in range(5)]
    records += [rec(f"b{i}", "nlp", word_count=50) for i in range(4)]
    out = summarize(records, resamples=100)
    by = {(s.community, s.metric): s for s in out}
    assert by[("ml", "word_count")].mean == pytest.approx(102.0)
    assert by[("nlp", "word_count")].std == 0.0
    assert by[("nlp", "word_count")].ci_low == by[("nlp", "word_count")].ci_high == 50.0
    # formality absent from all records: skipped, not zero-filled
    assert ("ml", "formality") not in by
    assert all(s.n in (4, 5) for s in out)


def test_summarize_order_insensitive_to_input_order():
    records = [rec(f"a{i}", "ml", word_count=i * 10) for i in range(6)]
    a = summarize(records, resamples=50)
    b = summarize(list(reversed(records)), resamples=50)
    assert a == b


def test_summarize_empty():
    with pytest.raises(InsufficientDataError):
        summarize([])


def test_norm_strength_ascending():
    records = [rec(f"a{i}", "tight", readability=50.0 + 0.1 * i) for i in range(4)]
    records += [rec(f"b{i}", "loose", readability=50.0 + 10.0 * i) for i in range(4)]
    ranked = norm_strength(records, "readability")
    assert [c for c, _ in ranked] == ["tight", "loose"]
    assert ranked[0][1] < ranked[1][1]


def test_baseline_pair_weighted_and_direction():
    summaries = [
        CommunitySummary("ml", "word_count", 100.0, 1.0, 99.0, 101.0, 10),
        CommunitySummary("nlp", "word_count", 80.0, 1.0, 79.0, 81.0, 30),
        CommunitySummary("cv", "word_count", 40.0, 1.0, 39.0, 41.0, 10),
    ]
    pair = baseline_pair(summaries, "word_count", "ml")
    assert pair.others_value == pytest.approx((80.0 * 30 + 40.0 * 10) / 40)
    assert pair.direction == "up"
    pair = baseline_pair(summaries, "word_count", "cv")
    assert pair.direction == "down"


def test_baseline_pair_tie_has_no_direction():
    p = BaselinePair(metric="m", target="ml", in_value=1.0, others_value=1.0)
    assert p.direction is None


def test_baseline_pair_errors():
    summaries = [CommunitySummary("ml", "word_count", 1.0, 0.0, 1.0, 1.0, 2)]
    with pytest.raises(UnknownCommunityError):
        baseline_pair(summaries, "word_count", "xx")
    with pytest.raises(InsufficientDataError):
        baseline_pair(summaries, "word_count", "ml")


def test_scalar_metric_listing():
    assert len(SCALAR_METRICS) == 12
    assert SCALAR_METRICS[0] == "word_count"
