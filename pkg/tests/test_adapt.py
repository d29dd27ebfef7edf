import pytest

from normlens.adapt import (
    ADAPT_PROMPT_TEMPLATE,
    Adaptation,
    AdaptationResult,
    GenerationSpec,
    SamplingSpec,
    adapt_text,
    evaluate_adaptations,
    sample_sources,
    trend_match,
)
from normlens.errors import ConfigMismatchError, MalformedInputError, UnknownCommunityError
from normlens.metrics.specificity import build_npmi_table
from normlens.ports import EchoGenerator
from normlens.stats import BaselinePair
from tests.conftest import make_corpus
from tests.test_stats import rec


def test_sampling_spec_validation():
    with pytest.raises(MalformedInputError):
        SamplingSpec(method="weird")
    with pytest.raises(MalformedInputError):
        SamplingSpec(method="random", count=0)


def test_generation_spec_defaults():
    g = GenerationSpec(model="m")
    assert (g.temperature, g.top_p, g.max_tokens, g.samples_per_prompt) == (0.7, 1.0, 4096, 5)


CORPUS = make_corpus({
    "ml": [f"the regret bound number {i} holds here. regret regret." for i in range(6)],
    "nlp": [f"the parser output number {i} is shown. parser parser." for i in range(6)],
    "cv": [f"the voxel grid number {i} is dense. voxel voxel." for i in range(6)],
})


def test_random_sampling_deterministic_and_excludes_target():
    spec = SamplingSpec(method="random", count=3, seed=9)
    a = sample_sources(CORPUS, "ml", spec)
    b = sample_sources(CORPUS, "ml", spec)
    assert [d.id for d in a.documents] == [d.id for d in b.documents]
    assert all(d.community != "ml" for d in a.documents)
    assert len(a.documents) == 6  # 3 per source community
    c = sample_sources(CORPUS, "ml", SamplingSpec(method="random", count=3, seed=10))
    assert [d.id for d in a.documents] != [d.id for d in c.documents]


def test_small_communities_flagged_not_failed():
    res = sample_sources(CORPUS, "ml", SamplingSpec(method="random", count=100))
    assert sorted(res.truncated_communities) == ["cv", "nlp"]
    assert len(res.documents) == 12


def test_specific_sampling_picks_most_target_like():
    corpus = make_corpus({
        "ml": ["regret regret regret bound. the the."] * 2,
        "nlp": [
            "regret regret regret appears here too. the the.",  # ml-flavored
            "parser parser parser output. the the.",
            "parser parser parser trees. the the.",
        ],
    })
    table = build_npmi_table(corpus)
    res = sample_sources(corpus, "ml", SamplingSpec(method="specific", count=1), table)
    assert [d.id for d in res.documents] == ["nlp-0"]


def test_specific_sampling_requires_table():
    with pytest.raises(MalformedInputError):
        sample_sources(CORPUS, "ml", SamplingSpec(method="specific", count=2))
    with pytest.raises(UnknownCommunityError):
        sample_sources(CORPUS, "zz", SamplingSpec(method="random"))


def test_adapt_text_echo_roundtrip():
    doc = CORPUS.documents[0]
    out = adapt_text(doc, "nlp", GenerationSpec(model="echo", samples_per_prompt=3),
                     EchoGenerator())
    assert len(out) == 3
    assert [a.sample_index for a in out] == [0, 1, 2]
    assert all(a.text == doc.intro_text for a in out)
    assert all(a.source == "ml" and a.target == "nlp" for a in out)
    assert len({a.prompt_hash for a in out}) == 1


def test_prompt_template_mentions_both_communities():
    p = ADAPT_PROMPT_TEMPLATE.format(source="ml", target="nlp", text="X")
    assert "ml" in p and "nlp" in p and p.endswith("\n---\nX")


@pytest.mark.parametrize("delta,direction,verdict", [
    (1.0, "up", "match"),
    (-1.0, "up", "mismatch"),
    (-1.0, "down", "match"),
    (1.0, "down", "mismatch"),
    (0.0, "up", "no-change"),
    (0.0, "down", "no-change"),
    (1.0, None, "undefined"),
])
def test_trend_match(delta, direction, verdict):
    assert trend_match(delta, direction) == verdict


def _result(doc_id, wc_before, wc_after, config_hash="h", model="m", method="random"):
    a = Adaptation(doc_id=doc_id, source="nlp", target="ml", method=method, model=model,
                   sample_index=0, text="t", prompt_hash="p")
    return AdaptationResult(
        adaptation=a,
        before=rec(doc_id, "ml", word_count=wc_before),
        after=rec(doc_id, "ml", word_count=wc_after),
        config_hash=config_hash,
        framing_before=0.5,
        framing_after=0.8,
    )


def test_deltas_computed_on_shared_metrics():
    r = _result("d", 100, 140)
    assert r.deltas["word_count"] == 40
    assert r.deltas["framing_sim"] == pytest.approx(0.3)
    assert "formality" not in r.deltas  # absent on both sides


def test_evaluate_groups_and_verdicts():
    baselines = [BaselinePair(metric="word_count", target="ml", in_value=10.0, others_value=5.0)]
    results = [_result("a", 100, 90), _result("b", 100, 80)]
    cells = {c.metric: c for c in evaluate_adaptations(results, baselines)}
    wc = cells["word_count"]
    assert wc.mean_delta == -15.0
    assert wc.direction == "up" and wc.verdict == "mismatch"
    assert wc.n == 2
    # framing similarity defaults to an expected increase
    assert cells["framing_sim"].verdict == "match"
    # metrics with no baseline direction stay undefined
    assert cells["readability"].verdict == "undefined"


def test_evaluate_rejects_mixed_configs():
    with pytest.raises(ConfigMismatchError):
        evaluate_adaptations([_result("a", 1, 2, "h1"), _result("b", 1, 2, "h2")], [])
    assert evaluate_adaptations([], []) == []
