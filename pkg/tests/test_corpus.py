import json

import pytest

from normlens.corpus import (
    Corpus,
    Document,
    VenueMap,
    corpus_stats,
    extract_introduction,
    load_corpus,
)
from normlens.errors import (
    DuplicateIdError,
    EmptyCorpusError,
    IntroductionNotFoundError,
    MalformedInputError,
    UnknownVenueError,
)


def test_venue_map_case_insensitive():
    vmap = VenueMap.default()
    assert vmap.resolve("ICML") == vmap.resolve("icml") == "ml"
    assert vmap.resolve(" acl ") == "nlp"
    assert vmap.resolve("CVPR") == "cv"


def test_venue_map_equals_separator(tmp_path):
    p = tmp_path / "map.txt"
    p.write_text("MyVenue=custom\nOther\tml\n")
    vmap = VenueMap.from_file(p)
    assert vmap.resolve("myvenue") == "custom"
    assert vmap.resolve("other") == "ml"


def test_venue_map_conflict_rejected(tmp_path):
    p = tmp_path / "map.txt"
    p.write_text("V\ta\nv\tb\n")
    with pytest.raises(MalformedInputError):
        VenueMap.from_file(p)


def test_unknown_venue():
    with pytest.raises(UnknownVenueError):
        VenueMap.default().resolve("made-up-venue")


def test_document_validation():
    with pytest.raises(MalformedInputError):
        Document(id="", venue="ICML", community="ml", intro_text="x")
    with pytest.raises(MalformedInputError):
        Document(id="a", venue="ICML", community="ml", intro_text="")


def _write_jsonl(path, records):
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n")


def test_load_corpus_roundtrip(tmp_path):
    p = tmp_path / "c.jsonl"
    _write_jsonl(p, [
        {"id": "a", "venue": "ACL", "intro_text": "Text one."},
        {"id": "b", "venue": "ICML", "intro_text": "Text two."},
    ])
    corpus = load_corpus(p, VenueMap.default())
    assert len(corpus) == 2
    assert corpus.communities == {"nlp", "ml"}
    assert corpus_stats(corpus) == {"ml": 1, "nlp": 1}


def test_load_corpus_duplicate_id(tmp_path):
    p = tmp_path / "c.jsonl"
    _write_jsonl(p, [
        {"id": "a", "venue": "ACL", "intro_text": "One."},
        {"id": "a", "venue": "ICML", "intro_text": "Two."},
    ])
    with pytest.raises(DuplicateIdError):
        load_corpus(p, VenueMap.default())


def test_load_corpus_unknown_venue_names_record(tmp_path):
    p = tmp_path / "c.jsonl"
    _write_jsonl(p, [{"id": "doc-7", "venue": "NOPE", "intro_text": "One."}])
    with pytest.raises(UnknownVenueError, match="doc-7"):
        load_corpus(p, VenueMap.default())


def test_load_corpus_empty_file(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text("\n")
    with pytest.raises(EmptyCorpusError):
        load_corpus(p, VenueMap.default())


def test_load_corpus_bad_json(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text("{not json\n")
    with pytest.raises(MalformedInputError):
        load_corpus(p, VenueMap.default())


def test_load_corpus_extracts_from_raw(tmp_path):
    raw = "Title line\n\n1 Introduction\nThis is the intro body.\nIt has two lines.\n\n2 Methods\nNot this."
    p = tmp_path / "c.jsonl"
    _write_jsonl(p, [{"id": "a", "venue": "ACL", "raw_text": raw}])
    corpus = load_corpus(p, VenueMap.default())
    assert corpus.documents[0].intro_text == "This is the intro body. It has two lines."


@pytest.mark.parametrize("heading", [
    "1 Introduction", "1. Introduction", "I. INTRODUCTION", "Introduction",
    "1 Introduction and Motivation",
])
def test_extract_intro_heading_variants(heading):
    raw = f"{heading}\nBody text here.\n2 Related Work\nOther."
    assert extract_introduction(raw) == "Body text here."


def test_extract_intro_stops_at_keyword_heading():
    raw = "Introduction\nA first line.\nRelated Work\nNope."
    assert extract_introduction(raw) == "A first line."


def test_extract_intro_runs_to_end_without_next_heading():
    raw = "1 Introduction\nOnly the intro.\nStill the intro."
    assert extract_introduction(raw) == "Only the intro. Still the intro."


def test_extract_intro_prose_not_mistaken_for_heading():
    # a sentence mentioning "results" mid-intro is prose, not a section break
    raw = "1 Introduction\nWe present results that are strong.\n2 Background\nNo."
    assert extract_introduction(raw) == "We present results that are strong."


def test_extract_intro_missing():
    with pytest.raises(IntroductionNotFoundError):
        extract_introduction("Abstract\nNo intro section here.")
    with pytest.raises(MalformedInputError):
        extract_introduction("   ")


def test_extract_intro_empty_section():
    with pytest.raises(IntroductionNotFoundError):
        extract_introduction("1 Introduction\n\n2 Methods\nBody.")


def test_corpus_by_community_sorted():
    c = Corpus(documents=(
        Document(id="b", venue="ICML", community="ml", intro_text="x"),
        Document(id="a", venue="ACL", community="nlp", intro_text="y"),
    ))
    assert list(c.by_community()) == ["ml", "nlp"]
