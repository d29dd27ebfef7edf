import random

import pytest

from normlens.corpus import Corpus, Document

FIXTURES = __file__.rsplit("/", 1)[0] + "/fixtures"


def make_doc(doc_id="d1", community="ml", text="We propose a method. It works well.",
             venue="ICML"):
    return Document(id=doc_id, venue=venue, community=community, intro_text=text)


def make_corpus(spec: dict[str, list[str]]) -> Corpus:
    """spec: community -> list of intro texts."""
    docs = []
    for community, texts in spec.items():
        for i, text in enumerate(texts):
            docs.append(make_doc(f"{community}-{i}", community, text))
    return Corpus(documents=tuple(docs))


@pytest.fixture
def rng():
    return random.Random(20240817)
