"""normlens: computable writing-norm metrics for research communities."""

__version__ = "0.1.0"

from .corpus import (
    Corpus,
    Document,
    VenueMap,
    corpus_stats,
    extract_introduction,
    load_corpus,
)
from .textprep import PreparedText, prepare

__all__ = [
    "__version__",
    "Corpus",
    "Document",
    "VenueMap",
    "corpus_stats",
    "extract_introduction",
    "load_corpus",
    "PreparedText",
    "prepare",
]
