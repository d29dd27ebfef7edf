"""sklearn-compatible front door for the metric suite.

``NormMetricsExtractor`` is a transformer: ``fit`` learns the word-community
NPMI table from a document corpus, ``transform`` maps documents to metric
records. It plays nicely with sklearn pipelines and ``get_params`` /
``set_params`` introspection.
"""

from __future__ import annotations

from typing import Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .corpus import Corpus, Document
from .errors import MalformedInputError
from .pipeline import MetricConfig, compute_record
from .metrics.specificity import build_npmi_table
from .stats import MetricRecord


def check_documents(X) -> list[Document]:
    """Validate transformer input: a Corpus or a sequence of Documents."""
    if isinstance(X, Corpus):
        return list(X.documents)
    docs = list(X)
    if not docs:
        raise MalformedInputError("empty document collection")
    bad = [d for d in docs if not isinstance(d, Document)]
    if bad:
        raise MalformedInputError(f"expected Document instances, got {type(bad[0]).__name__}")
    return docs


class NormMetricsExtractor(BaseEstimator, TransformerMixin):
    """Fit an NPMI table on a corpus, then transform documents to MetricRecords."""

    def __init__(
        self,
        min_freq: int = 3,
        min_communities: int = 2,
        config: MetricConfig | None = None,
    ):
        self.min_freq = min_freq
        self.min_communities = min_communities
        self.config = config

    def fit(self, X, y=None):
        docs = check_documents(X)
        corpus = X if isinstance(X, Corpus) else Corpus(documents=tuple(docs))
        self.table_ = build_npmi_table(
            corpus, min_freq=self.min_freq, min_communities=self.min_communities
        )
        self.config_ = self.config or MetricConfig()
        return self

    def transform(self, X) -> list[MetricRecord]:
        check_is_fitted(self, "table_")
        return [
            compute_record(d.id, d.community, d.intro_text, self.table_, self.config_)
            for d in check_documents(X)
        ]
