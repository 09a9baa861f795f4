"""scikit-learn style wrappers so scoring composes with ``Pipeline``.

``X`` for :class:`IndicatorExtractor` is a sequence of researcher ids; the
corpus is a constructor parameter.  Downstream steps consume the
``(n_researchers, n_kinds)`` indicator matrix.

>>> from sklearn.pipeline import make_pipeline
>>> pipe = make_pipeline(IndicatorExtractor(corpus, scheme="fractional"),
...                      PointScorer("proposed"))              # doctest: +SKIP
>>> points = pipe.fit_transform(researcher_ids)                # doctest: +SKIP
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .crediting import CountingScheme
from .indicators import ANALYSIS_KINDS, IndicatorKind, RuleSet, indicator_value, load_ruleset


def _kinds(kinds):
    return tuple(IndicatorKind.parse(k) for k in kinds)


def _ruleset(ruleset):
    return load_ruleset(ruleset) if isinstance(ruleset, str) else ruleset


class IndicatorExtractor(TransformerMixin, BaseEstimator):
    """Researcher ids -> indicator values under one counting scheme."""

    def __init__(self, corpus=None, scheme="integer", kinds=ANALYSIS_KINDS):
        self.corpus = corpus
        self.scheme = scheme
        self.kinds = kinds

    def _ids(self, X):
        ids = np.asarray(X, dtype=object).ravel()
        for rid in ids:
            self.corpus.researcher(str(rid))
        return ids

    def fit(self, X=None, y=None):
        if self.corpus is None:
            raise ValueError("IndicatorExtractor needs a corpus")
        self.scheme_ = CountingScheme.parse(self.scheme)
        self.kinds_ = _kinds(self.kinds)
        if X is not None:
            self._ids(X)
        self.n_features_out_ = len(self.kinds_)
        return self

    def transform(self, X):
        check_is_fitted(self, "kinds_")
        ids = self._ids(X)
        out = np.empty((len(ids), len(self.kinds_)))
        for i, rid in enumerate(ids):
            for j, k in enumerate(self.kinds_):
                out[i, j] = indicator_value(str(rid), self.corpus, k, self.scheme_)
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "kinds_")
        return np.array([k.value for k in self.kinds_], dtype=object)


class PointScorer(TransformerMixin, BaseEstimator):
    """Indicator values -> points (value / minimum) per column.

    ``score_samples`` gives the cumulative point, the row mean of the points.
    """

    def __init__(self, ruleset="proposed", kinds=ANALYSIS_KINDS):
        self.ruleset = ruleset
        self.kinds = kinds

    def fit(self, X, y=None):
        X = check_array(X)
        rules = _ruleset(self.ruleset)
        kinds = _kinds(self.kinds)
        if X.shape[1] != len(kinds):
            raise ValueError(f"expected {len(kinds)} indicator columns, got {X.shape[1]}")
        self.minima_ = np.array([rules.minimum(k) for k in kinds])
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "minima_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        if (X < 0).any():
            raise ValueError("indicator values must be non-negative")
        return X / self.minima_

    def score_samples(self, X):
        return self.transform(X).mean(axis=1)


class EligibilityClassifier(ClassifierMixin, BaseEstimator):
    """Predicts True where every indicator meets or exceeds its minimum.

    Nothing is learned; ``fit`` only resolves the rule set.  Columns of
    ``X`` must follow the rule set's own order unless ``kinds`` is given.
    """

    def __init__(self, ruleset="proposed", kinds=None):
        self.ruleset = ruleset
        self.kinds = kinds

    def fit(self, X, y=None):
        X = check_array(X)
        rules: RuleSet = _ruleset(self.ruleset)
        kinds = rules.kinds if self.kinds is None else _kinds(self.kinds)
        if X.shape[1] != len(kinds):
            raise ValueError(f"expected {len(kinds)} indicator columns, got {X.shape[1]}")
        self.minima_ = np.array([rules.minimum(k) for k in kinds])
        self.classes_ = np.array([False, True])
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "minima_")
        X = check_array(X)
        return (X >= self.minima_).all(axis=1)
