"""Indicator values, performance points and eligibility against rule sets.

An indicator value sums per-publication contributions over a researcher's
publications.  Count-like indicators contribute the member's credit under
the counting scheme, citation indicators contribute ``citations * credit``
and the impact-factor indicator ``impact_factor * credit``.  The Hirsch
index is always computed on whole publications.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .crediting import CountingScheme, credit_at
from .model import Corpus, DocType, Language, PublicationRecord, ResearcherProfile


class IndicatorKind(str, Enum):
    TOTAL_PUBS = "total_pubs"
    FIRST_AUTHOR_PUBS = "first_author_pubs"
    PUBS_SINCE_DEGREE = "pubs_since_degree"
    BOOKS_MONOGRAPHS = "books_monographs"
    FOREIGN_LANGUAGE_PUBS = "foreign_language_pubs"
    INDEXED_ARTICLES = "indexed_articles"
    INDEXED_ARTICLES_SINCE_DEGREE = "indexed_articles_since_degree"
    INDEPENDENT_CITATIONS = "independent_citations"
    INDEXED_CITATIONS = "indexed_citations"
    CUMULATIVE_IMPACT_FACTOR = "cumulative_impact_factor"
    H_INDEX = "h_index"

    @classmethod
    def parse(cls, value) -> "IndicatorKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown indicator kind {value!r}") from None

    @property
    def needs_degree_year(self) -> bool:
        return self in (IndicatorKind.PUBS_SINCE_DEGREE, IndicatorKind.INDEXED_ARTICLES_SINCE_DEGREE)


K = IndicatorKind

# the four indicators used for ranking
ANALYSIS_KINDS = (K.TOTAL_PUBS, K.INDEXED_ARTICLES, K.INDEPENDENT_CITATIONS, K.INDEXED_CITATIONS)

COUNT_KINDS = (
    K.TOTAL_PUBS, K.FIRST_AUTHOR_PUBS, K.PUBS_SINCE_DEGREE, K.BOOKS_MONOGRAPHS,
    K.FOREIGN_LANGUAGE_PUBS, K.INDEXED_ARTICLES, K.INDEXED_ARTICLES_SINCE_DEGREE,
)
CITATION_KINDS = (K.INDEPENDENT_CITATIONS, K.INDEXED_CITATIONS)


class IndicatorError(ValueError):
    pass


def _is_indexed_article(pub: PublicationRecord) -> bool:
    # the Scopus clause of the rule sets is approximated by WoS alone
    return pub.wos_indexed and pub.doc_type is DocType.JOURNAL_ARTICLE


def _selected(kind: IndicatorKind, pub: PublicationRecord, position: int, degree_year) -> bool:
    if kind is K.FIRST_AUTHOR_PUBS:
        return position == 1
    if kind is K.PUBS_SINCE_DEGREE:
        return pub.year >= degree_year
    if kind is K.BOOKS_MONOGRAPHS:
        return pub.doc_type is DocType.BOOK
    if kind is K.FOREIGN_LANGUAGE_PUBS:
        return pub.language is Language.FOREIGN
    if kind is K.INDEXED_ARTICLES:
        return _is_indexed_article(pub)
    if kind is K.INDEXED_ARTICLES_SINCE_DEGREE:
        return _is_indexed_article(pub) and pub.year >= degree_year
    return True


def _weight(kind: IndicatorKind, pub: PublicationRecord) -> float:
    if kind is K.INDEPENDENT_CITATIONS:
        return pub.independent_citations
    if kind is K.INDEXED_CITATIONS:
        return pub.wos_citations
    if kind is K.CUMULATIVE_IMPACT_FACTOR:
        return pub.impact_factor or 0.0
    return 1.0


def h_index(citations: Iterable[int]) -> int:
    """Largest h such that h items have at least h citations each."""
    h = 0
    for i, c in enumerate(sorted(citations, reverse=True), start=1):
        if c < i:
            break
        h = i
    return h


def value_from_authorships(authorships: Sequence[tuple[PublicationRecord, int]], kind,
                           scheme=CountingScheme.INTEGER, degree_year: Optional[int] = None) -> float:
    """Indicator value over explicit (publication, byline position) pairs."""
    kind = IndicatorKind.parse(kind)
    scheme = CountingScheme.parse(scheme)
    if kind is K.H_INDEX:
        return float(h_index(pub.independent_citations for pub, _ in authorships))
    if kind.needs_degree_year and degree_year is None:
        raise IndicatorError(f"degree year required for {kind.value}")
    parts = [
        _weight(kind, pub) * credit_at(scheme, pub.author_count, pos)
        for pub, pos in authorships
        if _selected(kind, pub, pos, degree_year)
    ]
    return math.fsum(parts)


def _profile(researcher, corpus: Corpus) -> ResearcherProfile:
    if isinstance(researcher, ResearcherProfile):
        researcher = researcher.researcher_id
    return corpus.researcher(researcher)


def indicator_value(researcher, corpus: Corpus, kind, scheme=CountingScheme.INTEGER) -> float:
    profile = _profile(researcher, corpus)
    return value_from_authorships(corpus.publications_of(profile.researcher_id), kind, scheme,
                                  profile.degree_year)


def indicator_points(value: float, minimum: float) -> float:
    if minimum <= 0:
        raise ValueError(f"minimum must be positive, got {minimum}")
    if value < 0:
        raise ValueError(f"value must be non-negative, got {value}")
    return value / minimum


@dataclass(frozen=True)
class Requirement:
    kind: IndicatorKind
    minimum: float


@dataclass(frozen=True)
class RuleSet:
    name: str
    requirements: tuple[Requirement, ...]
    description: str = ""

    def __post_init__(self):
        kinds = [r.kind for r in self.requirements]
        if len(set(kinds)) != len(kinds):
            raise ValueError(f"rule set {self.name!r} lists an indicator twice")
        for r in self.requirements:
            if not r.minimum > 0:
                raise ValueError(f"rule set {self.name!r}: minimum for {r.kind.value} must be > 0")

    @property
    def kinds(self) -> tuple[IndicatorKind, ...]:
        return tuple(r.kind for r in self.requirements)

    def minimum(self, kind) -> float:
        kind = IndicatorKind.parse(kind)
        for r in self.requirements:
            if r.kind is kind:
                return r.minimum
        raise KeyError(f"rule set {self.name!r} has no minimum for {kind.value}")

    @classmethod
    def from_dict(cls, data: dict) -> "RuleSet":
        try:
            reqs = tuple(Requirement(IndicatorKind.parse(r["kind"]), float(r["minimum"]))
                         for r in data["requirements"])
            return cls(str(data["name"]), reqs, data.get("description", ""))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed rule set: {exc}") from None

    def to_dict(self) -> dict:
        return {"name": self.name,
                "requirements": [{"kind": r.kind.value, "minimum": r.minimum} for r in self.requirements]}


BUNDLED_RULESETS = ("current-geo-hard", "current-geo-applied", "current-social-geography", "proposed")


def load_ruleset(name_or_path) -> RuleSet:
    """Load a bundled rule set by name, or any rule-set JSON file by path."""
    if str(name_or_path) in BUNDLED_RULESETS:
        text = resources.files("researchscore").joinpath(
            "data", "rulesets", f"{name_or_path}.json").read_text(encoding="utf-8")
    else:
        path = Path(name_or_path)
        if not path.is_file():
            raise FileNotFoundError(
                f"no rule set {str(name_or_path)!r}; bundled: {', '.join(BUNDLED_RULESETS)}")
        text = path.read_text(encoding="utf-8")
    return RuleSet.from_dict(json.loads(text))


@dataclass
class ScoreCard:
    researcher_id: str
    scheme: CountingScheme
    values: dict[IndicatorKind, float] = field(default_factory=dict)
    points: dict[IndicatorKind, float] = field(default_factory=dict)
    cumulative: float = 0.0
    total: float = 0.0

    def to_dict(self) -> dict:
        return {
            "researcher_id": self.researcher_id,
            "scheme": self.scheme.value,
            "values": {k.value: v for k, v in self.values.items()},
            "points": {k.value: v for k, v in self.points.items()},
            "cumulative": self.cumulative,
            "total": self.total,
        }


def score_researcher(researcher, corpus: Corpus, scheme=CountingScheme.INTEGER,
                     scoring_kinds=ANALYSIS_KINDS, ruleset: RuleSet | str = "proposed") -> ScoreCard:
    """Points per scoring indicator and their mean (``cumulative``) and sum (``total``)."""
    if isinstance(ruleset, str):
        ruleset = load_ruleset(ruleset)
    scheme = CountingScheme.parse(scheme)
    kinds = [IndicatorKind.parse(k) for k in scoring_kinds]
    if not kinds:
        raise ValueError("at least one scoring indicator is required")
    missing = [k.value for k in kinds if k not in ruleset.kinds]
    if missing:
        raise IndicatorError(f"rule set {ruleset.name!r} has no minimum for: {', '.join(missing)}")
    profile = _profile(researcher, corpus)
    card = ScoreCard(profile.researcher_id, scheme)
    for k in kinds:
        v = indicator_value(profile, corpus, k, scheme)
        card.values[k] = v
        card.points[k] = indicator_points(v, ruleset.minimum(k))
    card.total = math.fsum(card.points.values())
    card.cumulative = card.total / len(kinds)
    return card


@dataclass(frozen=True)
class RequirementResult:
    kind: IndicatorKind
    value: float
    minimum: float

    @property
    def passed(self) -> bool:
        return self.value >= self.minimum

    @property
    def multiple(self) -> float:
        return self.value / self.minimum


@dataclass(frozen=True)
class EligibilityReport:
    researcher_id: str
    ruleset: str
    scheme: CountingScheme
    results: tuple[RequirementResult, ...]

    @property
    def eligible(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failing(self) -> list[IndicatorKind]:
        return [r.kind for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "researcher_id": self.researcher_id,
            "ruleset": self.ruleset,
            "scheme": self.scheme.value,
            "verdict": "eligible" if self.eligible else "rejected",
            "failing": [k.value for k in self.failing],
            "indicators": [
                {"kind": r.kind.value, "value": r.value, "minimum": r.minimum,
                 "multiple": r.multiple, "passed": r.passed}
                for r in self.results
            ],
        }


def check_eligibility(researcher, corpus: Corpus, ruleset: RuleSet | str,
                      scheme=CountingScheme.INTEGER) -> EligibilityReport:
    """Every indicator must meet or exceed its minimum; one miss rejects."""
    if isinstance(ruleset, str):
        ruleset = load_ruleset(ruleset)
    scheme = CountingScheme.parse(scheme)
    profile = _profile(researcher, corpus)
    results = tuple(
        RequirementResult(r.kind, indicator_value(profile, corpus, r.kind, scheme), r.minimum)
        for r in ruleset.requirements
    )
    return EligibilityReport(profile.researcher_id, ruleset.name, scheme, results)
