"""Corpus-level reports: rankings, top groups, committee statistics."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .crediting import CountingScheme
from .indicators import (
    ANALYSIS_KINDS,
    IndicatorKind,
    RuleSet,
    ScoreCard,
    indicator_value,
    load_ruleset,
    score_researcher,
)
from .ingest import committee_of_publication
from .model import COMMITTEES, Committee, Corpus, PublicationRecord

logger = logging.getLogger(__name__)

BINS = (
    ("1", 1, 1), ("2", 2, 2), ("3-5", 3, 5), ("6-10", 6, 10), ("11-20", 11, 20),
    ("21-50", 21, 50), ("51-100", 51, 100), ("101-500", 101, 500), ("501+", 501, None),
)
BIN_LABELS = tuple(b[0] for b in BINS)
TIE_DECIMALS = 12


@dataclass(frozen=True)
class RankEntry:
    rank: int
    researcher_id: str
    committee: Committee
    cumulative: float
    card: Optional[ScoreCard] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Ranking:
    scheme: CountingScheme
    entries: tuple[RankEntry, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def rank_researchers(corpus: Corpus, scheme=CountingScheme.INTEGER, scoring_kinds=ANALYSIS_KINDS,
                     ruleset: RuleSet | str = "proposed") -> Ranking:
    """Rank by cumulative points, descending.

    Ties go to the larger publication count under the same scheme, then to
    the lexicographically smaller researcher id.
    """
    if isinstance(ruleset, str):
        ruleset = load_ruleset(ruleset)
    scheme = CountingScheme.parse(scheme)
    rows = []
    for r in corpus.researchers:
        card = score_researcher(r, corpus, scheme, scoring_kinds, ruleset)
        pubs = card.values.get(IndicatorKind.TOTAL_PUBS)
        if pubs is None:
            pubs = indicator_value(r, corpus, IndicatorKind.TOTAL_PUBS, scheme)
        # float noise must not decide between mathematically equal scores
        rows.append((-round(card.cumulative, TIE_DECIMALS), -round(pubs, TIE_DECIMALS), r.researcher_id, r, card))
    rows.sort(key=lambda t: t[:3])
    entries = tuple(
        RankEntry(i, r.researcher_id, r.committee, card.cumulative, card)
        for i, (_, _, _, r, card) in enumerate(rows, start=1)
    )
    return Ranking(scheme, entries)


def quantile_size(n: int, q: float) -> int:
    """ceil(q * n), with q taken at its decimal value (0.1 * 30 is 3, not 4)."""
    if not 0 < q <= 1:
        raise ValueError(f"quantile must be in (0, 1], got {q}")
    return math.ceil(Fraction(str(q)) * n)


def select_top_quantile(ranking, q: float) -> tuple[RankEntry, ...]:
    entries = tuple(ranking)
    return entries[:quantile_size(len(entries), q)]


def _committee_counts(group, corpus: Corpus) -> dict[Committee, int]:
    counts = {c: 0 for c in COMMITTEES}
    for member in group:
        rid = member if isinstance(member, str) else member.researcher_id
        counts[corpus.researcher(rid).committee] += 1
    return counts


@dataclass(frozen=True)
class CompositionReport:
    size: int
    counts: dict[Committee, int]

    def percent(self, committee) -> float:
        return 100 * self.counts[Committee(committee)] / self.size if self.size else 0.0

    @property
    def percents(self) -> dict[Committee, float]:
        return {c: self.percent(c) for c in self.counts}


def composition(group, corpus: Corpus) -> CompositionReport:
    """Committee make-up of a group of researchers (ids or rank entries)."""
    group = list(group)
    return CompositionReport(len(group), _committee_counts(group, corpus))


def share_percent(count: int, size: int) -> float:
    return 100 * count / size


def committee_share_of_top(group, corpus: Corpus) -> dict[Committee, tuple[int, int, float]]:
    """committee -> (committee size, members in group, percent of committee in group)."""
    counts = _committee_counts(group, corpus)
    out = {}
    for c, size in corpus.committee_sizes().items():
        if size == 0:
            logger.warning("committee %s has no members; omitted from shares", c.value)
            continue
        out[c] = (size, counts[c], share_percent(counts[c], size))
    return out


@dataclass(frozen=True)
class GroupDelta:
    committee: Committee
    integer_count: int
    fractional_count: int
    integer_share: float
    fractional_share: float

    @property
    def count_delta(self) -> int:
        return self.fractional_count - self.integer_count

    @property
    def share_delta(self) -> float:
        return self.fractional_share - self.integer_share


def scheme_delta(base_group, other_group, corpus: Corpus) -> list[GroupDelta]:
    """Per-committee change in top-group membership between two schemes."""
    a = committee_share_of_top(base_group, corpus)
    b = committee_share_of_top(other_group, corpus)
    return [GroupDelta(c, a[c][1], b[c][1], a[c][2], b[c][2]) for c in a]


def coauthorship_bin(author_count: int) -> str:
    for label, lo, hi in BINS:
        if author_count >= lo and (hi is None or author_count <= hi):
            return label
    raise ValueError(f"author_count must be >= 1, got {author_count}")


def publications_by_committee(corpus: Corpus) -> dict[Committee, list[PublicationRecord]]:
    """Each publication attributed once, to its earliest-listed member's committee.

    Only committees with at least one member get a key.
    """
    out = {c: [] for c, n in corpus.committee_sizes().items() if n}
    for pub in corpus.publications:
        out[committee_of_publication(pub, corpus)].append(pub)
    return out


@dataclass(frozen=True)
class BinRow:
    label: str
    publications: int
    counts: tuple[int, ...]

    @property
    def percents(self) -> tuple[float, ...]:
        n = self.publications
        return tuple(100 * c / n if n else 0.0 for c in self.counts)


def _bin_row(label, pubs) -> BinRow:
    counts = dict.fromkeys(BIN_LABELS, 0)
    for p in pubs:
        counts[coauthorship_bin(p.author_count)] += 1
    return BinRow(label, len(pubs), tuple(counts.values()))


@dataclass(frozen=True)
class CoauthorshipDistribution:
    rows: tuple[BinRow, ...]
    overall: BinRow


def coauthorship_distribution(corpus: Corpus) -> CoauthorshipDistribution:
    grouped = publications_by_committee(corpus)
    rows = tuple(_bin_row(c.value, pubs) for c, pubs in grouped.items())
    return CoauthorshipDistribution(rows, _bin_row("all", corpus.publications))


@dataclass(frozen=True)
class SummaryRow:
    committee: str
    publications: int
    wos_indexed: int
    cited: int
    independent_citations: int
    wos_citations: int

    @property
    def pct_wos_indexed(self) -> float:
        return 100 * self.wos_indexed / self.publications if self.publications else 0.0

    @property
    def pct_uncited(self) -> float:
        return 100 * (self.publications - self.cited) / self.publications if self.publications else 0.0

    @property
    def citations_per_cited_item(self) -> Optional[float]:
        return self.independent_citations / self.cited if self.cited else None

    @property
    def wos_citations_per_cited_item(self) -> Optional[float]:
        # same denominator as the independent-citation mean
        return self.wos_citations / self.cited if self.cited else None

    @classmethod
    def from_aggregates(cls, committee, publications: int, pct_uncited: float,
                        independent_citations: int, wos_citations: int,
                        pct_wos_indexed: float = 0.0) -> "SummaryRow":
        """Rebuild a row from published percentages, rounding item counts to integers."""
        cited = publications - round(publications * pct_uncited / 100)
        wos = round(publications * pct_wos_indexed / 100)
        return cls(_name(committee), publications, wos, cited, independent_citations, wos_citations)


def _name(committee) -> str:
    return committee.value if isinstance(committee, Committee) else str(committee)


def summarize(committee, pubs: Iterable[PublicationRecord]) -> SummaryRow:
    pubs = list(pubs)
    return SummaryRow(
        committee=_name(committee),
        publications=len(pubs),
        wos_indexed=sum(1 for p in pubs if p.wos_indexed),
        cited=sum(1 for p in pubs if p.independent_citations > 0),
        independent_citations=sum(p.independent_citations for p in pubs),
        wos_citations=sum(p.wos_citations for p in pubs),
    )


def committee_summary(corpus: Corpus) -> list[SummaryRow]:
    return [summarize(c.value, pubs) for c, pubs in publications_by_committee(corpus).items()]


def years_to_threshold(minimum: float, annual_rate: float) -> float:
    if annual_rate <= 0:
        raise ValueError(f"annual rate must be positive, got {annual_rate}")
    return minimum / annual_rate
