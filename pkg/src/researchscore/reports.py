"""Tables and their CSV / JSON / long-form plot-data serializations.

Numbers are kept at full precision until a table is written; percents and
per-item means are rounded to 2 decimals, points to 6.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .analytics import BIN_LABELS, CoauthorshipDistribution, GroupDelta, Ranking, SummaryRow
from .indicators import EligibilityReport, ScoreCard
from .model import COMMITTEES, Committee

FORMATS = ("csv", "json", "plotdata")
PCT = 2
POINTS = 6


@dataclass
class Table:
    name: str
    columns: Sequence[str]
    rows: list[list[Any]]
    # column -> decimals for float cells
    decimals: dict[str, int] = field(default_factory=dict)

    def _cell(self, col, v):
        if v is None:
            return ""
        if isinstance(v, Committee):
            return v.value
        if isinstance(v, float) and col in self.decimals:
            return f"{v:.{self.decimals[col]}f}"
        return v

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([self._cell(c, v) for c, v in zip(self.columns, row)])
        return buf.getvalue()

    def records(self) -> list[dict]:
        out = []
        for row in self.rows:
            rec = {}
            for c, v in zip(self.columns, row):
                if isinstance(v, Committee):
                    v = v.value
                elif isinstance(v, float) and c in self.decimals:
                    v = round(v, self.decimals[c])
                rec[c] = v
            out.append(rec)
        return out

    def to_json(self) -> str:
        return json.dumps(self.records(), indent=2) + "\n"


def ranking_table(ranking: Ranking, name: str) -> Table:
    return Table(name, ["rank", "researcher_id", "committee", "cumulative"],
                 [[e.rank, e.researcher_id, e.committee, e.cumulative] for e in ranking],
                 {"cumulative": POINTS})


def composition_table(report, name: str) -> Table:
    return Table(name, ["committee", "count", "percent"],
                 [[c, report.counts[c], report.percent(c)] for c in COMMITTEES],
                 {"percent": PCT})


def share_table(shares: dict, name: str) -> Table:
    return Table(name, ["committee", "members", "in_group", "percent"],
                 [[c, size, n, pct] for c, (size, n, pct) in shares.items()],
                 {"percent": PCT})


def delta_table(deltas: list[GroupDelta], name: str = "delta") -> Table:
    cols = ["committee", "integer_count", "fractional_count", "count_delta",
            "integer_share", "fractional_share", "share_delta"]
    rows = [[d.committee, d.integer_count, d.fractional_count, d.count_delta,
             d.integer_share, d.fractional_share, d.share_delta] for d in deltas]
    return Table(name, cols, rows, {c: PCT for c in cols[4:]})


def coauthorship_tables(dist: CoauthorshipDistribution) -> list[Table]:
    cols = ["committee", "publications", *BIN_LABELS]
    dec = {b: PCT for b in BIN_LABELS}

    def rows(bin_rows):
        return [[r.label, r.publications, *r.percents] for r in bin_rows]

    return [Table("coauthorship", cols, rows(dist.rows), dec),
            Table("coauthorship_overall", cols, rows([dist.overall]), dec)]


SUMMARY_COLUMNS = ["committee", "publications", "pct_wos_indexed", "pct_uncited",
                   "independent_citations", "citations_per_cited_item", "wos_citations",
                   "wos_citations_per_cited_item"]


def summary_table(rows: list[SummaryRow]) -> Table:
    return Table("committee_summary", SUMMARY_COLUMNS,
                 [[r.committee, r.publications, r.pct_wos_indexed, r.pct_uncited,
                   r.independent_citations, r.citations_per_cited_item, r.wos_citations,
                   r.wos_citations_per_cited_item] for r in rows],
                 {c: PCT for c in SUMMARY_COLUMNS if c.startswith("pct") or c.endswith("item")})


def scorecard_table(cards: list[ScoreCard], name: str) -> Table:
    kinds = list(cards[0].values) if cards else []
    cols = ["researcher_id", "scheme"]
    cols += [f"value_{k.value}" for k in kinds] + [f"points_{k.value}" for k in kinds]
    cols += ["cumulative", "total"]
    rows = [[c.researcher_id, c.scheme.value, *[c.values[k] for k in kinds],
             *[c.points[k] for k in kinds], c.cumulative, c.total] for c in cards]
    return Table(name, cols, rows, {c: POINTS for c in cols[2:]})


def eligibility_table(report: EligibilityReport, name: str) -> Table:
    return Table(name, ["researcher_id", "ruleset", "scheme", "kind", "value", "minimum", "multiple", "passed"],
                 [[report.researcher_id, report.ruleset, report.scheme.value, r.kind.value,
                   r.value, r.minimum, r.multiple, r.passed] for r in report.results],
                 {"value": POINTS, "minimum": POINTS, "multiple": POINTS})


def long_form(tables: list[tuple[str, Table, str]]) -> Table:
    """Tidy (committee, series, value) rows from committee-keyed tables.

    Each entry is (series name, table, value column).
    """
    rows = []
    for series, table, col in tables:
        i = list(table.columns).index(col)
        for row in table.rows:
            rows.append([row[0], series, row[i]])
    return Table("plotdata", ["committee", "series", "value"], rows, {"value": PCT})


def render(tables: list[Table], fmt: str) -> dict[str, str]:
    """filename -> content for the csv and json formats."""
    if fmt == "csv":
        return {f"{t.name}.csv": t.to_csv() for t in tables}
    if fmt == "json":
        return {f"{t.name}.json": t.to_json() for t in tables}
    raise ValueError(f"unsupported format {fmt!r}")
