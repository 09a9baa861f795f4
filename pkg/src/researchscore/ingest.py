"""Loading, deduplicating, windowing and validating bibliographic corpora.

Researchers come from a CSV file with header
``researcher_id,name,committee,degree_year``; publications come from a JSON
Lines file with one object per record.  A publication shared by several
members appears once per profile in the source and is merged by ``pub_id``.
"""
from __future__ import annotations

import csv
import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path

from .model import (
    DEFAULT_WINDOW,
    EXTERNAL_PREFIX,
    MEMBER_PREFIX,
    Committee,
    Corpus,
    CorpusError,
    DocType,
    Language,
    PublicationRecord,
    ResearcherProfile,
)

logger = logging.getLogger(__name__)

RESEARCHER_COLUMNS = ["researcher_id", "name", "committee", "degree_year"]
PUBLICATION_FIELDS = [
    "pub_id", "year", "authors", "author_count", "doc_type", "language",
    "wos_indexed", "scopus_indexed", "impact_factor", "independent_citations",
    "wos_citations",
]

FATAL = "fatal"
WARNING = "warning"


@dataclass(frozen=True)
class Issue:
    severity: str
    code: str
    subject: str
    message: str
    subject_kind: str = "pub_id"

    def to_dict(self) -> dict:
        return {"severity": self.severity, "code": self.code,
                self.subject_kind: self.subject, "message": self.message}


def read_researchers(path) -> list[ResearcherProfile]:
    path = Path(path)
    out = []
    seen = set()
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != RESEARCHER_COLUMNS:
            raise CorpusError(f"expected header {','.join(RESEARCHER_COLUMNS)}", path=path, line=1)
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(RESEARCHER_COLUMNS):
                raise CorpusError(f"expected {len(RESEARCHER_COLUMNS)} columns, got {len(row)}",
                                  path=path, line=line_no)
            rid, name, committee, degree = row
            if not rid:
                raise CorpusError("empty value", path=path, line=line_no, field="researcher_id")
            try:
                committee = Committee(committee)
            except ValueError:
                raise CorpusError(f"unknown committee {committee!r}", path=path, line=line_no,
                                  field="committee") from None
            if degree.strip():
                try:
                    degree = int(degree)
                except ValueError:
                    raise CorpusError(f"not an integer: {degree!r}", path=path, line=line_no,
                                      field="degree_year") from None
            else:
                degree = None
            if rid in seen:
                raise CorpusError(f"duplicate researcher_id {rid!r}", path=path, line=line_no,
                                  field="researcher_id")
            seen.add(rid)
            out.append(ResearcherProfile(rid, name, committee, degree))
    return out


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def parse_publication(obj, *, path=None, line=None) -> PublicationRecord:
    """Build a record from one decoded JSON object, checking types only.

    Range checks (author_count >= 1, citation signs, window) belong to
    :func:`validate_corpus` so that they end up in the validation report.
    """
    def fail(field, message):
        raise CorpusError(message, path=path, line=line, field=field)

    if not isinstance(obj, dict):
        fail(None, "expected a JSON object")
    for key in PUBLICATION_FIELDS:
        if key not in obj:
            fail(key, "missing field")
    for key in obj:
        if key not in PUBLICATION_FIELDS:
            fail(key, "unknown field")

    if not isinstance(obj["pub_id"], str) or not obj["pub_id"]:
        fail("pub_id", "expected a non-empty string")
    for key in ("year", "author_count", "independent_citations", "wos_citations"):
        if not _is_int(obj[key]):
            fail(key, f"expected an integer, got {obj[key]!r}")
    authors = obj["authors"]
    if not isinstance(authors, list):
        fail("authors", "expected an array")
    for a in authors:
        if not isinstance(a, str) or not (a.startswith(MEMBER_PREFIX) or a.startswith(EXTERNAL_PREFIX)):
            fail("authors", f"author reference must start with 'm:' or 'x:', got {a!r}")
        if a.startswith(MEMBER_PREFIX) and len(a) == len(MEMBER_PREFIX):
            fail("authors", "empty member id")
    try:
        doc_type = DocType(obj["doc_type"])
    except ValueError:
        fail("doc_type", f"unknown doc_type {obj['doc_type']!r}")
    try:
        language = Language(obj["language"])
    except ValueError:
        fail("language", f"unknown language {obj['language']!r}")
    for key in ("wos_indexed", "scopus_indexed"):
        if not isinstance(obj[key], bool):
            fail(key, f"expected a boolean, got {obj[key]!r}")
    impact = obj["impact_factor"]
    if impact is not None and (isinstance(impact, bool) or not isinstance(impact, (int, float))):
        fail("impact_factor", f"expected a number or null, got {impact!r}")

    return PublicationRecord(
        pub_id=obj["pub_id"],
        year=obj["year"],
        authors=tuple(authors),
        author_count=obj["author_count"],
        doc_type=doc_type,
        language=language,
        wos_indexed=obj["wos_indexed"],
        scopus_indexed=obj["scopus_indexed"],
        impact_factor=None if impact is None else float(impact),
        independent_citations=obj["independent_citations"],
        wos_citations=obj["wos_citations"],
    )


def read_publications(path) -> list[PublicationRecord]:
    path = Path(path)
    out = []
    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"invalid JSON ({exc.msg})", path=path, line=line_no) from None
            out.append(parse_publication(obj, path=path, line=line_no))
    return out


def merge_duplicates(records) -> tuple[list[PublicationRecord], list[Issue]]:
    """Collapse records sharing a pub_id, keeping first-seen order.

    Citation counts take the maximum and index flags the union; any other
    disagreement keeps the first record's value.  Every differing field is
    reported as a warning.
    """
    merged: dict[str, PublicationRecord] = {}
    conflicts: dict[str, set] = {}
    for rec in records:
        prev = merged.get(rec.pub_id)
        if prev is None:
            merged[rec.pub_id] = rec
            continue
        diff = {f for f in PUBLICATION_FIELDS if getattr(prev, f) != getattr(rec, f)}
        if diff:
            conflicts.setdefault(rec.pub_id, set()).update(diff)
        merged[rec.pub_id] = PublicationRecord(
            **{
                **asdict(prev),
                "independent_citations": max(prev.independent_citations, rec.independent_citations),
                "wos_citations": max(prev.wos_citations, rec.wos_citations),
                "wos_indexed": prev.wos_indexed or rec.wos_indexed,
                "scopus_indexed": prev.scopus_indexed or rec.scopus_indexed,
            }
        )
    issues = [
        Issue(WARNING, "dedup_conflict", pid,
              "duplicate records disagree on " + ", ".join(sorted(fields)))
        for pid, fields in conflicts.items()
    ]
    return list(merged.values()), issues


def load_corpus(researcher_file, publication_file, window=DEFAULT_WINDOW, *, strict=True) -> Corpus:
    """Read, deduplicate and window a corpus.

    With ``strict`` (the default) any fatal validation finding raises
    :class:`CorpusError`; otherwise the corpus is returned as loaded and
    the caller is expected to run :func:`validate_corpus`.
    """
    start, end = window
    if start > end:
        raise ValueError(f"empty window {start}:{end}")
    researchers = read_researchers(researcher_file)
    records, issues = merge_duplicates(read_publications(publication_file))
    kept = [p for p in records if start <= p.year <= end]
    logger.debug("dropped %d publications outside %d-%d", len(records) - len(kept), start, end)

    kept_ids = {p.pub_id for p in kept}
    issues = [i for i in issues if i.subject in kept_ids]

    corpus = Corpus(tuple(researchers), tuple(kept), (start, end), tuple(issues))
    if strict:
        fatal = [i for i in validate_corpus(corpus) if i.severity == FATAL]
        if fatal:
            first = fatal[0]
            extra = f" (and {len(fatal) - 1} more)" if len(fatal) > 1 else ""
            raise CorpusError(first.message + extra,
                              pub_id=first.subject if first.subject_kind == "pub_id" else None)
    return corpus


def committee_of_publication(pub: PublicationRecord, corpus: Corpus) -> Committee:
    """Committee of the earliest-listed author who is a corpus member."""
    index = corpus.researcher_index
    for rid in pub.member_ids():
        if rid in index:
            return index[rid].committee
    raise ValueError(f"unattributable publication {pub.pub_id!r}")


def validate_corpus(corpus: Corpus) -> list[Issue]:
    issues = list(corpus.load_issues)
    index = corpus.researcher_index
    seen_researchers = set()
    for r in corpus.researchers:
        if r.researcher_id in seen_researchers:
            issues.append(Issue(FATAL, "duplicate_researcher", r.researcher_id,
                                "researcher_id appears more than once", "researcher_id"))
        seen_researchers.add(r.researcher_id)

    start, end = corpus.window
    seen = set()
    for p in corpus.publications:
        def add(severity, code, message, p=p):
            issues.append(Issue(severity, code, p.pub_id, message))

        if p.pub_id in seen:
            add(FATAL, "duplicate_pub_id", "pub_id appears more than once")
        seen.add(p.pub_id)
        members = p.member_ids()
        if p.author_count < 1:
            add(FATAL, "author_count", f"author_count must be >= 1, got {p.author_count}")
        elif len(p.authors) > p.author_count:
            add(FATAL, "author_count",
                f"{len(p.authors)} authors listed but author_count is {p.author_count}")
        if len(set(members)) != len(members):
            add(FATAL, "duplicate_author", "a member appears twice in the byline")
        dangling = [m for m in members if m not in index]
        if dangling:
            add(FATAL, "dangling_author", "unknown member ids: " + ", ".join(dangling))
        if len(dangling) == len(members):
            add(FATAL, "unattributable", "no author resolves to a corpus member")
        if not start <= p.year <= end:
            add(FATAL, "year_outside_window", f"year {p.year} outside {start}-{end}")
        for name in ("independent_citations", "wos_citations"):
            if getattr(p, name) < 0:
                add(FATAL, "negative_count", f"{name} is negative")
        if p.impact_factor is not None:
            if p.impact_factor < 0:
                add(FATAL, "negative_impact_factor", "impact_factor is negative")
            if p.doc_type is not DocType.JOURNAL_ARTICLE:
                add(WARNING, "impact_factor_doc_type",
                    f"impact_factor given for a {p.doc_type.value}")
        if p.wos_citations > 0 and not p.wos_indexed:
            add(WARNING, "wos_citations_unindexed", "wos_citations > 0 but wos_indexed is false")
    return issues


def issues_to_json(issues) -> str:
    return json.dumps([i.to_dict() for i in issues], indent=2) + "\n"


def write_corpus(corpus: Corpus, researcher_file, publication_file) -> None:
    with Path(researcher_file).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESEARCHER_COLUMNS)
        for r in corpus.researchers:
            w.writerow([r.researcher_id, r.name, r.committee.value,
                        "" if r.degree_year is None else r.degree_year])
    with Path(publication_file).open("w", encoding="utf-8") as fh:
        for p in corpus.publications:
            fh.write(json.dumps(publication_to_dict(p)) + "\n")


def publication_to_dict(p: PublicationRecord) -> dict:
    d = asdict(p)
    d["authors"] = list(p.authors)
    d["doc_type"] = p.doc_type.value
    d["language"] = p.language.value
    return d


def researcher_to_dict(r: ResearcherProfile) -> dict:
    return {"researcher_id": r.researcher_id, "name": r.name,
            "committee": r.committee.value, "degree_year": r.degree_year}


__all__ = [
    "Issue", "FATAL", "WARNING", "load_corpus", "read_researchers", "read_publications",
    "parse_publication", "merge_duplicates", "committee_of_publication", "validate_corpus",
    "write_corpus", "issues_to_json", "publication_to_dict", "researcher_to_dict",
]

