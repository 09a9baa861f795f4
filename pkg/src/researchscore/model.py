"""Domain types for researchers, publications and corpora."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional

MEMBER_PREFIX = "m:"
EXTERNAL_PREFIX = "x:"
DEFAULT_WINDOW = (2011, 2020)


class Committee(str, Enum):
    GEOCHEMISTRY = "geochemistry"
    GEODESY = "geodesy"
    GEOLOGY = "geology"
    GEOPHYSICS = "geophysics"
    METEOROLOGY = "meteorology"
    MINING = "mining"
    PALAEONTOLOGY = "palaeontology"
    PHYSICAL_GEOGRAPHY = "physical_geography"
    SOCIAL_GEOGRAPHY = "social_geography"


COMMITTEES = tuple(Committee)


class DocType(str, Enum):
    JOURNAL_ARTICLE = "journal_article"
    BOOK = "book"
    BOOK_CHAPTER = "book_chapter"
    CONFERENCE = "conference"
    OTHER = "other"


class Language(str, Enum):
    HUNGARIAN = "hungarian"
    FOREIGN = "foreign"


@dataclass(frozen=True)
class ResearcherProfile:
    researcher_id: str
    name: str
    committee: Committee
    degree_year: Optional[int] = None


@dataclass(frozen=True)
class PublicationRecord:
    """One publication as listed in a researcher's bibliography profile.

    ``authors`` holds byline-ordered references: ``m:<researcher_id>`` for
    corpus members and ``x:<name>`` for external co-authors.  The list may
    be shorter than ``author_count`` when a long byline was truncated.
    """

    pub_id: str
    year: int
    authors: tuple[str, ...]
    author_count: int
    doc_type: DocType = DocType.JOURNAL_ARTICLE
    language: Language = Language.FOREIGN
    wos_indexed: bool = False
    scopus_indexed: bool = False
    impact_factor: Optional[float] = None
    independent_citations: int = 0
    wos_citations: int = 0

    def member_ids(self) -> list[str]:
        return [a[len(MEMBER_PREFIX):] for a in self.authors if a.startswith(MEMBER_PREFIX)]

    def position_of(self, researcher_id: str) -> Optional[int]:
        """1-based byline position of a member, or None if not an author."""
        tag = MEMBER_PREFIX + researcher_id
        for i, a in enumerate(self.authors, start=1):
            if a == tag:
                return i
        return None


@dataclass(frozen=True)
class Corpus:
    researchers: tuple[ResearcherProfile, ...] = ()
    publications: tuple[PublicationRecord, ...] = ()
    window: tuple[int, int] = DEFAULT_WINDOW
    # non-fatal issues found while loading, e.g. dedup conflicts
    load_issues: tuple = field(default=(), compare=False)

    @cached_property
    def researcher_index(self) -> dict[str, ResearcherProfile]:
        return {r.researcher_id: r for r in self.researchers}

    @cached_property
    def authorships(self) -> dict[str, list[tuple[PublicationRecord, int]]]:
        """researcher_id -> [(publication, 1-based position)] in corpus order."""
        index = defaultdict(list)
        for pub in self.publications:
            for pos, a in enumerate(pub.authors, start=1):
                if a.startswith(MEMBER_PREFIX):
                    index[a[len(MEMBER_PREFIX):]].append((pub, pos))
        return dict(index)

    def researcher(self, researcher_id: str) -> ResearcherProfile:
        try:
            return self.researcher_index[researcher_id]
        except KeyError:
            raise UnknownResearcherError(researcher_id) from None

    def publications_of(self, researcher_id: str) -> list[tuple[PublicationRecord, int]]:
        self.researcher(researcher_id)
        return self.authorships.get(researcher_id, [])

    def committee_sizes(self) -> dict[Committee, int]:
        sizes = {c: 0 for c in COMMITTEES}
        for r in self.researchers:
            sizes[r.committee] += 1
        return sizes


class CorpusError(ValueError):
    """Input that cannot be turned into a corpus.

    Carries the offending file, line and field where known.
    """

    def __init__(self, message, *, path=None, line=None, field=None, pub_id=None):
        self.path = path
        self.line = line
        self.field = field
        self.pub_id = pub_id
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if pub_id is not None:
            where.append(f"pub_id {pub_id!r}")
        super().__init__(f"{': '.join([', '.join(where), message]) if where else message}")


class UnknownResearcherError(KeyError):
    def __str__(self):
        return f"unknown researcher: {self.args[0]!r}"
