import json
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from researchscore.model import Committee, Corpus, PublicationRecord, ResearcherProfile

ROOT = Path(__file__).parent
SAMPLE = ROOT.parent / "src" / "researchscore" / "data" / "sample"
GOLDEN = ROOT / "golden"

# committee -> researchers with HSB profiles, as in the committee roster
TABLE1_PROFILES = {
    Committee.GEOCHEMISTRY: 95,
    Committee.GEODESY: 45,
    Committee.GEOLOGY: 51,
    Committee.GEOPHYSICS: 65,
    Committee.METEOROLOGY: 69,
    Committee.MINING: 40,
    Committee.PALAEONTOLOGY: 37,
    Committee.PHYSICAL_GEOGRAPHY: 110,
    Committee.SOCIAL_GEOGRAPHY: 171,
}

_ACCEPTANCE = []


def researcher(rid, committee="geology", degree_year=None):
    return ResearcherProfile(rid, f"Name {rid}", Committee(committee), degree_year)


def pub(pid, authors, author_count=None, year=2015, **kw):
    authors = tuple(a if a.startswith(("m:", "x:")) else f"m:{a}" for a in authors)
    return PublicationRecord(pid, year, authors, len(authors) if author_count is None else author_count, **kw)


def corpus_of(researchers, publications, window=(2011, 2020)):
    return Corpus(tuple(researchers), tuple(publications), window)


def table1_roster():
    out = []
    for c, n in TABLE1_PROFILES.items():
        out += [researcher(f"{c.value[:4]}{i:03d}", c) for i in range(n)]
    return out


def write_inputs(tmp_path, researchers_csv, publication_dicts):
    r = tmp_path / "researchers.csv"
    p = tmp_path / "publications.jsonl"
    r.write_text(researchers_csv)
    p.write_text("".join(json.dumps(d) + "\n" for d in publication_dicts))
    return r, p


def pub_dict(pid, authors, year=2015, **kw):
    d = {
        "pub_id": pid, "year": year, "authors": authors, "author_count": len(authors),
        "doc_type": "journal_article", "language": "foreign", "wos_indexed": False,
        "scopus_indexed": False, "impact_factor": None, "independent_citations": 0,
        "wos_citations": 0,
    }
    d.update(kw)
    return d


@pytest.fixture
def criterion():
    """Context manager recording a PASS/FAIL line for an acceptance criterion."""
    @contextmanager
    def run(label, budget=None):
        start = time.perf_counter()
        try:
            yield
            elapsed = time.perf_counter() - start
            if budget is not None:
                assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        except BaseException:
            _ACCEPTANCE.append(f"FAIL  {label}")
            raise
        _ACCEPTANCE.append(f"PASS  {label}  ({time.perf_counter() - start:.3f}s)")
    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
