import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from researchscore.indicators import (
    ANALYSIS_KINDS,
    CITATION_KINDS,
    COUNT_KINDS,
    BUNDLED_RULESETS,
    IndicatorError,
    IndicatorKind as K,
    Requirement,
    RuleSet,
    check_eligibility,
    h_index,
    indicator_points,
    indicator_value,
    load_ruleset,
    score_researcher,
    value_from_authorships,
)
from researchscore.model import DocType, Language
from conftest import corpus_of, pub, researcher


def brute_h(citations):
    return max(h for h in range(len(citations) + 1) if sum(c >= h for c in citations) >= h)


def solo(i, rid="a", **kw):
    return pub(f"p{i}", [rid], **kw)


class TestIndicatorValue:
    def test_eighty_publications_integer(self):
        c = corpus_of([researcher("a")], [solo(i) for i in range(80)])
        assert indicator_value("a", c, "total_pubs", "integer") == 80

    def test_fractional_citations(self):
        p = pub("p", ["a"] + [f"x:{i}" for i in range(9)], independent_citations=30)
        c = corpus_of([researcher("a")], [p])
        assert indicator_value("a", c, "independent_citations", "fractional") == pytest.approx(3.0)

    def test_h_index_example(self):
        cites = [10, 8, 5, 4, 3]
        assert brute_h(cites) == 4
        c = corpus_of([researcher("a")], [solo(i, independent_citations=n) for i, n in enumerate(cites)])
        assert indicator_value("a", c, "h_index") == 4

    def test_h_index_ignores_scheme(self):
        ps = [pub(f"p{i}", ["a", "x:b", "x:c"], independent_citations=5) for i in range(5)]
        c = corpus_of([researcher("a")], ps)
        assert indicator_value("a", c, "h_index", "fractional") == indicator_value("a", c, "h_index", "integer") == 5

    @pytest.mark.parametrize("kind", list(K))
    def test_no_publications(self, kind):
        c = corpus_of([researcher("a", degree_year=2000)], [])
        assert indicator_value("a", c, kind) == 0

    def test_filters(self):
        r = researcher("a", degree_year=2016)
        ps = [
            pub("j1", ["a", "x:b"], year=2015, wos_indexed=True, wos_citations=7, impact_factor=2.5),
            pub("j2", ["x:b", "a"], year=2017, wos_indexed=True, impact_factor=1.0),
            pub("bk", ["a"], year=2018, doc_type=DocType.BOOK, language=Language.HUNGARIAN),
            pub("ch", ["a"], year=2019, doc_type=DocType.BOOK_CHAPTER, wos_indexed=True),
        ]
        c = corpus_of([r], ps)
        v = {k: indicator_value("a", c, k) for k in K}
        assert v[K.TOTAL_PUBS] == 4
        assert v[K.FIRST_AUTHOR_PUBS] == 3
        assert v[K.PUBS_SINCE_DEGREE] == 3
        assert v[K.BOOKS_MONOGRAPHS] == 1
        assert v[K.FOREIGN_LANGUAGE_PUBS] == 3
        # the WoS-indexed chapter is not a journal article
        assert v[K.INDEXED_ARTICLES] == 2
        assert v[K.INDEXED_ARTICLES_SINCE_DEGREE] == 1
        assert v[K.INDEXED_CITATIONS] == 7
        assert v[K.CUMULATIVE_IMPACT_FACTOR] == pytest.approx(3.5)
        assert indicator_value("a", c, K.CUMULATIVE_IMPACT_FACTOR, "fractional") == pytest.approx(1.75)
        assert indicator_value("a", c, K.FIRST_AUTHOR_PUBS, "fractional") == pytest.approx(2.5)

    def test_since_degree_requires_degree_year(self):
        c = corpus_of([researcher("a")], [solo(1)])
        with pytest.raises(IndicatorError, match="degree year required"):
            indicator_value("a", c, "pubs_since_degree")

    def test_unknown_researcher(self):
        with pytest.raises(KeyError):
            indicator_value("zz", corpus_of([researcher("a")], []), "total_pubs")


class TestPoints:
    @pytest.mark.parametrize("value,minimum,expected", [
        (80, 40, 2.0), (60, 40, 1.5), (0, 40, 0.0), (25.7, 40, 0.6425),
    ])
    def test_examples(self, value, minimum, expected):
        assert indicator_points(value, minimum) == pytest.approx(expected, abs=1e-12)

    def test_exact_worked_examples(self):
        assert indicator_points(80, 40) == 2.0
        assert indicator_points(60, 40) == 1.5

    @pytest.mark.parametrize("minimum", [0, -3])
    def test_bad_minimum(self, minimum):
        with pytest.raises(ValueError):
            indicator_points(1, minimum)

    @given(st.floats(0, 1e6), st.floats(0.5, 1e4))
    def test_linear(self, v, m):
        assert indicator_points(2 * v, m) == pytest.approx(2 * indicator_points(v, m))


class TestRuleSets:
    def test_bundled_rule_sets_load(self):
        for name in BUNDLED_RULESETS:
            assert load_ruleset(name).name == name

    def test_proposed_values(self):
        rs = load_ruleset("proposed")
        assert {k.value: rs.minimum(k) for k in rs.kinds} == {
            "total_pubs": 40, "first_author_pubs": 20, "indexed_articles": 15,
            "independent_citations": 180, "indexed_citations": 80, "h_index": 10,
        }

    def test_current_columns(self):
        hard, applied, social = (load_ruleset(n) for n in BUNDLED_RULESETS[:3])
        assert [hard.minimum(k) for k in (K.INDEXED_ARTICLES, K.INDEXED_CITATIONS, K.H_INDEX)] == [12, 50, 9]
        assert [applied.minimum(k) for k in (K.INDEXED_ARTICLES, K.INDEXED_CITATIONS, K.H_INDEX)] == [8, 30, 8]
        assert social.minimum(K.BOOKS_MONOGRAPHS) == 2 and social.minimum(K.FOREIGN_LANGUAGE_PUBS) == 35
        assert K.INDEXED_CITATIONS not in social.kinds

    def test_invariants(self):
        with pytest.raises(ValueError, match="twice"):
            RuleSet("x", (Requirement(K.H_INDEX, 1), Requirement(K.H_INDEX, 2)))
        with pytest.raises(ValueError, match="> 0"):
            RuleSet("x", (Requirement(K.H_INDEX, 0),))
        with pytest.raises(ValueError, match="unknown indicator"):
            RuleSet.from_dict({"name": "x", "requirements": [{"kind": "patents", "minimum": 1}]})

    def test_load_from_path(self, tmp_path):
        f = tmp_path / "r.json"
        f.write_text('{"name": "mine", "requirements": [{"kind": "h_index", "minimum": 3}]}')
        assert load_ruleset(f).to_dict() == {"name": "mine", "requirements": [{"kind": "h_index", "minimum": 3.0}]}
        with pytest.raises(FileNotFoundError):
            load_ruleset(tmp_path / "missing.json")


def at_values(pubs_n, indexed_n, cites, wos_cites):
    """Single-authored records giving exact integer indicator values for researcher a."""
    ps = []
    for i in range(pubs_n):
        ps.append(solo(i, wos_indexed=i < indexed_n,
                       independent_citations=cites if i == 0 else 0,
                       wos_citations=wos_cites if i == 0 else 0))
    return corpus_of([researcher("a")], ps)


class TestScore:
    def test_mean_of_points(self):
        # proposed minima 40, 15, 180, 80 -> points 2.0, 1.0, 1.2, 0.8
        card = score_researcher("a", at_values(80, 15, 216, 64), "integer", ANALYSIS_KINDS, "proposed")
        assert [card.points[k] for k in ANALYSIS_KINDS] == pytest.approx([2.0, 1.0, 1.2, 0.8])
        assert card.cumulative == pytest.approx(1.25)
        assert card.total == pytest.approx(5.0)

    def test_at_minima(self):
        card = score_researcher("a", at_values(40, 15, 180, 80))
        assert card.cumulative == 1.0

    def test_missing_kind(self):
        with pytest.raises(IndicatorError, match="indexed_citations"):
            score_researcher("a", at_values(1, 0, 0, 0), ruleset="current-social-geography")

    def test_against_spreadsheet_oracle(self):
        rng = random.Random(7)
        rs = [researcher(f"r{i}") for i in range(10)]
        ps = []
        for j in range(60):
            members = rng.sample(rs, rng.choice([1, 1, 2, 3]))
            n = len(members) + rng.choice([0, 0, 1, 4, 9])
            authors = [f"m:{m.researcher_id}" for m in members] + [f"x:{j}-{k}" for k in range(n - len(members))]
            rng.shuffle(authors)
            wos = rng.random() < 0.4
            ps.append(pub(f"p{j}", authors, wos_indexed=wos,
                          independent_citations=rng.randint(0, 30),
                          wos_citations=rng.randint(0, 20) if wos else 0))
        corpus = corpus_of(rs, ps)
        minima = [40, 15, 180, 80]
        for frac in (False, True):
            for r in rs:
                # independent recomputation, one column per indicator
                cols = [0.0, 0.0, 0.0, 0.0]
                for p in ps:
                    if f"m:{r.researcher_id}" in p.authors:
                        w = 1 / p.author_count if frac else 1
                        cols[0] += w
                        cols[1] += w if p.wos_indexed else 0
                        cols[2] += p.independent_citations * w
                        cols[3] += p.wos_citations * w
                expected = sum(c / m for c, m in zip(cols, minima)) / 4
                card = score_researcher(r, corpus, "fractional" if frac else "integer")
                assert card.cumulative == pytest.approx(expected, rel=1e-12)


class TestEligibility:
    def test_all_above(self):
        rep = check_eligibility("a", at_values(50, 20, 200, 90), RuleSet("t", (
            Requirement(K.TOTAL_PUBS, 40), Requirement(K.INDEXED_ARTICLES, 15),
            Requirement(K.INDEPENDENT_CITATIONS, 180), Requirement(K.INDEXED_CITATIONS, 80))))
        assert rep.eligible and rep.failing == []

    def test_one_below_rejects(self):
        rep = check_eligibility("a", at_values(50, 14, 200, 90), RuleSet("t", (
            Requirement(K.TOTAL_PUBS, 40), Requirement(K.INDEXED_ARTICLES, 15),
            Requirement(K.INDEPENDENT_CITATIONS, 180))))
        assert not rep.eligible
        assert rep.failing == [K.INDEXED_ARTICLES]
        assert rep.to_dict()["verdict"] == "rejected"

    def test_exactly_at_minimum_passes(self):
        rep = check_eligibility("a", at_values(40, 0, 0, 0), RuleSet("t", (Requirement(K.TOTAL_PUBS, 40),)))
        assert rep.eligible
        assert rep.results[0].multiple == 1.0

    def test_degree_year_needed(self):
        with pytest.raises(IndicatorError, match="degree year required"):
            check_eligibility("a", at_values(3, 0, 0, 0), "current-social-geography")

    def test_default_scheme_is_integer(self):
        ps = [pub(f"p{i}", ["a", "x:b"]) for i in range(40)]
        rs = RuleSet("t", (Requirement(K.TOTAL_PUBS, 40),))
        c = corpus_of([researcher("a")], ps)
        assert check_eligibility("a", c, rs).eligible
        assert not check_eligibility("a", c, rs, "fractional").eligible


# random publication lists for a single researcher "a"
pub_lists = st.lists(
    st.tuples(st.integers(1, 12), st.integers(0, 40), st.integers(0, 40), st.booleans(),
              st.integers(2011, 2020), st.integers(0, 3)),
    max_size=20,
)


def build(rows, degree_year=2014):
    ps = []
    for i, (n, cites, wos_c, wos, year, pos) in enumerate(rows):
        authors = [f"x:{i}-{k}" for k in range(n)]
        authors[min(pos, n - 1)] = "m:a"
        ps.append(pub(f"p{i}", authors, year=year, wos_indexed=wos, independent_citations=cites,
                      wos_citations=wos_c, impact_factor=1.5 if wos else None))
    return corpus_of([researcher("a", degree_year=degree_year)], ps)


@settings(max_examples=200, deadline=None)
@given(pub_lists)
def test_integer_dominates_fractional(rows):
    c = build(rows)
    for kind in COUNT_KINDS + CITATION_KINDS + (K.CUMULATIVE_IMPACT_FACTOR,):
        assert indicator_value("a", c, kind, "integer") >= indicator_value("a", c, kind, "fractional")


@settings(max_examples=200, deadline=None)
@given(pub_lists, st.data())
def test_additive_over_partitions(rows, data):
    c = build(rows)
    auth = c.publications_of("a")
    mask = data.draw(st.lists(st.booleans(), min_size=len(auth), max_size=len(auth)))
    left = [x for x, m in zip(auth, mask) if m]
    right = [x for x, m in zip(auth, mask) if not m]
    for kind in COUNT_KINDS + CITATION_KINDS:
        for scheme in ("integer", "fractional", "harmonic"):
            whole = value_from_authorships(auth, kind, scheme, 2014)
            parts = value_from_authorships(left, kind, scheme, 2014) + value_from_authorships(right, kind, scheme, 2014)
            assert math.isclose(whole, parts, rel_tol=1e-12, abs_tol=1e-12)


@settings(max_examples=1000, deadline=None)
@given(st.lists(st.integers(0, 100), max_size=50))
def test_h_index_matches_brute_force(cites):
    h = h_index(cites)
    assert h == brute_h(cites)
    assert 0 <= h <= min(len(cites), max(cites, default=0))


@settings(max_examples=200, deadline=None)
@given(pub_lists, st.tuples(st.integers(1, 12), st.integers(0, 40), st.integers(0, 40), st.booleans(),
                            st.integers(2011, 2020), st.integers(0, 3)))
def test_adding_publication_never_flips_pass_to_fail(rows, extra):
    rules = load_ruleset("current-geo-hard")
    small = {r.kind: r.passed for r in check_eligibility("a", build(rows), rules).results}
    big = {r.kind: r.passed for r in check_eligibility("a", build(rows + [extra]), rules).results}
    assert all(big[k] for k, ok in small.items() if ok)
