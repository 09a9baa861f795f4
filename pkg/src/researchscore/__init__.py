"""Researcher performance indicators under integer and fractional counting."""
from .analytics import (
    Ranking,
    coauthorship_distribution,
    committee_share_of_top,
    committee_summary,
    composition,
    rank_researchers,
    select_top_quantile,
    years_to_threshold,
)
from .crediting import CountingScheme, allocate_credits, credit_for_member
from .indicators import (
    IndicatorKind,
    RuleSet,
    ScoreCard,
    check_eligibility,
    h_index,
    indicator_points,
    indicator_value,
    load_ruleset,
    score_researcher,
)
from .ingest import committee_of_publication, load_corpus, validate_corpus, write_corpus
from .model import Committee, Corpus, CorpusError, PublicationRecord, ResearcherProfile

__version__ = "0.1.0"
