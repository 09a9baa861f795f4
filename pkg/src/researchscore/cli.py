"""Command-line entry point.

Exit codes: 0 success, 1 domain failure (unknown researcher, missing
degree year, rule set without a required indicator, fatal validation
findings), 2 unreadable or malformed input.

Every global option can also be set through an environment variable named
``RESEARCHSCORE_<OPTION>``, e.g. ``RESEARCHSCORE_WINDOW=2011:2020``.
"""
from __future__ import annotations

import functools
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click

from . import analytics, reports
from .crediting import DEFAULT_SCHEMES, CountingScheme
from .indicators import ANALYSIS_KINDS, IndicatorError, IndicatorKind, check_eligibility, load_ruleset, score_researcher
from .ingest import FATAL, issues_to_json, load_corpus, validate_corpus
from .model import DEFAULT_WINDOW, CorpusError, UnknownResearcherError

ENV_PREFIX = "RESEARCHSCORE"
SCHEME_CHOICES = ["integer", "fractional", "arithmetic", "geometric", "harmonic", "first-author", "both"]

logger = logging.getLogger("researchscore")


@dataclass
class RunConfig:
    researchers: Optional[Path]
    publications: Optional[Path]
    window: tuple[int, int]
    scheme: Optional[str]
    ruleset: str
    scoring_kinds: tuple[IndicatorKind, ...]
    quantile: float
    format: str
    out: Path

    def schemes(self, default) -> list[CountingScheme]:
        if self.scheme is None:
            return list(default)
        if self.scheme == "both":
            return list(DEFAULT_SCHEMES)
        return [CountingScheme.parse(self.scheme)]

    def corpus(self, strict=True):
        if self.researchers is None or self.publications is None:
            raise click.UsageError("--researchers and --publications are required")
        return load_corpus(self.researchers, self.publications, self.window, strict=strict)


class DomainFailure(Exception):
    """Raised to finish a command with exit code 1."""


def parse_window(ctx, param, value):
    if isinstance(value, tuple):
        return value
    try:
        start, end = (int(x) for x in value.split(":"))
    except ValueError:
        raise click.BadParameter("expected START:END, e.g. 2011:2020") from None
    if start > end:
        raise click.BadParameter(f"empty window {value}")
    return start, end


def parse_kinds(ctx, param, value):
    if not value:
        return ANALYSIS_KINDS
    try:
        return tuple(IndicatorKind.parse(k.strip()) for k in value.split(","))
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except (CorpusError, OSError, json.JSONDecodeError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except (DomainFailure, UnknownResearcherError, IndicatorError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
    return wrapper


def write_files(out: Path, files: dict[str, str]) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for name, content in files.items():
        (out / name).write_text(content, encoding="utf-8", newline="")
        logger.info("wrote %s", out / name)


@click.group(context_settings={"auto_envvar_prefix": ENV_PREFIX})
@click.option("--researchers", type=click.Path(path_type=Path), help="Researcher CSV file.")
@click.option("--publications", type=click.Path(path_type=Path), help="Publication JSON Lines file.")
@click.option("--window", default=f"{DEFAULT_WINDOW[0]}:{DEFAULT_WINDOW[1]}", callback=parse_window,
              show_default=True, help="Inclusive year range START:END.")
@click.option("--scheme", type=click.Choice(SCHEME_CHOICES), default=None,
              help="Counting scheme; 'both' means integer and fractional.")
@click.option("--ruleset", default="proposed", show_default=True,
              help="Bundled rule-set name or path to a rule-set JSON file.")
@click.option("--kinds", "scoring_kinds", default="", callback=parse_kinds,
              help="Comma-separated scoring indicators (default: the four analysis indicators).")
@click.option("--quantile", type=click.FloatRange(0, 1, min_open=True), default=0.25, show_default=True,
              help="Top-group fraction of the ranking.")
@click.option("--format", "fmt", type=click.Choice(reports.FORMATS), default="csv", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=Path("reports"), show_default=True,
              help="Output directory.")
@click.option("-v", "--verbose", is_flag=True)
@click.pass_context
def cli(ctx, researchers, publications, window, scheme, ruleset, scoring_kinds, quantile, fmt, out, verbose):
    """Score researchers' publication records under integer and fractional counting."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(message)s")
    ctx.obj = RunConfig(researchers, publications, window, scheme, ruleset, scoring_kinds,
                        quantile, fmt, out)


@cli.command()
@click.pass_obj
@handle_errors
def validate(cfg: RunConfig):
    """Load the corpus and write validation_report.json."""
    issues = validate_corpus(cfg.corpus(strict=False))
    write_files(cfg.out, {"validation_report.json": issues_to_json(issues)})
    fatal = sum(1 for i in issues if i.severity == FATAL)
    click.echo(f"{fatal} fatal, {len(issues) - fatal} warnings", err=True)
    if fatal:
        sys.exit(1)


@cli.command()
@click.pass_obj
@handle_errors
def stats(cfg: RunConfig):
    """Co-authorship distribution and per-committee publication statistics."""
    corpus = cfg.corpus()
    tables = reports.coauthorship_tables(analytics.coauthorship_distribution(corpus))
    tables.append(reports.summary_table(analytics.committee_summary(corpus)))
    if cfg.format == "plotdata":
        series = [(f"coauthorship_{b}", tables[0], b) for b in analytics.BIN_LABELS]
        series += [(c, tables[2], c) for c in reports.SUMMARY_COLUMNS[1:]]
        tables = [reports.long_form(series)]
        tables[0].name = "plotdata_stats"
        write_files(cfg.out, reports.render(tables, "csv"))
    else:
        write_files(cfg.out, reports.render(tables, cfg.format))


@cli.command()
@click.pass_obj
@handle_errors
def rank(cfg: RunConfig):
    """Rankings, top-quantile groups, composition and committee shares."""
    corpus = cfg.corpus()
    ruleset = load_ruleset(cfg.ruleset)
    tables, plot_series, groups = [], [], {}
    for scheme in cfg.schemes(DEFAULT_SCHEMES):
        s = scheme.value
        ranking = analytics.rank_researchers(corpus, scheme, cfg.scoring_kinds, ruleset)
        top = analytics.select_top_quantile(ranking, cfg.quantile)
        groups[scheme] = top
        comp = reports.composition_table(analytics.composition(top, corpus), f"composition_{s}")
        share = reports.share_table(analytics.committee_share_of_top(top, corpus), f"committee_share_{s}")
        tables += [reports.ranking_table(ranking, f"ranking_{s}"), reports.ranking_table(top, f"top_{s}"),
                   comp, share]
        plot_series += [(f"composition_{s}", comp, "percent"), (f"committee_share_{s}", share, "percent")]
    if set(DEFAULT_SCHEMES) <= set(groups):
        deltas = analytics.scheme_delta(groups[CountingScheme.INTEGER], groups[CountingScheme.FRACTIONAL], corpus)
        tables.append(reports.delta_table(deltas))
    if cfg.format == "plotdata":
        plot = reports.long_form(plot_series)
        plot.name = "plotdata_rank"
        write_files(cfg.out, reports.render([plot], "csv"))
    else:
        write_files(cfg.out, reports.render(tables, cfg.format))


@cli.command()
@click.pass_obj
@handle_errors
def score(cfg: RunConfig):
    """Per-researcher indicator values, points and cumulative points."""
    corpus = cfg.corpus()
    ruleset = load_ruleset(cfg.ruleset)
    tables = []
    for scheme in cfg.schemes(DEFAULT_SCHEMES):
        cards = [score_researcher(r, corpus, scheme, cfg.scoring_kinds, ruleset) for r in corpus.researchers]
        tables.append(reports.scorecard_table(cards, f"scorecards_{scheme.value}"))
    write_files(cfg.out, reports.render(tables, "json" if cfg.format == "json" else "csv"))


@cli.command()
@click.argument("researcher_id")
@click.pass_obj
@handle_errors
def eligibility(cfg: RunConfig, researcher_id):
    """Check one researcher against every minimum of the rule set."""
    if cfg.scheme == "both":
        raise click.BadParameter("eligibility takes a single scheme", param_hint="--scheme")
    corpus = cfg.corpus()
    scheme = cfg.schemes([CountingScheme.INTEGER])[0]
    report = check_eligibility(researcher_id, corpus, load_ruleset(cfg.ruleset), scheme)
    name = f"eligibility_{researcher_id}"
    if cfg.format == "json":
        files = {f"{name}.json": json.dumps(report.to_dict(), indent=2) + "\n"}
    else:
        files = reports.render([reports.eligibility_table(report, name)], "csv")
    write_files(cfg.out, files)
    verdict = report.to_dict()["verdict"]
    failing = ", ".join(k.value for k in report.failing)
    click.echo(f"{researcher_id}: {verdict}" + (f" (failing: {failing})" if failing else ""))


@cli.command()
@click.option("--minimum", type=float, required=True, help="Indicator minimum, e.g. 15 articles.")
@click.option("--rate", type=float, required=True, help="Items achieved per year.")
@click.pass_obj
@handle_errors
def project(cfg: RunConfig, minimum, rate):
    """Years needed to reach MINIMUM at a constant annual RATE."""
    years = analytics.years_to_threshold(minimum, rate)
    if cfg.format == "json":
        click.echo(json.dumps({"minimum": minimum, "annual_rate": rate, "years": years}))
    else:
        click.echo(f"{years:.1f}")


def main():  # pragma: no cover
    cli(prog_name="researchscore")


if __name__ == "__main__":  # pragma: no cover
    main()
