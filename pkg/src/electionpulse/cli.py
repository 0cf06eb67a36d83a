"""Command-line orchestration and artifact emission.

Every subcommand shares one validated configuration, so all analyses run
over the same preprocessed tweet population. Artifacts are written to a
staging directory and moved into the output directory only when the run
succeeds, so a failed run never leaves partial outputs. A run manifest
is written on success and failure alike; it is the only artifact that
contains wall-clock timestamps, keeping the data artifacts byte-stable
across reruns with the same inputs and seed.

Exit codes: 0 success, 1 pipeline failure, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import shutil
import sys
import tempfile
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__, analytics, topics
from .actors import match_actors
from .config import ConfigError, RunConfig, validate_config
from .ingest import (
    DatasetStats,
    ParseReport,
    dataset_stats,
    export_records,
    parse_tweet_stream,
)
from .preprocess import (
    PipelineConfig,
    ProcessedTweet,
    load_stopwords,
    preprocess_pipeline,
    process_text,
)
from .sentiment import (
    SenseLexicon,
    SentimentScore,
    compare_classifiers,
    load_negators,
    load_pattern_lexicon,
    load_sense_lexicon,
    nbc_train,
    polarity_class,
    score_all,
    subjectivity_class,
)
from .spelling import load_dictionary
from ._util import sha256_file

SUBCOMMANDS = (
    "ingest",
    "sentiment",
    "compare",
    "counts",
    "cloud",
    "timeseries",
    "heatmap",
    "topics",
    "train-nbc",
    "all",
)

_ALL_STAGES = (
    "ingest",
    "sentiment",
    "compare",
    "counts",
    "cloud",
    "timeseries",
    "heatmap",
    "topics",
)


@dataclass
class _RunState:
    """Everything a stage needs, loaded once per run."""

    config: RunConfig
    pipeline: PipelineConfig
    records: list = field(default_factory=list)
    report: ParseReport | None = None
    kept: list[ProcessedTweet] = field(default_factory=list)
    stats: DatasetStats | None = None
    pattern_lexicon: dict = field(default_factory=dict)
    negators: frozenset = frozenset()
    sense_lexicon: SenseLexicon | None = None
    scores: list[SentimentScore] = field(default_factory=list)
    stages: list[dict] = field(default_factory=list)


def _load_state(config: RunConfig) -> _RunState:
    stopwords = load_stopwords(config.stopwords_path)
    if config.extra_stopwords_from_actors:
        stopwords = stopwords.with_extra(config.actor_set.alias_words())
    dictionary = load_dictionary(config.dictionary_path) if config.dictionary_path else {}
    pipeline = PipelineConfig(
        stopwords=stopwords,
        dictionary=dictionary,
        spellcheck=config.spellcheck,
        stemming=config.stemming,
    )
    state = _RunState(config=config, pipeline=pipeline)
    state.pattern_lexicon = load_pattern_lexicon(config.pattern_lexicon_path)
    state.negators = load_negators(config.negators_path)
    state.sense_lexicon = load_sense_lexicon(config.sense_lexicon_path)
    return state


def _timed(state: _RunState, name: str, worker, count_of=len):
    started = time.perf_counter()
    result = worker()
    state.stages.append(
        {
            "name": name,
            "records": count_of(result) if result is not None else 0,
            "seconds": round(time.perf_counter() - started, 6),
        }
    )
    return result


def _ingest(state: _RunState) -> None:
    config = state.config

    def worker():
        records, report = parse_tweet_stream(
            config.input_path, field_map=config.field_map, tz=config.tz
        )
        state.records = records
        state.report = report
        return records

    _timed(state, "ingest", worker)

    def preprocess_worker():
        state.kept = [
            tweet
            for tweet in (
                preprocess_pipeline(record, state.pipeline) for record in state.records
            )
            if tweet is not None
        ]
        return state.kept

    _timed(state, "preprocess", preprocess_worker)
    state.stats = dataset_stats(state.records, state.kept, config.actor_set)


def _score(state: _RunState) -> list[SentimentScore]:
    if not state.scores:
        polarity_vals, subjectivity_vals = score_all(
            state.kept,
            state.config.engine,
            pattern_lexicon=state.pattern_lexicon,
            negators=state.negators,
            sense_lexicon=state.sense_lexicon,
        )
        state.scores = [
            SentimentScore(p, s) for p, s in zip(polarity_vals, subjectivity_vals)
        ]
    return state.scores


def _write_json(path: str, payload) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")


def _stage_tweets_csv(state: _RunState, staging: str) -> None:
    export_records(state.kept, os.path.join(staging, "tweets.csv"), state.config.actor_set)


def _stage_scores_csv(state: _RunState, staging: str) -> None:
    scores = _score(state)
    threshold = state.config.subjectivity_threshold
    with open(os.path.join(staging, "scores.csv"), "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["id", "polarity", "subjectivity", "polarity_class", "subjectivity_class"])
        for tweet, score in zip(state.kept, scores):
            writer.writerow(
                [
                    tweet.record_id,
                    repr(score.polarity),
                    repr(score.subjectivity),
                    polarity_class(score.polarity),
                    subjectivity_class(score.subjectivity, threshold),
                ]
            )


def _stage_compare_csv(state: _RunState, staging: str) -> None:
    table = compare_classifiers(
        state.kept,
        pattern_lexicon=state.pattern_lexicon,
        negators=state.negators,
        sense_lexicon=state.sense_lexicon,
    )
    with open(os.path.join(staging, "compare.csv"), "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "engine",
                "positive_count",
                "neutral_count",
                "negative_count",
                "positive_pct",
                "neutral_pct",
                "negative_pct",
            ]
        )
        for engine in sorted(table):
            dist = table[engine]
            writer.writerow(
                [engine, *dist.counts, *(f"{value:.2f}" for value in dist.percentages)]
            )


def _stage_counts_json(state: _RunState, staging: str) -> None:
    scores = _score(state)
    combined = analytics.combined_avg_polarity(state.kept, scores, state.config.actor_set)
    stats = state.stats
    payload = {
        "total_raw": stats.total_raw,
        "total_kept": stats.total_kept,
        "coverage_pct": stats.coverage_pct,
        "per_group": {
            actor_id: {"raw": group.raw, "kept": group.kept}
            for actor_id, group in stats.per_group.items()
        },
        "combined_avg_polarity": combined,
        "parse": {
            "lines_read": state.report.lines_read,
            "records": state.report.records_produced,
            "skipped": state.report.lines_skipped,
        },
    }
    _write_json(os.path.join(staging, "counts.json"), payload)


def _stage_clouds_json(state: _RunState, staging: str, actor_id: str | None) -> None:
    actor_set = state.config.actor_set
    if actor_id:
        chosen = [actor_set[actor_id]]
    else:
        chosen = [actor for actor in actor_set if actor.kind == "candidate"]
    payload = {}
    for actor in chosen:
        table = analytics.cooccurrence_cloud(state.kept, actor, actor_set)
        payload[actor.id] = [[term, count] for term, count in table.rows]
    _write_json(os.path.join(staging, "clouds.json"), payload)


def _stage_timeseries_csv(state: _RunState, staging: str) -> None:
    scores = _score(state)
    series = analytics.avg_sentiment_series(
        state.kept,
        scores,
        state.config.actor_set,
        state.config.scope,
        scale=state.config.polarity_scale,
    )
    with open(os.path.join(staging, "timeseries.csv"), "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["actor", "bucket", "count", "mean_polarity_x100", "mean_subjectivity"])
        for row in series:
            for label in analytics.BUCKET_LABELS:
                cell = row.cells[label]
                if cell is None:
                    writer.writerow([row.actor_id, label, 0, "", ""])
                else:
                    writer.writerow(
                        [
                            row.actor_id,
                            label,
                            cell.count,
                            repr(cell.mean_polarity_x100),
                            repr(cell.mean_subjectivity),
                        ]
                    )


def _stage_heatmap_json(state: _RunState, staging: str) -> None:
    matrix = analytics.frequency_heatmap(
        state.kept,
        state.config.actor_set,
        state.config.scope,
        top_n=state.config.heatmap_top_n,
    )
    payload = {
        actor_id: {
            label: None if table is None else [[term, count] for term, count in table.rows]
            for label, table in row.items()
        }
        for actor_id, row in matrix.items()
    }
    _write_json(os.path.join(staging, "heatmap.json"), payload)


def _stage_topics_json(state: _RunState, staging: str, group: str | None) -> None:
    config = state.config
    tweets = state.kept
    if group:
        tweets = [
            tweet for tweet in tweets if group in match_actors(tweet, config.actor_set)
        ]
    corpus = topics.build_corpus(
        tweets, min_doc_len=config.min_doc_len, provenance=group or "all"
    )
    model = topics.lda_fit(
        corpus,
        k=config.lda_k,
        alpha=config.lda_alpha,
        beta=config.lda_beta,
        iterations=config.lda_iterations,
        seed=config.seed,
    )
    report = topics.topic_report(model, config.top_words, config.topic_labels)
    payload = {
        "group": group or "all",
        "k": config.lda_k,
        "alpha": config.lda_alpha,
        "beta": config.lda_beta,
        "iterations": config.lda_iterations,
        "seed": config.seed,
        "top_words": config.top_words,
        "dropped_docs": corpus.dropped_docs,
        "topics": [
            {
                "id": entry.topic_id,
                "label": entry.label,
                "keywords": [[term, weight] for term, weight in entry.keywords],
            }
            for entry in report.entries
        ],
    }
    _write_json(os.path.join(staging, "topics.json"), payload)


def _stage_nbc_model(state: _RunState, staging: str, alpha: float) -> None:
    corpus_path = state.config.nbc_corpus_path
    docs = []
    with open(corpus_path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        for row in reader:
            if not row or row[0].strip().lower() == "label":
                continue
            label, text = row[0].strip(), row[1]
            tokens, _ = process_text(text, state.pipeline)
            docs.append((tokens, label))
    model = nbc_train(docs, alpha)
    payload = {
        "alpha": model.alpha,
        "labels": model.labels,
        "priors": model.class_priors,
        "likelihoods": model.word_likelihoods,
        "vocabulary": sorted(model.vocabulary),
    }
    _write_json(os.path.join(staging, "nbc_model.json"), payload)


def run(subcommand: str, config: RunConfig, options: dict | None = None) -> int:
    """Execute one subcommand; returns the process exit code."""
    options = options or {}
    if subcommand not in SUBCOMMANDS:
        raise ValueError(f"unknown subcommand {subcommand!r}")
    started_at = datetime.now(timezone.utc)
    started_clock = time.perf_counter()
    os.makedirs(config.output_dir, exist_ok=True)
    staging = tempfile.mkdtemp(prefix=".staging-", dir=config.output_dir)
    status = "ok"
    error = None
    state = None
    try:
        state = _load_state(config)
        _ingest(state)
        stages = _ALL_STAGES if subcommand == "all" else (subcommand,)
        for stage in stages:
            if stage == "ingest":
                _timed(state, "export", lambda: _stage_tweets_csv(state, staging), lambda _: len(state.kept))
            elif stage == "sentiment":
                _timed(state, "score", lambda: _stage_scores_csv(state, staging), lambda _: len(state.kept))
            elif stage == "compare":
                _timed(state, "compare", lambda: _stage_compare_csv(state, staging), lambda _: len(state.kept))
            elif stage == "counts":
                _timed(state, "counts", lambda: _stage_counts_json(state, staging), lambda _: len(config.actor_set))
            elif stage == "cloud":
                _timed(state, "cloud", lambda: _stage_clouds_json(state, staging, options.get("actor")), lambda _: len(state.kept))
            elif stage == "timeseries":
                _timed(state, "timeseries", lambda: _stage_timeseries_csv(state, staging), lambda _: len(config.scope))
            elif stage == "heatmap":
                _timed(state, "heatmap", lambda: _stage_heatmap_json(state, staging), lambda _: len(config.scope))
            elif stage == "topics":
                _timed(state, "topics", lambda: _stage_topics_json(state, staging, options.get("group")), lambda _: config.lda_k)
            elif stage == "train-nbc":
                _timed(state, "train-nbc", lambda: _stage_nbc_model(state, staging, options.get("alpha") or 1.0), lambda _: 1)
        for name in sorted(os.listdir(staging)):
            os.replace(os.path.join(staging, name), os.path.join(config.output_dir, name))
    except Exception as exc:  # pipeline failure: no partial artifacts, manifest only
        status = "failed"
        error = f"{type(exc).__name__}: {exc}"
    finally:
        shutil.rmtree(staging, ignore_errors=True)
    manifest = {
        "tool": f"electionpulse {__version__}",
        "subcommand": subcommand,
        "status": status,
        "error": error,
        "config": config.snapshot,
        "seed": config.seed,
        "input_digest": "sha256:" + sha256_file(config.input_path),
        "started_at": started_at.isoformat(),
        "finished_at": datetime.now(timezone.utc).isoformat(),
        "total_seconds": round(time.perf_counter() - started_clock, 6),
        "stages": state.stages if state else [],
        "dataset": _dataset_section(state),
    }
    _write_json(os.path.join(config.output_dir, "manifest.json"), manifest)
    if status != "ok":
        print(f"error: {error}", file=sys.stderr)
        return 1
    return 0


def _dataset_section(state: _RunState | None) -> dict | None:
    if state is None or state.stats is None:
        return None
    return {
        "lines_read": state.report.lines_read,
        "lines_skipped": state.report.lines_skipped,
        "total_raw": state.stats.total_raw,
        "total_kept": state.stats.total_kept,
        "coverage_pct": state.stats.coverage_pct,
    }


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="config.ini", help="run configuration INI file")
    common.add_argument("--input", help="override the input JSON-lines path")
    common.add_argument("--timezone", help="override the dataset timezone")
    common.add_argument("--field-map", action="append", default=[], metavar="FIELD=PATH",
                        help="override one ingest field path (repeatable)")
    common.add_argument("--stopwords", help="override the stopword list path")
    common.add_argument("--extra-stopwords-from-actors", action="store_true", default=None,
                        help="also treat actor and party names as stopwords")
    common.add_argument("--no-spellcheck", action="store_true", help="skip spelling correction")
    common.add_argument("--no-stem", action="store_true", help="skip stemming")
    common.add_argument("--engine", choices=["pattern", "swn"], help="sentiment engine")
    common.add_argument("--output", help="override the output directory")
    common.add_argument("--seed", type=int, help="override the random seed")

    parser = argparse.ArgumentParser(
        prog="electionpulse",
        description="Batch analytics over election tweet streams.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    subparsers.add_parser("ingest", parents=[common], help="parse, preprocess and export tweets")
    subparsers.add_parser("sentiment", parents=[common], help="per-tweet polarity and subjectivity")
    subparsers.add_parser("compare", parents=[common], help="polarity distributions of both engines")
    subparsers.add_parser("counts", parents=[common], help="dataset and per-actor mention counts")
    cloud = subparsers.add_parser("cloud", parents=[common], help="co-occurring words per actor")
    cloud.add_argument("--actor", help="emit the cloud for this actor only")
    subparsers.add_parser("timeseries", parents=[common], help="bucketed sentiment series")
    heatmap = subparsers.add_parser("heatmap", parents=[common], help="per-actor per-bucket term tables")
    heatmap.add_argument("--top-n", type=int, help="rows per heatmap cell")
    topics_cmd = subparsers.add_parser("topics", parents=[common], help="LDA topic report")
    topics_cmd.add_argument("--group", help="restrict the corpus to tweets mentioning this actor")
    topics_cmd.add_argument("--k", type=int, help="topic count")
    topics_cmd.add_argument("--alpha", type=float, help="doc-topic smoothing")
    topics_cmd.add_argument("--beta", type=float, help="topic-word smoothing")
    topics_cmd.add_argument("--iters", type=int, help="Gibbs sweeps")
    topics_cmd.add_argument("--top-words", type=int, help="keywords per topic")
    train = subparsers.add_parser("train-nbc", parents=[common], help="train the Naive Bayes model")
    train.add_argument("--alpha", type=float, default=1.0, help="Laplace smoothing constant")
    subparsers.add_parser("all", parents=[common], help="run the full pipeline")
    return parser


def _overrides_from_args(args: argparse.Namespace) -> dict:
    overrides: dict = {}
    if args.input:
        overrides["input.path"] = args.input
    if args.timezone:
        overrides["input.timezone"] = args.timezone
    if args.stopwords:
        overrides["preprocess.stopwords"] = args.stopwords
    if args.extra_stopwords_from_actors:
        overrides["preprocess.extra_stopwords_from_actors"] = "true"
    if args.no_spellcheck:
        overrides["preprocess.spellcheck"] = "false"
    if args.no_stem:
        overrides["preprocess.stem"] = "false"
    if args.engine:
        overrides["sentiment.engine"] = args.engine
    if args.output:
        overrides["output.dir"] = args.output
    if args.seed is not None:
        overrides["run.seed"] = str(args.seed)
    for item in getattr(args, "field_map", []):
        name, _, dotted = item.partition("=")
        overrides[f"fields.{name.strip()}"] = dotted.strip()
    if getattr(args, "top_n", None) is not None:
        overrides["analytics.top_n"] = str(args.top_n)
    if getattr(args, "k", None) is not None:
        overrides["topics.k"] = str(args.k)
    if getattr(args, "alpha", None) is not None and args.subcommand == "topics":
        overrides["topics.alpha"] = str(args.alpha)
    if getattr(args, "beta", None) is not None:
        overrides["topics.beta"] = str(args.beta)
    if getattr(args, "iters", None) is not None:
        overrides["topics.iterations"] = str(args.iters)
    if getattr(args, "top_words", None) is not None:
        overrides["topics.top_words"] = str(args.top_words)
    return overrides


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = validate_config(args.config, _overrides_from_args(args))
    except ConfigError as exc:
        for diagnostic in exc.diagnostics:
            print(f"config error: {diagnostic}", file=sys.stderr)
        return 2
    options = {
        "actor": getattr(args, "actor", None),
        "group": getattr(args, "group", None),
        "alpha": getattr(args, "alpha", None) if args.subcommand == "train-nbc" else None,
    }
    if options["actor"] and options["actor"] not in config.actor_set:
        print(f"config error: --actor {options['actor']!r} is not configured", file=sys.stderr)
        return 2
    if options["group"] and options["group"] not in config.actor_set:
        print(f"config error: --group {options['group']!r} is not configured", file=sys.stderr)
        return 2
    if args.subcommand == "train-nbc" and not config.nbc_corpus_path:
        print("config error: [lexicons] nbc_corpus is required for train-nbc", file=sys.stderr)
        return 2
    return run(args.subcommand, config, options)


if __name__ == "__main__":
    sys.exit(main())
