"""Run configuration: one INI file drives every subcommand.

All paths in the file are resolved relative to the file's own directory,
so a config travels with its fixtures. Validation is exhaustive: every
violation is collected and reported together, not just the first one.
Precedence for the random seed is CLI flag, then the ELECTIONPULSE_SEED
environment variable, then the config file.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from datetime import tzinfo
from typing import Any

from ._util import parse_timezone
from .actors import ActorConfigError, ActorSet, load_actor_file
from .sentiment import ENGINES

ENV_SEED = "ELECTIONPULSE_SEED"


class ConfigError(Exception):
    """Invalid run configuration; carries every diagnostic found."""

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


@dataclass
class RunConfig:
    input_path: str
    timezone_name: str
    tz: tzinfo
    field_map: dict[str, str]
    actors_path: str
    actor_set: ActorSet
    scope: list[str]
    pattern_lexicon_path: str
    sense_lexicon_path: str
    negators_path: str
    nbc_corpus_path: str | None
    stopwords_path: str
    dictionary_path: str | None
    spellcheck: bool
    stemming: bool
    extra_stopwords_from_actors: bool
    engine: str
    subjectivity_threshold: float
    polarity_scale: float
    lda_k: int
    lda_alpha: float
    lda_beta: float
    lda_iterations: int
    top_words: int
    min_doc_len: int
    topic_labels: dict[int, str]
    heatmap_top_n: int
    output_dir: str
    seed: int
    snapshot: dict[str, Any] = field(default_factory=dict)


def validate_config(path: str, overrides: dict[str, Any] | None = None) -> RunConfig:
    """Load and validate a config file, applying CLI overrides first.

    Raises ConfigError listing every violation; an unreadable file is a
    single-diagnostic ConfigError.
    """
    overrides = dict(overrides or {})
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError([f"cannot read config file {path!r}: {exc}"]) from exc
    except configparser.Error as exc:
        raise ConfigError([f"cannot parse config file {path!r}: {exc}"]) from exc

    base_dir = os.path.dirname(os.path.abspath(path))
    diagnostics: list[str] = []

    def resolve(value: str | None) -> str | None:
        if value is None:
            return None
        return value if os.path.isabs(value) else os.path.join(base_dir, value)

    def get(section: str, key: str, fallback: str | None = None) -> str | None:
        value = overrides.get(f"{section}.{key}")
        if value is not None:
            return str(value)
        raw = parser.get(section, key, fallback=fallback)
        return raw.strip() if isinstance(raw, str) else raw

    def get_number(section: str, key: str, fallback: str, cast, constraint, description: str):
        raw = get(section, key, fallback)
        try:
            value = cast(raw)
        except (TypeError, ValueError):
            diagnostics.append(f"[{section}] {key} = {raw!r} is not a valid {cast.__name__}")
            return cast(fallback)
        if not constraint(value):
            diagnostics.append(f"[{section}] {key} = {value} {description}")
        return value

    def get_bool(section: str, key: str, fallback: bool) -> bool:
        raw = get(section, key, None)
        if raw is None:
            return fallback
        lowered = str(raw).strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        diagnostics.append(f"[{section}] {key} = {raw!r} is not a boolean")
        return fallback

    def require_path(section: str, key: str, label: str) -> str | None:
        value = get(section, key)
        if not value:
            diagnostics.append(f"[{section}] {key} is required ({label})")
            return None
        resolved = resolve(value)
        if not os.path.isfile(resolved):
            diagnostics.append(f"[{section}] {key}: no such file: {resolved}")
        return resolved

    input_path = require_path("input", "path", "JSON-lines tweet stream")
    timezone_name = get("input", "timezone", "+01:00")
    tz = None
    try:
        tz = parse_timezone(timezone_name)
    except Exception as exc:  # bad offset syntax or unknown zone name
        diagnostics.append(f"[input] timezone = {timezone_name!r} is not recognized: {exc}")

    field_map = {}
    if parser.has_section("fields"):
        field_map = dict(parser.items("fields"))

    actors_path = require_path("actors", "path", "actor definitions")
    actor_set = None
    if actors_path and os.path.isfile(actors_path):
        try:
            actor_set = load_actor_file(actors_path)
        except ActorConfigError as exc:
            diagnostics.extend(f"[actors] {message}" for message in exc.diagnostics)
        except (OSError, configparser.Error, ValueError) as exc:
            diagnostics.append(f"[actors] cannot load {actors_path}: {exc}")

    scope = [item.strip() for item in (get("actors", "scope", "") or "").split(",") if item.strip()]
    if actor_set is not None:
        for actor_id in scope:
            if actor_id not in actor_set:
                diagnostics.append(f"[actors] scope id {actor_id!r} is not a configured actor")
    if not scope and actor_set is not None:
        scope = [actor.id for actor in actor_set.combined()]

    pattern_path = require_path("lexicons", "pattern", "pattern lexicon CSV")
    senses_path = require_path("lexicons", "senses", "sense lexicon TSV")
    negators_path = require_path("lexicons", "negators", "negator word list")
    nbc_corpus_path = get("lexicons", "nbc_corpus")
    if nbc_corpus_path:
        nbc_corpus_path = resolve(nbc_corpus_path)
        if not os.path.isfile(nbc_corpus_path):
            diagnostics.append(f"[lexicons] nbc_corpus: no such file: {nbc_corpus_path}")

    stopwords_path = require_path("preprocess", "stopwords", "stopword list")
    spellcheck = get_bool("preprocess", "spellcheck", True)
    stemming = get_bool("preprocess", "stem", True)
    extra_stop = get_bool("preprocess", "extra_stopwords_from_actors", False)
    dictionary_path = get("preprocess", "dictionary")
    if dictionary_path:
        dictionary_path = resolve(dictionary_path)
        if not os.path.isfile(dictionary_path):
            diagnostics.append(f"[preprocess] dictionary: no such file: {dictionary_path}")
    elif spellcheck:
        diagnostics.append("[preprocess] dictionary is required when spellcheck is on")

    engine = (get("sentiment", "engine", "pattern") or "pattern").lower()
    if engine not in ENGINES:
        diagnostics.append(f"[sentiment] engine = {engine!r} must be one of {', '.join(ENGINES)}")
    threshold = get_number(
        "sentiment", "subjectivity_threshold", "0.5", float,
        lambda v: 0.0 <= v <= 1.0, "must lie in [0, 1]",
    )
    scale = get_number(
        "sentiment", "polarity_scale", "100", float,
        lambda v: v > 0, "must be positive",
    )

    lda_k = get_number("topics", "k", "5", int, lambda v: v >= 1, "must be at least 1")
    lda_alpha = get_number("topics", "alpha", "0.1", float, lambda v: v > 0, "must be positive")
    lda_beta = get_number("topics", "beta", "0.01", float, lambda v: v > 0, "must be positive")
    lda_iterations = get_number(
        "topics", "iterations", "500", int, lambda v: v >= 1, "must be at least 1"
    )
    top_words = get_number("topics", "top_words", "10", int, lambda v: v >= 1, "must be at least 1")
    min_doc_len = get_number(
        "topics", "min_doc_len", "1", int, lambda v: v >= 1, "must be at least 1"
    )

    topic_labels: dict[int, str] = {}
    if parser.has_section("topic_labels"):
        for key, value in parser.items("topic_labels"):
            try:
                topic_id = int(key)
            except ValueError:
                diagnostics.append(f"[topic_labels] key {key!r} is not a topic id")
                continue
            if not 0 <= topic_id < lda_k:
                diagnostics.append(
                    f"[topic_labels] topic {topic_id} does not exist (k = {lda_k})"
                )
                continue
            topic_labels[topic_id] = value.strip()

    heatmap_top_n = get_number(
        "analytics", "top_n", "10", int, lambda v: v >= 1, "must be at least 1"
    )

    output_dir = resolve(get("output", "dir", "out") or "out")

    seed_raw = get("run", "seed", "0")
    if "run.seed" not in overrides and os.environ.get(ENV_SEED):
        seed_raw = os.environ[ENV_SEED]
    try:
        seed = int(seed_raw)
    except (TypeError, ValueError):
        diagnostics.append(f"seed {seed_raw!r} is not an integer")
        seed = 0

    if diagnostics:
        raise ConfigError(diagnostics)

    snapshot = {
        "input": {"path": input_path, "timezone": timezone_name, "field_map": field_map},
        "actors": {"path": actors_path, "scope": scope},
        "lexicons": {
            "pattern": pattern_path,
            "senses": senses_path,
            "negators": negators_path,
            "nbc_corpus": nbc_corpus_path,
        },
        "preprocess": {
            "stopwords": stopwords_path,
            "dictionary": dictionary_path,
            "spellcheck": spellcheck,
            "stem": stemming,
            "extra_stopwords_from_actors": extra_stop,
        },
        "sentiment": {
            "engine": engine,
            "subjectivity_threshold": threshold,
            "polarity_scale": scale,
        },
        "topics": {
            "k": lda_k,
            "alpha": lda_alpha,
            "beta": lda_beta,
            "iterations": lda_iterations,
            "top_words": top_words,
            "min_doc_len": min_doc_len,
            "labels": {str(k): v for k, v in sorted(topic_labels.items())},
        },
        "analytics": {"top_n": heatmap_top_n},
        "output": {"dir": output_dir},
        "run": {"seed": seed},
    }
    return RunConfig(
        input_path=input_path,
        timezone_name=timezone_name,
        tz=tz,
        field_map=field_map,
        actors_path=actors_path,
        actor_set=actor_set,
        scope=scope,
        pattern_lexicon_path=pattern_path,
        sense_lexicon_path=senses_path,
        negators_path=negators_path,
        nbc_corpus_path=nbc_corpus_path,
        stopwords_path=stopwords_path,
        dictionary_path=dictionary_path,
        spellcheck=spellcheck,
        stemming=stemming,
        extra_stopwords_from_actors=extra_stop,
        engine=engine,
        subjectivity_threshold=threshold,
        polarity_scale=scale,
        lda_k=lda_k,
        lda_alpha=lda_alpha,
        lda_beta=lda_beta,
        lda_iterations=lda_iterations,
        top_words=top_words,
        min_doc_len=min_doc_len,
        topic_labels=topic_labels,
        heatmap_top_n=heatmap_top_n,
        output_dir=output_dir,
        seed=seed,
        snapshot=snapshot,
    )
