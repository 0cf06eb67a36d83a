"""Polarity and subjectivity scoring plus a Naive Bayes classifier.

Two lexicon engines share one scoring contract:

- ``pattern``: a word-level lemma table of (polarity, subjectivity)
  pairs, averaged over matched tokens, with a 2-token negation window
  that flips a matched word's polarity sign and halves its magnitude.
- ``swn``: a SentiWordNet-3.0-format sense lexicon; per-word positive and
  negative scores are rank-weighted averages over senses (weight
  1/sense_rank), polarity is the mean of (pos - neg) over matched tokens,
  and subjectivity is 1 minus the mean objectivity of matched tokens.

The Naive Bayes classifier is the multinomial, Laplace-smoothed textbook
construction and exists alongside the lexicon engines because label
assignment and continuous scoring serve different analyses; the two are
never derived from each other.
"""

from __future__ import annotations

import csv
import math
from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import IO

from ._util import pct
from .preprocess import ProcessedTweet

ENGINES = ("pattern", "swn")

POSITIVE = "positive"
NEUTRAL = "neutral"
NEGATIVE = "negative"
SUBJECTIVE = "subjective"
OBJECTIVE = "objective"

_SUM_TOLERANCE = 1e-6
_POS_TAGS = frozenset("navr")


@dataclass(frozen=True)
class SentimentScore:
    """Polarity in [-1, 1] and subjectivity in [0, 1]; checked on construction."""

    polarity: float
    subjectivity: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.polarity <= 1.0:
            raise ValueError(f"polarity {self.polarity} outside [-1, 1]")
        if not 0.0 <= self.subjectivity <= 1.0:
            raise ValueError(f"subjectivity {self.subjectivity} outside [0, 1]")


@dataclass(frozen=True)
class SenseEntry:
    """One sense of one lemma; Pos + Neg + Obj = 1 within 1e-6."""

    lemma: str
    pos_tag: str
    sense_rank: int
    pos_score: float
    neg_score: float
    obj_score: float

    def __post_init__(self) -> None:
        if self.pos_tag not in _POS_TAGS:
            raise ValueError(f"pos_tag {self.pos_tag!r} not one of n, v, a, r")
        if self.sense_rank < 1:
            raise ValueError(f"sense_rank {self.sense_rank} must be positive")
        for name, score in (
            ("pos_score", self.pos_score),
            ("neg_score", self.neg_score),
            ("obj_score", self.obj_score),
        ):
            if not 0.0 <= score <= 1.0:
                raise ValueError(f"{name} {score} outside [0, 1]")
        total = self.pos_score + self.neg_score + self.obj_score
        if abs(total - 1.0) > _SUM_TOLERANCE:
            raise ValueError(f"scores sum to {total}, not 1")


@dataclass(frozen=True)
class PatternEntry:
    lemma: str
    polarity: float
    subjectivity: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.polarity <= 1.0:
            raise ValueError(f"polarity {self.polarity} outside [-1, 1]")
        if not 0.0 <= self.subjectivity <= 1.0:
            raise ValueError(f"subjectivity {self.subjectivity} outside [0, 1]")


@dataclass
class SenseLexicon:
    """Sense entries indexed by lemma, plus load-time rejection counts."""

    entries: list[SenseEntry] = field(default_factory=list)
    rows_read: int = 0
    rows_rejected: int = 0

    def __post_init__(self) -> None:
        self._by_lemma: dict[str, list[SenseEntry]] = defaultdict(list)
        for entry in self.entries:
            self._by_lemma[entry.lemma].append(entry)

    def senses(self, lemma: str) -> list[SenseEntry]:
        return self._by_lemma.get(lemma.lower(), [])

    def __contains__(self, lemma: str) -> bool:
        return lemma.lower() in self._by_lemma

    def __len__(self) -> int:
        return len(self.entries)


def load_sense_lexicon(source: str | IO[str] | Iterable[str]) -> SenseLexicon:
    """Parse a SentiWordNet-3.0-format TSV file.

    Columns: pos tag, synset id, PosScore, NegScore, space-separated
    "lemma#rank" terms, gloss. Obj is derived as 1 - Pos - Neg. A row
    whose scores break the sum-to-1 invariant, or that is otherwise
    malformed, is rejected whole and counted; loading never aborts on a
    bad row.
    """
    if isinstance(source, str):
        with open(source, encoding="utf-8") as handle:
            return _parse_sense_rows(handle)
    return _parse_sense_rows(source)


def _parse_sense_rows(lines: Iterable[str]) -> SenseLexicon:
    entries: list[SenseEntry] = []
    rows_read = 0
    rejected = 0
    for raw in lines:
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rows_read += 1
        parts = line.split("\t")
        try:
            if len(parts) < 5:
                raise ValueError("too few columns")
            pos_tag = parts[0].strip()
            pos_score = float(parts[2])
            neg_score = float(parts[3])
            obj_score = 1.0 - pos_score - neg_score
            terms = parts[4].split()
            if not terms:
                raise ValueError("no terms")
            row_entries = []
            for term in terms:
                lemma, _, rank = term.rpartition("#")
                row_entries.append(
                    SenseEntry(
                        lemma=lemma.lower(),
                        pos_tag=pos_tag,
                        sense_rank=int(rank),
                        pos_score=pos_score,
                        neg_score=neg_score,
                        obj_score=obj_score,
                    )
                )
        except ValueError:
            rejected += 1
            continue
        entries.extend(row_entries)
    return SenseLexicon(entries=entries, rows_read=rows_read, rows_rejected=rejected)


def swn_word_sentiment(lexicon: SenseLexicon, lemma: str) -> tuple[float, float] | None:
    """Rank-weighted (pos, neg) over every sense of the lemma, or None.

    Senses across all pos tags participate; each contributes with weight
    1/sense_rank and the result is normalized by the total weight.
    """
    senses = lexicon.senses(lemma)
    if not senses:
        return None
    total_weight = 0.0
    pos = 0.0
    neg = 0.0
    for sense in senses:
        weight = 1.0 / sense.sense_rank
        total_weight += weight
        pos += sense.pos_score * weight
        neg += sense.neg_score * weight
    return pos / total_weight, neg / total_weight


def swn_polarity(tokens: Sequence[str], lexicon: SenseLexicon) -> float:
    """Mean of (pos - neg) over tokens found in the lexicon; 0 if none."""
    values = []
    for token in tokens:
        scores = swn_word_sentiment(lexicon, token)
        if scores is not None:
            values.append(scores[0] - scores[1])
    if not values:
        return 0.0
    return _clamp(sum(values) / len(values), -1.0, 1.0)


def swn_subjectivity(tokens: Sequence[str], lexicon: SenseLexicon) -> float:
    """1 - mean objectivity over matched tokens; 0 when nothing matches."""
    values = []
    for token in tokens:
        scores = swn_word_sentiment(lexicon, token)
        if scores is not None:
            values.append(scores[0] + scores[1])
    if not values:
        return 0.0
    return _clamp(sum(values) / len(values), 0.0, 1.0)


def load_pattern_lexicon(source: str | IO[str] | Iterable[str]) -> dict[str, PatternEntry]:
    """Read a "lemma,polarity,subjectivity" CSV (header optional).

    Duplicate lemma rows are averaged into a single entry.
    """
    if isinstance(source, str):
        with open(source, encoding="utf-8", newline="") as handle:
            return _parse_pattern_rows(handle)
    return _parse_pattern_rows(source)


def _parse_pattern_rows(lines) -> dict[str, PatternEntry]:
    collected: dict[str, list[tuple[float, float]]] = defaultdict(list)
    for row in csv.reader(lines):
        if not row or not row[0].strip() or row[0].lstrip().startswith("#"):
            continue
        lemma = row[0].strip().lower()
        if len(row) < 3:
            raise ValueError(f"pattern lexicon row for {lemma!r} has fewer than 3 columns")
        try:
            polarity, subjectivity = float(row[1]), float(row[2])
        except ValueError:
            if lemma == "lemma":  # header row
                continue
            raise ValueError(f"pattern lexicon row for {lemma!r} has non-numeric scores")
        collected[lemma].append((polarity, subjectivity))
    lexicon = {}
    for lemma, pairs in collected.items():
        polarity = sum(p for p, _ in pairs) / len(pairs)
        subjectivity = sum(s for _, s in pairs) / len(pairs)
        lexicon[lemma] = PatternEntry(lemma, polarity, subjectivity)
    return lexicon


def load_negators(path: str) -> frozenset[str]:
    """One negator word per line; blank lines and '#' comments allowed."""
    words = set()
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if line and not line.startswith("#"):
                words.add(line.lower())
    return frozenset(words)


def pattern_score(
    tokens: Sequence[str],
    lexicon: Mapping[str, PatternEntry],
    negators: frozenset[str] | set[str] = frozenset(),
) -> SentimentScore:
    """Mean lexicon polarity/subjectivity over matched tokens.

    A negator within the two tokens preceding a matched word flips that
    word's polarity sign and halves its magnitude; subjectivity is never
    negated. No matches at all score (0, 0).
    """
    polarity_values = []
    subjectivity_values = []
    for index, token in enumerate(tokens):
        entry = lexicon.get(token)
        if entry is None:
            continue
        value = entry.polarity
        if any(prior in negators for prior in tokens[max(0, index - 2) : index]):
            value = -value / 2.0
        polarity_values.append(value)
        subjectivity_values.append(entry.subjectivity)
    if not polarity_values:
        return SentimentScore(0.0, 0.0)
    polarity = _clamp(sum(polarity_values) / len(polarity_values), -1.0, 1.0)
    subjectivity = _clamp(sum(subjectivity_values) / len(subjectivity_values), 0.0, 1.0)
    return SentimentScore(polarity, subjectivity)


def score_all(
    tweets: Sequence[ProcessedTweet],
    engine: str,
    *,
    pattern_lexicon: Mapping[str, PatternEntry] | None = None,
    negators: frozenset[str] | set[str] = frozenset(),
    sense_lexicon: SenseLexicon | None = None,
) -> tuple[list[float], list[float]]:
    """Score every tweet with one engine; outputs align with the input."""
    if engine not in ENGINES:
        raise ValueError(f"engine {engine!r} not one of {ENGINES}")
    polarity_vals: list[float] = []
    subjectivity_vals: list[float] = []
    for tweet in tweets:
        if engine == "pattern":
            if pattern_lexicon is None:
                raise ValueError("pattern engine needs a pattern lexicon")
            score = pattern_score(tweet.tokens, pattern_lexicon, negators)
        else:
            if sense_lexicon is None:
                raise ValueError("swn engine needs a sense lexicon")
            score = SentimentScore(
                swn_polarity(tweet.tokens, sense_lexicon),
                swn_subjectivity(tweet.tokens, sense_lexicon),
            )
        polarity_vals.append(score.polarity)
        subjectivity_vals.append(score.subjectivity)
    return polarity_vals, subjectivity_vals


def polarity_class(score: float) -> str:
    """positive above zero, negative below, neutral at exactly zero."""
    if not -1.0 <= score <= 1.0:
        raise ValueError(f"polarity {score} outside [-1, 1]")
    if score > 0.0:
        return POSITIVE
    if score < 0.0:
        return NEGATIVE
    return NEUTRAL


def subjectivity_class(score: float, threshold: float = 0.5) -> str:
    """subjective strictly above the threshold, objective otherwise."""
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"subjectivity {score} outside [0, 1]")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    return SUBJECTIVE if score > threshold else OBJECTIVE


@dataclass
class NBCModel:
    """Multinomial Naive Bayes with Laplace smoothing.

    likelihoods[label][word] = (count(word, label) + alpha) /
    (count(label) + alpha * |V|) for every vocabulary word, so each
    label's likelihoods sum to exactly 1.
    """

    class_priors: dict[str, float]
    word_likelihoods: dict[str, dict[str, float]]
    vocabulary: frozenset[str]
    alpha: float

    def __post_init__(self) -> None:
        prior_sum = sum(self.class_priors.values())
        if abs(prior_sum - 1.0) > 1e-9:
            raise ValueError(f"priors sum to {prior_sum}, not 1")
        for label, table in self.word_likelihoods.items():
            total = sum(table.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"likelihoods for {label!r} sum to {total}, not 1")

    @property
    def labels(self) -> list[str]:
        return sorted(self.class_priors)


def nbc_train(docs: Sequence[tuple[Sequence[str], str]], alpha: float = 1.0) -> NBCModel:
    """Train from (tokens, label) pairs.

    Requires a positive smoothing constant and at least two distinct
    labels with at least one document each.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    docs = list(docs)
    if not docs:
        raise ValueError("cannot train on an empty corpus")
    label_docs: Counter[str] = Counter()
    word_counts: dict[str, Counter[str]] = defaultdict(Counter)
    vocabulary: set[str] = set()
    for tokens, label in docs:
        label_docs[label] += 1
        for token in tokens:
            word_counts[label][token] += 1
            vocabulary.add(token)
    if len(label_docs) < 2:
        raise ValueError("training needs at least two distinct labels")
    total_docs = len(docs)
    priors = {label: count / total_docs for label, count in label_docs.items()}
    vocab_size = len(vocabulary)
    likelihoods: dict[str, dict[str, float]] = {}
    for label in label_docs:
        label_total = sum(word_counts[label].values())
        denominator = label_total + alpha * vocab_size
        likelihoods[label] = {
            word: (word_counts[label][word] + alpha) / denominator
            for word in vocabulary
        }
    return NBCModel(
        class_priors=priors,
        word_likelihoods=likelihoods,
        vocabulary=frozenset(vocabulary),
        alpha=alpha,
    )


def nbc_classify(model: NBCModel, tokens: Sequence[str]) -> tuple[str, float]:
    """Argmax label under log prior plus log likelihoods, with its
    normalized posterior.

    Out-of-vocabulary tokens are skipped; an empty or fully unknown token
    list reduces to the prior. Exact score ties go to the
    lexicographically smallest label.
    """
    labels = model.labels
    log_scores = []
    for label in labels:
        score = math.log(model.class_priors[label])
        table = model.word_likelihoods[label]
        for token in tokens:
            if token in model.vocabulary:
                score += math.log(table[token])
        log_scores.append(score)
    peak = max(log_scores)
    weights = [math.exp(score - peak) for score in log_scores]
    total = sum(weights)
    best_index = log_scores.index(peak)
    return labels[best_index], weights[best_index] / total


@dataclass(frozen=True)
class PolarityDistribution:
    """(positive, neutral, negative) counts with half-up 2-decimal percentages."""

    counts: tuple[int, int, int]
    percentages: tuple[float, float, float]

    @property
    def total(self) -> int:
        return sum(self.counts)


def distribution(labels: Iterable[str]) -> PolarityDistribution:
    """Tally polarity classes into counts and percentages."""
    counts = Counter(labels)
    unknown = set(counts) - {POSITIVE, NEUTRAL, NEGATIVE}
    if unknown:
        raise ValueError(f"unknown polarity classes: {sorted(unknown)}")
    ordered = (counts[POSITIVE], counts[NEUTRAL], counts[NEGATIVE])
    total = sum(ordered)
    return PolarityDistribution(
        counts=ordered,
        percentages=tuple(pct(count, total) for count in ordered),
    )


def compare_classifiers(
    tweets: Sequence[ProcessedTweet],
    *,
    pattern_lexicon: Mapping[str, PatternEntry],
    negators: frozenset[str] | set[str] = frozenset(),
    sense_lexicon: SenseLexicon,
) -> dict[str, PolarityDistribution]:
    """Polarity distributions of both engines over one tweet population."""
    table = {}
    for engine in ENGINES:
        polarity_vals, _ = score_all(
            tweets,
            engine,
            pattern_lexicon=pattern_lexicon,
            negators=negators,
            sense_lexicon=sense_lexicon,
        )
        table[engine] = distribution(polarity_class(value) for value in polarity_vals)
    return table


def _clamp(value: float, low: float, high: float) -> float:
    return max(low, min(high, value))
