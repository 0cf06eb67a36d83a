"""Time-bucketed sentiment series, frequency tables and co-occurrence data.

The election-day window 06:00-23:59 local time is divided into eight
buckets: seven two-hour spans plus a final "20-00" span running to the
end of the day. Earlier times are out of range. Bucket cells with no
tweets are emitted as explicit empty markers (None), never as zero means:
a fabricated zero would read as neutral sentiment.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from datetime import datetime, time
from typing import NamedTuple

from ._util import ConsistencyError
from .actors import Actor, ActorSet, match_actors, sole_mention
from .preprocess import ProcessedTweet, stem
from .sentiment import SentimentScore

OUT_OF_RANGE = "out_of_range"


@dataclass(frozen=True)
class TimeBucket:
    label: str
    start: time
    end: time  # exclusive, except the final bucket which runs to day end
    final: bool = False

    def contains(self, value: time) -> bool:
        if value < self.start:
            return False
        return self.final or value < self.end


BUCKETS: tuple[TimeBucket, ...] = (
    TimeBucket("6-8", time(6), time(8)),
    TimeBucket("8-10", time(8), time(10)),
    TimeBucket("10-12", time(10), time(12)),
    TimeBucket("12-14", time(12), time(14)),
    TimeBucket("14-16", time(14), time(16)),
    TimeBucket("16-18", time(16), time(18)),
    TimeBucket("18-20", time(18), time(20)),
    TimeBucket("20-00", time(20), time(23, 59, 59), final=True),
)

BUCKET_LABELS: tuple[str, ...] = tuple(bucket.label for bucket in BUCKETS)


def bucket_of(timestamp: datetime | time) -> TimeBucket | None:
    """The bucket containing a local-time instant, or None before 06:00."""
    value = timestamp.time() if isinstance(timestamp, datetime) else timestamp
    for bucket in BUCKETS:
        if bucket.contains(value):
            return bucket
    return None


def bucket_label(timestamp: datetime | time) -> str:
    bucket = bucket_of(timestamp)
    return bucket.label if bucket is not None else OUT_OF_RANGE


class SeriesCell(NamedTuple):
    count: int
    mean_polarity_x100: float
    mean_subjectivity: float


@dataclass
class SentimentSeries:
    """Per-bucket sentiment for one actor; None cells mean no tweets."""

    actor_id: str
    cells: dict[str, SeriesCell | None]


@dataclass
class FrequencyTable:
    """Ranked (term, count) rows, counts descending, ties lexicographic."""

    key: str
    rows: list[tuple[str, int]]


def _require_record(tweet: ProcessedTweet):
    if tweet.record is None:
        raise ValueError(f"tweet {tweet.record_id!r} lacks its source record")
    return tweet.record


def avg_sentiment_series(
    tweets: Sequence[ProcessedTweet],
    scores: Sequence[SentimentScore],
    actors: ActorSet,
    scope: Sequence[str],
    scale: float = 100.0,
) -> list[SentimentSeries]:
    """Mean polarity (scaled) and subjectivity per scope actor per bucket.

    Only sole mentions count: a tweet contributes to exactly the one
    scoped actor it names alone, in the bucket of its local timestamp.
    """
    if len(tweets) != len(scores):
        raise ConsistencyError(
            f"{len(tweets)} tweets but {len(scores)} scores; inputs must align one-to-one"
        )
    sums: dict[tuple[str, str], list[float]] = {}
    for tweet, score in zip(tweets, scores):
        record = _require_record(tweet)
        bucket = bucket_of(record.created_at)
        if bucket is None:
            continue
        actor_id = sole_mention(tweet, actors, scope)
        if actor_id is None:
            continue
        cell = sums.setdefault((actor_id, bucket.label), [0, 0.0, 0.0])
        cell[0] += 1
        cell[1] += score.polarity
        cell[2] += score.subjectivity
    series = []
    for actor_id in scope:
        cells: dict[str, SeriesCell | None] = {}
        for label in BUCKET_LABELS:
            acc = sums.get((actor_id, label))
            if acc is None:
                cells[label] = None
            else:
                count = int(acc[0])
                cells[label] = SeriesCell(count, acc[1] / count * scale, acc[2] / count)
        series.append(SentimentSeries(actor_id, cells))
    return series


def term_frequencies(
    tweets: Iterable[ProcessedTweet],
    exclusions: Iterable[str] | None = None,
    top_n: int | None = None,
) -> FrequencyTable:
    """Descending term counts over the group's stemmed tokens."""
    if top_n is not None and top_n < 1:
        raise ValueError("top_n must be at least 1")
    excluded = _as_exclusion_set(exclusions)
    counts: Counter[str] = Counter()
    for tweet in tweets:
        counts.update(token for token in tweet.tokens if token.lower() not in excluded)
    rows = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return FrequencyTable(key="", rows=rows[:top_n] if top_n else rows)


def _as_exclusion_set(exclusions: Iterable[str] | None) -> set[str]:
    if exclusions is None:
        return set()
    return {word.lower() for word in exclusions}


def actor_exclusions(actors: ActorSet) -> set[str]:
    """Alias words of every configured actor, plus their stems.

    Tables rank stemmed tokens, so excluding the surface alias alone
    would still let its stem through.
    """
    words = actors.alias_words()
    return words | {stem(word) for word in words}


def cooccurrence_cloud(
    tweets: Sequence[ProcessedTweet],
    actor: Actor,
    actors: ActorSet,
    exclusions: Iterable[str] | None = None,
    top_n: int | None = None,
) -> FrequencyTable:
    """Term counts over tweets mentioning the actor, actor names excluded."""
    excluded = _as_exclusion_set(exclusions) | actor_exclusions(actors)
    matching = [
        tweet for tweet in tweets if actor.id in match_actors(tweet, actors)
    ]
    table = term_frequencies(matching, excluded, top_n)
    table.key = actor.id
    return table


def frequency_heatmap(
    tweets: Sequence[ProcessedTweet],
    actors: ActorSet,
    scope: Sequence[str],
    top_n: int | None = None,
    exclusions: Iterable[str] | None = None,
) -> dict[str, dict[str, FrequencyTable | None]]:
    """One frequency table per (scope actor, bucket) over sole-mention
    tweets; cells with no tweets are None."""
    grouped: dict[tuple[str, str], list[ProcessedTweet]] = {}
    for tweet in tweets:
        record = _require_record(tweet)
        bucket = bucket_of(record.created_at)
        if bucket is None:
            continue
        actor_id = sole_mention(tweet, actors, scope)
        if actor_id is None:
            continue
        grouped.setdefault((actor_id, bucket.label), []).append(tweet)
    matrix: dict[str, dict[str, FrequencyTable | None]] = {}
    for actor_id in scope:
        row: dict[str, FrequencyTable | None] = {}
        for label in BUCKET_LABELS:
            cell_tweets = grouped.get((actor_id, label))
            if not cell_tweets:
                row[label] = None
            else:
                table = term_frequencies(cell_tweets, exclusions, top_n)
                table.key = f"{actor_id}/{label}"
                row[label] = table
        matrix[actor_id] = row
    return matrix


def combined_avg_polarity(
    tweets: Sequence[ProcessedTweet],
    scores: Sequence[SentimentScore],
    actors: ActorSet,
    pair_ids: Sequence[str] | None = None,
) -> dict[str, float | None]:
    """Unscaled mean polarity over tweets matching each combined actor."""
    if len(tweets) != len(scores):
        raise ConsistencyError(
            f"{len(tweets)} tweets but {len(scores)} scores; inputs must align one-to-one"
        )
    ids = list(pair_ids) if pair_ids is not None else [a.id for a in actors.combined()]
    for actor_id in ids:
        if actor_id not in actors or actors[actor_id].kind != "combined":
            raise ValueError(f"{actor_id!r} is not a configured combined actor")
    sums = {actor_id: [0, 0.0] for actor_id in ids}
    for tweet, score in zip(tweets, scores):
        matched = match_actors(tweet, actors)
        for actor_id in ids:
            if actor_id in matched:
                sums[actor_id][0] += 1
                sums[actor_id][1] += score.polarity
    return {
        actor_id: (total / count if count else None)
        for actor_id, (count, total) in sums.items()
    }
