"""Tweet stream ingestion and dataset statistics.

Reads: JSON-lines files, one tweet object per line, UTF-8. Field
locations are configurable through a dot-path table with "|"-separated
alternatives (default fits Twitter's classic payload shape).

Writes: an RFC-4180 CSV export of preprocessed tweets with one boolean
column per configured actor.

Parsing is total: a malformed line never aborts the stream, it is
counted and skipped, and lines read always equals records plus skips.
"""

from __future__ import annotations

import csv
import json
import unicodedata
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone, tzinfo
from typing import IO

from ._util import ConsistencyError, parse_timestamp, pct
from .actors import ActorSet, match_actors
from .analytics import bucket_label
from .preprocess import ProcessedTweet

# Dot paths into the line's JSON object; "|" separates alternatives tried
# in order. id, created_at and text are required for a line to count.
DEFAULT_FIELD_MAP: dict[str, str] = {
    "id": "id_str|id",
    "created_at": "created_at",
    "text": "full_text|text",
    "author": "user.screen_name",
    "retweeted": "retweeted_status",
}

# 280 characters at up to 4 UTF-8 bytes each.
MAX_TEXT_BYTES = 1120

DEFAULT_TIMEZONE = timezone(timedelta(hours=1))


@dataclass(frozen=True)
class TweetRecord:
    """One raw tweet, timestamp already normalized to the dataset timezone."""

    id: str
    created_at: datetime
    author: str
    text: str
    is_retweet: bool


@dataclass(frozen=True)
class ParseReport:
    lines_read: int
    records_produced: int
    lines_skipped: int


@dataclass(frozen=True)
class GroupCount:
    raw: int
    kept: int


@dataclass(frozen=True)
class DatasetStats:
    total_raw: int
    total_kept: int
    per_group: dict[str, GroupCount]
    coverage_pct: float


def _lookup(obj: dict, path: str):
    for alternative in path.split("|"):
        value = obj
        for key in alternative.split("."):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                value = None
                break
        if value is not None:
            return value
    return None


def _iter_lines(source) -> Iterable[bytes | str]:
    if isinstance(source, (str, bytes)):
        with open(source, "rb") as handle:
            yield from handle
        return
    yield from source


def parse_tweet_stream(
    source: str | IO[bytes] | IO[str] | Iterable[bytes | str],
    *,
    field_map: dict[str, str] | None = None,
    tz: tzinfo = DEFAULT_TIMEZONE,
) -> tuple[list[TweetRecord], ParseReport]:
    """Parse a JSON-lines stream into records plus a totality report.

    A line is skipped (never fatal) when it is not valid JSON, misses a
    required field, carries an id already seen, exceeds the text byte
    limit, or has no text left after unicode normalization. An unreadable
    source path still raises the underlying OSError.
    """
    fields = dict(DEFAULT_FIELD_MAP)
    if field_map:
        fields.update(field_map)
    records: list[TweetRecord] = []
    seen_ids: set[str] = set()
    lines_read = 0
    skipped = 0
    for raw_line in _iter_lines(source):
        lines_read += 1
        try:
            line = raw_line.decode("utf-8") if isinstance(raw_line, bytes) else raw_line
            payload = json.loads(line)
            if not isinstance(payload, dict):
                raise ValueError("line is not a JSON object")
            tweet_id = _lookup(payload, fields["id"])
            created_raw = _lookup(payload, fields["created_at"])
            text = _lookup(payload, fields["text"])
            if tweet_id is None or created_raw is None or text is None:
                raise ValueError("missing required field")
            tweet_id = str(tweet_id)
            if not tweet_id or tweet_id in seen_ids:
                raise ValueError("empty or duplicate id")
            text = unicodedata.normalize("NFC", str(text))
            if not text.strip():
                raise ValueError("empty text")
            if len(text.encode("utf-8")) > MAX_TEXT_BYTES:
                raise ValueError("oversized text")
            created_at = parse_timestamp(str(created_raw)).astimezone(tz).replace(microsecond=0)
            author = _lookup(payload, fields["author"])
            retweeted = _lookup(payload, fields["retweeted"]) is not None
            record = TweetRecord(
                id=tweet_id,
                created_at=created_at,
                author=str(author) if author is not None else "",
                text=text,
                is_retweet=retweeted or text.lstrip().startswith("RT @"),
            )
        except (ValueError, UnicodeDecodeError, TypeError, KeyError):
            skipped += 1
            continue
        seen_ids.add(record.id)
        records.append(record)
    return records, ParseReport(lines_read, len(records), skipped)


def dataset_stats(
    records: Sequence[TweetRecord],
    kept: Sequence[ProcessedTweet],
    groups: ActorSet,
) -> DatasetStats:
    """Per-actor raw/kept mention counts plus kept-population coverage.

    Group rows overlap (a tweet can mention several actors), so the
    totals are population sizes, not column sums.
    """
    record_ids = {record.id for record in records}
    for tweet in kept:
        if tweet.record_id not in record_ids:
            raise ConsistencyError(f"kept tweet {tweet.record_id!r} has no raw record")
    kept_ids = {tweet.record_id for tweet in kept}
    raw_counts = {actor.id: 0 for actor in groups}
    kept_counts = {actor.id: 0 for actor in groups}
    matched_kept = 0
    for record in records:
        matched = match_actors(record.text, groups)
        for actor_id in matched:
            raw_counts[actor_id] += 1
            if record.id in kept_ids:
                kept_counts[actor_id] += 1
        if matched and record.id in kept_ids:
            matched_kept += 1
    per_group = {
        actor.id: GroupCount(raw_counts[actor.id], kept_counts[actor.id])
        for actor in groups
    }
    return DatasetStats(
        total_raw=len(records),
        total_kept=len(kept),
        per_group=per_group,
        coverage_pct=pct(matched_kept, len(kept)),
    )


def export_records(records: Sequence[ProcessedTweet], path: str, actors: ActorSet) -> None:
    """Write one CSV row per kept tweet: id, timestamp, bucket, tokens,
    then a true/false column per configured actor."""
    header = ["id", "created_at", "bucket", "tokens"] + [actor.id for actor in actors]
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for tweet in records:
            if tweet.record is None:
                raise ValueError(f"tweet {tweet.record_id!r} lacks its source record")
            matched = match_actors(tweet.record.text, actors)
            writer.writerow(
                [
                    tweet.record_id,
                    tweet.record.created_at.isoformat(),
                    bucket_label(tweet.record.created_at),
                    " ".join(tweet.tokens),
                ]
                + ["true" if actor.id in matched else "false" for actor in actors]
            )
