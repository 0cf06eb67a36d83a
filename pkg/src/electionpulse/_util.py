"""Shared helpers: percentage rounding, timestamp parsing, file digests."""

from __future__ import annotations

import hashlib
import re
from datetime import datetime, timedelta, timezone
from decimal import ROUND_HALF_UP, Decimal
from zoneinfo import ZoneInfo

# Twitter's classic created_at layout: "Sat Nov 18 09:31:00 +0000 2017".
# Parsed by hand so the result does not depend on the process locale.
_TWITTER_TS_RE = re.compile(
    r"^[A-Za-z]{3} (?P<mon>[A-Za-z]{3}) (?P<day>\d{1,2}) "
    r"(?P<h>\d{2}):(?P<m>\d{2}):(?P<s>\d{2}) "
    r"(?P<sign>[+-])(?P<oh>\d{2})(?P<om>\d{2}) (?P<year>\d{4})$"
)
_MONTHS = {
    "Jan": 1, "Feb": 2, "Mar": 3, "Apr": 4, "May": 5, "Jun": 6,
    "Jul": 7, "Aug": 8, "Sep": 9, "Oct": 10, "Nov": 11, "Dec": 12,
}

_OFFSET_RE = re.compile(r"^(?P<sign>[+-])(?P<h>\d{2}):?(?P<m>\d{2})$")


class ConsistencyError(ValueError):
    """Two inputs that must describe the same population do not."""


def pct(count: int, total: int) -> float:
    """100*count/total rounded half-up to 2 decimals; 0.0 for an empty total."""
    if total == 0:
        return 0.0
    share = Decimal(count) * 100 / Decimal(total)
    return float(share.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def parse_timezone(value: str) -> timezone | ZoneInfo:
    """Accept a fixed offset like "+01:00" or an IANA name like "Africa/Lagos"."""
    m = _OFFSET_RE.match(value.strip())
    if m:
        delta = timedelta(hours=int(m.group("h")), minutes=int(m.group("m")))
        if m.group("sign") == "-":
            delta = -delta
        return timezone(delta)
    return ZoneInfo(value.strip())


def parse_timestamp(value: str) -> datetime:
    """Parse a Twitter-format or ISO-8601 timestamp into an aware datetime.

    Raises ValueError for anything else, including naive ISO inputs: every
    record must carry an explicit UTC offset so local-time bucketing is
    well defined.
    """
    m = _TWITTER_TS_RE.match(value.strip())
    if m:
        offset = timedelta(hours=int(m.group("oh")), minutes=int(m.group("om")))
        if m.group("sign") == "-":
            offset = -offset
        return datetime(
            int(m.group("year")),
            _MONTHS[m.group("mon").title()],
            int(m.group("day")),
            int(m.group("h")),
            int(m.group("m")),
            int(m.group("s")),
            tzinfo=timezone(offset),
        )
    iso = value.strip()
    if iso.endswith(("Z", "z")):
        iso = iso[:-1] + "+00:00"
    parsed = datetime.fromisoformat(iso)
    if parsed.tzinfo is None:
        raise ValueError(f"timestamp lacks a UTC offset: {value!r}")
    return parsed


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()
