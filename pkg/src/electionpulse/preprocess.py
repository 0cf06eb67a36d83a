"""Tweet text preprocessing: clean, tokenize, correct, filter, stem.

The pipeline runs the steps in that fixed order so that spelling
correction sees surface words (never stems) and stemming sees only
dictionary-corrected, stopword-free tokens. Retweets are rejected before
any text work.
"""

from __future__ import annotations

import re
import unicodedata
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .spelling import correct_spelling
from .stemming import porter_stem

if TYPE_CHECKING:
    from .ingest import TweetRecord

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@\w+")

# Spell-correct only out-of-dictionary tokens at least this long; shorter
# ones are mostly acronyms and short names that a corrector would mangle.
MIN_CORRECTION_LENGTH = 4


@dataclass(frozen=True)
class ProcessedTweet:
    """Final token list for one kept tweet plus its source record."""

    record_id: str
    tokens: tuple[str, ...]
    raw_token_count: int
    record: "TweetRecord | None" = None


@dataclass
class StopwordSet:
    """Base function words plus optional per-analysis extra words.

    Lookup is case-insensitive. The extra set (typically actor and party
    names) participates only when ``include_extra`` is set.
    """

    base: frozenset[str] = frozenset()
    extra: frozenset[str] = frozenset()
    include_extra: bool = False

    def __contains__(self, token: str) -> bool:
        folded = token.lower()
        return folded in self.base or (self.include_extra and folded in self.extra)

    def with_extra(self, words: Iterable[str], include: bool = True) -> "StopwordSet":
        extra = frozenset(w.lower() for w in words)
        return StopwordSet(self.base, self.extra | extra, include)


def load_stopwords(path: str) -> StopwordSet:
    """One lowercase word per line; blank lines and '#' comments allowed."""
    words = set()
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if line and not line.startswith("#"):
                words.add(line.lower())
    return StopwordSet(base=frozenset(words))


def clean(text: str) -> str:
    """Strip URLs, @mentions, '#' marks and non-text symbols; lowercase.

    Letters, digits, punctuation and whitespace survive; everything else
    (emoji, dingbats, control characters) is dropped outright. Removals
    never substitute a space, so no removal can split one token in two.
    Whitespace is collapsed to single spaces.
    """
    text = _URL_RE.sub("", text)
    text = _MENTION_RE.sub("", text)
    text = text.replace("#", "")
    kept = [
        ch for ch in text
        if ch.isspace() or unicodedata.category(ch)[0] in "LMNP"
    ]
    return " ".join("".join(kept).lower().split())


def is_retweet(record: "TweetRecord") -> bool:
    """True when the source marked a retweet or the text is an "RT @..."."""
    return bool(record.is_retweet) or record.text.lstrip().startswith("RT @")


def _strip_edge_punctuation(token: str) -> str:
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(token[end - 1]).startswith("P"):
        end -= 1
    return token[start:end]


def tokenize(text: str) -> list[str]:
    """Split cleaned text on whitespace and trim punctuation off token edges.

    Interior punctuation (the apostrophe in "don't") is kept; tokens that
    were punctuation-only disappear.
    """
    tokens = []
    for raw in text.split():
        token = _strip_edge_punctuation(raw)
        if token:
            tokens.append(token)
    return tokens


def stem(token: str) -> str:
    """Porter stem for plain ASCII-alphabetic tokens; anything else passes through."""
    if token.isascii() and token.isalpha():
        return porter_stem(token)
    return token


@dataclass
class PipelineConfig:
    """Knobs the preprocessing pipeline needs from the run configuration."""

    stopwords: StopwordSet = field(default_factory=StopwordSet)
    dictionary: Mapping[str, int] = field(default_factory=dict)
    spellcheck: bool = True
    stemming: bool = True


def process_text(text: str, config: PipelineConfig) -> tuple[list[str], int]:
    """The token steps alone: returns (final tokens, count before filtering)."""
    tokens = tokenize(clean(text))
    raw_count = len(tokens)
    if config.spellcheck:
        tokens = [
            correct_spelling(tok, config.dictionary)
            if len(tok) >= MIN_CORRECTION_LENGTH and tok not in config.dictionary
            else tok
            for tok in tokens
        ]
    tokens = [tok for tok in tokens if tok not in config.stopwords]
    if config.stemming:
        tokens = [stem(tok) for tok in tokens]
    return tokens, raw_count


def preprocess_pipeline(record: "TweetRecord", config: PipelineConfig) -> ProcessedTweet | None:
    """Run clean -> tokenize -> correct -> filter -> stem on one record.

    Returns None (rejected) for retweets and for tweets with no tokens
    left after filtering.
    """
    if is_retweet(record):
        return None
    tokens, raw_count = process_text(record.text, config)
    if not tokens:
        return None
    return ProcessedTweet(
        record_id=record.id,
        tokens=tuple(tokens),
        raw_token_count=raw_count,
        record=record,
    )
