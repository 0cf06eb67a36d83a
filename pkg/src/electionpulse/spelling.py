"""Edit-distance spelling correction against a unigram frequency table.

Candidate generation follows the well-known Norvig construction (deletes,
transpositions, replacements, inserts over a-z). Unlike that original,
distance-1 candidates get no priority here: the winner is the
highest-frequency dictionary word within distance 2, ties broken
lexicographically, so corrections are order-independent and reproducible.
"""

from __future__ import annotations

import string
from collections.abc import Mapping

_LETTERS = string.ascii_lowercase


def load_dictionary(path: str) -> dict[str, int]:
    """Read a "word<TAB>count" table; blank lines and '#' comments allowed."""
    table: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            word, _, count = line.partition("\t")
            table[word.strip().lower()] = int(count.strip()) if count.strip() else 1
    return table


def edits1(word: str) -> set[str]:
    splits = [(word[:i], word[i:]) for i in range(len(word) + 1)]
    deletes = [left + right[1:] for left, right in splits if right]
    transposes = [left + right[1] + right[0] + right[2:] for left, right in splits if len(right) > 1]
    replaces = [left + ch + right[1:] for left, right in splits if right for ch in _LETTERS]
    inserts = [left + ch + right for left, right in splits for ch in _LETTERS]
    return set(deletes + transposes + replaces + inserts)


def correct_spelling(token: str, dictionary: Mapping[str, int]) -> str:
    """Best dictionary word within edit distance 2, or the token itself.

    Identity when the token is already in the dictionary, when the
    dictionary is empty, or when nothing lies within distance 2.
    """
    if not dictionary or token in dictionary:
        return token
    near = edits1(token)
    candidates = {word for word in near if word in dictionary}
    for variant in near:
        candidates.update(word for word in edits1(variant) if word in dictionary)
    if not candidates:
        return token
    return min(candidates, key=lambda word: (-dictionary[word], word))
