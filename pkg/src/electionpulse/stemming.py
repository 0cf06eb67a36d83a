"""Porter stemmer, matching the classic ANSI-C reference behavior.

Includes the two departures that implementation made from the original
article (step 2 maps *bli -> *ble rather than *abli -> *able, and adds
*logi -> *log) plus its guard that words of length 1 or 2 are returned
unchanged.
"""

from __future__ import annotations

_VOWELS = "aeiou"


def _is_cons(word: str, i: int) -> bool:
    # 'y' counts as a vowel only when it follows a consonant.
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_cons(word, i - 1)
    return True


def _measure(word: str, end: int) -> int:
    # m of word[:end], the VC-sequence count in [C](VC)^m[V].
    i = 0
    while i < end and _is_cons(word, i):
        i += 1
    m = 0
    while True:
        while i < end and not _is_cons(word, i):
            i += 1
        if i >= end:
            return m
        m += 1
        while i < end and _is_cons(word, i):
            i += 1
        if i >= end:
            return m


def _has_vowel(word: str, end: int) -> bool:
    return any(not _is_cons(word, i) for i in range(end))


def _ends_double_cons(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_cons(word, len(word) - 1)
    )


def _cvc_at(word: str, i: int) -> bool:
    # consonant-vowel-consonant ending at i, final consonant not w, x or y.
    if i < 2 or not _is_cons(word, i) or _is_cons(word, i - 1) or not _is_cons(word, i - 2):
        return False
    return word[i] not in "wxy"


def _step1ab(word: str) -> str:
    if word.endswith("s"):
        if word.endswith("sses"):
            word = word[:-2]
        elif word.endswith("ies"):
            word = word[:-2]
        elif not word.endswith("ss"):
            word = word[:-1]
    if word.endswith("eed"):
        if _measure(word, len(word) - 3) > 0:
            word = word[:-1]
        return word
    deflexed = False
    if word.endswith("ed") and _has_vowel(word, len(word) - 2):
        word = word[:-2]
        deflexed = True
    elif word.endswith("ing") and _has_vowel(word, len(word) - 3):
        word = word[:-3]
        deflexed = True
    if deflexed:
        if word.endswith(("at", "bl", "iz")):
            word += "e"
        elif _ends_double_cons(word) and word[-1] not in "lsz":
            word = word[:-1]
        elif _measure(word, len(word)) == 1 and _cvc_at(word, len(word) - 1):
            word += "e"
    return word


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word, len(word) - 1):
        word = word[:-1] + "i"
    return word


# Ordered so that a suffix containing another ("ational"/"tional",
# "ization"/"ation") is tried first; otherwise first-match equals the
# reference switch dispatch because a suffix pins the word's last letters.
_STEP2_RULES = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("bli", "ble"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    ("logi", "log"),
)

_STEP3_RULES = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4_SUFFIXES = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _apply_rules(word: str, rules, min_measure: int) -> str:
    for suffix, replacement in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if _measure(stem, len(stem)) > min_measure:
                return stem + replacement
            return word
    return word


def _step4(word: str) -> str:
    for suffix in _STEP4_SUFFIXES:
        if not word.endswith(suffix):
            continue
        stem = word[: len(word) - len(suffix)]
        if suffix == "ion" and not stem.endswith(("s", "t")):
            continue
        if _measure(stem, len(stem)) > 1:
            return stem
        return word
    return word


def _step5(word: str) -> str:
    if word.endswith("e"):
        m = _measure(word, len(word) - 1)
        if m > 1 or (m == 1 and not _cvc_at(word, len(word) - 2)):
            word = word[:-1]
    if word.endswith("l") and _ends_double_cons(word) and _measure(word, len(word)) > 1:
        word = word[:-1]
    return word


def porter_stem(word: str) -> str:
    """Stem one lowercase alphabetic word."""
    if len(word) <= 2:
        return word
    word = _step1ab(word)
    word = _step1c(word)
    word = _apply_rules(word, _STEP2_RULES, 0)
    word = _apply_rules(word, _STEP3_RULES, 0)
    word = _step4(word)
    word = _step5(word)
    return word
