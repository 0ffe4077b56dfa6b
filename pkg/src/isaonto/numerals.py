"""Spelled-out cardinal numbers, in both directions."""

from __future__ import annotations

_ONES = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
         "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"]
_TENS = ["", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"]
_ORDINALS = ["zeroth", "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth",
             "eleventh", "twelfth"]


def to_words(n: int) -> str:
    """0 <= n < 10**9, hyphenated tens: 42 -> 'forty-two'."""
    if n < 0 or n >= 10 ** 9:
        raise ValueError(f"out of range: {n}")
    if n < 20:
        return _ONES[n]
    if n < 100:
        tens, rest = divmod(n, 10)
        return _TENS[tens] + (f"-{_ONES[rest]}" if rest else "")
    for size, name in ((10 ** 6, "million"), (1000, "thousand"), (100, "hundred")):
        if n >= size:
            high, rest = divmod(n, size)
            return f"{to_words(high)}-{name}" + (f"-{to_words(rest)}" if rest else "")
    raise AssertionError("unreachable")


_VALUES = {w: i for i, w in enumerate(_ONES)}
_VALUES.update({w: 10 * i for i, w in enumerate(_TENS) if w})
_SCALES = {"hundred": 100, "thousand": 1000, "million": 10 ** 6}


def from_words(text: str) -> int | None:
    """Inverse of :func:`to_words`; returns None for anything else."""
    parts = text.lower().replace(" ", "-").split("-")
    if not parts or any(p not in _VALUES and p not in _SCALES for p in parts):
        return None
    total, current = 0, 0
    for part in parts:
        if part in _VALUES:
            current += _VALUES[part]
        elif part == "hundred":
            current = max(current, 1) * 100
        else:
            total += max(current, 1) * _SCALES[part]
            current = 0
    return total + current


def ordinal_value(word: str) -> int | None:
    word = word.lower()
    if word in _ORDINALS:
        return _ORDINALS.index(word)
    if word[:-2].isdigit() and word[-2:] in ("st", "nd", "rd", "th"):
        return int(word[:-2])
    return None
