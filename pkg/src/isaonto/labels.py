"""Helpers for turning lexemes into concept and individual names."""

from __future__ import annotations

import re

_SPLIT = re.compile(r"[\s\-]+")


def capitalize_word(word: str) -> str:
    """Upper-case the first letter and keep the rest untouched."""
    return word[:1].upper() + word[1:] if word else word


def camel_label(words) -> str:
    """Join words camel-style: ``["student", "body member"]`` -> ``StudentBodyMember``."""
    pieces = []
    for word in words:
        for part in _SPLIT.split(str(word)):
            if part:
                pieces.append(capitalize_word(part))
    return "".join(pieces)


def lower_first(label: str) -> str:
    return label[:1].lower() + label[1:] if label else label


def individual_name(lexeme: str) -> str:
    """Proper nouns become individuals with underscores for spaces."""
    return "_".join(part for part in lexeme.split() if part)


def split_camel(label: str) -> list[str]:
    """Split a camel-case concept label back into lowercase words."""
    label = label.replace("_", " ")
    words = re.findall(r"[A-Z]+(?![a-z])|[A-Z]?[a-z]+|\d+", label)
    return [w.lower() for w in words]
