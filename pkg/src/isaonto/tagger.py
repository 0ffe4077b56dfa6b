"""Deterministic rule-based part-of-speech tagger.

Tags follow the Penn Treebank set with one addition: forms of "be" are
tagged ``VBX``. ``FW`` is never emitted; foreign words come out as ``NN``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptySentenceError
from .inflect import singular_noun
from .lexicon import Lexicon

BE_FORMS = frozenset({"is", "are", "am", "was", "were", "be", "been"})

CLOSED_CLASS = {
    **dict.fromkeys("a an the some all any no every each this these those either neither both another".split(), "DT"),
    **dict.fromkeys(BE_FORMS, "VBX"),
    **dict.fromkeys("will shall may might can could would should must".split(), "MD"),
    **dict.fromkeys("of as than in on for with at by from into under about like".split(), "IN"),
    **dict.fromkeys("and or but nor yet whereas although".split(), "CC"),
    "who": "WP", "whom": "WP", "which": "WDT", "that": "WDT", "when": "WRB", "where": "WRB",
    **dict.fromkeys("he she it they we i you him her them".split(), "PRP"),
    "not": "RB", "only": "RB", "also": "RB", "too": "RB", "nearly": "RB", "almost": "RB",
    "more": "RBR", "less": "RBR", "most": "RBS", "least": "RBS",
    "to": "TO", "there": "EX", "such": "PDT", "'s": "POS",
    "many": "JJ", "several": "JJ", "few": "JJ", "much": "JJ", "numerous": "JJ", "various": "JJ",
    "one": "CD", "two": "CD", "three": "CD", "four": "CD", "five": "CD", "six": "CD", "seven": "CD",
    "eight": "CD", "nine": "CD", "ten": "CD", "eleven": "CD", "twelve": "CD", "twenty": "CD", "hundred": "CD",
    "includes": "VBZ", "include": "VBP", "contains": "VBZ", "comprises": "VBZ", "happens": "VBZ",
    "belongs": "VBZ", "resembles": "VBZ", "remains": "VBZ", "become": "VB", "becomes": "VBZ", "used": "VBD",
    "known": "VBN", "considered": "VBN", "regarded": "VBN", "classified": "VBN", "going": "VBG",
}

PUNCT_TAGS = {",": ",", ".": ".", ";": ":", ":": ":", "!": ".", "?": "."}

_TOKEN_RE = re.compile(r"'s\b|[A-Za-z0-9]+(?:[-.][A-Za-z0-9]+|'(?!s\b)[A-Za-z0-9]+)*|[,.;:!?]")


@dataclass(frozen=True)
class Token:
    lexeme: str
    tag: str
    index: int = 0

    def with_(self, **changes) -> "Token":
        data = {"lexeme": self.lexeme, "tag": self.tag, "index": self.index}
        data.update(changes)
        return Token(**data)

    def __str__(self) -> str:
        return f"{self.lexeme}/{self.tag}"


def reindex(tokens: Sequence[Token]) -> list[Token]:
    return [t if t.index == i else t.with_(index=i) for i, t in enumerate(tokens)]


def tokenize(sentence: str) -> list[str]:
    return _TOKEN_RE.findall(sentence)


def detokenize(tokens: Sequence[Token | str]) -> str:
    out = ""
    for tok in tokens:
        word = tok.lexeme if isinstance(tok, Token) else tok
        if not out:
            out = word
        elif word in ("'s", ",", ".", ";", ":", "!", "?"):
            out += word
        else:
            out += " " + word
    return out


def _merge_multiwords(words: list[str], lexicon: Lexicon) -> list[tuple[str, str | None]]:
    """Collapse known multiword named entities and lexicon entries into single tokens."""
    entities = sorted((tuple(k.split()) for k in lexicon.named_entities if " " in k), key=len, reverse=True)
    phrases = lexicon.multiword_keys()
    out: list[tuple[str, str | None]] = []
    i = 0
    while i < len(words):
        matched = None
        for ent in entities:
            if tuple(words[i:i + len(ent)]) == ent:
                matched = (" ".join(ent), "NNP", len(ent))
                break
        if matched is None:
            lowered = tuple(w.lower() for w in words[i:i + 4])
            for phrase in phrases:
                if lowered[:len(phrase)] == phrase:
                    tag = lexicon.words[" ".join(phrase)].tag
                    matched = (" ".join(words[i:i + len(phrase)]), tag, len(phrase))
                    break
        if matched is not None:
            out.append((matched[0], matched[1]))
            i += matched[2]
        else:
            out.append((words[i], None))
            i += 1
    return out


def adjective_stem(word: str, lexicon: Lexicon, suffix: str) -> str | None:
    if not word.endswith(suffix) or len(word) <= len(suffix) + 1:
        return None
    base = word[: -len(suffix)]
    candidates = [base, base + "e"]
    if base.endswith("i"):
        candidates.append(base[:-1] + "y")
    if len(base) > 2 and base[-1] == base[-2]:
        candidates.append(base[:-1])
    for cand in candidates:
        entry = lexicon.word(cand)
        if entry is not None and entry.tag == "JJ":
            return cand
    return None


def tag_word(word: str, lexicon: Lexicon, initial: bool = False) -> str:
    lower = word.lower()
    if word in PUNCT_TAGS:
        return PUNCT_TAGS[word]
    if word in lexicon.named_entities:
        return "NNP"
    if lower in CLOSED_CLASS:
        return CLOSED_CLASS[lower]
    entry = lexicon.word(lower)
    if entry is not None:
        return "NN" if entry.tag == "FW" else entry.tag
    singular = singular_noun(lower)
    if singular != lower:
        entry = lexicon.word(singular)
        if entry is not None and entry.tag in ("NN", "FW"):
            return "NNS"
    if re.fullmatch(r"\d+(?:\.\d+)?", word):
        return "CD"
    if adjective_stem(lower, lexicon, "est"):
        return "JJS"
    if adjective_stem(lower, lexicon, "er"):
        return "JJR"
    if word[:1].isupper():
        # sentence-initial capitals are orthographic, so a gerund stays a gerund
        if initial and lower.endswith("ing") and len(lower) > 4:
            return "VBG"
        return "NNP"
    if lower.endswith("ing") and len(lower) > 4:
        return "VBG"
    if lower.endswith("ly") and len(lower) > 3:
        return "RB"
    if lower.endswith("s") and not lower.endswith(("ss", "us", "is")) and len(lower) > 3:
        return "NNS"
    return "NN"


def tag(sentence: str, lexicon: Lexicon) -> list[Token]:
    """Tokenize and tag one sentence."""
    if sentence is None or not sentence.strip():
        raise EmptySentenceError("empty sentence")
    merged = _merge_multiwords(tokenize(sentence), lexicon)
    tokens = []
    for i, (word, forced) in enumerate(merged):
        tokens.append(Token(word, forced or tag_word(word, lexicon, initial=i == 0), i))
    return tokens


def parse_pretagged(line: str) -> list[Token]:
    """Read ``lexeme_TAG`` tokens; underscores inside the lexeme become spaces."""
    if line is None or not line.strip():
        raise EmptySentenceError("empty sentence")
    tokens = []
    for i, item in enumerate(line.split()):
        if "_" not in item:
            raise ValueError(f"token without tag: {item!r}")
        lexeme, tg = item.rsplit("_", 1)
        lexeme = lexeme.replace("_", " ")
        tg = tg.upper()
        if tg == "FW":
            tg = "NN"
        elif tg in ("VBZ", "VBD", "VBP") and lexeme.lower() in BE_FORMS:
            tg = "VBX"
        tokens.append(Token(lexeme, tg, i))
    return tokens


def format_pretagged(tokens: Sequence[Token]) -> str:
    return " ".join(f"{t.lexeme.replace(' ', '_')}_{t.tag}" for t in tokens)
