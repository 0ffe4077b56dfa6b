"""Deterministic synthetic corpus built from the bundled vocabulary."""

from __future__ import annotations

import random

TEMPLATES = [
    "{Name} is a {adj} {noun}",
    "{Name} is a {noun}",
    "{Noun} is a kind of {noun2}",
    "{Noun} is a {adj} {noun2}",
    "Some {nouns} are {nouns2}",
    "All {nouns} are {adj}",
    "No {noun} is a {noun2}",
    "The {noun} is a {noun2}",
    "The {noun} is some {noun2}",
    "{Noun} is an {noun2} that is a {adj} {noun3}",
    "A {noun} that is {adj} is {adj2}",
    "{Noun} or {noun2} is {noun3}",
    "{Nouns}, such as {Name} and {Name2}, are {nouns2}",
    "{Name} and {Name2} are {adj} {nouns}",
    "{Name} is {number} foot tall",
    "{Name} is the tallest {noun}",
    "{Name} is the {ordinal} most {dimadj} {noun}",
    "{Name} is a more {dimadj} {noun} than {Name2}",
    "{Name} may be a {noun}",
    "{Name} is still a {noun}",
    "{Nouns} were {adj}",
    "{Noun} is a {noun2} whereas {noun3} is a {noun4}",
    "{Name} is a {noun} only",
    "{Noun} includes {nouns2} and {nouns3}",
    "{Noun} is like {noun2}",
    # sentences without an IS-A relation are rejected, not failed
    "{Nouns} eat {nouns2} near the river",
]

NUMBERS = ["two", "three", "five", "6", "7"]
ORDINALS = ["second", "third", "fourth"]


def _plural(word: str) -> str:
    if word.endswith(("s", "x", "ch", "sh")):
        return word + "es"
    if word.endswith("y") and word[-2:-1] not in "aeiou":
        return word[:-1] + "ies"
    return word + "s"


def synthetic_corpus(lexicon, size: int = 1537, seed: int = 7) -> str:
    rng = random.Random(seed)
    # regular plurals only, so the generator stays independent of the inflection tables
    nouns = sorted(
        w for w, e in lexicon.words.items()
        if e.tag == "NN" and " " not in w and w.isalpha() and not w.endswith(("s", "y", "x", "ch", "sh", "man"))
    )
    adjectives = sorted(w for w, e in lexicon.words.items() if e.tag == "JJ" and " " not in w and w.isalpha())
    names = sorted(n for n in lexicon.named_entities if " " not in n and n.isalpha())
    dimensional = ["intelligent", "popular", "beautiful", "brave", "happy"]
    lines = []
    for _ in range(size):
        # sorted picks keep part-of definitions acyclic (a whole never includes an earlier word)
        picks = sorted(rng.sample(nouns, 4))
        adj = rng.sample(adjectives, 2)
        who = rng.sample(names, 2)
        fields = {
            "Name": who[0],
            "Name2": who[1],
            "noun": picks[0],
            "noun2": picks[1],
            "noun3": picks[2],
            "noun4": picks[3],
            "Noun": picks[0].capitalize(),
            "nouns": _plural(picks[0]),
            "nouns2": _plural(picks[1]),
            "nouns3": _plural(picks[2]),
            "Nouns": _plural(picks[0]).capitalize(),
            "adj": adj[0],
            "adj2": adj[1],
            "dimadj": rng.choice(dimensional),
            "number": rng.choice(NUMBERS),
            "ordinal": rng.choice(ORDINALS),
        }
        lines.append(rng.choice(TEMPLATES).format(**fields))
    return "\n".join(lines) + "\n"
