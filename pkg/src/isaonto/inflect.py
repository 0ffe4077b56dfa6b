"""English noun number inflection: an irregular table plus suffix rules."""

from __future__ import annotations

IRREGULAR_PLURALS = {
    "man": "men", "woman": "women", "child": "children", "person": "people", "foot": "feet",
    "tooth": "teeth", "goose": "geese", "mouse": "mice", "louse": "lice", "ox": "oxen",
    "die": "dice", "leaf": "leaves", "wolf": "wolves", "knife": "knives", "life": "lives",
    "wife": "wives", "half": "halves", "shelf": "shelves", "calf": "calves", "thief": "thieves",
    "loaf": "loaves", "cactus": "cacti", "fungus": "fungi", "nucleus": "nuclei", "stimulus": "stimuli",
    "bacterium": "bacteria", "criterion": "criteria", "phenomenon": "phenomena", "datum": "data",
    "medium": "media", "analysis": "analyses", "crisis": "crises", "thesis": "theses", "axis": "axes",
    "hero": "heroes", "potato": "potatoes", "tomato": "tomatoes", "echo": "echoes", "volcano": "volcanoes",
    "genus": "genera", "index": "indices", "matrix": "matrices", "appendix": "appendices",
}
# same form in singular and plural
INVARIANT = frozenset({
    "sheep", "deer", "fish", "species", "series", "aircraft", "moose", "salmon", "trout", "bison",
    "swine", "offspring", "felidae", "canidae", "news", "means", "corps",
})
_IRREGULAR_SINGULARS = {plural: singular for singular, plural in IRREGULAR_PLURALS.items()}
# words ending in -s that are already singular
_SINGULAR_S = frozenset({
    "bus", "gas", "virus", "lens", "bonus", "census", "status", "chess", "glass", "class", "grass",
    "boss", "moss", "kiss", "dress", "press", "atlas", "canvas", "iris", "octopus", "campus", "walrus",
    "is", "this", "has", "was", "its", "his", "hers", "yes", "always", "perhaps", "physics", "mathematics",
    "ethics", "athletics", "economics", "politics", "tennis", "asbestos", "citrus", "hippopotamus",
    "rhinoceros", "platypus", "thesis", "analysis", "crisis", "axis", "basis", "diagnosis",
})


def _match_case(template: str, word: str) -> str:
    if template.isupper() and len(template) > 1:
        return word.upper()
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


def singular_noun(word: str) -> str:
    """Return the singular form; words that look singular are returned unchanged."""
    lower = word.lower()
    if " " in lower:
        head, _, last = word.rpartition(" ")
        return head + " " + singular_noun(last)
    if lower in INVARIANT or lower in _SINGULAR_S or lower in IRREGULAR_PLURALS:
        return word
    if lower in _IRREGULAR_SINGULARS:
        return _match_case(word, _IRREGULAR_SINGULARS[lower])
    if len(lower) <= 2 or not lower.endswith("s") or lower.endswith(("ss", "us")):
        return word
    if lower.endswith("ies") and len(lower) > 4:
        return word[:-3] + "y"
    if lower.endswith(("ches", "shes", "xes", "zes", "sses")):
        return word[:-2]
    if lower.endswith("ses") and len(lower) > 4:
        return word[:-2] if lower[:-2].endswith("s") else word[:-1]
    if lower.endswith("oes") and len(lower) > 4:
        return word[:-2]
    return word[:-1]


def plural_noun(word: str) -> str:
    lower = word.lower()
    if " " in lower:
        head, _, last = word.rpartition(" ")
        return head + " " + plural_noun(last)
    if lower in INVARIANT:
        return word
    if lower in IRREGULAR_PLURALS:
        return _match_case(word, IRREGULAR_PLURALS[lower])
    if lower.endswith("y") and len(lower) > 1 and lower[-2] not in "aeiou":
        return word[:-1] + "ies"
    if lower.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    return word + "s"
