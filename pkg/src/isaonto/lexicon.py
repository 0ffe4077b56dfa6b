"""Lexical resources: IS-A variants, quantifiers, clausals, hypernyms, synonyms,
named entities, dimensional adjectives and units."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import LexiconLoadError
from .labels import camel_label


class IsaKind(str, Enum):
    Hyponymy = "Hyponymy"
    Hypernymy = "Hypernymy"
    SameAs = "SameAs"
    Like = "Like"
    SuchAs = "SuchAs"
    Includes = "Includes"
    MayBe = "MayBe"
    CanBecome = "CanBecome"
    CanBe = "CanBe"
    IsNow = "IsNow"
    IsStill = "IsStill"
    IsSometimes = "IsSometimes"
    WasPast = "WasPast"
    WillBeFuture = "WillBeFuture"


class QuantifierKind(str, Enum):
    A = "A"
    The = "The"
    Some = "Some"
    All = "All"
    No = "No"
    Only = "Only"
    SuchAs = "SuchAs"


class ClauseKind(str, Enum):
    ThatIs = "ThatIs"
    When = "When"
    Where = "Where"
    Whereas = "Whereas"
    Counterfactual = "Counterfactual"
    SuchAs = "SuchAs"


PAST, PRESENT, FUTURE = "past", "present", "future"

# normalized surface written back into sentences for each quantifier kind
QUANTIFIER_NORMAL = {
    QuantifierKind.A: "a",
    QuantifierKind.The: "the",
    QuantifierKind.Some: "some",
    QuantifierKind.All: "all",
    QuantifierKind.No: "no",
    QuantifierKind.SuchAs: "such as",
}


@dataclass(frozen=True)
class IsaEntry:
    normal: str
    kind: IsaKind
    flags: frozenset = frozenset()

    @property
    def reciprocal(self) -> bool:
        return "reciprocal" in self.flags


@dataclass(frozen=True)
class QuantifierEntry:
    normal: str
    kind: QuantifierKind
    cardinal: bool = False


@dataclass(frozen=True)
class ClausalEntry:
    kind: ClauseKind
    # True when the surface token carries no copula of its own ("as a student")
    bare: bool = False


@dataclass(frozen=True)
class WordEntry:
    tag: str
    classes: frozenset = frozenset()


@dataclass(frozen=True)
class IsaMatch:
    start: int
    end: int
    entry: IsaEntry
    tense: str

    @property
    def kind(self) -> IsaKind:
        return self.entry.kind


@dataclass(frozen=True)
class QuantifierMatch:
    start: int
    end: int
    entry: QuantifierEntry


@dataclass(frozen=True)
class UnitEntry:
    name: str
    surfaces: tuple

    @property
    def abbreviation(self) -> str:
        if not self.surfaces:
            return "".join(ch for ch in self.name if ch.isupper()).lower() or self.name.lower()
        return min(self.surfaces, key=lambda s: (len(s), s))


def _key(phrase) -> tuple:
    if isinstance(phrase, str):
        phrase = phrase.split()
    return tuple(w.lower() for w in phrase)


_COPULA_CANON = {"are": ("is", None), "am": ("is", None), "was": ("is", PAST), "were": ("is", PAST)}


@dataclass(frozen=True)
class Lexicon:
    isa_variants: Mapping
    quantifier_variants: Mapping
    clausal_variants: Mapping
    hypernym_graph: Mapping
    synonyms: tuple
    named_entities: Mapping
    dimensional_adjectives: Mapping
    units: Mapping
    unit_entries: Mapping
    words: Mapping
    _synonym_index: Mapping = field(default=MappingProxyType({}), repr=False, compare=False)
    _isa_max: int = field(default=1, repr=False, compare=False)
    _quant_max: int = field(default=1, repr=False, compare=False)
    _isa_first: frozenset = field(default=frozenset(), repr=False, compare=False)
    _unit_surface: Mapping = field(default=MappingProxyType({}), repr=False, compare=False)

    # IS-A lookup -------------------------------------------------------
    def match_isa(self, words: Sequence[str], start: int = 0) -> IsaMatch | None:
        """Longest IS-A variant starting at ``words[start]``."""
        if start >= len(words):
            return None
        lowered = [w.lower() for w in words[start:start + self._isa_max]]
        tense = None
        canon, aux_tense = _COPULA_CANON.get(lowered[0], (lowered[0], None))
        first_forms = [canon]
        if canon not in self._isa_first:
            first_forms += [canon + "s", canon + "es"]
        best = None
        for first in first_forms:
            probe = [first] + lowered[1:]
            for length in range(len(probe), 0, -1):
                entry = self.isa_variants.get(tuple(probe[:length]))
                if entry is not None:
                    if best is None or length > best[0]:
                        best = (length, entry)
                    break
        if best is None:
            return None
        length, entry = best
        tense = aux_tense
        if entry.kind is IsaKind.WasPast:
            tense = PAST
        elif entry.kind is IsaKind.WillBeFuture:
            tense = FUTURE
        return IsaMatch(start, start + length, entry, tense or PRESENT)

    def classify_isa(self, phrase) -> tuple[IsaKind, str] | None:
        words = phrase.split() if isinstance(phrase, str) else [getattr(t, "lexeme", t) for t in phrase]
        match = self.match_isa(words, 0)
        if match is None:
            return None
        return match.kind, match.tense

    # quantifiers -------------------------------------------------------
    def match_quantifier(self, words: Sequence[str], start: int = 0) -> QuantifierMatch | None:
        lowered = [w.lower() for w in words[start:start + self._quant_max]]
        for length in range(len(lowered), 0, -1):
            entry = self.quantifier_variants.get(tuple(lowered[:length]))
            if entry is not None:
                return QuantifierMatch(start, start + length, entry)
        return None

    def clausal(self, word: str) -> ClausalEntry | None:
        return self.clausal_variants.get(_key(word))

    # words -------------------------------------------------------------
    def word(self, lexeme: str) -> WordEntry | None:
        return self.words.get(lexeme.lower())

    def has_class(self, lexeme: str, cls: str) -> bool:
        entry = self.word(lexeme)
        return entry is not None and cls in entry.classes

    def multiword_keys(self) -> list[tuple]:
        return sorted((tuple(k.split()) for k in self.words if " " in k), key=len, reverse=True)

    # hypernyms ---------------------------------------------------------
    def hypernyms(self, word: str) -> tuple:
        return self.hypernym_graph.get(word.lower(), ())

    def ancestors(self, word: str) -> set[str]:
        seen: set[str] = set()
        stack = list(self.hypernyms(word))
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(self.hypernym_graph.get(node, ()))
        return seen

    def is_hyponym(self, word: str, ancestor: str) -> bool:
        return ancestor.lower() in self.ancestors(word)

    def knows_noun(self, phrase: str) -> bool:
        key = phrase.lower()
        return key in self.hypernym_graph or any(key in parents for parents in self.hypernym_graph.values())

    def get_msp(self, proper_noun: str) -> str | None:
        """Most specific parent of a proper noun, as a concept name."""
        if not proper_noun:
            raise ValueError("proper noun must be non-empty")
        parents = self.named_entities.get(proper_noun)
        if not parents:
            parents = self.hypernym_graph.get(proper_noun.lower())
        if not parents:
            return None
        return camel_label([min(parents)])

    # synonyms ----------------------------------------------------------
    def synonym_set(self, word: str) -> frozenset:
        idx = self._synonym_index.get(word.lower())
        return self.synonyms[idx] if idx is not None else frozenset()

    # dimensions --------------------------------------------------------
    def dimensions_of(self, adjective: str) -> frozenset:
        return self.dimensional_adjectives.get(adjective.lower(), frozenset())

    def unit_for_surface(self, surface: str) -> str | None:
        return self._unit_surface.get(surface.lower())

    def default_unit(self, dimension: str) -> str | None:
        return self.units.get(dimension)

    def unit_abbreviation(self, unit: str) -> str:
        entry = self.unit_entries.get(unit)
        return entry.abbreviation if entry else unit.lower()

    def unit_canonical_surface(self, unit: str) -> str:
        entry = self.unit_entries.get(unit)
        return entry.surfaces[0] if entry and entry.surfaces else unit.lower()

    # serialization -------------------------------------------------------
    def dump(self) -> str:
        """Canonical JSON form, used to compare two loads byte for byte."""
        data = {
            "isa": sorted([" ".join(k), v.normal, v.kind.value, sorted(v.flags)] for k, v in self.isa_variants.items()),
            "quantifiers": sorted([" ".join(k), v.normal, v.kind.value, v.cardinal] for k, v in self.quantifier_variants.items()),
            "clausals": sorted([" ".join(k), v.kind.value, v.bare] for k, v in self.clausal_variants.items()),
            "hypernyms": sorted([k, sorted(v)] for k, v in self.hypernym_graph.items()),
            "synonyms": sorted(sorted(s) for s in self.synonyms),
            "named_entities": sorted([k, sorted(v)] for k, v in self.named_entities.items()),
            "dim_adjectives": sorted([k, sorted(list(p) for p in v)] for k, v in self.dimensional_adjectives.items()),
            "units": sorted(self.units.items()),
            "unit_entries": sorted([k, list(v.surfaces)] for k, v in self.unit_entries.items()),
            "words": sorted([k, v.tag, sorted(v.classes)] for k, v in self.words.items()),
        }
        return json.dumps(data, sort_keys=True, separators=(",", ":"))


# loading -----------------------------------------------------------------

RESOURCE_FILES = (
    "isa_variants.tsv", "quantifiers.tsv", "clausals.tsv", "synonyms.tsv",
    "named_entities.tsv", "dim_adjectives.tsv", "units.tsv", "words.tsv", "hypernyms.tsv",
)


def default_resource_dir() -> Path:
    return Path(str(resources.files("isaonto") / "resources"))


def _rows(path: Path, min_cols: int, max_cols: int | None = None):
    if not path.exists():
        return
    with path.open(encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cols = [c.strip() for c in line.split("\t")]
            while cols and cols[-1] == "" and len(cols) > min_cols:
                cols.pop()
            if len(cols) < min_cols or (max_cols is not None and len(cols) > max_cols) or any(
                c == "" for c in cols[:min_cols]
            ):
                raise LexiconLoadError(f"expected {min_cols} tab-separated columns", path.name, number)
            yield number, cols


def _enum(enum_cls, value, path, number):
    try:
        return enum_cls(value)
    except ValueError:
        raise LexiconLoadError(f"unknown {enum_cls.__name__} {value!r}", path.name, number) from None


def _check_acyclic(graph: Mapping[str, Iterable[str]], source: str) -> None:
    state: dict[str, int] = {}
    for root in sorted(graph):
        if state.get(root):
            continue
        stack = [(root, iter(sorted(graph.get(root, ()))))]
        state[root] = 1
        path = [root]
        while stack:
            node, children = stack[-1]
            child = next(children, None)
            if child is None:
                state[node] = 2
                stack.pop()
                path.pop()
                continue
            mark = state.get(child, 0)
            if mark == 1:
                cycle = path[path.index(child):] + [child]
                raise LexiconLoadError("cyclic hypernym entry: " + " -> ".join(cycle), source)
            if mark == 0:
                state[child] = 1
                path.append(child)
                stack.append((child, iter(sorted(graph.get(child, ())))))


def load_wordnet(wordnet_dir: Path) -> tuple[dict[str, set[str]], dict[str, set[str]]]:
    """Read WordNet ``data.noun``/``index.noun`` and return (hypernyms, instance parents).

    Only the first listed sense of each lemma is used.
    """
    data_path = wordnet_dir / "data.noun"
    index_path = wordnet_dir / "index.noun"
    if not data_path.exists() or not index_path.exists():
        return {}, {}
    synsets: dict[str, tuple[list[str], list[str], list[str]]] = {}
    with data_path.open(encoding="utf-8", errors="replace") as handle:
        for number, line in enumerate(handle, start=1):
            if line.startswith("  ") or not line.strip():
                continue
            body = line.split(" | ", 1)[0].split()
            try:
                offset = body[0]
                count = int(body[3], 16)
                words = [body[4 + 2 * i] for i in range(count)]
                pos = 4 + 2 * count
                ptr_count = int(body[pos])
                hyper, inst = [], []
                for i in range(ptr_count):
                    symbol, target = body[pos + 1 + 4 * i], body[pos + 2 + 4 * i]
                    if symbol == "@":
                        hyper.append(target)
                    elif symbol == "@i":
                        inst.append(target)
            except (IndexError, ValueError):
                raise LexiconLoadError("malformed WordNet data line", data_path.name, number) from None
            synsets[offset] = (words, hyper, inst)

    def head(offset: str) -> str | None:
        entry = synsets.get(offset)
        if not entry or not entry[0]:
            return None
        word = entry[0][0]
        if "(" in word:
            word = word[: word.index("(")]
        return word.replace("_", " ").lower()

    hypernyms: dict[str, set[str]] = {}
    instances: dict[str, set[str]] = {}
    with index_path.open(encoding="utf-8", errors="replace") as handle:
        for number, line in enumerate(handle, start=1):
            if line.startswith("  ") or not line.strip():
                continue
            parts = line.split()
            try:
                lemma = parts[0].replace("_", " ")
                synset_cnt = int(parts[2])
                first_offset = parts[-synset_cnt]
            except (IndexError, ValueError):
                raise LexiconLoadError("malformed WordNet index line", index_path.name, number) from None
            entry = synsets.get(first_offset)
            if entry is None:
                continue
            words, hyper, inst = entry
            parents = {h for h in (head(o) for o in hyper) if h and h != lemma}
            if parents:
                hypernyms.setdefault(lemma, set()).update(parents)
            if inst:
                original = next((w for w in words if w.lower() == parts[0]), parts[0]).replace("_", " ")
                inst_parents = {h for h in (head(o) for o in inst) if h}
                if inst_parents:
                    instances.setdefault(original, set()).update(inst_parents)
    return hypernyms, instances


def load_lexicon(resource_dir: str | Path | None = None, wordnet_dir: str | Path | None = None) -> Lexicon:
    """Load every resource table from ``resource_dir``.

    Missing files give empty tables. A malformed line raises
    :class:`LexiconLoadError` naming the file and line.
    """
    base = Path(resource_dir) if resource_dir is not None else default_resource_dir()
    if not base.is_dir():
        raise LexiconLoadError(f"resource directory not found: {base}")

    isa: dict[tuple, IsaEntry] = {}
    path = base / "isa_variants.tsv"
    for number, cols in _rows(path, 3, 4):
        flags = frozenset(f for f in cols[3].split(",") if f) if len(cols) > 3 else frozenset()
        isa[_key(cols[0])] = IsaEntry(cols[1].lower(), _enum(IsaKind, cols[2], path, number), flags)

    quants: dict[tuple, QuantifierEntry] = {}
    path = base / "quantifiers.tsv"
    for number, cols in _rows(path, 3, 4):
        cardinal = len(cols) > 3 and cols[3] == "cardinal"
        quants[_key(cols[0])] = QuantifierEntry(cols[1].lower(), _enum(QuantifierKind, cols[2], path, number), cardinal)

    clausals: dict[tuple, ClausalEntry] = {}
    path = base / "clausals.tsv"
    for number, cols in _rows(path, 2, 3):
        bare = len(cols) > 2 and cols[2] == "null"
        clausals[_key(cols[0])] = ClausalEntry(_enum(ClauseKind, cols[1], path, number), bare)

    synonyms: list[frozenset] = []
    path = base / "synonyms.tsv"
    for number, cols in _rows(path, 2):
        synonyms.append(frozenset(c.lower() for c in cols if c))
    syn_index = {}
    for idx, group in enumerate(synonyms):
        for word in group:
            syn_index.setdefault(word, idx)

    named: dict[str, set[str]] = {}
    path = base / "named_entities.tsv"
    for number, cols in _rows(path, 2, 2):
        named.setdefault(cols[0], set()).add(cols[1].lower())

    units: dict[str, str] = {}
    unit_entries: dict[str, UnitEntry] = {}
    unit_surface: dict[str, str] = {}
    path = base / "units.tsv"
    for number, cols in _rows(path, 3, 4):
        unit, dimension, default = cols[0], cols[1], cols[2]
        if default not in ("yes", "no"):
            raise LexiconLoadError("default column must be yes or no", path.name, number)
        surfaces = tuple(s.strip().lower() for s in cols[3].split(",") if s.strip()) if len(cols) > 3 else ()
        if unit not in unit_entries:
            unit_entries[unit] = UnitEntry(unit, surfaces)
        for surface in surfaces:
            unit_surface.setdefault(surface, unit)
        if default == "yes":
            units.setdefault(dimension, unit)
        else:
            units.setdefault(dimension + "\0alt", unit)
    units = {k: v for k, v in units.items() if "\0" not in k}

    dims: dict[str, set[tuple[str, str]]] = {}
    path = base / "dim_adjectives.tsv"
    for number, cols in _rows(path, 3, 3):
        adjective, dimension, polarity = cols[0].lower(), cols[1], cols[2]
        if polarity not in ("+", "-"):
            raise LexiconLoadError(f"polarity must be + or -, got {polarity!r}", path.name, number)
        if units and dimension not in units:
            raise LexiconLoadError(f"dimension {dimension!r} has no unit", path.name, number)
        dims.setdefault(adjective, set()).add((dimension, polarity))

    words: dict[str, WordEntry] = {}
    path = base / "words.tsv"
    for number, cols in _rows(path, 2, 3):
        classes = frozenset(c for c in cols[2].split(",") if c) if len(cols) > 2 else frozenset()
        words.setdefault(cols[0].lower(), WordEntry(cols[1], classes))

    graph: dict[str, set[str]] = {}
    path = base / "hypernyms.tsv"
    for number, cols in _rows(path, 2, 2):
        child, parent = cols[0].lower(), cols[1].lower()
        if child == parent:
            raise LexiconLoadError(f"cyclic hypernym entry: {child} -> {child}", path.name, number)
        graph.setdefault(child, set()).add(parent)
    _check_acyclic(graph, path.name)

    if wordnet_dir is not None:
        wn_hyper, wn_inst = load_wordnet(Path(wordnet_dir))
        for word, parents in wn_hyper.items():
            if word not in graph:
                graph[word] = set(parents)
        for name, parents in wn_inst.items():
            if name not in named:
                named[name] = set(parents)
        _check_acyclic(graph, "data.noun")

    return Lexicon(
        isa_variants=MappingProxyType(isa),
        quantifier_variants=MappingProxyType(quants),
        clausal_variants=MappingProxyType(clausals),
        hypernym_graph=MappingProxyType({k: tuple(sorted(v)) for k, v in graph.items()}),
        synonyms=tuple(synonyms),
        named_entities=MappingProxyType({k: tuple(sorted(v)) for k, v in named.items()}),
        dimensional_adjectives=MappingProxyType({k: frozenset(v) for k, v in dims.items()}),
        units=MappingProxyType(units),
        unit_entries=MappingProxyType(unit_entries),
        words=MappingProxyType(words),
        _synonym_index=MappingProxyType(syn_index),
        _isa_max=max((len(k) for k in isa), default=1),
        _quant_max=max((len(k) for k in quants), default=1),
        _isa_first=frozenset(k[0] for k in isa),
        _unit_surface=MappingProxyType(unit_surface),
    )
