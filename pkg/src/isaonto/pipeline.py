"""Corpus-level orchestration: tag, simplify, characterize, translate and merge."""

from __future__ import annotations

import multiprocessing
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .characterize import CharSentence, characterize
from .dl import Ontology
from .errors import IsaOntoError, NotIsaSentence
from .lexicon import Lexicon
from .preprocess import SimpleSentence, build_object_canon, normalize, preprocess_line
from .tagger import Token, parse_pretagged, tag
from .translate import Translation, sequential_counter, translate


@dataclass(frozen=True)
class CorpusLine:
    source_index: int
    raw: str


def read_corpus(text: str) -> list[CorpusLine]:
    """Non-blank lines not starting with ``#``, numbered from 1 in input order."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append(CorpusLine(len(lines) + 1, stripped))
    return lines


@dataclass
class Expansion:
    sentence: SimpleSentence
    characterized: CharSentence | None = None
    translation: Translation | None = None
    error: str | None = None

    @property
    def expansion_id(self) -> int:
        return self.sentence.expansion_id


@dataclass
class LineRecord:
    source_index: int
    raw: str
    tokens: list = field(default_factory=list)
    expansions: list = field(default_factory=list)
    rejected: str | None = None

    @property
    def outcome(self) -> str:
        if self.rejected is not None:
            return "rejected"
        if any(e.error for e in self.expansions):
            return "error"
        if any(e.translation is not None and e.translation.partial for e in self.expansions):
            return "partial"
        return "translated"

    def simplify_json(self) -> dict:
        return {
            "source_index": self.source_index,
            "raw": self.raw,
            "rejected": self.rejected,
            "expansions": [
                {
                    "expansion_id": e.expansion_id,
                    "normalized": e.sentence.text,
                    "plurality": (
                        {"subject": e.sentence.plurality.subject, "object": e.sentence.plurality.object}
                        if e.sentence.plurality
                        else None
                    ),
                    "tense": e.sentence.tense,
                }
                for e in self.expansions
            ],
        }

    def to_json(self) -> dict:
        expansions = []
        for e in self.expansions:
            item = {"expansion_id": e.expansion_id, "normalized": e.sentence.text, "error": e.error}
            if e.characterized is not None:
                item["characterized"] = e.characterized.to_json()
            if e.translation is not None:
                item.update(e.translation.to_json())
            expansions.append(item)
        return {
            "source_index": self.source_index,
            "raw": self.raw,
            "outcome": self.outcome,
            "rejected": self.rejected,
            "expansions": expansions,
        }


# stages --------------------------------------------------------------------
def tag_lines(lines: Sequence[CorpusLine], lexicon: Lexicon, pretagged: bool = False) -> list[LineRecord]:
    records = []
    for line in lines:
        tokens = parse_pretagged(line.raw) if pretagged else tag(line.raw, lexicon)
        records.append(LineRecord(line.source_index, line.raw, tokens))
    return records


def simplify(records: list[LineRecord], lexicon: Lexicon) -> list[LineRecord]:
    """Split, singularize and normalize every line; non-IS-A lines are marked rejected."""
    for record in records:
        try:
            sentences = preprocess_line(record.tokens, lexicon, record.source_index)
        except NotIsaSentence as exc:
            record.rejected = exc.reason
            continue
        except IsaOntoError as exc:
            record.rejected = str(exc)
            continue
        record.expansions = [Expansion(s) for s in sentences]
    canon = build_object_canon((e.sentence for r in records for e in r.expansions), lexicon)
    for record in records:
        for expansion in record.expansions:
            try:
                expansion.sentence = normalize(expansion.sentence, lexicon, canon)
            except IsaOntoError as exc:
                expansion.error = f"{type(exc).__name__}: {exc}"
        if record.expansions and all(e.error for e in record.expansions):
            record.rejected = record.expansions[0].error
    return records


def characterize_all(records: list[LineRecord], lexicon: Lexicon) -> list[LineRecord]:
    for record in records:
        for expansion in record.expansions:
            if expansion.error is not None:
                continue
            try:
                expansion.characterized = characterize(expansion.sentence, lexicon)
            except IsaOntoError as exc:
                expansion.error = f"{type(exc).__name__}: {exc}"
    return records


# translation ---------------------------------------------------------------
_PLACEHOLDER = re.compile(r"@@(\d+)@@")


class PlaceholderCounter:
    """Hands out ``@@k@@`` markers and remembers which counter key each stands for."""

    def __init__(self):
        self.keys: list = []

    def __call__(self, key) -> str:
        self.keys.append(key)
        return f"@@{len(self.keys) - 1}@@"


def _translate_deferred(cs: CharSentence, lexicon: Lexicon):
    counter = PlaceholderCounter()
    try:
        return translate(cs, lexicon, counter), counter.keys, None
    except IsaOntoError as exc:
        return None, counter.keys, f"{type(exc).__name__}: {exc}"


def resolve_placeholders(translation: Translation, keys: list, ontology: Ontology) -> Translation:
    """Replace markers with real counter values, drawn from the ontology in call order."""
    if not keys:
        return translation
    values = [ontology.next_counter(key) for key in keys]

    def mapping(name: str) -> str:
        return _PLACEHOLDER.sub(lambda m: str(values[int(m.group(1))]), name)

    translation.axioms = tuple(a.rename(mapping) for a in translation.axioms)
    return translation


_WORKER_LEXICON: Lexicon | None = None


def _worker(batch):
    return [_translate_deferred(cs, _WORKER_LEXICON) for cs in batch]


def _chunks(items: list, jobs: int) -> list[list]:
    size = max(1, (len(items) + jobs * 4 - 1) // (jobs * 4))
    return [items[i:i + size] for i in range(0, len(items), size)]


def translate_all(records: list[LineRecord], lexicon: Lexicon, ontology: Ontology, jobs: int = 1) -> Ontology:
    """Translate every characterized expansion and merge batches in source order.

    With ``jobs > 1`` translation runs in worker processes with deferred counters;
    the merge assigns counter values in source order, so the result matches ``jobs=1``.
    """
    pending = [e for r in records for e in r.expansions if e.characterized is not None and e.error is None]
    if jobs > 1 and len(pending) > 1 and "fork" in multiprocessing.get_all_start_methods():
        global _WORKER_LEXICON
        _WORKER_LEXICON = lexicon
        context = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=context) as pool:
            outputs = [item for chunk in pool.map(_worker, _chunks([e.characterized for e in pending], jobs)) for item in chunk]
        _WORKER_LEXICON = None
        for expansion, (translation, keys, error) in zip(pending, outputs):
            if error is not None:
                # counters consumed before the failure still advance, as in a sequential run
                for key in keys:
                    ontology.next_counter(key)
                expansion.error = error
                continue
            expansion.translation = resolve_placeholders(translation, keys, ontology)
            ontology.extend(expansion.translation.axioms)
        return ontology
    counter = sequential_counter(ontology.counters)
    for expansion in pending:
        try:
            expansion.translation = translate(expansion.characterized, lexicon, counter)
        except IsaOntoError as exc:
            expansion.error = f"{type(exc).__name__}: {exc}"
            continue
        ontology.extend(expansion.translation.axioms)
    return ontology


@dataclass
class LearnResult:
    ontology: Ontology
    records: list

    def rejected(self) -> list[LineRecord]:
        return [r for r in self.records if r.rejected is not None]

    def trace(self) -> list[dict]:
        return [r.to_json() for r in self.records]


def learn(
    lines: Iterable[CorpusLine] | str,
    lexicon: Lexicon,
    jobs: int = 1,
    pretagged: bool = False,
    ontology: Ontology | None = None,
) -> LearnResult:
    """Run the full pipeline over a corpus and return the ontology with per-line records."""
    if isinstance(lines, str):
        lines = read_corpus(lines)
    records = tag_lines(list(lines), lexicon, pretagged)
    simplify(records, lexicon)
    characterize_all(records, lexicon)
    ontology = ontology if ontology is not None else Ontology()
    translate_all(records, lexicon, ontology, jobs)
    return LearnResult(ontology, records)


def tokens_json(tokens: Sequence[Token]) -> list[list[str]]:
    return [[t.lexeme, t.tag] for t in tokens]
