"""Sentence simplification ahead of characterization: triple extraction,
singularization and normalization."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import NotIsaSentence
from .inflect import singular_noun
from .lexicon import (
    FUTURE,
    PAST,
    ClauseKind,
    IsaKind,
    IsaMatch,
    Lexicon,
    QuantifierKind,
)
from .numerals import to_words
from .tagger import Token, detokenize, reindex

NOMINAL_TAGS = frozenset({"NN", "NNS", "NNP"})
ADJECTIVAL_TAGS = frozenset({"JJ", "JJR", "JJS", "RB", "RBR", "RBS"})
LIST_MARKERS = frozenset({"either", "neither", "both"})
CLAUSE_OPENERS = frozenset({"who", "which", "that", "whom"})


@dataclass(frozen=True)
class Plurality:
    subject: bool = False
    object: bool = False


@dataclass(frozen=True)
class SimpleSentence:
    tokens: tuple
    source_index: int = 0
    expansion_id: int = 1
    plurality: Plurality | None = None
    tense: str | None = None

    @property
    def text(self) -> str:
        return detokenize(self.tokens)

    def with_tokens(self, tokens: Iterable[Token], **changes) -> "SimpleSentence":
        return replace(self, tokens=tuple(reindex(list(tokens))), **changes)


# small token helpers ------------------------------------------------------------
def _low(tok: Token) -> str:
    return tok.lexeme.lower()


def _words(tokens: Sequence[Token]) -> list[str]:
    return [t.lexeme for t in tokens]


def _tok(lexeme: str, tag: str) -> Token:
    return Token(lexeme, tag, 0)


def _is_clause_opener(tokens: Sequence[Token], i: int, lexicon: Lexicon) -> bool:
    if i < 0 or i >= len(tokens) or tokens[i].tag.startswith("NN"):
        return False
    entry = lexicon.clausal(tokens[i].lexeme)
    if entry is None or entry.kind is not ClauseKind.ThatIs:
        return False
    if i > 0 and _low(tokens[i - 1]) in ("such", "same"):
        return False
    return True


def locate_isa(tokens: Sequence[Token], lexicon: Lexicon, start: int = 0) -> IsaMatch | None:
    """First IS-A span at or after ``start`` that does not belong to a clause."""
    words = _words(tokens)
    for i in range(start, len(tokens)):
        if tokens[i].tag in (",", ".", ":", "POS"):
            continue
        match = lexicon.match_isa(words, i)
        if match is None:
            continue
        if _is_clause_opener(tokens, i - 1, lexicon):
            continue
        return match
    return None


def _isa_at(tokens: Sequence[Token], lexicon: Lexicon, i: int) -> IsaMatch | None:
    return lexicon.match_isa(_words(tokens), i) if i < len(tokens) else None


def _strip_punct(tokens: Sequence[Token]) -> list[Token]:
    out = list(tokens)
    while out and out[-1].tag in (".", ":"):
        out.pop()
    while out and out[0].tag in (",", ".", ":"):
        out.pop(0)
    return out


def _quantifier_len(tokens: Sequence[Token], lexicon: Lexicon, plural: bool | None = None) -> int:
    if not tokens:
        return 0
    match = lexicon.match_quantifier(_words(tokens), 0)
    if match is None or match.entry.kind in (QuantifierKind.SuchAs, QuantifierKind.Only):
        return 0
    if match.entry.cardinal:
        nxt = tokens[match.end] if match.end < len(tokens) else None
        is_plural = plural if plural is not None else (nxt is not None and nxt.tag == "NNS")
        if not is_plural:
            return 0
    if _is_degree_word(tokens, match.start, match.end):
        return 0
    return match.end


def _is_degree_word(tokens: Sequence[Token], start: int, end: int) -> bool:
    """"most popular" is a superlative, not the quantifier "most"."""
    if end - start != 1 or _low(tokens[start]) not in ("most", "least"):
        return False
    return end < len(tokens) and tokens[end].tag in ("JJ", "RB")


def split_list(tokens: Sequence[Token]) -> tuple[str | None, list[list[Token]]]:
    """Split a coordinated phrase into members; connective is 'and', 'or' or None."""
    toks = list(tokens)
    while toks and _low(toks[0]) in LIST_MARKERS:
        toks = toks[1:]
    members: list[list[Token]] = [[]]
    connective = None
    for tok in toks:
        low = _low(tok)
        if tok.tag == "CC" and low in ("and", "or", "nor"):
            connective = "or" if low in ("or", "nor") or connective == "or" else "and"
            members.append([])
        elif tok.tag == ",":
            members.append([])
        else:
            members[-1].append(tok)
    members = [m for m in members if m]
    if connective is None or len(members) < 2:
        return None, [list(tokens)]
    return connective, _share_head(members)


def _share_head(members: list[list[Token]]) -> list[list[Token]]:
    last = members[-1]
    head = last[-1]
    if head.tag not in ("NN", "NNS"):
        return members
    others = members[:-1]
    bare = all(not any(t.tag in NOMINAL_TAGS for t in m) for m in others)
    count_mismatch = head.tag == "NNS" and all(
        not any(t.tag == "NNS" for t in m) and m[-1].tag == "NN" for m in others
    )
    if not (bare or count_mismatch):
        return members
    return [m + [head] for m in others] + [last]


def _has_exemplification(subject: Sequence[Token], lexicon: Lexicon) -> bool:
    if subject and _low(subject[0]) == "such":
        return True
    words = _words(subject)
    for i, tok in enumerate(subject):
        if tok.tag == "," or i == 0:
            at = i + 1 if tok.tag == "," else i
            match = lexicon.match_quantifier(words, at) if at < len(words) else None
            if match is not None and match.entry.kind is QuantifierKind.SuchAs:
                return True
    return False


# triple extraction -----------------------------------------------------------------
def extract_triples(tokens: Sequence[Token], lexicon: Lexicon, source_index: int = 0) -> list[SimpleSentence]:
    """Expand one tagged sentence into simple IS-A sentences."""
    toks = _strip_punct(tokens)
    lows = [_low(t) for t in toks]
    if "where" in lows:
        raise NotIsaSentence("spatial where-clause is not an IS-A construction", source_index)
    parts: list[list[Token]] = []
    if "whereas" in lows:
        current: list[Token] = []
        for tok in toks:
            if _low(tok) == "whereas":
                parts.append(_strip_punct(current))
                current = []
            else:
                current.append(tok)
        parts.append(_strip_punct(current))
    else:
        parts = [toks]
    out: list[list[Token]] = []
    for part in parts:
        if not part:
            raise NotIsaSentence("empty clause around 'whereas'", source_index)
        out.extend(_extract(part, lexicon, source_index))
    return [
        SimpleSentence(tuple(reindex(s)), source_index=source_index, expansion_id=i)
        for i, s in enumerate(out, start=1)
    ]


def _extract(toks: list[Token], lexicon: Lexicon, source_index: int) -> list[list[Token]]:
    match = locate_isa(toks, lexicon)
    if match is None:
        raise NotIsaSentence("no IS-A predicate found", source_index)
    subj, isa, obj = toks[: match.start], toks[match.start: match.end], toks[match.end:]
    if not subj or not (obj or match.entry.reciprocal):
        raise NotIsaSentence("IS-A predicate lacks a subject or an object", source_index)
    obj = _merge_when(obj, lexicon, source_index)
    toks = subj + isa + obj

    clause = _subject_clause(subj, lexicon)
    if clause is not None:
        head, clause_tokens = clause
        connective, members = split_list(head)
        verb = _low(clause_tokens[0])
        plural_verb = verb in ("are", "were")
        targets = members if connective == "and" or (connective == "or" and plural_verb) else [head]
        clause_sentences = [_strip_list_marker(m) + clause_tokens for m in targets]
        return clause_sentences + _expand_lists(head + isa + obj, lexicon)

    split = _object_clause(obj, lexicon)
    if split is not None:
        o1, clause_isa, o2 = split
        q2_len = _quantifier_len(o2, lexicon)
        core = o2[q2_len:]
        if core and all(t.tag in ADJECTIVAL_TAGS for t in core):
            q1_len = _quantifier_len(o1, lexicon)
            merged = subj + isa + o1[:q1_len] + core + o1[q1_len:]
            restated = core + o1[q1_len:] + clause_isa + core
            return _expand_lists(merged, lexicon) + [restated]
        return _expand_lists(toks, lexicon, split_objects=False)
    if locate_isa(obj, lexicon) is not None:
        return _expand_lists(toks, lexicon, split_objects=False)
    return _expand_lists(toks, lexicon)


def _strip_list_marker(tokens: list[Token]) -> list[Token]:
    while tokens and _low(tokens[0]) in LIST_MARKERS:
        tokens = tokens[1:]
    return tokens


def _merge_when(obj: list[Token], lexicon: Lexicon, source_index: int) -> list[Token]:
    lows = [_low(t) for t in obj]
    if "when" not in lows:
        return obj
    w = lows.index("when")
    after = obj[w + 1:]
    inner = _isa_at(after, lexicon, 1) if len(after) > 1 else None
    if after and after[0].tag == "PRP" and inner is not None:
        adjectives = after[inner.end:]
        if adjectives and all(t.tag in ADJECTIVAL_TAGS for t in adjectives):
            main = obj[:w]
            q = _quantifier_len(main, lexicon)
            return main[:q] + adjectives + main[q:]
    raise NotIsaSentence("temporal when-clause with its own subject is not purely IS-A", source_index)


def _subject_clause(subj: list[Token], lexicon: Lexicon) -> tuple[list[Token], list[Token]] | None:
    """``S , who/which/that IS-A O ,`` -> (S, IS-A O)."""
    for i, tok in enumerate(subj):
        if tok.tag != "," or i + 1 >= len(subj) or _low(subj[i + 1]) not in CLAUSE_OPENERS:
            continue
        close = next((j for j in range(i + 2, len(subj)) if subj[j].tag == ","), len(subj))
        body = subj[i + 2: close]
        if body and _isa_at(body, lexicon, 0) is not None and close >= len(subj) - 1:
            return subj[:i], body
    return None


def _object_clause(obj: list[Token], lexicon: Lexicon):
    for k, tok in enumerate(obj):
        if _low(tok) in CLAUSE_OPENERS and k > 0:
            inner = _isa_at(obj, lexicon, k + 1)
            if inner is not None:
                return obj[:k], obj[k + 1: inner.end], obj[inner.end:]
    return None


def _expand_lists(toks: list[Token], lexicon: Lexicon, split_objects: bool = True) -> list[list[Token]]:
    match = locate_isa(toks, lexicon)
    if match is None:
        return [toks]
    subj, isa, obj = toks[: match.start], toks[match.start: match.end], toks[match.end:]
    if match.entry.reciprocal or _has_exemplification(subj, lexicon):
        return [toks]
    subjects = _distribute(subj, lexicon)
    objects = [obj]
    lows = {_low(t) for t in obj}
    if (
        split_objects
        and match.kind is not IsaKind.Includes
        and not lows & {"than", "such", "that", "who", "which"}
    ):
        objects = _distribute(obj, lexicon)
    return [s + isa + o for s in subjects for o in objects]


def _distribute(phrase: list[Token], lexicon: Lexicon) -> list[list[Token]]:
    q = _quantifier_len(phrase, lexicon)
    if q and _low(phrase[0]) in LIST_MARKERS:
        q = 0
    prefix, body = phrase[:q], phrase[q:]
    connective, members = split_list(body)
    if connective != "and":
        return [phrase]
    return [prefix + m for m in members]


# singularization --------------------------------------------------------------------
_COPULA_SINGULAR = {"are": "is", "am": "is", "were": "was"}


def singularize(sentence: SimpleSentence, lexicon: Lexicon) -> SimpleSentence:
    """Lemmatize plural nouns and copulas; record original number first."""
    if sentence.plurality is not None:
        raise ValueError("sentence is already singularized")
    toks = list(sentence.tokens)
    match = locate_isa(toks, lexicon)
    if match is None:
        raise NotIsaSentence("no IS-A predicate found", sentence.source_index)
    subj_end = match.start
    obj_part = toks[match.end:]
    boundary = next((i for i, t in enumerate(obj_part) if _low(t) in CLAUSE_OPENERS | {"than"} or t.tag == ","), len(obj_part))
    plurality = Plurality(
        subject=any(t.tag == "NNS" for t in toks[:subj_end]),
        object=any(t.tag == "NNS" for t in obj_part[:boundary]),
    )
    out = []
    for tok in toks:
        low = _low(tok)
        if tok.tag == "NNS":
            out.append(tok.with_(lexeme=singular_noun(tok.lexeme), tag="NN"))
        elif tok.tag == "VBX" and low in _COPULA_SINGULAR:
            out.append(tok.with_(lexeme=_COPULA_SINGULAR[low]))
        else:
            out.append(tok)
    return sentence.with_tokens(out, plurality=plurality, tense=match.tense)


# normalization -----------------------------------------------------------------------
def object_head(sentence: SimpleSentence, lexicon: Lexicon) -> Token | None:
    toks = list(sentence.tokens)
    match = locate_isa(toks, lexicon)
    if match is None:
        return None
    obj = toks[match.end:]
    stop = next(
        (i for i, t in enumerate(obj) if _low(t) in CLAUSE_OPENERS | {"than", "when"} or t.tag in (",", "CC")),
        len(obj),
    )
    core = [t for t in obj[:stop] if t.tag not in (".", ":", "DT", "POS")]
    return core[-1] if core else None


def build_object_canon(sentences: Iterable[SimpleSentence], lexicon: Lexicon) -> dict[str, str]:
    """Sequential pass: each synonym set is represented by its first object occurrence."""
    chosen: dict[frozenset, str] = {}
    mapping: dict[str, str] = {}
    for sentence in sentences:
        head = object_head(sentence, lexicon)
        if head is None or head.tag == "NNP":
            continue
        word = head.lexeme.lower()
        group = lexicon.synonym_set(word)
        if not group:
            continue
        canonical = chosen.setdefault(group, word)
        if canonical != word:
            mapping[word] = canonical
    return mapping


def normalize(sentence: SimpleSentence, lexicon: Lexicon, object_canon: Mapping[str, str] | None = None) -> SimpleSentence:
    """Rewrite lexical variants into their normal forms."""
    plurality = sentence.plurality or Plurality()
    toks = list(sentence.tokens)
    toks = _normalize_exemplification(toks, lexicon)
    toks = _normalize_clausals(toks, lexicon)
    toks, main_end = _normalize_isa(toks, lexicon, sentence.tense)
    if main_end is None:
        raise NotIsaSentence("no IS-A predicate found", sentence.source_index)
    toks = _normalize_negation(toks, main_end)
    toks = _normalize_quantifiers(toks, lexicon, main_end, plurality)
    toks = _normalize_numbers(toks, lexicon)
    result = sentence.with_tokens(toks)
    if object_canon:
        head = object_head(result, lexicon)
        if head is not None and head.lexeme.lower() in object_canon and head.tag != "NNP":
            toks = list(result.tokens)
            toks[head.index] = head.with_(lexeme=object_canon[head.lexeme.lower()])
            result = result.with_tokens(toks)
    return result


def _normalize_exemplification(toks: list[Token], lexicon: Lexicon) -> list[Token]:
    match = locate_isa(toks, lexicon)
    if match is None:
        return toks
    subj, rest = toks[: match.start], toks[match.start:]
    such, as_ = _tok("such", "PDT"), _tok("as", "IN")
    if subj and _low(subj[0]) == "such":
        lows = [_low(t) for t in subj]
        if "as" in lows[2:]:
            a = lows.index("as", 2)
            return subj[1:a] + [such, as_] + [t for t in subj[a + 1:] if t.tag != ","] + rest
        return toks
    words = _words(subj)
    for i, tok in enumerate(subj):
        if tok.tag != ",":
            continue
        q = lexicon.match_quantifier(words, i + 1) if i + 1 < len(words) else None
        if q is not None and q.entry.kind is QuantifierKind.SuchAs:
            exemplars = [t for t in subj[q.end:] if t.tag != ","]
            return subj[:i] + [such, as_] + exemplars + rest
    return toks


def _normalize_clausals(toks: list[Token], lexicon: Lexicon) -> list[Token]:
    out: list[Token] = []
    i = 0
    while i < len(toks):
        tok = toks[i]
        two = (" ".join(_words(toks[i:i + 2]))) if i + 1 < len(toks) else None
        entry2 = lexicon.clausal(two) if two else None
        entry = entry2 or lexicon.clausal(tok.lexeme)
        width = 2 if entry2 else 1
        preceded_by_comma = bool(out) and out[-1].tag == ","
        if entry is not None and entry.kind is ClauseKind.ThatIs and _is_clause_opener(toks, i, lexicon) or entry2:
            if _isa_at(toks, lexicon, i + width) is not None and not entry.bare:
                out.append(_tok("that", "WDT"))
                i += width
                continue
            if entry.bare and preceded_by_comma:
                out.extend([_tok("that", "WDT"), _tok("is", "VBX")])
                i += width
                continue
        out.append(tok)
        i += 1
    return out


def _normal_isa_tokens(match: IsaMatch, tense: str | None) -> list[Token]:
    normal = match.entry.normal
    if match.kind is IsaKind.Hyponymy and (match.tense == PAST or tense == PAST) and normal == "is":
        normal = "was"
    if match.kind is IsaKind.WillBeFuture or match.tense == FUTURE:
        normal = "will be"
    tags = {"is": "VBX", "was": "VBX", "be": "VBX", "will": "MD", "may": "MD", "can": "MD", "of": "IN",
            "as": "IN", "like": "IN", "same": "JJ", "class": "NN", "includes": "VBZ", "become": "VB",
            "now": "RB", "still": "RB", "sometimes": "RB"}
    return [_tok(w, tags.get(w, "VBX")) for w in normal.split()]


def _normalize_isa(toks: list[Token], lexicon: Lexicon, tense: str | None) -> tuple[list[Token], int | None]:
    """Normalize every IS-A span; returns tokens and the end of the main span."""
    main = locate_isa(toks, lexicon)
    if main is None:
        return toks, None
    if main.entry.reciprocal:
        subj = toks[: main.start]
        lows = [_low(t) for t in subj]
        if "and" in lows:
            k = lows.index("and")
            left, right = subj[:k], subj[k + 1:]
            normal = [_tok(w, "IN" if w in ("as", "like") else "JJ") for w in main.entry.normal.split()]
            rebuilt = left + normal + right + toks[main.end:]
            return rebuilt, len(left) + len(normal) + len(right) - len(right)
    out: list[Token] = []
    main_end = None
    i = 0
    words = _words(toks)
    while i < len(toks):
        match = lexicon.match_isa(words, i) if (i == main.start or _is_clause_opener(toks, i - 1, lexicon) or i > main.start) else None
        if match is not None and (i == main.start or i > main.end - 1 and _secondary_isa_ok(toks, i)):
            out.extend(_normal_isa_tokens(match, tense if i == main.start else None))
            if i == main.start:
                main_end = len(out)
            i = match.end
            continue
        if match is not None and i < main.start and _is_clause_opener(toks, i - 1, lexicon):
            out.extend(_normal_isa_tokens(match, None))
            i = match.end
            continue
        out.append(toks[i])
        i += 1
    return out, main_end


def _secondary_isa_ok(toks: list[Token], i: int) -> bool:
    # inside the object only copular verbs open a second predicate
    return toks[i].tag in ("VBX", "MD", "VBZ", "VBP") or _low(toks[i]) in ("is", "was")


def _normalize_negation(toks: list[Token], main_end: int) -> list[Token]:
    if main_end < len(toks) and _low(toks[main_end]) == "not":
        rest = toks[main_end + 1:]
        if rest and _low(rest[0]) in ("a", "an"):
            rest = rest[1:]
        return toks[:main_end] + [_tok("no", "DT")] + rest
    return toks


def _replace_quantifier(toks: list[Token], pos: int, lexicon: Lexicon, plural: bool) -> list[Token]:
    if pos >= len(toks):
        return toks
    match = lexicon.match_quantifier(_words(toks), pos)
    if match is None or match.entry.kind in (QuantifierKind.Only, QuantifierKind.SuchAs):
        return toks
    if match.entry.cardinal and not plural:
        return toks
    if _is_degree_word(toks, match.start, match.end):
        return toks
    normal = [_tok(w, "DT") for w in match.entry.normal.split()]
    return toks[:pos] + normal + toks[match.end:]


def _normalize_quantifiers(toks: list[Token], lexicon: Lexicon, main_end: int, plurality: Plurality) -> list[Token]:
    # object side first so that subject rewrites do not shift main_end
    pos = main_end
    if pos < len(toks) and _low(toks[pos]) == "only":
        pos += 1
    toks = _replace_quantifier(toks, pos, lexicon, plurality.object)
    for k in range(main_end, len(toks)):
        if _low(toks[k]) == "that" and k + 1 < len(toks) and _low(toks[k + 1]) in ("is", "was"):
            toks = _replace_quantifier(toks, k + 2, lexicon, False)
    start = 0
    if lexicon.match_quantifier(_words(toks), 0) is None:
        while start < len(toks) and toks[start].tag == "RB" and _low(toks[start]) != "only":
            start += 1
    if start < len(toks) and _low(toks[start]) == "only":
        return toks
    return _replace_quantifier(toks, start, lexicon, plurality.subject)


def _normalize_numbers(toks: list[Token], lexicon: Lexicon) -> list[Token]:
    out = list(toks)
    for i, tok in enumerate(out[:-1]):
        if tok is None or out[i + 1] is None:
            continue
        unit = lexicon.unit_for_surface(out[i + 1].lexeme)
        if unit is None:
            continue
        if tok.tag == "CD" and tok.lexeme.isdigit():
            out[i] = tok.with_(lexeme=to_words(int(tok.lexeme)))
        elif tok.tag != "CD":
            continue
        out[i + 1] = out[i + 1].with_(lexeme=lexicon.unit_canonical_surface(unit), tag="NN")
        # "5 ft. tall": a period inside the sentence belongs to the abbreviation
        if i + 3 < len(out) and out[i + 2].lexeme == ".":
            out[i + 2] = None
    return [t for t in out if t is not None]


def preprocess_line(tokens: Sequence[Token], lexicon: Lexicon, source_index: int = 0) -> list[SimpleSentence]:
    """Triple extraction followed by singularization (normalization is corpus-aware)."""
    return [singularize(s, lexicon) for s in extract_triples(tokens, lexicon, source_index)]
