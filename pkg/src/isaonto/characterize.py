"""Fit normalized IS-A sentences into slot templates (quantifiers, modifier
chains, subject, IS-A kind, objects, clause markers)."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Sequence

from .errors import InvalidPosDependency, NoTemplateMatch
from .lexicon import PAST, PRESENT, FUTURE, ClauseKind, IsaKind, Lexicon, QuantifierKind
from .preprocess import Plurality, SimpleSentence, locate_isa, split_list
from .tagger import Token, reindex

QUANTIFIER_WORDS = {
    "a": QuantifierKind.A, "an": QuantifierKind.A, "the": QuantifierKind.The,
    "some": QuantifierKind.Some, "all": QuantifierKind.All, "no": QuantifierKind.No,
}
MODIFIER_TAGS = frozenset({"NN", "NNP", "JJ", "JJR", "JJS", "RB", "RBR", "RBS", "VBG", "CD"})
HEAD_TAGS = frozenset({"NN", "NNP", "JJ", "JJR", "JJS", "RB", "VBG"})
COPULA_TAGS = frozenset({"VBX", "MD", "VBZ", "VBP", "VB", "VBD"})
ONLY_SUBJECT, ONLY_OBJECT, THE_ONLY = "subject", "object", "the-only"

# the six subject/object tag pairs that cannot stand in an IS-A relation
INVALID_POS_PAIRS = frozenset({
    ("NNP", "RB"), ("RB", "NNP"), ("NNP", "VBG"), ("VBG", "NNP"), ("JJ", "RB"), ("JJ", "VBG"),
})


def base_tag(tag: str) -> str:
    if tag.startswith("JJ"):
        return "JJ"
    if tag.startswith("RB"):
        return "RB"
    return tag


@dataclass(frozen=True)
class Word:
    lexeme: str
    tag: str

    def __str__(self) -> str:
        return f"{self.lexeme}/{self.tag}"


@dataclass(frozen=True)
class NounPhrase:
    head: Word
    mods: tuple = ()
    appos: str | None = None
    quantifier: QuantifierKind | None = None

    @property
    def words(self) -> tuple:
        return self.mods + (self.head,)

    @property
    def is_proper(self) -> bool:
        return self.head.tag == "NNP"

    def render(self, with_quantifier: bool = False) -> str:
        head = f"{self.head.lexeme}/{self.head.tag}" + (f"{{{self.appos}}}" if self.appos else "")
        text = " ".join([str(m) for m in self.mods] + [head])
        if with_quantifier and self.quantifier is not None:
            text = f"[{self.quantifier.value}] {text}"
        return text


@dataclass(frozen=True)
class PhraseList:
    connective: str
    members: tuple

    def render(self) -> str:
        return f"{self.connective}: " + ", ".join(m.render() for m in self.members)


@dataclass(frozen=True)
class CharSentence:
    isa: IsaKind
    tense: str = PRESENT
    q1: QuantifierKind | None = None
    subject: NounPhrase | None = None
    subject_list: PhraseList | None = None
    exemplars: PhraseList | None = None
    clause1: ClauseKind | None = None
    isa_adverb: str | None = None
    only_position: str | None = None
    q2: QuantifierKind | None = None
    object1: NounPhrase | None = None
    object_list: PhraseList | None = None
    comparative_ref: NounPhrase | None = None
    clause2: ClauseKind | None = None
    object2: NounPhrase | None = None
    plurality: Plurality = field(default_factory=Plurality)
    source_index: int = 0
    expansion_id: int = 1

    @property
    def s_mods(self) -> tuple:
        return self.subject.mods if self.subject else ()

    @property
    def o_mods(self) -> tuple:
        return self.object1.mods if self.object1 else ()

    def signature(self) -> str:
        parts = []

        def put(key, value):
            if value is not None:
                parts.append(f"{key}={value}")

        put("q1", self.q1.value if self.q1 else None)
        put("s", self.subject.render() if self.subject else None)
        put("slist", self.subject_list.render() if self.subject_list else None)
        put("ex", self.exemplars.render() if self.exemplars else None)
        put("cl1", self.clause1.value if self.clause1 else None)
        put("isa", f"{self.isa.value}/{self.tense}")
        put("adv", self.isa_adverb)
        put("only", self.only_position)
        put("q2", self.q2.value if self.q2 else None)
        put("o", self.object1.render() if self.object1 else None)
        put("olist", self.object_list.render() if self.object_list else None)
        put("than", self.comparative_ref.render() if self.comparative_ref else None)
        put("cl2", self.clause2.value if self.clause2 else None)
        put("o2", self.object2.render(with_quantifier=True) if self.object2 else None)
        return " | ".join(parts)

    def to_json(self) -> dict:
        data = asdict(self)
        data["signature"] = self.signature()
        return _jsonable(data)


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "value") and not isinstance(value, (str, int, float, bool)):
        return value.value
    return value


# validation ------------------------------------------------------------------
def validate_pos_dependency(s_tag: str, o_tag: str, isa: IsaKind = IsaKind.Hyponymy) -> IsaKind:
    """Reject impossible tag pairs; a proper-noun pair turns plain IS-A into SameAs."""
    pair = (base_tag(s_tag), base_tag(o_tag))
    if pair in INVALID_POS_PAIRS:
        raise InvalidPosDependency(*pair)
    if pair == ("NNP", "NNP") and isa is IsaKind.Hyponymy:
        return IsaKind.SameAs
    return isa


# token grouping ----------------------------------------------------------------
def merge_proper_nouns(tokens: Sequence[Token]) -> list[Token]:
    """Join runs of NNP tokens (plus one trailing number) into a single token."""
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.tag == "NNP":
            j = i + 1
            while j < len(tokens) and tokens[j].tag == "NNP":
                j += 1
            if j < len(tokens) and tokens[j].tag == "CD" and j > i + 1:
                j += 1
            out.append(Token(" ".join(t.lexeme for t in tokens[i:j]), "NNP"))
            i = j
            continue
        out.append(tok)
        i += 1
    return reindex(out)


def _low(tok: Token) -> str:
    return tok.lexeme.lower()


def _word(tok: Token) -> Word:
    lexeme = tok.lexeme if tok.tag == "NNP" else tok.lexeme.lower()
    return Word(lexeme, tok.tag)


def parse_phrase(tokens: Sequence[Token], lexicon: Lexicon) -> NounPhrase:
    toks = [t for t in tokens if t.tag not in (",",)]
    quantifier = None
    if toks and toks[0].tag == "DT" and _low(toks[0]) in QUANTIFIER_WORDS:
        quantifier = QUANTIFIER_WORDS[_low(toks[0])]
        toks = toks[1:]
    # possessive proper noun acts as a modifier
    toks = [t for t in toks if t.tag != "POS"]
    if not toks:
        raise NoTemplateMatch("empty noun phrase")
    head_tok = toks[-1]
    appos = None
    mods = toks[:-1]
    if (
        len(toks) >= 2
        and toks[-2].tag == "NN"
        and lexicon.has_class(toks[-2].lexeme, "classifier")
        and head_tok.lexeme[:1].isupper()
    ):
        appos = _low(toks[-2])
        mods = toks[:-2]
    if head_tok.tag not in HEAD_TAGS:
        raise NoTemplateMatch(f"'{head_tok.lexeme}/{head_tok.tag}' cannot head a phrase")
    for mod in mods:
        if mod.tag not in MODIFIER_TAGS:
            raise NoTemplateMatch(f"'{mod.lexeme}/{mod.tag}' cannot modify a phrase")
    return NounPhrase(_word(head_tok), tuple(_word(m) for m in mods), appos, quantifier)


def _parse_list(tokens: Sequence[Token], lexicon: Lexicon) -> PhraseList | None:
    connective, members = split_list(tokens)
    if connective is None:
        return None
    return PhraseList(connective, tuple(parse_phrase(m, lexicon) for m in members))


def _find_clause(tokens: Sequence[Token], lexicon: Lexicon, bare_isa: bool) -> tuple[int, int] | None:
    """Locate ``that IS-A`` (or, when ``bare_isa``, a second bare IS-A); returns (start, end)."""
    words = [t.lexeme for t in tokens]
    for k, tok in enumerate(tokens):
        if _low(tok) == "that" and k + 1 < len(tokens):
            match = lexicon.match_isa(words, k + 1)
            if match is not None:
                return k, match.end
        if bare_isa and k > 0 and tok.tag in COPULA_TAGS:
            match = lexicon.match_isa(words, k)
            if match is not None:
                return k, match.end
    return None


def characterize(sentence: SimpleSentence, lexicon: Lexicon) -> CharSentence:
    """Fill the template slots of one normalized sentence."""
    plurality = sentence.plurality or Plurality()
    toks = merge_proper_nouns([t for t in sentence.tokens if t.tag not in (".", ":")])
    match = locate_isa(toks, lexicon)
    if match is None:
        raise NoTemplateMatch("no IS-A predicate")
    isa, tense = match.kind, match.tense
    if isa is IsaKind.WasPast:
        isa, tense = IsaKind.Hyponymy, PAST
    subj, obj = list(toks[: match.start]), list(toks[match.end:])
    fields: dict = {}

    # subject side
    adverb = only = None
    while subj and subj[0].tag == "RB":
        if _low(subj[0]) == "only":
            only = ONLY_SUBJECT
        elif lexicon.has_class(subj[0].lexeme, "future"):
            adverb = _low(subj[0])
        else:
            break
        subj = subj[1:]
    if subj and subj[0].tag == "DT" and _low(subj[0]) in QUANTIFIER_WORDS:
        fields["q1"] = QUANTIFIER_WORDS[_low(subj[0])]
        subj = subj[1:]
    if not subj:
        raise NoTemplateMatch("missing subject")
    lows = [_low(t) for t in subj]
    clause1 = _find_clause(subj, lexicon, bare_isa=False)
    such = next((k for k in range(len(lows) - 1) if lows[k] == "such" and lows[k + 1] == "as"), None)
    if such is not None:
        fields["subject"] = parse_phrase(subj[:such], lexicon)
        ex = subj[such + 2:]
        fields["exemplars"] = _parse_list(ex, lexicon) or PhraseList("and", (parse_phrase(ex, lexicon),))
    elif clause1 is not None:
        start, end = clause1
        fields["subject"] = parse_phrase(subj[:start], lexicon)
        fields["clause1"] = ClauseKind.ThatIs
        inner = parse_phrase(subj[end:], lexicon)
        fields["q2"] = inner.quantifier
        fields["object1"] = replace(inner, quantifier=None)
    else:
        listed = _parse_list(subj, lexicon)
        if listed is not None:
            fields["subject_list"] = listed
        else:
            fields["subject"] = parse_phrase(subj, lexicon)

    # object side
    if not obj and not match.entry.reciprocal:
        raise NoTemplateMatch("missing object")
    if obj and _low(obj[0]) == "only":
        only = ONLY_OBJECT
        obj = obj[1:]
    if obj and obj[-1].tag == "RB" and _low(obj[-1]) == "only":
        only = ONLY_OBJECT
        obj = obj[:-1]
    q2 = None
    if obj and obj[0].tag == "DT" and _low(obj[0]) in QUANTIFIER_WORDS:
        q2 = QUANTIFIER_WORDS[_low(obj[0])]
        obj = obj[1:]
        if q2 is QuantifierKind.The and obj and _low(obj[0]) == "only":
            only, q2 = THE_ONLY, None
            obj = obj[1:]
    if not obj:
        raise NoTemplateMatch("missing object")

    if "clause1" in fields:
        main = parse_phrase(obj, lexicon)
        fields["object2"] = replace(main, quantifier=q2)
    else:
        fields["q2"] = q2
        clause2 = _find_clause(obj, lexicon, bare_isa=True)
        lows = [_low(t) for t in obj]
        if clause2 is not None:
            start, end = clause2
            fields["object1"] = parse_phrase(obj[:start], lexicon)
            fields["clause2"] = ClauseKind.ThatIs
            fields["object2"] = parse_phrase(obj[end:], lexicon)
        elif "than" in lows:
            k = lows.index("than")
            fields["object1"] = parse_phrase(obj[:k], lexicon)
            fields["comparative_ref"] = parse_phrase(obj[k + 1:], lexicon)
        else:
            listed = _parse_list(obj, lexicon)
            if listed is not None:
                fields["object_list"] = listed
            else:
                fields["object1"] = parse_phrase(obj, lexicon)

    if fields.get("q1") is QuantifierKind.The and plurality.subject:
        fields["q1"] = QuantifierKind.Some

    subjects = [fields["subject"]] if fields.get("subject") else list(fields["subject_list"].members)
    objects = [fields["object1"]] if fields.get("object1") else list(fields["object_list"].members)
    for s in subjects:
        for o in objects:
            isa = validate_pos_dependency(s.head.tag, o.head.tag, isa)

    return CharSentence(
        isa=isa,
        tense=tense,
        isa_adverb=adverb,
        only_position=only,
        plurality=plurality,
        source_index=sentence.source_index,
        expansion_id=sentence.expansion_id,
        **fields,
    )


# rendering back to text ----------------------------------------------------------
_QUANTIFIER_SURFACE = {
    QuantifierKind.A: "a", QuantifierKind.The: "the", QuantifierKind.Some: "some",
    QuantifierKind.All: "all", QuantifierKind.No: "no",
}


def isa_surface(kind: IsaKind, tense: str, lexicon: Lexicon) -> list[Token]:
    if kind is IsaKind.Hyponymy and tense == PAST:
        words = ["was"]
    elif kind is IsaKind.WillBeFuture or tense == FUTURE:
        words = ["will", "be"]
    else:
        normals = {e.kind: e.normal for e in lexicon.isa_variants.values() if "reciprocal" not in e.flags}
        words = normals[kind].split()
    tags = {"is": "VBX", "was": "VBX", "be": "VBX", "will": "MD", "may": "MD", "can": "MD",
            "of": "IN", "as": "IN", "like": "IN", "same": "JJ", "class": "NN", "includes": "VBZ",
            "become": "VB", "now": "RB", "still": "RB", "sometimes": "RB"}
    return [Token(w, tags.get(w, "VBX")) for w in words]


def _phrase_tokens(np: NounPhrase, with_quantifier: bool = False) -> list[Token]:
    out = []
    if with_quantifier and np.quantifier is not None:
        out.append(Token(_QUANTIFIER_SURFACE[np.quantifier], "DT"))
    out += [Token(m.lexeme, m.tag) for m in np.mods]
    if np.appos:
        out.append(Token(np.appos, "NN"))
    head = np.head.lexeme
    if np.appos and np.head.tag != "NNP":
        head = head[:1].upper() + head[1:]
    out.append(Token(head, np.head.tag))
    return out


def _list_tokens(pl: PhraseList) -> list[Token]:
    out: list[Token] = []
    for i, member in enumerate(pl.members):
        if i:
            out.append(Token(pl.connective, "CC"))
        out += _phrase_tokens(member)
    return out


def _quant(q: QuantifierKind | None) -> list[Token]:
    return [Token(_QUANTIFIER_SURFACE[q], "DT")] if q else []


def render_sentence(cs: CharSentence, lexicon: Lexicon) -> SimpleSentence:
    """Normal-form token sequence that characterizes back to ``cs``."""
    toks: list[Token] = []
    if cs.isa_adverb:
        toks.append(Token(cs.isa_adverb, "RB"))
    if cs.only_position == ONLY_SUBJECT:
        toks.append(Token("only", "RB"))
    q1 = cs.q1
    toks += _quant(q1)
    if cs.subject_list:
        toks += _list_tokens(cs.subject_list)
    else:
        toks += _phrase_tokens(cs.subject)
    if cs.exemplars:
        toks += [Token("such", "PDT"), Token("as", "IN")] + _list_tokens(cs.exemplars)
    if cs.clause1:
        toks += [Token("that", "WDT"), Token("is", "VBX")] + _quant(cs.q2) + _phrase_tokens(cs.object1)
    toks += isa_surface(cs.isa, cs.tense, lexicon)
    if cs.clause1:
        if cs.only_position == ONLY_OBJECT:
            toks.append(Token("only", "RB"))
        toks += _phrase_tokens(cs.object2, with_quantifier=True)
    else:
        if cs.only_position == ONLY_OBJECT:
            toks.append(Token("only", "RB"))
        if cs.only_position == THE_ONLY:
            toks += [Token("the", "DT"), Token("only", "RB")]
        toks += _quant(cs.q2)
        if cs.object_list:
            toks += _list_tokens(cs.object_list)
        else:
            toks += _phrase_tokens(cs.object1)
        if cs.comparative_ref:
            toks += [Token("than", "IN")] + _phrase_tokens(cs.comparative_ref)
        if cs.clause2:
            toks += [Token("that", "WDT"), Token("is", "VBX")] + _phrase_tokens(cs.object2, with_quantifier=True)
    for i, tok in enumerate(toks[:-1]):
        if tok.lexeme == "a" and tok.tag == "DT" and toks[i + 1].lexeme[:1].lower() in "aeiou":
            toks[i] = Token("an", "DT")
    return SimpleSentence(
        tuple(reindex(toks)),
        source_index=cs.source_index,
        expansion_id=cs.expansion_id,
        plurality=cs.plurality,
        tense=cs.tense,
    )

