"""Non-trivial translation rules: reification, gerunds, equivalence and
similarity, holonymy, ONLY, dimensional modifiers and temporal/epistemic roles."""

from __future__ import annotations

from dataclasses import dataclass

from .characterize import CharSentence, NounPhrase, base_tag
from .dl import (
    FPR,
    HAS_DIM,
    HAS_GREATER_VALUE,
    HAS_RANK,
    HAS_STATE,
    HAS_UNIT,
    HAS_VALUE,
    INCLUDE,
    INTEGER,
    PPR,
    AllValues,
    Atom,
    Bottom,
    ConceptAssertion,
    DataAll,
    DataAssertion,
    DataNominal,
    EquivalentTo,
    Nominal,
    NominalPart,
    Not,
    RoleAssertion,
    SameIndividual,
    SubRoleOf,
    TransitiveRole,
    conj,
    dimension_role,
    disj,
    mk_label,
)
from .errors import PosMismatch, UnknownDimension
from .lexicon import IsaKind, QuantifierKind
from .numerals import from_words, ordinal_value
from .tagger import adjective_stem
from .translate_trivial import (
    RuleContext,
    individual_of,
    most_specific_parent,
    phrase_label,
    phrase_words,
    rule_membership,
)

ATTRIBUTE, ACTIVITY, DIMENSION, UNIT, RANK = "Attribute", "Activity", "Dimension", "Unit", "Rank"


# reification -----------------------------------------------------------------
def rule_reify(ctx: RuleContext, adjective_label: str, gerund_subject: bool = False) -> str:
    """Adjectival object -> [O+Thing] (or [O+Activity] for gerund subjects)."""
    if gerund_subject:
        label = mk_label([adjective_label, ACTIVITY])
        ctx.sub("N-REIFY-ACT", label, ACTIVITY)
        return label
    label = mk_label([adjective_label, "Thing"])
    ctx.emit("N-REIFY", EquivalentTo(Atom(label), AllValues(HAS_STATE, Atom(adjective_label))))
    ctx.sub("N-REIFY", adjective_label, ATTRIBUTE)
    return label


# gerunds -----------------------------------------------------------------------
def is_gerund_phrase(np: NounPhrase | None) -> bool:
    return np is not None and (np.head.tag == "VBG" or any(m.tag == "VBG" for m in np.mods))


def rule_gerund(ctx: RuleContext, np: NounPhrase) -> str:
    """[M+S] below the union of its parts, since the modification direction is unknown."""
    label = phrase_label(np)
    if np.head.tag == "VBG" and not np.mods:
        return label
    parts = disj(*(Atom(mk_label([w])) for w in phrase_words(np)))
    ctx.sub("N-GERUND", label, parts)
    if not ctx.lexicon.knows_noun(" ".join(phrase_words(np))):
        ctx.partial("gerund compound unknown to the hypernym graph")
    return label


# equivalence and similarity ------------------------------------------------------
def rule_equivalence(ctx: RuleContext, cs: CharSentence) -> None:
    s, o = cs.subject, cs.object1
    if base_tag(s.head.tag) != base_tag(o.head.tag):
        raise PosMismatch(f"equivalence needs matching categories, got {s.head.tag} and {o.head.tag}")
    if s.is_proper:
        ctx.emit("N-EQUIV", SameIndividual(individual_of(s), individual_of(o)))
        return
    ctx.emit("N-EQUIV", EquivalentTo(Atom(ctx.concept_of(s, plain=True)), Atom(ctx.concept_of(o, plain=True))))


def rule_similarity(ctx: RuleContext, cs: CharSentence) -> None:
    s = ctx.concept_of(cs.subject, plain=True)
    o = ctx.concept_of(cs.object1, plain=True)
    like = mk_label([o, "Like"])
    ctx.sub("N-LIKE", s, like)
    ctx.sub("N-LIKE", o, like)


# holonymy --------------------------------------------------------------------------
def rule_holonymy(ctx: RuleContext, cs: CharSentence) -> None:
    subject = ctx.concept_of(cs.subject)
    objects = [cs.object1] if cs.object1 else list(cs.object_list.members)
    proper = [np for np in objects if np.is_proper]
    for np in proper:
        rule_membership(ctx, np, subject, "T-MEM-INV")
    common = [np for np in objects if not np.is_proper]
    if not common:
        return
    head = cs.subject.head.lexeme
    if all(ctx.lexicon.is_hyponym(np.head.lexeme, head) for np in common):
        for np in common:
            ctx.sub("N-HOLO-HYPER", ctx.concept_of(np), subject)
        return
    union = disj(*(Atom(ctx.concept_of(np)) for np in common))
    ctx.emit("N-HOLO", EquivalentTo(Atom(subject), AllValues(INCLUDE, union)), TransitiveRole(INCLUDE))


# ONLY --------------------------------------------------------------------------------
def rule_only(ctx: RuleContext, position: str, induced: str, obj: str) -> None:
    """Constraints over the concept induced for S (its own concept when S is common)."""
    if position == "subject":
        ctx.sub("N-ONLY-2", induced, obj)
        return
    empty = EquivalentTo(conj(Atom(induced), Not(Atom(obj))), Bottom)
    if position == "the-only":
        ctx.emit("N-ONLY-3", EquivalentTo(Atom(induced), Atom(obj)), empty)
    else:
        ctx.emit("N-ONLY-1", empty)


# dimensions ----------------------------------------------------------------------------
@dataclass(frozen=True)
class DimensionShape:
    kind: str  # numeric | superlative | comparative
    adjective: str
    dimension: str
    positive: bool
    unit: str | None = None
    value: int | None = None
    rank: int | None = None


def _dimension(ctx: RuleContext, adjective: str, prefer: str | None = None) -> tuple[str, bool]:
    options = sorted(ctx.lexicon.dimensions_of(adjective))
    if not options:
        raise UnknownDimension(f"no dimension known for '{adjective}'")
    if prefer is not None:
        for dim, polarity in options:
            if dim == prefer:
                return dim, polarity == "+"
    dim, polarity = options[0]
    return dim, polarity == "+"


def _base_adjective(ctx: RuleContext, word, marker_tags: tuple) -> str:
    if word.tag in marker_tags:
        suffix = "est" if word.tag == "JJS" else "er"
        return adjective_stem(word.lexeme, ctx.lexicon, suffix) or word.lexeme
    return word.lexeme


def dimension_shape(ctx: RuleContext, cs: CharSentence) -> DimensionShape | None:
    """Recognize numeric, superlative and comparative object modifiers."""
    np = cs.object1
    if np is None:
        return None
    words = list(np.words)
    lows = [w.lexeme for w in words]
    for i, word in enumerate(words[:-1]):
        if word.tag == "CD":
            unit = ctx.lexicon.unit_for_surface(words[i + 1].lexeme)
            value = from_words(word.lexeme)
            if value is None and word.lexeme.isdigit():
                value = int(word.lexeme)
            if unit is None or value is None or i + 2 >= len(words):
                continue
            adjective = words[i + 2].lexeme
            unit_dim = next((d for d, u in ctx.lexicon.units.items() if u == unit), None)
            dim, positive = _dimension(ctx, adjective, unit_dim)
            return DimensionShape("numeric", adjective, dim, positive, unit=unit, value=value)
    for i, word in enumerate(words):
        if word.tag == "JJS" or (word.tag == "RBS" and word.lexeme in ("most", "least")):
            if word.tag == "JJS":
                adjective = _base_adjective(ctx, word, ("JJS",))
            else:
                adjective = words[i + 1].lexeme if i + 1 < len(words) else word.lexeme
            dim, positive = _dimension(ctx, adjective)
            if word.lexeme == "least":
                positive = not positive
            rank = next((ordinal_value(w) for w in lows[:i] if ordinal_value(w)), None)
            return DimensionShape("superlative", adjective, dim, positive, rank=rank)
    if cs.comparative_ref is not None or any(w.tag in ("JJR", "RBR") for w in words):
        for i, word in enumerate(words):
            if word.tag == "JJR":
                adjective = _base_adjective(ctx, word, ("JJR",))
                break
            if word.tag == "RBR" and i + 1 < len(words):
                adjective = words[i + 1].lexeme
                break
        else:
            return None
        dim, positive = _dimension(ctx, adjective)
        return DimensionShape("comparative", adjective, dim, positive)
    return None


def _dimension_roles(ctx: RuleContext, rule_id: str, dim: str, unit: str | None) -> str:
    role = dimension_role(dim)
    ctx.emit(rule_id, SubRoleOf(role, HAS_DIM))
    ctx.sub(rule_id, dim, DIMENSION)
    if unit is not None:
        ctx.sub(rule_id, unit, UNIT)
    return role


def _dimension_individual(dim: str, individual: str) -> str:
    return f"{dim[0]}_{individual}"


def rule_dimension(ctx: RuleContext, cs: CharSentence, shape: DimensionShape) -> None:
    np = cs.subject
    proper = np.is_proper
    msp = most_specific_parent(ctx, np) if proper else None
    individual = individual_of(np) if proper else None
    obj = cs.object1
    head_is_noun = obj.head.tag in ("NN", "NNP")
    head = [obj.head.lexeme] if head_is_noun else []
    tail = [msp] if msp else []

    if shape.kind == "numeric":
        rule_id = "N-DIM-NUM"
        adj_thing = rule_reify(ctx, mk_label([shape.adjective]))
        unit = shape.unit
        role = _dimension_roles(ctx, rule_id, shape.dimension, unit)
        label = mk_label([w.lexeme for w in obj.words] + tail)
        members = [Atom(adj_thing)] + ([Atom(mk_label(head))] if head else [])
        definition = conj(
            *members,
            AllValues(role, conj(Atom(shape.dimension), AllValues(HAS_UNIT, conj(Atom(unit), DataAll(HAS_VALUE, INTEGER))))),
        )
        _define(ctx, rule_id, label, definition, proper, np)
        if proper:
            dim_ind = _dimension_individual(shape.dimension, individual)
            unit_ind = f"{ctx.lexicon.unit_abbreviation(unit)}_{individual}"
            ctx.emit(
                rule_id,
                ConceptAssertion(Atom(shape.dimension), dim_ind),
                RoleAssertion(role, individual, dim_ind),
                ConceptAssertion(Atom(unit), unit_ind),
                RoleAssertion(HAS_UNIT, dim_ind, unit_ind),
                DataAssertion(HAS_VALUE, unit_ind, shape.value),
            )
        return

    if shape.kind == "superlative":
        one_of = cs.q2 is QuantifierKind.A
        rule_id = "N-DIM-RANKSUP" if shape.rank or one_of else "N-DIM-SUP"
        adj_thing = rule_reify(ctx, mk_label([shape.adjective]))
        role = _dimension_roles(ctx, rule_id, shape.dimension, None)
        rank = _rank_literal(shape, one_of)
        label = mk_label((["OneOf"] if one_of else []) + [w.lexeme for w in obj.words] + tail)
        members = [Atom(adj_thing)] + ([Atom(mk_label(head))] if head else []) + ([Atom(msp)] if msp else [])
        definition = conj(
            *members,
            AllValues(role, conj(Atom(shape.dimension), AllValues(HAS_RANK, conj(Atom(RANK), DataAll(HAS_VALUE, DataNominal(rank)))))),
        )
        _define(ctx, rule_id, label, definition, proper, np)
        if proper:
            dim_ind = _dimension_individual(shape.dimension, individual)
            rank_ind = f"r_{individual}"
            ctx.emit(
                rule_id,
                ConceptAssertion(Atom(shape.dimension), dim_ind),
                RoleAssertion(role, individual, dim_ind),
                ConceptAssertion(Atom(RANK), rank_ind),
                RoleAssertion(HAS_RANK, dim_ind, rank_ind),
                DataAssertion(HAS_VALUE, rank_ind, rank),
            )
        return

    rule_id = "N-DIM-CMP"
    unit = ctx.lexicon.default_unit(shape.dimension)
    role = _dimension_roles(ctx, rule_id, shape.dimension, unit)
    adj_obj = mk_label([shape.adjective] + head) if head else mk_label([shape.adjective])
    if head:
        ctx.sub(rule_id, adj_obj, mk_label(head))
    ref = cs.comparative_ref
    ref_label = None
    if ref is not None and ref.is_proper:
        ref_msp = most_specific_parent(ctx, ref)
        ref_label = mk_label([ref.head.lexeme] + ([ref_msp] if ref_msp else []))
        value_node = f"d_{ref_label}"
    elif ref is not None:
        value_node = f"d_{ctx.concept_of(ref)}"
    else:
        value_node = f"d_{mk_label(head or [obj.head.lexeme])}"
    label = mk_label([w.lexeme for w in obj.words] + ([ref.head.lexeme] if ref is not None else []) + tail)

    def measured(value_range):
        return AllValues(role, conj(Atom(shape.dimension), AllValues(HAS_UNIT, conj(Atom(unit), AllValues(HAS_VALUE, value_range)))))

    base = [Atom(adj_obj)] + ([Atom(msp)] if msp else [])
    _define(ctx, rule_id, label, conj(*base, measured(AllValues(HAS_GREATER_VALUE, Nominal(value_node)))), proper, np)
    if ref_label is not None:
        ref_base = [Atom(adj_obj)] + ([Atom(ref_msp)] if ref_msp else [])
        ctx.emit(rule_id, EquivalentTo(Atom(ref_label), conj(*ref_base, measured(Nominal(value_node)))))
        ctx.emit(rule_id, ConceptAssertion(Atom(ref_label), individual_of(ref)))


def _rank_literal(shape: DimensionShape, one_of: bool) -> int | str:
    if shape.positive:
        if one_of:
            return "m"
        return shape.rank or 1
    if one_of:
        return "n-m"
    if shape.rank and shape.rank > 1:
        return f"n-{shape.rank - 1}"
    return "n"


def _define(ctx: RuleContext, rule_id: str, label: str, definition, proper: bool, np: NounPhrase) -> None:
    ctx.emit(rule_id, EquivalentTo(Atom(label), definition))
    if proper:
        ctx.emit(rule_id, ConceptAssertion(Atom(label), individual_of(np)))
    else:
        ctx.emit(rule_id, EquivalentTo(Atom(ctx.concept_of(np)), Atom(label)))


# temporal and epistemic roles --------------------------------------------------------------
MODAL_RULES = {
    IsaKind.MayBe: ("N-MAYBE", "MayBe", "mayBe"),
    IsaKind.CanBecome: ("N-CANBECOME", "CanBecome", "canBecome"),
    IsaKind.CanBe: ("N-CANBE", "CanBe", "canBe"),
    IsaKind.IsNow: ("N-ISNOW", "IsNow", "isNow"),
    IsaKind.IsSometimes: ("N-SOMETIMES", "IsSometimes", "isSometimes"),
    IsaKind.WillBeFuture: ("N-FPR", "FPR", FPR),
}


def modal_applies(cs: CharSentence) -> bool:
    return (
        cs.isa in MODAL_RULES
        or cs.isa is IsaKind.IsStill
        or cs.isa_adverb is not None
        or (cs.isa is IsaKind.Hyponymy and cs.tense == "past")
    )


def _past_axioms(ctx: RuleContext, rule_id: str, sub: str, obj: str) -> None:
    pointer = AllValues(PPR, Atom(obj))
    ctx.sub(rule_id, sub, disj(Atom(obj), pointer))
    ctx.sub(rule_id, obj, Not(pointer))


def rule_modal(ctx: RuleContext, cs: CharSentence, obj: str) -> None:
    np = cs.subject
    if cs.isa_adverb is not None:
        rule_id, prefix = "N-FPR-ADV", None
    elif cs.isa is IsaKind.IsStill:
        rule_id, prefix = "N-ISSTILL", "IsStill"
    elif cs.isa in MODAL_RULES:
        rule_id, prefix, role = MODAL_RULES[cs.isa]
    else:
        rule_id, prefix = "N-PPR", "PPR"

    if cs.isa_adverb is not None:
        adv_label = mk_label([cs.isa_adverb, obj])
        ctx.sub(rule_id, adv_label, obj)
        body = conj(Atom(adv_label), AllValues(FPR, Atom(obj)))
        target = _modal_subject(ctx, np, [cs.isa_adverb, obj], rule_id)
        ctx.sub(rule_id, target, body)
        return

    target = _modal_subject(ctx, np, [prefix, obj], rule_id)
    if rule_id == "N-ISSTILL":
        ctx.sub(rule_id, target, conj(Atom(obj), AllValues(PPR, Atom(obj))))
    elif rule_id == "N-PPR":
        _past_axioms(ctx, rule_id, target, obj)
        if not np.is_proper:
            ctx.partial("past-tense validity of a common-noun subject is undecided")
    else:
        ctx.emit(rule_id, EquivalentTo(Atom(target), AllValues(role, Atom(obj))))


def _modal_subject(ctx: RuleContext, np: NounPhrase, parts: list, rule_id: str) -> str:
    """Common nouns carry the axiom themselves; proper nouns get an induced label."""
    if not np.is_proper:
        return ctx.concept_of(np)
    individual = individual_of(np)
    msp = most_specific_parent(ctx, np)
    if msp is None:
        label = mk_label(parts + [NominalPart(individual)])
        ctx.emit(rule_id, ConceptAssertion(Atom(label), individual))
        ctx.sub(rule_id, label, Nominal(individual))
        return label
    label = mk_label(parts + [msp])
    ctx.emit(rule_id, ConceptAssertion(Atom(label), individual), ConceptAssertion(Atom(msp), individual))
    ctx.sub(rule_id, label, msp)
    return label
