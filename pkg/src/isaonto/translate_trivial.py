"""Trivial translation rules: membership, hyponymy/hypernymy, quantification,
nested modification, clausal forms, exemplification and compound lists."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .characterize import CharSentence, NounPhrase, PhraseList
from .dl import (
    Atom,
    Axiom,
    ConceptAssertion,
    CounterPart,
    EquivalentTo,
    Nominal,
    NominalPart,
    Not,
    Provenance,
    SubClassOf,
    counter_individual,
    disj,
    mk_label,
    proper_individual,
)
from .lexicon import Lexicon, QuantifierKind

Q = QuantifierKind


@dataclass
class RuleContext:
    """Collects the axiom batch of one sentence together with its annotations."""

    lexicon: Lexicon
    counter: Callable[[tuple], int | str]
    source_index: int = 0
    axioms: list = field(default_factory=list)
    partial_reasons: list = field(default_factory=list)
    rule_ids: list = field(default_factory=list)
    # resolves a phrase to its concept label; installed by the dispatcher
    concept_of: Callable[..., str] | None = None

    def emit(self, rule_id: str, *axioms: Axiom) -> None:
        if rule_id not in self.rule_ids:
            self.rule_ids.append(rule_id)
        for axiom in axioms:
            self.axioms.append(axiom.with_provenance(Provenance(self.source_index, rule_id)))

    def partial(self, reason: str) -> None:
        if reason not in self.partial_reasons:
            self.partial_reasons.append(reason)

    def sub(self, rule_id: str, sub: str, sup) -> None:
        self.emit(rule_id, SubClassOf(Atom(sub), sup if not isinstance(sup, str) else Atom(sup)))


def phrase_words(np: NounPhrase) -> list[str]:
    return [w.lexeme for w in np.words]


def phrase_label(np: NounPhrase) -> str:
    return mk_label(phrase_words(np))


def individual_of(np: NounPhrase) -> str:
    return proper_individual(np.head.lexeme)


# nested modification ---------------------------------------------------------
def rule_modification(ctx: RuleContext, mods: list[str], head: str) -> str:
    """M1(M2(...Mk(S))) -> chain of sub-concepts; returns the outermost label."""
    if not mods:
        return mk_label([head])
    k = len(mods)
    labels = [mk_label(mods[i:] + [head]) for i in range(k)]
    head_label = mk_label([head])
    ctx.sub("T-MOD-NEST", labels[-1], head_label)
    for i in range(k - 1):
        single = mk_label([mods[i], head])
        ctx.sub("T-MOD-NEST", labels[i], labels[i + 1])
        ctx.sub("T-MOD-NEST", labels[i], single)
        ctx.sub("T-MOD-NEST", single, head_label)
    return labels[0]


def nominal_concept(ctx: RuleContext, np: NounPhrase) -> str:
    """Concept for a nominal phrase: modification chain plus an apposition class."""
    label = rule_modification(ctx, [m.lexeme for m in np.mods], np.head.lexeme)
    if np.appos:
        ctx.sub("T-MOD-APPOS", label, mk_label([np.appos]))
    return label


# membership ------------------------------------------------------------------
def most_specific_parent(ctx: RuleContext, np: NounPhrase) -> str | None:
    if np.appos:
        return mk_label([np.appos])
    return ctx.lexicon.get_msp(np.head.lexeme)


def rule_membership(ctx: RuleContext, np: NounPhrase, concept: str, rule_id: str = "T-MEM") -> str:
    """O(S) plus the induced [O+MSP(S)] concept; returns the induced label."""
    individual = individual_of(np)
    msp = most_specific_parent(ctx, np)
    ctx.emit(rule_id, ConceptAssertion(Atom(concept), individual))
    if msp is None:
        label = mk_label([concept, NominalPart(individual)])
        ctx.emit(rule_id, ConceptAssertion(Atom(label), individual))
        ctx.sub(rule_id, label, concept)
        ctx.sub(rule_id, label, Nominal(individual))
        return label
    label = mk_label([concept, msp])
    ctx.emit(rule_id, ConceptAssertion(Atom(label), individual))
    ctx.sub(rule_id, label, concept)
    ctx.sub(rule_id, label, msp)
    return label


# quantification --------------------------------------------------------------
def is_individual_level(ctx: RuleContext, np: NounPhrase) -> bool:
    """Nouns and individual-level adjectives describe permanent properties."""
    if np.head.tag in ("NN", "NNP"):
        return True
    return ctx.lexicon.has_class(np.head.lexeme, "individual-level")


def rule_quantification(
    ctx: RuleContext, cs: CharSentence, subject: str, obj: str, object_phrase: NounPhrase | None
) -> str:
    """NN-subject IS-A under the quantifier pair; returns the concept standing for S."""
    q1, q2 = cs.q1, cs.q2
    if object_phrase is not None and object_phrase.appos and q2 is Q.The:
        q2 = None
    if (q1 is Q.No) != (q2 is Q.No):
        ctx.sub("T-QNT-NO", subject, Not(Atom(obj)))
        return subject
    if q1 is Q.No and q2 is Q.No:
        ctx.sub("T-QNT-NO-NO", subject, obj)
        return subject
    if Q.All in (q1, q2):
        ctx.sub("T-QNT-ALL", subject, obj)
        return subject
    if q2 in (Q.Some, Q.The):
        n = ctx.counter(("obj", obj))
        counted = mk_label([obj, CounterPart(n)])
        label = mk_label([counted, subject])
        ctx.sub("T-QNT-SOME-OBJ", counted, obj)
        ctx.sub("T-QNT-SOME-OBJ", label, subject)
        ctx.sub("T-QNT-SOME-OBJ", label, counted)
        return label
    if q1 is Q.Some:
        label = mk_label([obj, subject])
        ctx.sub("T-QNT-SOME-SUBJ", label, subject)
        ctx.sub("T-QNT-SOME-SUBJ", label, obj)
        return label
    if q1 in (Q.The, Q.A):
        rule_id = "T-QNT-THE-SUBJ" if q1 is Q.The else "N-PLAYSAFE"
        n = ctx.counter(("subj", subject))
        label = mk_label([obj, subject])
        ctx.emit(rule_id, ConceptAssertion(Atom(label), counter_individual(subject, n)))
        ctx.sub(rule_id, label, subject)
        ctx.sub(rule_id, label, obj)
        if q1 is Q.A and object_phrase is not None and is_individual_level(ctx, object_phrase):
            ctx.partial("indefinite subject with an individual-level object")
        return label
    ctx.sub("T-HYPO", subject, obj)
    return subject


def rule_proper_isa(ctx: RuleContext, cs: CharSentence, np: NounPhrase, obj: str) -> str:
    """Proper-noun subject: membership, or a negated assertion under 'no'."""
    if cs.q2 is Q.No:
        ctx.emit("T-MEM-NO", ConceptAssertion(Not(Atom(obj)), individual_of(np)))
        return obj
    return rule_membership(ctx, np, obj)


# hypernymy -------------------------------------------------------------------
def rule_hypernymy(ctx: RuleContext, cs: CharSentence) -> None:
    """'S is a category of O': the roles swap and quantifiers drop out."""
    subject = ctx.concept_of(cs.subject)
    objects = [cs.object1] if cs.object1 else list(cs.object_list.members)
    for np in objects:
        if np.is_proper:
            rule_membership(ctx, np, subject, "T-MEM-INV")
        else:
            ctx.sub("T-HYPER", ctx.concept_of(np), subject)


# complex sentences -----------------------------------------------------------
def rule_complex_secondary(ctx: RuleContext, cs: CharSentence) -> None:
    """S is O1 that is O2: a composite [O2+O1] below both objects."""
    first = ctx.concept_of(cs.object1)
    second_name, second = ctx.concept_of(cs.object2, with_name=True)
    composite = mk_label([second_name, first])
    ctx.sub("T-CLS-2", composite, second)
    ctx.sub("T-CLS-2", composite, first)
    if cs.subject.is_proper:
        rule_membership(ctx, cs.subject, composite)
    else:
        ctx.sub("T-CLS-2", ctx.concept_of(cs.subject), composite)


def rule_complex_subject_clause(ctx: RuleContext, cs: CharSentence) -> None:
    """S that is O1 IS-A O2: S falls under both objects."""
    for np in (cs.object1, cs.object2):
        concept = ctx.concept_of(np)
        if cs.subject.is_proper:
            rule_membership(ctx, cs.subject, concept)
        else:
            ctx.sub("T-CLS-3", ctx.concept_of(cs.subject), concept)


# exemplification ---------------------------------------------------------------
def rule_such_as(ctx: RuleContext, cs: CharSentence) -> None:
    subject = ctx.concept_of(cs.subject)
    obj = ctx.concept_of(cs.object1)
    exemplars: PhraseList = cs.exemplars
    if exemplars.connective == "and" or len(exemplars.members) == 1:
        label = mk_label([phrase_label(m) for m in exemplars.members] + [subject])
        ctx.sub("T-SUCHAS-CONJ", label, obj)
        ctx.sub("T-SUCHAS-CONJ", label, subject)
        for member in exemplars.members:
            if member.is_proper:
                ctx.emit("T-SUCHAS-CONJ", ConceptAssertion(Atom(label), individual_of(member)))
        return
    labels = [mk_label([phrase_label(m), subject]) for m in exemplars.members]
    union = disj(*(Atom(label) for label in labels))
    ctx.emit("T-SUCHAS-DISJ", SubClassOf(union, Atom(obj)), SubClassOf(union, Atom(subject)))
    for member, label in zip(exemplars.members, labels):
        if member.is_proper:
            ctx.emit("T-SUCHAS-DISJ", ConceptAssertion(Atom(label), individual_of(member)))


# compound lists ----------------------------------------------------------------
def rule_compound_subject(ctx: RuleContext, cs: CharSentence, obj: str) -> None:
    members = cs.subject_list.members
    if cs.subject_list.connective == "and":
        for np in members:
            if np.is_proper:
                rule_membership(ctx, np, obj)
            else:
                ctx.sub("T-CMP-AND", ctx.concept_of(np), obj)
        return
    parts: list = []
    for i, np in enumerate(members):
        if i:
            parts.append("UNION")
        parts.append(phrase_label(np))
    label = mk_label(parts)
    union = disj(*(Nominal(individual_of(np)) if np.is_proper else Atom(ctx.concept_of(np)) for np in members))
    ctx.emit("T-CMP-UNION", EquivalentTo(Atom(label), union))
    ctx.sub("T-CMP-UNION", label, obj)
    if all(np.is_proper for np in members):
        parents = {most_specific_parent(ctx, np) for np in members}
        if len(parents) == 1 and None not in parents:
            msp = parents.pop()
            induced = mk_label([obj, msp])
            ctx.sub("T-CMP-UNION", label, induced)
            ctx.sub("T-CMP-UNION", induced, obj)
            ctx.sub("T-CMP-UNION", induced, msp)


def rule_compound_object(ctx: RuleContext, cs: CharSentence, subject_np: NounPhrase) -> None:
    objects = [ctx.concept_of(np) for np in cs.object_list.members]
    if cs.object_list.connective == "and":
        for obj in objects:
            if subject_np.is_proper:
                rule_membership(ctx, subject_np, obj)
            else:
                ctx.sub("T-CMP-AND", ctx.concept_of(subject_np), obj)
        return
    union = disj(*(Atom(o) for o in objects))
    if subject_np.is_proper:
        ctx.emit("T-CMP-OR", ConceptAssertion(union, individual_of(subject_np)))
    else:
        ctx.emit("T-CMP-OR", SubClassOf(Atom(ctx.concept_of(subject_np)), union))
