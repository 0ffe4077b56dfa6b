"""Dispatch a characterized sentence to its rule family and collect the batch."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .characterize import CharSentence, NounPhrase
from .dl import Axiom
from .errors import IsaOntoError, UnknownDimension
from .lexicon import IsaKind, Lexicon
from .translate_nontrivial import (
    dimension_shape,
    is_gerund_phrase,
    modal_applies,
    rule_dimension,
    rule_equivalence,
    rule_gerund,
    rule_holonymy,
    rule_modal,
    rule_only,
    rule_reify,
    rule_similarity,
)
from .translate_trivial import (
    RuleContext,
    nominal_concept,
    rule_complex_secondary,
    rule_complex_subject_clause,
    rule_compound_object,
    rule_compound_subject,
    rule_hypernymy,
    rule_modification,
    rule_proper_isa,
    rule_quantification,
    rule_such_as,
)

ADJECTIVAL = ("JJ", "JJR", "JJS", "RB", "RBR", "RBS")


@dataclass
class Translation:
    source_index: int
    expansion_id: int
    axioms: tuple = ()
    rule_ids: tuple = ()
    partial_reasons: tuple = ()
    error: str | None = None

    @property
    def partial(self) -> bool:
        return bool(self.partial_reasons)

    def to_json(self) -> dict:
        return {
            "expansion_id": self.expansion_id,
            "rules": list(self.rule_ids),
            "partial": list(self.partial_reasons),
            "error": self.error,
            "axioms": [a.render() for a in self.axioms],
        }


def sequential_counter(counters: dict) -> Callable[[tuple], int]:
    def next_value(key: tuple) -> int:
        counters[key] = counters.get(key, 0) + 1
        return counters[key]

    return next_value


def _install_resolver(ctx: RuleContext, cs: CharSentence) -> None:
    gerund_subject = is_gerund_phrase(cs.subject)

    def concept_of(np: NounPhrase, with_name: bool = False, plain: bool = False):
        if np.head.tag in ADJECTIVAL:
            name = rule_modification(ctx, [m.lexeme for m in np.mods], np.head.lexeme)
            concept = name if plain else rule_reify(ctx, name, gerund_subject)
        elif is_gerund_phrase(np):
            name = concept = rule_gerund(ctx, np)
        else:
            name = concept = nominal_concept(ctx, np)
        return (name, concept) if with_name else concept

    ctx.concept_of = concept_of


def _dispatch(ctx: RuleContext, cs: CharSentence) -> None:
    kind = cs.isa
    if kind is IsaKind.SameAs:
        return rule_equivalence(ctx, cs)
    if kind is IsaKind.Like:
        return rule_similarity(ctx, cs)
    if kind is IsaKind.Includes:
        return rule_holonymy(ctx, cs)
    if kind is IsaKind.Hypernymy:
        return rule_hypernymy(ctx, cs)
    if cs.exemplars is not None:
        return rule_such_as(ctx, cs)
    if cs.clause1 is not None:
        return rule_complex_subject_clause(ctx, cs)
    if cs.clause2 is not None:
        return rule_complex_secondary(ctx, cs)
    if cs.subject_list is not None:
        obj = ctx.concept_of(cs.object1) if cs.object1 else None
        if obj is None:
            raise IsaOntoError("compound subject with compound object is not supported")
        return rule_compound_subject(ctx, cs, obj)
    if cs.object_list is not None:
        return rule_compound_object(ctx, cs, cs.subject)
    if modal_applies(cs):
        return rule_modal(ctx, cs, ctx.concept_of(cs.object1))

    try:
        shape = dimension_shape(ctx, cs)
    except UnknownDimension as exc:
        ctx.partial(str(exc))
        shape = None
    if shape is not None:
        return rule_dimension(ctx, cs, shape)

    obj = ctx.concept_of(cs.object1)
    if cs.subject.is_proper:
        induced = rule_proper_isa(ctx, cs, cs.subject, obj)
    else:
        induced = rule_quantification(ctx, cs, ctx.concept_of(cs.subject), obj, cs.object1)
    if cs.only_position is not None:
        rule_only(ctx, cs.only_position, induced, obj)


def translate(cs: CharSentence, lexicon: Lexicon, counter: Callable[[tuple], int | str]) -> Translation:
    """Translate one characterized sentence into an ordered, duplicate-free batch."""
    ctx = RuleContext(lexicon, counter, cs.source_index)
    _install_resolver(ctx, cs)
    _dispatch(ctx, cs)
    seen: set[Axiom] = set()
    batch = []
    for axiom in ctx.axioms:
        if axiom not in seen:
            seen.add(axiom)
            batch.append(axiom)
    return Translation(
        cs.source_index,
        cs.expansion_id,
        tuple(batch),
        tuple(ctx.rule_ids),
        tuple(ctx.partial_reasons),
    )
