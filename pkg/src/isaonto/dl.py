"""Description-logic data model: concept expressions, axioms, ontology store, labels."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .labels import camel_label, individual_name, lower_first

# builtin vocabulary -------------------------------------------------------
HAS_STATE = "hasState"
DOES = "does"
INCLUDE = "include"
HAS_DIM = "hasDim"
HAS_UNIT = "hasUnit"
HAS_VALUE = "hasValue"
HAS_RANK = "hasRank"
HAS_GREATER_VALUE = "hasGreaterValue"
PPR = "PPR"
FPR = "FPR"
MODAL_ROLES = ("mayBe", "canBecome", "canBe", "isNow", "isSometimes")
BUILTIN_ROLES = frozenset(
    {HAS_STATE, DOES, INCLUDE, HAS_DIM, HAS_UNIT, HAS_VALUE, HAS_RANK, HAS_GREATER_VALUE, PPR, FPR, *MODAL_ROLES}
)
DATA_ROLES = frozenset({HAS_VALUE})


def dimension_role(dimension: str) -> str:
    """hasDim specialized to one dimension: Height -> hasHeight."""
    return "has" + dimension


def is_builtin_role(name: str) -> bool:
    return name in BUILTIN_ROLES or (name.startswith("has") and name[3:4].isupper())


# concept expressions ---------------------------------------------------------
_PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3


class ConceptExpr:
    """Base class of the concept expression tree."""

    __slots__ = ()
    precedence = _PREC_UNARY

    def render(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()

    def children(self) -> tuple:
        return ()

    def walk(self) -> Iterator["ConceptExpr"]:
        yield self
        for child in self.children():
            yield from child.walk()


def _wrap(expr: "ConceptExpr", minimum: int) -> str:
    text = expr.render()
    return f"({text})" if expr.precedence < minimum else text


@dataclass(frozen=True)
class Atom(ConceptExpr):
    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class TopConcept(ConceptExpr):
    def render(self) -> str:
        return "top"


@dataclass(frozen=True)
class BottomConcept(ConceptExpr):
    def render(self) -> str:
        return "bottom"


Top = TopConcept()
Bottom = BottomConcept()


def _canonical_members(cls, members: Iterable[ConceptExpr]) -> tuple:
    flat: list[ConceptExpr] = []
    for member in members:
        if isinstance(member, cls):
            flat.extend(member.members)
        else:
            flat.append(member)
    unique = {m.render(): m for m in flat}
    return tuple(unique[k] for k in sorted(unique))


@dataclass(frozen=True)
class And(ConceptExpr):
    members: tuple
    precedence = _PREC_AND

    def __post_init__(self):
        members = _canonical_members(And, self.members)
        if len(members) < 2:
            raise ValueError("And needs at least two distinct members; use conj()")
        object.__setattr__(self, "members", members)

    def render(self) -> str:
        return " and ".join(_wrap(m, _PREC_UNARY if isinstance(m, Or) else _PREC_AND) for m in self.members)

    def children(self) -> tuple:
        return self.members


@dataclass(frozen=True)
class Or(ConceptExpr):
    members: tuple
    precedence = _PREC_OR

    def __post_init__(self):
        members = _canonical_members(Or, self.members)
        if len(members) < 2:
            raise ValueError("Or needs at least two distinct members; use disj()")
        object.__setattr__(self, "members", members)

    def render(self) -> str:
        return " or ".join(_wrap(m, _PREC_AND) for m in self.members)

    def children(self) -> tuple:
        return self.members


@dataclass(frozen=True)
class Not(ConceptExpr):
    operand: ConceptExpr

    def render(self) -> str:
        return "not " + _wrap(self.operand, _PREC_UNARY)

    def children(self) -> tuple:
        return (self.operand,)


@dataclass(frozen=True)
class AllValues(ConceptExpr):
    role: str
    filler: ConceptExpr

    def render(self) -> str:
        return f"all {self.role} . " + _wrap(self.filler, _PREC_UNARY)

    def children(self) -> tuple:
        return (self.filler,)


@dataclass(frozen=True)
class Nominal(ConceptExpr):
    individual: str

    def render(self) -> str:
        return "{" + self.individual + "}"


Literal = Union[int, str]


def render_literal(value: Literal) -> str:
    if isinstance(value, bool):
        raise TypeError("boolean literals are not supported")
    if isinstance(value, int):
        return str(value)
    escaped = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


@dataclass(frozen=True)
class Datatype(ConceptExpr):
    """A named data range such as ``integer``."""

    name: str

    def render(self) -> str:
        return self.name


@dataclass(frozen=True)
class DataNominal(ConceptExpr):
    literal: Literal

    def render(self) -> str:
        return "{" + render_literal(self.literal) + "}"


@dataclass(frozen=True)
class DataAll(ConceptExpr):
    role: str
    data_range: ConceptExpr

    def render(self) -> str:
        return f"all {self.role} . " + self.data_range.render()

    def children(self) -> tuple:
        return (self.data_range,)


INTEGER = Datatype("integer")


def conj(*members: ConceptExpr) -> ConceptExpr:
    flat = _canonical_members(And, [m for m in members if m != Top])
    if not flat:
        return Top
    if len(flat) == 1:
        return flat[0]
    return And(flat)


def disj(*members: ConceptExpr) -> ConceptExpr:
    flat = _canonical_members(Or, [m for m in members if m != Bottom])
    if not flat:
        return Bottom
    if len(flat) == 1:
        return flat[0]
    return Or(flat)


def atom_names(expr: ConceptExpr) -> set[str]:
    return {e.name for e in expr.walk() if isinstance(e, Atom)}


def role_names(expr: ConceptExpr) -> set[str]:
    return {e.role for e in expr.walk() if isinstance(e, (AllValues, DataAll))}


def nominal_names(expr: ConceptExpr) -> set[str]:
    return {e.individual for e in expr.walk() if isinstance(e, Nominal)}


def rename_expr(expr: ConceptExpr, mapping) -> ConceptExpr:
    """Rename atoms and nominal individuals through ``mapping`` (a callable)."""
    if isinstance(expr, Atom):
        return Atom(mapping(expr.name))
    if isinstance(expr, Nominal):
        return Nominal(mapping(expr.individual))
    if isinstance(expr, And):
        return conj(*(rename_expr(m, mapping) for m in expr.members))
    if isinstance(expr, Or):
        return disj(*(rename_expr(m, mapping) for m in expr.members))
    if isinstance(expr, Not):
        return Not(rename_expr(expr.operand, mapping))
    if isinstance(expr, AllValues):
        return AllValues(expr.role, rename_expr(expr.filler, mapping))
    return expr


# axioms ---------------------------------------------------------------------
@dataclass(frozen=True)
class Provenance:
    source_index: int
    rule_id: str


@dataclass(frozen=True)
class Axiom:
    provenance: Provenance | None = field(default=None, compare=False, hash=False, kw_only=True)

    is_tbox = True

    def with_provenance(self, provenance: Provenance) -> "Axiom":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "provenance"}
        return type(self)(**data, provenance=provenance)

    def expressions(self) -> tuple:
        return ()

    def individuals(self) -> set[str]:
        names: set[str] = set()
        for expr in self.expressions():
            names |= nominal_names(expr)
        return names

    def rename(self, mapping) -> "Axiom":  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class SubClassOf(Axiom):
    sub: ConceptExpr
    sup: ConceptExpr

    def render(self) -> str:
        return f"{self.sub} <= {self.sup}"

    def expressions(self) -> tuple:
        return (self.sub, self.sup)

    def rename(self, mapping):
        return SubClassOf(rename_expr(self.sub, mapping), rename_expr(self.sup, mapping), provenance=self.provenance)


@dataclass(frozen=True)
class EquivalentTo(Axiom):
    left: ConceptExpr
    right: ConceptExpr

    def render(self) -> str:
        return f"{_wrap_top(self.left)} == {self.right}"

    def expressions(self) -> tuple:
        return (self.left, self.right)

    def rename(self, mapping):
        return EquivalentTo(rename_expr(self.left, mapping), rename_expr(self.right, mapping), provenance=self.provenance)


def _wrap_top(expr: ConceptExpr) -> str:
    # keeps "(A and not B) == bottom" readable
    return f"({expr})" if isinstance(expr, (And, Or)) else str(expr)


@dataclass(frozen=True)
class ConceptAssertion(Axiom):
    concept: ConceptExpr
    individual: str
    is_tbox = False

    def render(self) -> str:
        if isinstance(self.concept, Atom):
            return f"{self.concept}({self.individual})"
        return f"({self.concept})({self.individual})"

    def expressions(self) -> tuple:
        return (self.concept,)

    def individuals(self) -> set[str]:
        return super().individuals() | {self.individual}

    def rename(self, mapping):
        return ConceptAssertion(rename_expr(self.concept, mapping), mapping(self.individual), provenance=self.provenance)


@dataclass(frozen=True)
class RoleAssertion(Axiom):
    role: str
    subject: str
    object: str
    is_tbox = False

    def render(self) -> str:
        return f"{self.role}({self.subject}, {self.object})"

    def individuals(self) -> set[str]:
        return {self.subject, self.object}

    def rename(self, mapping):
        return RoleAssertion(self.role, mapping(self.subject), mapping(self.object), provenance=self.provenance)


@dataclass(frozen=True)
class DataAssertion(Axiom):
    role: str
    individual: str
    literal: Literal
    is_tbox = False

    def render(self) -> str:
        return f"{self.role}({self.individual}, {render_literal(self.literal)})"

    def individuals(self) -> set[str]:
        return {self.individual}

    def rename(self, mapping):
        return DataAssertion(self.role, mapping(self.individual), self.literal, provenance=self.provenance)


@dataclass(frozen=True)
class SameIndividual(Axiom):
    first: str
    second: str
    is_tbox = False

    def __post_init__(self):
        if self.second < self.first:
            first, second = self.second, self.first
            object.__setattr__(self, "first", first)
            object.__setattr__(self, "second", second)

    def render(self) -> str:
        return f"SameIndividual({self.first}, {self.second})"

    def individuals(self) -> set[str]:
        return {self.first, self.second}

    def rename(self, mapping):
        return SameIndividual(mapping(self.first), mapping(self.second), provenance=self.provenance)


@dataclass(frozen=True)
class SubRoleOf(Axiom):
    sub: str
    sup: str

    def render(self) -> str:
        return f"role {self.sub} <= {self.sup}"

    def rename(self, mapping):
        return self


@dataclass(frozen=True)
class TransitiveRole(Axiom):
    role: str

    def render(self) -> str:
        return f"role {self.role} transitive"

    def rename(self, mapping):
        return self


def axiom_concepts(axiom: Axiom) -> set[str]:
    names: set[str] = set()
    for expr in axiom.expressions():
        names |= atom_names(expr)
    return names


def axiom_roles(axiom: Axiom) -> set[str]:
    if isinstance(axiom, (RoleAssertion, DataAssertion)):
        return {axiom.role}
    if isinstance(axiom, SubRoleOf):
        return {axiom.sub, axiom.sup}
    if isinstance(axiom, TransitiveRole):
        return {axiom.role}
    names: set[str] = set()
    for expr in axiom.expressions():
        names |= role_names(expr)
    return names


# labels -----------------------------------------------------------------------
@dataclass(frozen=True)
class CounterPart:
    """Marks an ``_N`` occurrence suffix inside a label."""

    value: int | str


@dataclass(frozen=True)
class NominalPart:
    """Embeds an individual's name inside a concept label."""

    individual: str


def mk_label(parts) -> str:
    """Concatenate label parts: lexemes are capitalized and camel-joined."""
    parts = list(parts)
    if not parts:
        raise ValueError("mk_label needs at least one part")
    out = ""
    for part in parts:
        if isinstance(part, CounterPart):
            out += f"_{part.value}"
        elif isinstance(part, NominalPart):
            out += camel_label([part.individual.replace("_", " ")])
        else:
            out += camel_label([part])
    return out


def counter_individual(label: str, value: int | str) -> str:
    """Individual for the N-th occurrence of a subject, e.g. ``woman_7``."""
    return f"{lower_first(label)}_{value}"


def proper_individual(lexeme: str) -> str:
    return individual_name(lexeme)


# ontology --------------------------------------------------------------------
class Ontology:
    """Ordered, duplicate-free store of T-Box and A-Box axioms."""

    def __init__(self, axioms: Iterable[Axiom] = ()):
        self.tbox: list[Axiom] = []
        self.abox: list[Axiom] = []
        self._seen: set[Axiom] = set()
        self.concept_registry: dict[str, Provenance | None] = {}
        self.individual_registry: dict[str, Provenance | None] = {}
        self.counters: dict = {}
        for axiom in axioms:
            self.add_axiom(axiom)

    def add_axiom(self, axiom: Axiom) -> bool:
        if axiom in self._seen:
            return False
        self._seen.add(axiom)
        (self.tbox if axiom.is_tbox else self.abox).append(axiom)
        for name in sorted(axiom_concepts(axiom)):
            self.concept_registry.setdefault(name, axiom.provenance)
        for name in sorted(axiom.individuals()):
            self.individual_registry.setdefault(name, axiom.provenance)
        return True

    def extend(self, axioms: Iterable[Axiom]) -> int:
        return sum(1 for a in axioms if self.add_axiom(a))

    def next_counter(self, key) -> int:
        value = self.counters.get(key, 0) + 1
        self.counters[key] = value
        return value

    @property
    def axioms(self) -> list[Axiom]:
        return self.tbox + self.abox

    def __iter__(self):
        return iter(self.axioms)

    def __len__(self) -> int:
        return len(self.tbox) + len(self.abox)

    def __contains__(self, axiom) -> bool:
        return axiom in self._seen

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return self._seen == other._seen

    def __hash__(self):  # pragma: no cover - mutable container
        raise TypeError("Ontology is unhashable")

    def concept_names(self) -> set[str]:
        return set(self.concept_registry)

    def individuals(self) -> set[str]:
        return set(self.individual_registry)

    def roles(self) -> set[str]:
        names: set[str] = set()
        for axiom in self.axioms:
            names |= axiom_roles(axiom)
        return names

    def copy(self) -> "Ontology":
        clone = Ontology(self.axioms)
        clone.counters = dict(self.counters)
        return clone
