"""Structural subsumption, consistency checking and taxonomy extraction.

Concepts are expanded into a normal form (named atoms, negated atoms, nominals,
value restrictions per role, data ranges, pending disjunctions) closed under the
told axioms. Complex-left axioms and complex definitions are applied as general
inclusions until a fixpoint; disjunctions are decided by case analysis.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .dl import (
    INTEGER,
    AllValues,
    And,
    Atom,
    Axiom,
    BottomConcept,
    ConceptAssertion,
    ConceptExpr,
    DataAll,
    DataAssertion,
    DataNominal,
    Datatype,
    EquivalentTo,
    Nominal,
    Not,
    Ontology,
    Or,
    RoleAssertion,
    SameIndividual,
    SubClassOf,
    SubRoleOf,
    TopConcept,
    atom_names,
    conj,
)
from .errors import DefinitionCycle

TOP = "top"
BOTTOM = "bottom"


_UNKNOWN = object()


@dataclass
class _Node:
    """Normal form of a conjunction of concept expressions."""

    sources: frozenset
    atoms: set = field(default_factory=set)
    neg_atoms: set = field(default_factory=set)
    nominals: set = field(default_factory=set)
    neg_nominals: set = field(default_factory=set)
    alls: dict = field(default_factory=lambda: defaultdict(list))
    data: dict = field(default_factory=lambda: defaultdict(list))
    ors: list = field(default_factory=list)
    negs: list = field(default_factory=list)
    bottom: bool = False
    clash: object = _UNKNOWN
    entailed: frozenset | None = None


def _split_left(expr: ConceptExpr) -> list[ConceptExpr]:
    if isinstance(expr, Or):
        return [part for member in expr.members for part in _split_left(member)]
    return [expr]


def _trigger(expr: ConceptExpr) -> tuple | None:
    """A cheap necessary condition for ``node ⊑ expr``: an atom, role or nominal the node must carry."""
    if isinstance(expr, Atom):
        return ("atom", expr.name)
    if isinstance(expr, Nominal):
        return ("nominal", expr.individual)
    if isinstance(expr, AllValues) and not isinstance(expr.filler, TopConcept):
        return ("role", expr.role)
    if isinstance(expr, DataAll):
        return ("data", expr.role)
    if isinstance(expr, Not) and isinstance(expr.operand, Atom):
        return ("neg", expr.operand.name)
    if isinstance(expr, And):
        for member in expr.members:
            found = _trigger(member)
            if found is not None:
                return found
    return None


class Reasoner:
    """Decides subsumption and satisfiability over a fixed T-Box."""

    def __init__(self, axioms: Iterable[Axiom]):
        self.told: dict[str, list[ConceptExpr]] = defaultdict(list)
        self.gcis: list[tuple[ConceptExpr, ConceptExpr]] = []
        self.definitions: dict[str, list[ConceptExpr]] = defaultdict(list)
        self.role_parents: dict[str, set[str]] = defaultdict(set)
        for axiom in axioms:
            self._absorb(axiom)
        self._role_supers: dict[str, frozenset] = {}
        self._gci_index: dict[tuple, list[int]] = defaultdict(list)
        self._gci_general: list[int] = []
        for i, (lhs, _) in enumerate(self.gcis):
            trigger = _trigger(lhs)
            if trigger is None:
                self._gci_general.append(i)
            elif trigger[0] in ("role", "data"):
                # a node restricting any super-role may satisfy the left side
                for role in self.role_supers(trigger[1]):
                    self._gci_index[(trigger[0], role)].append(i)
            else:
                self._gci_index[trigger].append(i)
        self._cache: dict[frozenset, _Node] = {}
        self.check_cycles()

    # preprocessing --------------------------------------------------------
    def _include(self, lhs: ConceptExpr, rhs: ConceptExpr) -> None:
        for part in _split_left(lhs):
            if isinstance(part, Atom):
                self.told[part.name].append(rhs)
            elif isinstance(part, BottomConcept):
                continue
            elif isinstance(rhs, BottomConcept) and isinstance(part, And):
                self._absorb_empty(part)
            else:
                self.gcis.append((part, rhs))

    def _absorb_empty(self, expr: And) -> None:
        # (X and not Y) == bottom is the inclusion X <= Y
        negated = [m for m in expr.members if isinstance(m, Not)]
        if len(negated) == 1:
            rest = conj(*(m for m in expr.members if m is not negated[0]))
            self._include(rest, negated[0].operand)
        else:
            self.gcis.append((expr, BottomConcept()))

    def _absorb(self, axiom: Axiom) -> None:
        if isinstance(axiom, SubClassOf):
            self._include(axiom.sub, axiom.sup)
        elif isinstance(axiom, EquivalentTo):
            left, right = axiom.left, axiom.right
            for a, b in ((left, right), (right, left)):
                if isinstance(a, Atom) and not isinstance(b, Atom):
                    self.definitions[a.name].append(b)
            self._include(left, right)
            self._include(right, left)
        elif isinstance(axiom, SubRoleOf):
            self.role_parents[axiom.sub].add(axiom.sup)

    def role_supers(self, role: str) -> frozenset:
        """Reflexive-transitive super-roles."""
        cached = self._role_supers.get(role)
        if cached is None:
            seen = {role}
            stack = [role]
            while stack:
                for parent in self.role_parents.get(stack.pop(), ()):
                    if parent not in seen:
                        seen.add(parent)
                        stack.append(parent)
            cached = self._role_supers[role] = frozenset(seen)
        return cached

    def check_cycles(self) -> None:
        """Raise :class:`DefinitionCycle` if complex definitions refer back to themselves."""
        graph = {
            name: sorted({ref for expr in exprs for ref in atom_names(expr) if ref in self.definitions})
            for name, exprs in self.definitions.items()
        }
        state: dict[str, int] = {}
        for start in sorted(graph):
            if state.get(start):
                continue
            path: list[str] = []
            stack = [(start, iter(graph[start]))]
            state[start] = 1
            path.append(start)
            while stack:
                name, children = stack[-1]
                child = next(children, None)
                if child is None:
                    stack.pop()
                    path.pop()
                    state[name] = 2
                    continue
                if state.get(child) == 1:
                    raise DefinitionCycle(path[path.index(child):] + [child])
                if not state.get(child):
                    state[child] = 1
                    path.append(child)
                    stack.append((child, iter(graph[child])))

    # normal forms ----------------------------------------------------------
    def expand(self, exprs: Iterable[ConceptExpr]) -> _Node:
        sources = frozenset(exprs)
        node = self._cache.get(sources)
        if node is not None:
            return node
        node = _Node(sources)
        self._cache[sources] = node
        work = list(sources)
        applied: set[int] = set()
        while True:
            while work:
                self._add(node, work.pop(), work)
            extra = self._fire_gcis(node, applied)
            if not extra:
                break
            work.extend(extra)
        return node

    def _add(self, node: _Node, expr: ConceptExpr, work: list) -> None:
        if isinstance(expr, Atom):
            if expr.name not in node.atoms:
                node.atoms.add(expr.name)
                work.extend(self.told.get(expr.name, ()))
        elif isinstance(expr, TopConcept):
            pass
        elif isinstance(expr, BottomConcept):
            node.bottom = True
        elif isinstance(expr, And):
            work.extend(expr.members)
        elif isinstance(expr, Or):
            if expr not in node.ors:
                node.ors.append(expr)
        elif isinstance(expr, Not):
            inner = expr.operand
            if isinstance(inner, Atom):
                node.neg_atoms.add(inner.name)
            elif isinstance(inner, Nominal):
                node.neg_nominals.add(inner.individual)
            elif isinstance(inner, TopConcept):
                node.bottom = True
            elif isinstance(inner, BottomConcept):
                pass
            elif isinstance(inner, Not):
                work.append(inner.operand)
            elif inner not in node.negs:
                node.negs.append(inner)
        elif isinstance(expr, AllValues):
            if expr.filler not in node.alls[expr.role]:
                node.alls[expr.role].append(expr.filler)
        elif isinstance(expr, DataAll):
            if expr.data_range not in node.data[expr.role]:
                node.data[expr.role].append(expr.data_range)
        elif isinstance(expr, Nominal):
            node.nominals.add(expr.individual)
        else:
            raise TypeError(f"unsupported expression {expr!r}")

    def _fire_gcis(self, node: _Node, applied: set[int]) -> list[ConceptExpr]:
        candidates = set(self._gci_general)
        for name in node.atoms:
            candidates.update(self._gci_index.get(("atom", name), ()))
        for name in node.neg_atoms:
            candidates.update(self._gci_index.get(("neg", name), ()))
        for individual in node.nominals:
            candidates.update(self._gci_index.get(("nominal", individual), ()))
        for role in list(node.alls):
            candidates.update(self._gci_index.get(("role", role), ()))
        for role in list(node.data):
            candidates.update(self._gci_index.get(("data", role), ()))
        extra = []
        for i in sorted(candidates - applied):
            lhs, rhs = self.gcis[i]
            if self._holds(node, lhs):
                applied.add(i)
                extra.append(rhs)
        return extra

    def clash(self, node: _Node) -> str | None:
        """Why the node is unsatisfiable, or ``None``; disjunctions are split one level deep."""
        if node.clash is not _UNKNOWN:
            return node.clash
        node.clash = self._basic_clash(node)
        if node.clash is None:
            for disjunction in self._open_ors(node):
                if all(self._basic_clash(self.expand(node.sources | {d})) for d in disjunction.members):
                    node.clash = f"every branch of {disjunction} clashes"
                    break
        return node.clash

    def _basic_clash(self, node: _Node) -> str | None:
        if node.bottom:
            return "bottom"
        both = node.atoms & node.neg_atoms
        if both:
            name = min(both)
            return f"{name} and not {name}"
        both = node.nominals & node.neg_nominals
        if both:
            return f"{{{min(both)}}} and not {{{min(both)}}}"
        for role, ranges in node.data.items():
            literals = {r.literal for r in ranges if isinstance(r, DataNominal)}
            if len(literals) > 1:
                return f"conflicting values for {role}"
            if INTEGER in ranges and any(isinstance(v, str) for v in literals):
                return f"non-integer value for {role}"
        for negated in node.negs:
            if self._holds(node, negated):
                return f"not ({negated}) violated"
        return None

    def _open_ors(self, node: _Node) -> list[Or]:
        return [o for o in node.ors if not any(self._holds(node, d) for d in o.members)]

    # subsumption -------------------------------------------------------------
    def _holds(self, node: _Node, expr: ConceptExpr) -> bool:
        """Structural test ``node ⊑ expr`` ignoring case analysis and clashes."""
        if isinstance(expr, Atom):
            return expr.name in node.atoms
        if isinstance(expr, TopConcept):
            return True
        if isinstance(expr, BottomConcept):
            return node.bottom
        if isinstance(expr, And):
            return all(self._holds(node, m) for m in expr.members)
        if isinstance(expr, Or):
            return any(self._holds(node, m) for m in expr.members) or any(
                o == expr or set(o.members) <= set(expr.members) for o in node.ors
            )
        if isinstance(expr, Not):
            inner = expr.operand
            if isinstance(inner, Atom):
                return inner.name in node.neg_atoms
            if isinstance(inner, Nominal):
                return inner.individual in node.neg_nominals
            return inner in node.negs or self._disjoint(node, inner)
        if isinstance(expr, AllValues):
            if isinstance(expr.filler, TopConcept):
                return True
            fillers = self._fillers(node.alls, expr.role)
            return bool(fillers) and self._holds(self.expand(fillers), expr.filler)
        if isinstance(expr, Nominal):
            return expr.individual in node.nominals
        if isinstance(expr, DataAll):
            ranges = self._fillers(node.data, expr.role)
            return any(_data_within(r, expr.data_range) for r in ranges)
        raise TypeError(f"unsupported expression {expr!r}")

    def _disjoint(self, node: _Node, expr: ConceptExpr) -> bool:
        if isinstance(expr, Atom) and expr.name in node.atoms:
            return False
        return self._basic_clash(self.expand(node.sources | {expr})) is not None

    def _fillers(self, table: dict, role: str) -> list:
        # a restriction on a super-role also constrains the sub-role
        fillers = []
        for other, values in table.items():
            if other in self.role_supers(role):
                fillers.extend(values)
        return fillers

    def subsumed(self, node: _Node, expr: ConceptExpr) -> bool:
        """``node ⊑ expr`` with clash detection and case analysis over disjunctions."""
        if self.clash(node) is not None or self._holds(node, expr):
            return True
        for disjunction in self._open_ors(node):
            branches = [self.expand(node.sources | {d}) for d in disjunction.members]
            if all(self._basic_clash(b) is not None or self._holds(b, expr) for b in branches):
                return True
        return False

    def subsumes(self, sup: ConceptExpr, sub: ConceptExpr) -> bool:
        return self.subsumed(self.expand([sub]), sup)

    def is_satisfiable(self, expr: ConceptExpr) -> bool:
        return self.clash(self.expand([expr])) is None

    def entailed_atoms(self, node: _Node) -> frozenset:
        """Every named atom subsuming the node, including those found by case analysis."""
        if node.entailed is not None:
            return node.entailed
        result = set(node.atoms)
        for disjunction in self._open_ors(node):
            branches = [self.expand(node.sources | {d}) for d in disjunction.members]
            live = [frozenset(b.atoms) for b in branches if self._basic_clash(b) is None]
            if live:
                result |= frozenset.intersection(*live)
        node.entailed = frozenset(result)
        return node.entailed


def _data_within(have: ConceptExpr, want: ConceptExpr) -> bool:
    if have == want:
        return True
    if want == INTEGER and isinstance(have, DataNominal):
        return isinstance(have.literal, int)
    return False


def subsumes(sup: ConceptExpr, sub: ConceptExpr, tbox: Iterable[Axiom] | Reasoner) -> bool:
    """True when ``sub ⊑ sup`` follows from the T-Box."""
    reasoner = tbox if isinstance(tbox, Reasoner) else Reasoner(tbox)
    return reasoner.subsumes(sup, sub)


# consistency ---------------------------------------------------------------
@dataclass
class ConsistencyReport:
    unsatisfiable: list = field(default_factory=list)
    abox_clashes: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.unsatisfiable and not self.abox_clashes

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "unsatisfiable": [{"concept": c, "reason": r} for c, r in self.unsatisfiable],
            "abox_clashes": [{"individual": i, "reason": r} for i, r in self.abox_clashes],
        }


def _individual_groups(abox: list[Axiom]) -> dict[str, str]:
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for axiom in abox:
        for name in sorted(axiom.individuals()):
            find(name)
        if isinstance(axiom, SameIndividual):
            a, b = sorted((find(axiom.first), find(axiom.second)))
            parent[b] = a
    return {name: find(name) for name in parent}


def check_consistency(ontology: Ontology, reasoner: Reasoner | None = None) -> ConsistencyReport:
    """Unsatisfiable named concepts plus individuals whose combined types clash."""
    reasoner = reasoner or Reasoner(ontology.tbox)
    report = ConsistencyReport()
    names = sorted(ontology.concept_names())
    for name in names:
        node = reasoner.expand([Atom(name)])
        reason = reasoner.clash(node)
        if reason is not None:
            report.unsatisfiable.append((name, reason))

    group = _individual_groups(ontology.abox)
    types: dict[str, set] = defaultdict(set)
    for name, rep in group.items():
        types[rep].add(Nominal(name))
    edges = []
    values = []
    for axiom in ontology.abox:
        if isinstance(axiom, ConceptAssertion):
            types[group[axiom.individual]].add(axiom.concept)
        elif isinstance(axiom, RoleAssertion):
            edges.append((axiom.role, group[axiom.subject], group[axiom.object]))
        elif isinstance(axiom, DataAssertion):
            values.append((axiom.role, group[axiom.individual], axiom.literal))

    changed = True
    while changed:
        changed = False
        for role, subject, obj in edges:
            node = reasoner.expand(types[subject])
            for filler in reasoner._fillers(node.alls, role):
                if filler not in types[obj]:
                    types[obj].add(filler)
                    changed = True

    for rep in sorted(types):
        node = reasoner.expand(types[rep])
        reason = reasoner.clash(node)
        if reason is not None:
            report.abox_clashes.append((rep, reason))
    clashing = {rep for rep, _ in report.abox_clashes}
    for role, rep, literal in values:
        if rep in clashing:
            continue
        node = reasoner.expand(types[rep])
        for data_range in reasoner._fillers(node.data, role):
            if not _data_within(DataNominal(literal), data_range):
                report.abox_clashes.append((rep, f"{role} value {DataNominal(literal)} outside {data_range}"))
    report.abox_clashes = sorted(set(report.abox_clashes))
    return report


# classification --------------------------------------------------------------
@dataclass
class TaxonomyGraph:
    """Transitively reduced subsumption graph over equivalence classes.

    Each class is named by its lexicographically smallest member; ``top`` and
    ``bottom`` are always present, unsatisfiable concepts join the ``bottom`` class.
    """

    nodes: list
    edges: list
    equivalence_classes: list
    unsatisfiable: list

    def __post_init__(self):
        self._class_of = {m: cls[0] for cls in self.equivalence_classes for m in cls}
        self._members = {cls[0]: cls for cls in self.equivalence_classes}
        self._parents: dict[str, list[str]] = defaultdict(list)
        self._children: dict[str, list[str]] = defaultdict(list)
        for child, parent in self.edges:
            self._parents[child].append(parent)
            self._children[parent].append(child)

    def representative(self, name: str) -> str:
        return self._class_of.get(name, name)

    def members(self, representative: str) -> tuple:
        return self._members.get(representative, (representative,))

    def parents(self, name: str) -> list[str]:
        return list(self._parents.get(self.representative(name), ()))

    def children(self, name: str) -> list[str]:
        return list(self._children.get(self.representative(name), ()))

    def _reach(self, name: str, table: dict) -> set[str]:
        start = self.representative(name)
        seen: set[str] = set()
        stack = [start]
        while stack:
            for nxt in table.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return {m for rep in seen for m in self.members(rep)}

    def ancestors(self, name: str) -> set[str]:
        """Strict named ancestors (``top`` excluded), expanded to class members."""
        return self._reach(name, self._parents) - {TOP}

    def descendants(self, name: str) -> set[str]:
        return self._reach(name, self._children) - {BOTTOM}

    def equivalents(self, name: str) -> set[str]:
        return set(self.members(self.representative(name))) - {name}

    def concepts(self) -> set[str]:
        return set(self._class_of) - {TOP, BOTTOM}

    def to_tsv(self) -> str:
        """``child<TAB>parent`` rows; class members also point at their representative."""
        rows = [f"{child}\t{parent}" for child, parent in self.edges]
        for cls in self.equivalence_classes:
            rows += [f"{member}\t{cls[0]}" for member in cls[1:]]
        return "\n".join(rows) + ("\n" if rows else "")

    def to_dot(self) -> str:
        lines = ["digraph taxonomy {", "  rankdir=BT;", "  node [shape=box];"]
        for rep in self.nodes:
            label = ", ".join(self.members(rep)).replace('"', '\\"')
            lines.append(f'  "{rep}" [label="{label}"];')
        for child, parent in self.edges:
            lines.append(f'  "{child}" -> "{parent}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": [list(e) for e in self.edges],
            "equivalence_classes": [list(c) for c in self.equivalence_classes if len(c) > 1],
            "unsatisfiable": self.unsatisfiable,
        }


def classify(ontology: Ontology | Iterable[Axiom], reasoner: Reasoner | None = None) -> TaxonomyGraph:
    """Pairwise subsumption over named concepts, merged and transitively reduced."""
    if not isinstance(ontology, Ontology):
        ontology = Ontology(ontology)
    reasoner = reasoner or Reasoner(ontology.tbox)
    names = sorted(ontology.concept_names() - {TOP, BOTTOM})
    known = set(names)
    unsatisfiable = []
    subsumers: dict[str, set[str]] = {}
    for name in names:
        node = reasoner.expand([Atom(name)])
        if reasoner.clash(node) is not None:
            unsatisfiable.append(name)
        else:
            subsumers[name] = set(reasoner.entailed_atoms(node)) & known

    satisfiable = [n for n in names if n in subsumers]
    class_of: dict[str, str] = {}
    classes: list[tuple] = []
    for name in satisfiable:
        if name in class_of:
            continue
        members = tuple(sorted({m for m in subsumers[name] if name in subsumers.get(m, ())} | {name}))
        for m in members:
            class_of[m] = name
        classes.append(members)

    strict: dict[str, set[str]] = {}
    for members in classes:
        rep = members[0]
        strict[rep] = {class_of[s] for s in subsumers[rep] if class_of[s] != rep}
    edges = []
    for members in classes:
        rep = members[0]
        above = strict[rep]
        implied = set()
        for parent in above:
            implied |= strict[parent]
        direct = sorted(above - implied)
        edges += [(rep, parent) for parent in direct] or [(rep, TOP)]

    equivalence_classes = [(TOP,)] + classes + [tuple([BOTTOM] + unsatisfiable)]
    nodes = [TOP] + [c[0] for c in classes] + [BOTTOM]
    return TaxonomyGraph(nodes, edges, equivalence_classes, unsatisfiable)
