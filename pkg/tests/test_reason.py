import random
import time

import networkx as nx
import pytest

from isaonto.dl import Atom, Not, Ontology, SubClassOf
from isaonto.errors import DefinitionCycle
from isaonto.reason import BOTTOM, TOP, Reasoner, check_consistency, classify, subsumes
from isaonto.serialize import parse_dl_axiom, parse_dl_text

from goldens import combined_result
from oracles import networkx_closure, told_closure


def expr(text):
    return parse_dl_axiom(f"{text} <= top").sub


def tbox(text):
    return parse_dl_text(text).tbox


# subsumption ---------------------------------------------------------------------
def test_told_chain():
    assert subsumes(Atom("LivingThing"), Atom("Cat"), tbox("Cat <= Animal\nAnimal <= LivingThing\n"))


def test_modified_concept():
    axioms = tbox("WildCat <= Cat\nWildCat <= Mammal\n")
    assert subsumes(Atom("Mammal"), Atom("WildCat"), axioms)
    assert not subsumes(Atom("Mammal"), Atom("Cat"), axioms)


def test_universal_monotonicity():
    axioms = tbox("Beautiful <= Attribute\n")
    assert subsumes(expr("all hasState . Attribute"), expr("all hasState . Beautiful"), axioms)
    assert not subsumes(expr("all hasState . Beautiful"), expr("all hasState . Attribute"), axioms)


def test_definitions_unfold_both_ways():
    axioms = tbox("BeautifulThing == all hasState . Beautiful\nBeautiful <= Attribute\nMary <= BeautifulThing\n")
    assert subsumes(expr("all hasState . Attribute"), Atom("Mary"), axioms)
    assert subsumes(Atom("BeautifulThing"), expr("all hasState . Beautiful"), axioms)


def test_conjunction_and_disjunction():
    axioms = tbox("A <= B\nC <= B\n")
    assert subsumes(Atom("B"), expr("A or C"), axioms)
    assert subsumes(expr("A or C"), Atom("A"), axioms)
    assert subsumes(Atom("A"), expr("A and D"), axioms)
    assert not subsumes(Atom("A"), expr("A or D"), axioms)


def test_sub_roles_inherit_restrictions():
    axioms = tbox("role hasHeight <= hasDim\n")
    assert subsumes(expr("all hasHeight . Height"), expr("all hasDim . Height"), axioms)


def test_nominals_and_bottom():
    assert subsumes(Atom("Anything"), expr("bottom"), [])
    assert subsumes(expr("top"), Atom("Anything"), [])
    assert subsumes(expr("{John}"), expr("{John}"), [])
    assert not subsumes(expr("{John}"), expr("{Joe}"), [])


def test_unsatisfiable_concept_is_subsumed_by_everything():
    axioms = tbox("C <= D\nC <= not D\n")
    assert subsumes(Atom("Zebra"), Atom("C"), axioms)


def test_definition_cycle_is_reported():
    with pytest.raises(DefinitionCycle, match="A -> B -> A"):
        Reasoner(tbox("A == all R . B\nB == all R . A\n")).check_cycles()


def test_told_cycles_are_equivalences_not_errors():
    graph = classify(parse_dl_text("A <= B\nB <= A\nB <= C\n"))
    assert graph.equivalents("A") == {"B"}
    assert graph.parents("B") == ["C"]


# randomized oracle comparison ---------------------------------------------------------
def random_told_ontology(rng, max_concepts=30):
    n = rng.randint(2, max_concepts)
    positives = {(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(1, 2 * n))}
    positives = sorted((a, b) for a, b in positives if a != b)
    negatives = sorted({(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 3))})
    axioms = [SubClassOf(Atom(f"C{a}"), Atom(f"C{b}")) for a, b in positives]
    axioms += [SubClassOf(Atom(f"C{a}"), Not(Atom(f"C{b}"))) for a, b in negatives]
    return n, positives, negatives, Ontology(axioms)


def compare_with_oracle(n, positives, negatives, ontology):
    graph = classify(ontology)
    reach, unsat = told_closure(n, positives, negatives)
    mismatches = []
    for c in range(n):
        name = f"C{c}"
        if name not in ontology.concept_names():
            continue
        if c in unsat:
            if name not in graph.unsatisfiable:
                mismatches.append((name, "should be unsatisfiable"))
            continue
        if name in graph.unsatisfiable:
            mismatches.append((name, "wrongly unsatisfiable"))
            continue
        up = {name} | graph.ancestors(name) | graph.equivalents(name)
        if up != {f"C{d}" for d in reach[c]}:
            mismatches.append((name, "ancestors"))
        down = {name} | graph.descendants(name) | graph.equivalents(name)
        expected_down = {f"C{d}" for d in range(n) if c in reach[d] and d not in unsat}
        if down != expected_down:
            mismatches.append((name, "descendants"))
    return graph, mismatches


def test_classification_matches_closure_oracle_on_200_ontologies():
    rng = random.Random(20240501)
    start = time.perf_counter()
    failures = []
    for trial in range(200):
        n, positives, negatives, ontology = random_told_ontology(rng)
        _, mismatches = compare_with_oracle(n, positives, negatives, ontology)
        if mismatches:
            failures.append((trial, mismatches[:3]))
    elapsed = time.perf_counter() - start
    assert failures == []
    assert elapsed < 10


def test_oracles_agree_with_each_other():
    rng = random.Random(11)
    for _ in range(50):
        n, positives, _, _ = random_told_ontology(rng)
        reach, _ = told_closure(n, positives, [])
        assert reach == networkx_closure(n, positives)


def test_edges_are_the_transitive_reduction():
    rng = random.Random(3)
    for _ in range(50):
        n, positives, _, _ = random_told_ontology(rng)
        ontology = Ontology([SubClassOf(Atom(f"C{a}"), Atom(f"C{b}")) for a, b in positives])
        graph = classify(ontology)
        names = {f"C{i}" for i in range(n)} & ontology.concept_names()
        told = nx.DiGraph()
        told.add_nodes_from(names)
        told.add_edges_from((f"C{a}", f"C{b}") for a, b in positives)
        condensed = nx.condensation(told)
        rep = {}
        for component, data in condensed.nodes(data=True):
            rep[component] = min(data["members"])
        expected = {(rep[a], rep[b]) for a, b in nx.transitive_reduction(condensed).edges()}
        got = {(a, b) for a, b in graph.edges if a not in (TOP, BOTTOM) and b not in (TOP, BOTTOM)}
        assert got == expected


def test_roots_hang_under_top():
    graph = classify(parse_dl_text("A <= B\nC <= D\n"))
    assert set(graph.parents("B")) == {TOP}
    assert set(graph.parents("D")) == {TOP}
    assert graph.nodes[0] == TOP and graph.nodes[-1] == BOTTOM


def test_classification_is_idempotent():
    ontology = combined_result(1).ontology
    first = classify(ontology)
    again = classify(ontology)
    assert first.to_tsv() == again.to_tsv()
    # feeding the computed hierarchy back as told axioms changes nothing
    extended = ontology.copy()
    for child, parent in first.edges:
        if TOP not in (child, parent) and BOTTOM not in (child, parent):
            extended.add_axiom(SubClassOf(Atom(child), Atom(parent)))
    assert classify(extended).to_tsv() == first.to_tsv()


# consistency -------------------------------------------------------------------------
CLASHING = {
    "told negation": ("C <= D\nC <= not D\n", ["C"], []),
    "only restriction": ("A <= all R . B\nA(a)\nR(a, b)\n(not B)(b)\n", [], ["b"]),
    "only bottom axiom": ("(S and not O) == bottom\nS(x)\n(not O)(x)\n", [], ["x"]),
    "only bottom subclass": ("(S and not O) == bottom\nT <= S\nT <= not O\n", ["T"], []),
    "value outside integer": ('A <= all hasValue . integer\nA(x)\nhasValue(x, "m")\n', [], ["x"]),
    "value outside one-of": ("A <= all hasValue . {1}\nA(x)\nhasValue(x, 2)\n", [], ["x"]),
    "negated nominal": ("A <= not {x}\nA(x)\n", [], ["x"]),
    "closed disjunction": ("A <= B or C\nA <= not B\nA <= not C\n", ["A"], []),
    "same individual": ("A <= not B\nA(x)\nB(y)\nSameIndividual(x, y)\n", [], ["x"]),
    "inherited restriction": ("A <= B\nB <= all R . C\nC <= not D\nA(a)\nR(a, b)\nD(b)\n", [], ["b"]),
}

CLEAN = {
    "plain": "A <= B\nB <= all R . C\nA(a)\nR(a, b)\nC(b)\nhasValue(a, 3)\n",
    "past tense pattern": "Mammoth <= HugeThing or all PPR . HugeThing\nHugeThing <= not all PPR . HugeThing\n"
    "HugeThing == all hasState . Huge\n",
    "only pattern satisfied": "(S and not O) == bottom\nS(x)\nO(x)\n",
    "integer value": "A <= all hasValue . integer\nA(x)\nhasValue(x, 5)\n",
    "open disjunction": "A <= B or C\nA <= not B\n",
}


@pytest.mark.parametrize("name", sorted(CLASHING))
def test_injected_clashes_are_reported(name):
    text, concepts, individuals = CLASHING[name]
    report = check_consistency(parse_dl_text(text))
    assert [c for c, _ in report.unsatisfiable] == concepts
    assert [i for i, _ in report.abox_clashes] == individuals
    assert not report.consistent


@pytest.mark.parametrize("name", sorted(CLEAN))
def test_clean_fixtures_report_nothing(name):
    report = check_consistency(parse_dl_text(CLEAN[name]))
    assert report.unsatisfiable == [] and report.abox_clashes == []
    assert report.consistent


def test_unsatisfiable_concepts_join_bottom():
    graph = classify(parse_dl_text("C <= D\nC <= not D\nE <= D\n"))
    assert graph.unsatisfiable == ["C"]
    assert graph.representative("C") == BOTTOM
    assert "C" not in graph.descendants("D")


def test_report_json_shape():
    report = check_consistency(parse_dl_text("C <= D\nC <= not D\n"))
    data = report.to_json()
    assert data["consistent"] is False
    assert data["unsatisfiable"][0]["concept"] == "C"


def test_corpus_tbox_is_coherent():
    report = check_consistency(combined_result(1).ontology)
    assert report.unsatisfiable == []


def test_corpus_abox_rank_conflict_is_found():
    # three rows assign John different rank values under one-valued restrictions
    report = check_consistency(combined_result(1).ontology)
    assert {i for i, _ in report.abox_clashes} == {"r_John"}


def test_corpus_taxonomy_contains_expected_links():
    graph = classify(combined_result(1).ontology)
    assert "Person" in graph.ancestors("StudentPerson")
    assert "Woman" in graph.ancestors("SmokerWoman")
    assert "Attribute" in graph.ancestors("Beautiful") or "Beautiful" not in graph.concepts()
