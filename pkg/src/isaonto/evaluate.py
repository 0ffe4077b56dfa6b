"""Gold-standard metrics: characterization, lexical and taxonomic accuracy."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .dl import Ontology
from .errors import IsaOntoError
from .inflect import singular_noun
from .labels import split_camel
from .reason import TaxonomyGraph, classify


class EmptyOntology(IsaOntoError):
    pass


def harmonic(a: float, b: float) -> float:
    return 0.0 if a + b == 0 else 2 * a * b / (a + b)


def normalize_concept(name: str) -> str:
    """``StudentPerson`` and ``student persons`` both become ``student person``."""
    words = split_camel(name)
    if words:
        words[-1] = singular_noun(words[-1])
    return " ".join(words)


# characterization -----------------------------------------------------------
def characterization_metrics(outcomes: Iterable[str]) -> tuple[float, float]:
    """``cp = correct / characterized`` and ``cr = correct / total``.

    Each outcome is ``correct``, ``incorrect`` or ``rejected``.
    """
    outcomes = list(outcomes)
    unknown = set(outcomes) - {"correct", "incorrect", "rejected"}
    if unknown:
        raise ValueError(f"unknown outcomes: {sorted(unknown)}")
    correct = outcomes.count("correct")
    characterized = correct + outcomes.count("incorrect")
    cp = correct / characterized if characterized else 0.0
    cr = correct / len(outcomes) if outcomes else 0.0
    return cp, cr


def load_signatures(path: str | Path) -> dict[str, str]:
    """Expected signatures keyed ``"row.expansion"``."""
    table = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, signature = line.split("\t", 1)
        table[key] = signature.strip()
    return table


def trace_outcomes(trace: Iterable[Mapping], expected: Mapping[str, str]) -> list[str]:
    """Grade each traced line against expected signatures; a line is correct when every expansion matches."""
    outcomes = []
    for record in trace:
        index = record["source_index"]
        expansions = record.get("expansions") or []
        if record.get("rejected") or not expansions:
            outcomes.append("rejected")
            continue
        got = {
            f"{index}.{e['expansion_id']}": (e.get("characterized") or {}).get("signature")
            for e in expansions
        }
        want = {k: v for k, v in expected.items() if k.split(".")[0] == str(index)}
        if any(sig is None for sig in got.values()):
            outcomes.append("rejected")
        elif got == want:
            outcomes.append("correct")
        else:
            outcomes.append("incorrect")
    return outcomes


# lexical ----------------------------------------------------------------------
def lexicon_of(ontology: Ontology) -> set[str]:
    return {normalize_concept(name) for name in ontology.concept_names()}


def lexical_metrics(learned: Ontology, gold: Ontology) -> dict[str, float]:
    ours, theirs = lexicon_of(learned), lexicon_of(gold)
    if not ours or not theirs:
        raise EmptyOntology("both ontologies need at least one concept")
    shared = len(ours & theirs)
    lp = shared / len(ours)
    lr = shared / len(theirs)
    return {
        "lp": lp,
        "lr": lr,
        "lf": harmonic(lp, lr),
        "oi": len(ours - theirs) / len(theirs),
        "ol": 1 - lr,
    }


# taxonomic -----------------------------------------------------------------------
@dataclass
class NormalizedTaxonomy:
    """Ancestor and descendant sets keyed by normalized concept names."""

    up: dict = field(default_factory=dict)
    down: dict = field(default_factory=dict)

    @classmethod
    def from_graph(cls, graph: TaxonomyGraph) -> "NormalizedTaxonomy":
        result = cls()
        for name in sorted(graph.concepts()):
            key = normalize_concept(name)
            ups = {normalize_concept(n) for n in graph.ancestors(name) | graph.equivalents(name)}
            downs = {normalize_concept(n) for n in graph.descendants(name) | graph.equivalents(name)}
            result.up.setdefault(key, set()).update(ups)
            result.down.setdefault(key, set()).update(downs)
        return result

    def concepts(self) -> set[str]:
        return set(self.up)

    def cotopy(self, concept: str) -> set[str]:
        return self.up.get(concept, set()) | self.down.get(concept, set()) | {concept}


def common_semantic_cotopy(concept: str, first: NormalizedTaxonomy, second: NormalizedTaxonomy) -> set[str]:
    """Concept, super- and sub-concepts in ``first`` that also name concepts of ``second``."""
    lexicon = second.concepts()
    return {c for c in first.cotopy(concept) if c in lexicon}


def _precision(first: NormalizedTaxonomy, second: NormalizedTaxonomy) -> float:
    # concepts missing from the other ontology score zero
    concepts = first.concepts()
    total = 0.0
    for concept in concepts & second.concepts():
        ours = common_semantic_cotopy(concept, first, second)
        theirs = common_semantic_cotopy(concept, second, first)
        total += len(ours & theirs) / len(ours)
    return total / len(concepts)


def taxonomic_metrics(
    learned: Ontology | TaxonomyGraph, gold: Ontology | TaxonomyGraph, lf: float | None = None
) -> dict[str, float]:
    learned_tax = NormalizedTaxonomy.from_graph(learned if isinstance(learned, TaxonomyGraph) else classify(learned))
    gold_tax = NormalizedTaxonomy.from_graph(gold if isinstance(gold, TaxonomyGraph) else classify(gold))
    if not learned_tax.concepts() or not gold_tax.concepts():
        raise EmptyOntology("both taxonomies need at least one concept")
    tp = _precision(learned_tax, gold_tax)
    tr = _precision(gold_tax, learned_tax)
    tf = harmonic(tp, tr)
    result = {"tp": tp, "tr": tr, "tf": tf}
    if lf is not None:
        result["tf_prime"] = harmonic(tf, lf)
    return result


# report --------------------------------------------------------------------------
@dataclass
class EvalReport:
    lp: float
    lr: float
    lf: float
    oi: float
    ol: float
    tp: float
    tr: float
    tf: float
    tf_prime: float
    counts: dict
    cp: float | None = None
    cr: float | None = None

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        rows = [
            ("Characterization Precision (CP)", self.cp),
            ("Characterization Recall (CR)", self.cr),
            ("Lexical Precision (LP)", self.lp),
            ("Lexical Recall (LR)", self.lr),
            ("Lexical F-measure (LF)", self.lf),
            ("Ontology Improvement (OI)", self.oi),
            ("Ontology Loss (OL)", self.ol),
            ("Taxonomic Precision (TP)", self.tp),
            ("Taxonomic Recall (TR)", self.tr),
            ("Taxonomic F-measure (TF)", self.tf),
            ("Taxonomic F'-measure (TF')", self.tf_prime),
        ]
        width = max(len(label) for label, _ in rows)
        lines = [f"{'Metric'.ljust(width)}  Value", f"{'-' * width}  ------"]
        for label, value in rows:
            if value is not None:
                lines.append(f"{label.ljust(width)}  {value:.4f}")
        return "\n".join(lines) + "\n"


def evaluate(learned: Ontology, gold: Ontology, outcomes: Iterable[str] | None = None) -> EvalReport:
    lexical = lexical_metrics(learned, gold)
    taxonomic = taxonomic_metrics(learned, gold, lexical["lf"])
    ours, theirs = lexicon_of(learned), lexicon_of(gold)
    counts = {"learned": len(ours), "gold": len(theirs), "shared": len(ours & theirs)}
    cp = cr = None
    if outcomes is not None:
        cp, cr = characterization_metrics(outcomes)
    return EvalReport(**lexical, **taxonomic, counts=counts, cp=cp, cr=cr)
