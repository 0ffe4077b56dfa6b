"""Ontology serialization: a line-based DL text form and OWL 2 functional syntax.

Both formats are written deterministically and can be parsed back (the OWL
parser covers exactly the subset this module writes).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .dl import (
    INTEGER,
    AllValues,
    And,
    Atom,
    Axiom,
    Bottom,
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
    Provenance,
    RoleAssertion,
    SameIndividual,
    SubClassOf,
    SubRoleOf,
    Top,
    TopConcept,
    TransitiveRole,
    conj,
    disj,
)
from .errors import DLParseError

DEFAULT_NAMESPACE = "https://example.org/isaonto#"
SYMBOLIC_RANK = "symbolicRank"


# DL text ----------------------------------------------------------------------
def to_dl_text(ontology: Ontology | Iterable[Axiom], provenance: bool = True) -> str:
    """One axiom per line; provenance goes into a trailing ``# index RULE`` comment."""
    lines = []
    for axiom in ontology:
        line = axiom.render()
        if provenance and axiom.provenance is not None:
            line += f"  # {axiom.provenance.source_index} {axiom.provenance.rule_id}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")


_DL_TOKEN = re.compile(
    r"\s*(?:(?P<op><=|==)|(?P<punct>[(){},.])|(?P<num>-?\d+)|(?P<str>\"(?:[^\"\\]|\\.)*\")|(?P<ident>[A-Za-z_@][A-Za-z0-9_@]*))"
)
_KEYWORDS = {"and", "or", "not", "all", "bottom", "top", "integer"}


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    column: int


def _tokenize_dl(text: str, line: int) -> list[_Tok]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _DL_TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise DLParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = match.lastgroup
        value = match.group(kind)
        tokens.append(_Tok(kind, value, match.start(kind) + 1))
        pos = match.end()
    return tokens


class _DLParser:
    def __init__(self, tokens: list[_Tok], line: int, width: int):
        self.tokens = tokens
        self.pos = 0
        self.line = line
        self.width = width

    def peek(self, offset: int = 0) -> _Tok | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def error(self, message: str) -> DLParseError:
        tok = self.peek()
        column = tok.column if tok else self.width + 1
        return DLParseError(message, self.line, column)

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        tok = self.peek()
        wanted = repr(text) if text is not None else kind
        if tok is None:
            raise self.error(f"expected {wanted}, found end of line")
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            raise self.error(f"expected {wanted}, found {tok.text!r}")
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def done(self) -> None:
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek().text!r}")

    # expressions
    def expr(self) -> ConceptExpr:
        members = [self.conjunction()]
        while self.at("or"):
            self.pos += 1
            members.append(self.conjunction())
        return disj(*members) if len(members) > 1 else members[0]

    def conjunction(self) -> ConceptExpr:
        members = [self.unary()]
        while self.at("and"):
            self.pos += 1
            members.append(self.unary())
        return conj(*members) if len(members) > 1 else members[0]

    def unary(self) -> ConceptExpr:
        tok = self.peek()
        if tok is None:
            raise self.error("expected a concept expression")
        if tok.text == "not":
            self.pos += 1
            return Not(self.unary())
        if tok.text == "all":
            self.pos += 1
            role = self.take(kind="ident").text
            self.take(".")
            filler = self.unary()
            if isinstance(filler, (Datatype, DataNominal)):
                return DataAll(role, filler)
            return AllValues(role, filler)
        if tok.text == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        if tok.text == "{":
            self.pos += 1
            value = self.peek()
            if value is None:
                raise self.error("expected an individual or literal")
            self.pos += 1
            self.take("}")
            if value.kind == "num":
                return DataNominal(int(value.text))
            if value.kind == "str":
                return DataNominal(_unquote(value.text))
            if value.kind == "ident":
                return Nominal(value.text)
            raise DLParseError(f"unexpected {value.text!r} inside braces", self.line, value.column)
        if tok.kind == "ident":
            self.pos += 1
            if tok.text == "bottom":
                return Bottom
            if tok.text == "top":
                return Top
            if tok.text == "integer":
                return INTEGER
            if tok.text in _KEYWORDS:
                raise DLParseError(f"misplaced keyword {tok.text!r}", self.line, tok.column)
            return Atom(tok.text)
        raise self.error(f"unexpected {tok.text!r}")

    # axioms
    def axiom(self) -> Axiom:
        first = self.peek()
        if first is None:
            raise self.error("empty axiom")
        if first.text == "role":
            self.pos += 1
            role = self.take(kind="ident").text
            if self.at("transitive"):
                self.pos += 1
                self.done()
                return TransitiveRole(role)
            self.take("<=")
            sup = self.take(kind="ident").text
            self.done()
            return SubRoleOf(role, sup)
        if first.text == "SameIndividual" and self.peek(1) is not None and self.peek(1).text == "(":
            self.pos += 2
            a = self.take(kind="ident").text
            self.take(",")
            b = self.take(kind="ident").text
            self.take(")")
            self.done()
            return SameIndividual(a, b)
        depth = 0
        for tok in self.tokens:
            if tok.text in "({":
                depth += 1
            elif tok.text in ")}":
                depth -= 1
            elif tok.kind == "op" and depth == 0:
                return self.tbox_axiom()
        return self.assertion()

    def tbox_axiom(self) -> Axiom:
        left = self.expr()
        op = self.take(kind="op").text
        right = self.expr()
        self.done()
        return SubClassOf(left, right) if op == "<=" else EquivalentTo(left, right)

    def assertion(self) -> Axiom:
        if self.at("("):
            self.pos += 1
            concept = self.expr()
            self.take(")")
        else:
            name = self.take(kind="ident")
            concept = Atom(name.text)
        self.take("(")
        subject = self.take(kind="ident").text
        if self.at(")"):
            self.pos += 1
            self.done()
            return ConceptAssertion(concept, subject)
        if not isinstance(concept, Atom):
            raise self.error("role assertions need a role name")
        self.take(",")
        value = self.peek()
        if value is None:
            raise self.error("expected an individual or literal")
        self.pos += 1
        self.take(")")
        self.done()
        if value.kind == "num":
            return DataAssertion(concept.name, subject, int(value.text))
        if value.kind == "str":
            return DataAssertion(concept.name, subject, _unquote(value.text))
        if value.kind != "ident":
            raise DLParseError(f"unexpected {value.text!r}", self.line, value.column)
        return RoleAssertion(concept.name, subject, value.text)


def _unquote(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text[1:-1])


_PROVENANCE = re.compile(r"^\s*(-?\d+)\s+(\S+)\s*$")


def _split_comment(raw: str) -> tuple[str, str | None]:
    in_string = False
    for i, ch in enumerate(raw):
        if ch == '"' and (i == 0 or raw[i - 1] != "\\"):
            in_string = not in_string
        elif ch == "#" and not in_string:
            return raw[:i], raw[i + 1:]
    return raw, None


def parse_dl_axiom(text: str, line: int = 1) -> Axiom:
    body, _ = _split_comment(text)
    tokens = _tokenize_dl(body, line)
    return _DLParser(tokens, line, len(body.rstrip())).axiom()


def iter_dl_text(text: str) -> Iterator[tuple[int, Axiom]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        body, comment = _split_comment(raw)
        if not body.strip():
            continue
        axiom = _DLParser(_tokenize_dl(body, number), number, len(body.rstrip())).axiom()
        if comment is not None:
            match = _PROVENANCE.match(comment)
            if match:
                axiom = axiom.with_provenance(Provenance(int(match.group(1)), match.group(2)))
        yield number, axiom


def parse_dl_text(text: str) -> Ontology:
    """Inverse of :func:`to_dl_text`; errors carry line and column."""
    return Ontology(axiom for _, axiom in iter_dl_text(text))


# OWL functional syntax ---------------------------------------------------------------
def _iri(name: str) -> str:
    return ":" + name


def _literal_ofn(value) -> str:
    if isinstance(value, int):
        return f'"{value}"^^xsd:integer'
    escaped = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"^^:{SYMBOLIC_RANK}'


def expr_to_ofn(expr: ConceptExpr) -> str:
    if isinstance(expr, Atom):
        return _iri(expr.name)
    if isinstance(expr, TopConcept):
        return "owl:Thing"
    if isinstance(expr, BottomConcept):
        return "owl:Nothing"
    if isinstance(expr, And):
        return "ObjectIntersectionOf(" + " ".join(expr_to_ofn(m) for m in expr.members) + ")"
    if isinstance(expr, Or):
        return "ObjectUnionOf(" + " ".join(expr_to_ofn(m) for m in expr.members) + ")"
    if isinstance(expr, Not):
        return f"ObjectComplementOf({expr_to_ofn(expr.operand)})"
    if isinstance(expr, AllValues):
        return f"ObjectAllValuesFrom({_iri(expr.role)} {expr_to_ofn(expr.filler)})"
    if isinstance(expr, Nominal):
        return f"ObjectOneOf({_iri(expr.individual)})"
    if isinstance(expr, DataAll):
        return f"DataAllValuesFrom({_iri(expr.role)} {_data_range_ofn(expr.data_range)})"
    raise TypeError(f"cannot serialize {expr!r}")


def _data_range_ofn(expr: ConceptExpr) -> str:
    if isinstance(expr, Datatype):
        return "xsd:integer" if expr == INTEGER else _iri(expr.name)
    if isinstance(expr, DataNominal):
        return f"DataOneOf({_literal_ofn(expr.literal)})"
    raise TypeError(f"not a data range: {expr!r}")


def axiom_to_ofn(axiom: Axiom) -> str:
    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({expr_to_ofn(axiom.sub)} {expr_to_ofn(axiom.sup)})"
    if isinstance(axiom, EquivalentTo):
        return f"EquivalentClasses({expr_to_ofn(axiom.left)} {expr_to_ofn(axiom.right)})"
    if isinstance(axiom, ConceptAssertion):
        return f"ClassAssertion({expr_to_ofn(axiom.concept)} {_iri(axiom.individual)})"
    if isinstance(axiom, RoleAssertion):
        return f"ObjectPropertyAssertion({_iri(axiom.role)} {_iri(axiom.subject)} {_iri(axiom.object)})"
    if isinstance(axiom, DataAssertion):
        return f"DataPropertyAssertion({_iri(axiom.role)} {_iri(axiom.individual)} {_literal_ofn(axiom.literal)})"
    if isinstance(axiom, SameIndividual):
        return f"SameIndividual({_iri(axiom.first)} {_iri(axiom.second)})"
    if isinstance(axiom, SubRoleOf):
        return f"SubObjectPropertyOf({_iri(axiom.sub)} {_iri(axiom.sup)})"
    if isinstance(axiom, TransitiveRole):
        return f"TransitiveObjectProperty({_iri(axiom.role)})"
    raise TypeError(f"cannot serialize {axiom!r}")


def _signature(ontology: Ontology) -> tuple[set, set, set, set, bool]:
    classes: set[str] = set()
    object_roles: set[str] = set()
    data_roles: set[str] = set()
    individuals: set[str] = set()
    symbolic = False

    def visit(expr: ConceptExpr) -> None:
        nonlocal symbolic
        for node in expr.walk():
            if isinstance(node, Atom):
                classes.add(node.name)
            elif isinstance(node, AllValues):
                object_roles.add(node.role)
            elif isinstance(node, DataAll):
                data_roles.add(node.role)
            elif isinstance(node, Nominal):
                individuals.add(node.individual)
            elif isinstance(node, DataNominal) and isinstance(node.literal, str):
                symbolic = True

    for axiom in ontology:
        for expr in axiom.expressions():
            visit(expr)
        if isinstance(axiom, ConceptAssertion):
            individuals.add(axiom.individual)
        elif isinstance(axiom, RoleAssertion):
            object_roles.add(axiom.role)
            individuals |= {axiom.subject, axiom.object}
        elif isinstance(axiom, DataAssertion):
            data_roles.add(axiom.role)
            individuals.add(axiom.individual)
            symbolic |= isinstance(axiom.literal, str)
        elif isinstance(axiom, SameIndividual):
            individuals |= {axiom.first, axiom.second}
        elif isinstance(axiom, SubRoleOf):
            object_roles |= {axiom.sub, axiom.sup}
        elif isinstance(axiom, TransitiveRole):
            object_roles.add(axiom.role)
    return classes, object_roles, data_roles, individuals, symbolic


def to_owl_functional(ontology: Ontology, namespace: str = DEFAULT_NAMESPACE) -> str:
    """OWL 2 functional syntax with sorted declarations and axioms in insertion order."""
    classes, object_roles, data_roles, individuals, symbolic = _signature(ontology)
    base = namespace.rstrip("#/")
    lines = [
        f"Prefix(:=<{namespace}>)",
        "Prefix(owl:=<http://www.w3.org/2002/07/owl#>)",
        "Prefix(rdf:=<http://www.w3.org/1999/02/22-rdf-syntax-ns#>)",
        "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)",
        "Prefix(xsd:=<http://www.w3.org/2001/XMLSchema#>)",
        "",
        f"Ontology(<{base}>",
    ]
    lines += [f"Declaration(Class({_iri(c)}))" for c in sorted(classes)]
    lines += [f"Declaration(ObjectProperty({_iri(r)}))" for r in sorted(object_roles)]
    lines += [f"Declaration(DataProperty({_iri(r)}))" for r in sorted(data_roles)]
    lines += [f"Declaration(NamedIndividual({_iri(i)}))" for i in sorted(individuals)]
    if symbolic:
        lines.append(f"Declaration(Datatype({_iri(SYMBOLIC_RANK)}))")
    lines += [axiom_to_ofn(a) for a in ontology]
    lines.append(")")
    return "\n".join(lines) + "\n"


_OFN_TOKEN = re.compile(
    r'\s*(?:(?P<open>\()|(?P<close>\))|(?P<lit>"(?:[^"\\]|\\.)*"\^\^[A-Za-z]*:[A-Za-z0-9_]+)'
    r"|(?P<full><[^>]*>)|(?P<name>[A-Za-z][A-Za-z0-9_]*)?(?P<prefixed>:[A-Za-z0-9_@]*)?)"
)


def _tokenize_ofn(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    for number, raw in enumerate(text.splitlines(), start=1):
        pos = 0
        while pos < len(raw):
            if raw[pos].isspace():
                pos += 1
                continue
            match = _OFN_TOKEN.match(raw, pos)
            if match is None or match.end() == pos:
                raise DLParseError(f"unexpected character {raw[pos]!r}", number, pos + 1)
            start = pos + (len(match.group(0)) - len(match.group(0).lstrip()))
            if match.group("open"):
                tokens.append(("(", "(", number, start + 1))
            elif match.group("close"):
                tokens.append((")", ")", number, start + 1))
            elif match.group("lit"):
                tokens.append(("lit", match.group("lit"), number, start + 1))
            elif match.group("full"):
                tokens.append(("iri", match.group("full"), number, start + 1))
            else:
                word = (match.group("name") or "") + (match.group("prefixed") or "")
                tokens.append(("word", word, number, start + 1))
            pos = match.end()
    return tokens


def _nest(tokens) -> list:
    """Group tokens into nested lists ``[head, args...]``."""
    stack: list[list] = [[]]
    for kind, text, line, column in tokens:
        if kind == "(":
            if not stack[-1] or stack[-1][-1][0] != "word":
                raise DLParseError("'(' must follow a keyword", line, column)
            head = stack[-1].pop()
            stack.append([head])
        elif kind == ")":
            if len(stack) == 1:
                raise DLParseError("unbalanced ')'", line, column)
            node = stack.pop()
            stack[-1].append(("node", node, line, column))
        else:
            stack[-1].append((kind, text, line, column))
    if len(stack) != 1:
        raise DLParseError("unbalanced '('", tokens[-1][2] if tokens else 1, 1)
    return stack[0]


def _local(token) -> str:
    kind, text, line, column = token
    if kind != "word" or not text.startswith(":"):
        raise DLParseError(f"expected a local name, found {text!r}", line, column)
    return text[1:]


def _parse_literal(token):
    kind, text, line, column = token
    if kind != "lit":
        raise DLParseError(f"expected a literal, found {text!r}", line, column)
    value, datatype = text.rsplit("^^", 1)
    value = _unquote(value)
    if datatype == "xsd:integer":
        return int(value)
    return value


def _ofn_expr(token) -> ConceptExpr:
    kind, value, line, column = token
    if kind == "word":
        if value == "owl:Thing":
            return Top
        if value == "owl:Nothing":
            return Bottom
        return Atom(_local(token))
    if kind != "node":
        raise DLParseError(f"expected a class expression, found {value!r}", line, column)
    head, *args = value
    name = head[1]
    if name == "ObjectIntersectionOf":
        return conj(*(_ofn_expr(a) for a in args))
    if name == "ObjectUnionOf":
        return disj(*(_ofn_expr(a) for a in args))
    if name == "ObjectComplementOf":
        return Not(_ofn_expr(args[0]))
    if name == "ObjectAllValuesFrom":
        return AllValues(_local(args[0]), _ofn_expr(args[1]))
    if name == "ObjectOneOf":
        return Nominal(_local(args[0]))
    if name == "DataAllValuesFrom":
        return DataAll(_local(args[0]), _ofn_data_range(args[1]))
    raise DLParseError(f"unsupported class expression {name}", head[2], head[3])


def _ofn_data_range(token) -> ConceptExpr:
    kind, value, line, column = token
    if kind == "word":
        if value == "xsd:integer":
            return INTEGER
        return Datatype(_local(token))
    head, *args = value
    if head[1] == "DataOneOf":
        return DataNominal(_parse_literal(args[0]))
    raise DLParseError(f"unsupported data range {head[1]}", head[2], head[3])


def parse_owl_functional(text: str) -> Ontology:
    """Parse the functional-syntax subset written by :func:`to_owl_functional`."""
    # prefix declarations carry no axioms; blank them so line numbers stay intact
    text = "\n".join("" if line.lstrip().startswith("Prefix(") else line for line in text.splitlines())
    top = _nest(_tokenize_ofn(text))
    ontology = next((t for t in top if t[0] == "node" and t[1][0][1] == "Ontology"), None)
    if ontology is None:
        raise DLParseError("no Ontology(...) block", 1, 1)
    result = Ontology()
    for token in ontology[1][1:]:
        if token[0] != "node":
            continue
        head, *args = token[1]
        name = head[1]
        if name in ("Declaration", "Annotation", "Import"):
            continue
        if name == "SubClassOf":
            axiom = SubClassOf(_ofn_expr(args[0]), _ofn_expr(args[1]))
        elif name == "EquivalentClasses":
            axiom = EquivalentTo(_ofn_expr(args[0]), _ofn_expr(args[1]))
        elif name == "ClassAssertion":
            axiom = ConceptAssertion(_ofn_expr(args[0]), _local(args[1]))
        elif name == "ObjectPropertyAssertion":
            axiom = RoleAssertion(_local(args[0]), _local(args[1]), _local(args[2]))
        elif name == "DataPropertyAssertion":
            axiom = DataAssertion(_local(args[0]), _local(args[1]), _parse_literal(args[2]))
        elif name == "SameIndividual":
            axiom = SameIndividual(_local(args[0]), _local(args[1]))
        elif name == "SubObjectPropertyOf":
            axiom = SubRoleOf(_local(args[0]), _local(args[1]))
        elif name == "TransitiveObjectProperty":
            axiom = TransitiveRole(_local(args[0]))
        else:
            raise DLParseError(f"unsupported axiom {name}", head[2], head[3])
        result.add_axiom(axiom)
    return result


def load_ontology(path) -> Ontology:
    """Read ``.ofn`` or ``.dlt`` by extension."""
    from pathlib import Path

    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".ofn":
        return parse_owl_functional(text)
    return parse_dl_text(text)
