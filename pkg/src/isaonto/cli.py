"""Command-line front end: ``isaonto <command> [options]``.

Exit status: 0 success, 1 usage error, 2 unreadable or malformed input,
3 inconsistency found under ``classify --check --strict``.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import sys
from pathlib import Path

from .dl import Ontology
from .errors import DefinitionCycle, DLParseError, IsaOntoError, LexiconLoadError
from .evaluate import EmptyOntology, evaluate, load_signatures, trace_outcomes
from .lexicon import Lexicon, load_lexicon
from .pipeline import (
    LearnResult,
    characterize_all,
    learn,
    read_corpus,
    simplify,
    tag_lines,
    tokens_json,
)
from .reason import Reasoner, check_consistency, classify
from .serialize import DEFAULT_NAMESPACE, load_ontology, to_dl_text, to_owl_functional

log = logging.getLogger("isaonto")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3
CONFIG_KEYS = {"lexicon", "wordnet", "namespace", "jobs"}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config(path: str | None) -> dict[str, str]:
    """``key = value`` lines; a section header is optional."""
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    parser = configparser.ConfigParser(comment_prefixes=("#", ";"))
    try:
        if not text.lstrip().startswith("["):
            text = "[isaonto]\n" + text
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise InputError(f"bad config {path}: {exc}") from exc
    values = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            values[key] = value.strip().strip('"')
    unknown = set(values) - CONFIG_KEYS
    if unknown:
        raise InputError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return values


def _settings(args) -> dict:
    config = read_config(args.config)
    jobs = args.jobs if args.jobs is not None else int(config.get("jobs", 1))
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return {
        "lexicon": args.lexicon or config.get("lexicon"),
        "wordnet": getattr(args, "wordnet", None) or config.get("wordnet"),
        "namespace": args.namespace or config.get("namespace") or DEFAULT_NAMESPACE,
        "jobs": jobs,
    }


def _lexicon(settings: dict) -> Lexicon:
    try:
        return load_lexicon(settings["lexicon"], settings["wordnet"])
    except LexiconLoadError as exc:
        raise InputError(str(exc)) from exc


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _corpus_lines(args):
    return read_corpus(_read_text(args.corpus))


def _report_rejections(records, strict_isa: bool) -> None:
    rejected = [r for r in records if r.rejected is not None]
    for record in rejected:
        log.warning("rejected line %d: %s (%s)", record.source_index, record.rejected, record.raw)
    for record in records:
        for expansion in record.expansions:
            if expansion.error:
                log.warning("line %d.%d failed: %s", record.source_index, expansion.expansion_id, expansion.error)
    if strict_isa and rejected:
        raise InputError(f"{len(rejected)} non-IS-A line(s) rejected under --strict-isa")


# commands ------------------------------------------------------------------
def cmd_tag(args) -> int:
    lexicon = _lexicon(_settings(args))
    records = tag_lines(_corpus_lines(args), lexicon, args.pretagged)
    trace = [{"source_index": r.source_index, "raw": r.raw, "tokens": tokens_json(r.tokens)} for r in records]
    _write(args.out, _dump_json(trace))
    return EXIT_OK


def cmd_simplify(args) -> int:
    lexicon = _lexicon(_settings(args))
    records = simplify(tag_lines(_corpus_lines(args), lexicon, args.pretagged), lexicon)
    _report_rejections(records, args.strict_isa)
    _write(args.out, _dump_json([r.simplify_json() for r in records]))
    return EXIT_OK


def cmd_characterize(args) -> int:
    lexicon = _lexicon(_settings(args))
    records = characterize_all(simplify(tag_lines(_corpus_lines(args), lexicon, args.pretagged), lexicon), lexicon)
    _report_rejections(records, args.strict_isa)
    _write(args.out, _dump_json([r.to_json() for r in records]))
    return EXIT_OK


def _run_learn(args, settings) -> LearnResult:
    lexicon = _lexicon(settings)
    result = learn(_corpus_lines(args), lexicon, jobs=settings["jobs"], pretagged=args.pretagged)
    _report_rejections(result.records, args.strict_isa)
    return result


def _write_ontology(result: LearnResult, args, settings) -> None:
    _write(args.out, to_owl_functional(result.ontology, settings["namespace"]))
    if args.dlt:
        _write(args.dlt, to_dl_text(result.ontology))
    if args.trace:
        _write(args.trace, _dump_json(result.trace()))


def cmd_learn(args) -> int:
    settings = _settings(args)
    result = _run_learn(args, settings)
    _write_ontology(result, args, settings)
    log.info(
        "learned %d axioms from %d lines (%d rejected)",
        len(result.ontology),
        len(result.records),
        len(result.rejected()),
    )
    return EXIT_OK


def _load(path: str) -> Ontology:
    try:
        return load_ontology(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except DLParseError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _classify(ontology: Ontology, args) -> int:
    try:
        reasoner = Reasoner(ontology.tbox)
    except DefinitionCycle as exc:
        raise InputError(str(exc)) from exc
    status = EXIT_OK
    if args.check:
        report = check_consistency(ontology, reasoner)
        for concept, reason in report.unsatisfiable:
            log.warning("unsatisfiable concept %s: %s", concept, reason)
        for individual, reason in report.abox_clashes:
            log.warning("clash on individual %s: %s", individual, reason)
        if args.consistency:
            _write(args.consistency, _dump_json(report.to_json()))
        if args.strict and not report.consistent:
            status = EXIT_INCONSISTENT
    graph = classify(ontology, reasoner)
    _write(args.taxonomy, graph.to_tsv())
    if args.dot:
        _write(args.dot, graph.to_dot())
    return status


def cmd_classify(args) -> int:
    return _classify(_load(args.input), args)


def _eval(learned: Ontology, gold: Ontology, args) -> int:
    outcomes = None
    if args.eval_trace:
        if not args.signatures:
            raise UsageError("--trace needs --signatures for characterization metrics")
        try:
            trace = json.loads(_read_text(args.eval_trace))
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.eval_trace}: {exc}") from exc
        outcomes = trace_outcomes(trace, load_signatures(args.signatures))
    try:
        report = evaluate(learned, gold, outcomes)
    except EmptyOntology as exc:
        raise InputError(str(exc)) from exc
    _write(args.report, report.dumps())
    if args.table:
        _write(args.table, report.to_table())
    return EXIT_OK


def cmd_eval(args) -> int:
    return _eval(_load(args.learned), _load(args.gold), args)


def cmd_all(args) -> int:
    settings = _settings(args)
    out_dir = Path(args.out_dir)
    args.out = str(out_dir / "ontology.ofn")
    args.dlt = str(out_dir / "ontology.dlt")
    args.trace = str(out_dir / "trace.json")
    result = _run_learn(args, settings)
    _write_ontology(result, args, settings)
    args.taxonomy = str(out_dir / "taxonomy.tsv")
    args.dot = str(out_dir / "taxonomy.dot")
    args.consistency = str(out_dir / "consistency.json")
    status = _classify(result.ontology, args)
    if args.gold:
        args.report = str(out_dir / "report.json")
        args.table = str(out_dir / "report.txt")
        args.eval_trace = args.trace if args.signatures else None
        _eval(result.ontology, _load(args.gold), args)
    return status


# argument parsing ------------------------------------------------------------
def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value file (lexicon, wordnet, namespace, jobs)")
    parser.add_argument("--lexicon", help="resource directory (default: bundled tables)")
    parser.add_argument("--wordnet", help="directory holding WordNet data.noun and index.noun")
    parser.add_argument("--namespace", help=f"ontology IRI namespace (default {DEFAULT_NAMESPACE})")
    parser.add_argument("--jobs", type=int, help="worker processes for translation (default 1)")
    parser.add_argument(
        "--seed-order",
        action="store_true",
        help="process lines strictly in input order (always the case; accepted for scripts)",
    )
    parser.add_argument("--strict-isa", action="store_true", help="exit 2 if any line is not an IS-A sentence")
    parser.add_argument("-v", "--verbose", action="store_true")


def _corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", required=True)
    parser.add_argument("--pretagged", action="store_true", help="corpus lines are lexeme_TAG tokens")


def _check_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--check", action="store_true", help="run the consistency check first")
    parser.add_argument("--strict", action="store_true", help="with --check, exit 3 on inconsistency")
    parser.add_argument("--consistency", help="write the consistency report as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isaonto", description="Compile factual IS-A sentences into a DL ontology.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, helptext in (
        ("tag", "tokenize and POS-tag the corpus"),
        ("simplify", "split, singularize and normalize IS-A sentences"),
        ("characterize", "fill the sentence characterization slots"),
    ):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        _corpus_args(p)
        p.add_argument("--out", help="JSON trace (default stdout)")

    p = sub.add_parser("learn", help="build an ontology from a corpus")
    _common(p)
    _corpus_args(p)
    p.add_argument("--out", required=True, help="OWL functional syntax output")
    p.add_argument("--trace", help="per-line JSON trace")
    p.add_argument("--dlt", help="also write DL text")

    p = sub.add_parser("classify", help="classify an ontology into a taxonomy")
    _common(p)
    p.add_argument("--in", dest="input", required=True, help=".ofn or .dlt ontology")
    p.add_argument("--taxonomy", required=True, help="child<TAB>parent output")
    p.add_argument("--dot", help="Graphviz output")
    _check_args(p)

    p = sub.add_parser("eval", help="compare a learned ontology with a gold one")
    _common(p)
    p.add_argument("--learned", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--report", required=True, help="JSON report")
    p.add_argument("--table", help="text table output")
    p.add_argument("--trace", dest="eval_trace", help="learn trace for characterization metrics")
    p.add_argument("--signatures", help="expected signatures TSV for the trace")

    p = sub.add_parser("all", help="learn, classify and optionally evaluate")
    _common(p)
    _corpus_args(p)
    _check_args(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--gold", help="gold ontology for evaluation")
    p.add_argument("--signatures", help="expected signatures TSV")
    return parser


COMMANDS = {
    "tag": cmd_tag,
    "simplify": cmd_simplify,
    "characterize": cmd_characterize,
    "learn": cmd_learn,
    "classify": cmd_classify,
    "eval": cmd_eval,
    "all": cmd_all,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"isaonto: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, IsaOntoError) as exc:
        print(f"isaonto: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"isaonto: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
