"""Command-line front end.

Exit codes: 0 success, 1 spelling errors found (or nothing to report),
2 usage error, 3 resource or I/O error, 4 network error.
"""
from __future__ import annotations

import argparse
import io
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from soranispell import fixtures
from soranispell.baseline import (DEFAULT_MIN_FREQ, FrequencyList, baseline_check, baseline_suggest,
                                  build_frequency_list, corpus_tokens)
from soranispell.engine import Speller, UnresolvedFlag
from soranispell.evaluation import (ASPECTS, EmptyTestSet, coverage, evaluate_morph, evaluate_spell,
                                    load_morph_testset, load_spell_testset, render_report)
from soranispell.lexbuild import (DEFAULT_ENDPOINT, ENDPOINT_ENV, BadConceptId, EndpointUnreachable,
                                  MalformedResponse, RecordedClient, Source, build_sparql_query,
                                  fetch_labels, merge_sources, validate_dictionary)
from soranispell.lexfmt import DicEntry, Dictionary, FormatError, load_aff, load_dic, serialize_dic
from soranispell.script import Direction, normalize, tokenize, transliterate

OK, FOUND_ERRORS, USAGE, RESOURCE, NETWORK = 0, 1, 2, 3, 4
FORMATS = ("text", "tsv", "json")


class ResourceError(Exception):
    pass


class NothingFound(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    dict_path: Path | None
    aff_path: Path | None
    baseline_path: Path | None
    testset_path: Path | None
    max_distance: int
    max_results: int
    enable_splits: bool
    output_format: str

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        def path(name):
            value = getattr(args, name, None)
            return Path(value) if value else None
        cfg = cls(path("dic"), path("aff"), path("freq_list"), path("testset"),
                  getattr(args, "max_distance", 2), getattr(args, "max_results", 10),
                  getattr(args, "splits", False), getattr(args, "format", "text"))
        for p in (cfg.dict_path, cfg.aff_path, cfg.baseline_path, cfg.testset_path):
            if p is not None and not p.is_file():
                raise ResourceError(f"no such file: {p}")
        return cfg


@dataclass(frozen=True)
class CliResult:
    code: int
    out: str
    err: str


# -- resource loading ------------------------------------------------------

def _speller(cfg: CliConfig) -> Speller:
    dictionary = load_dic(cfg.dict_path) if cfg.dict_path else fixtures.sample_dictionary()
    rules = load_aff(cfg.aff_path) if cfg.aff_path else fixtures.sample_rules()
    unresolved = rules.unresolved_flags(dictionary)
    if unresolved:
        entry, flag = unresolved[0]
        raise ResourceError(f"flag {flag!r} of {entry.surface!r} has no affix class")
    return Speller(dictionary, rules)


def _freq_list(cfg: CliConfig, min_freq: int | None) -> FrequencyList:
    if cfg.baseline_path:
        return FrequencyList.load(cfg.baseline_path, min_freq)
    return fixtures.toy_frequency_list(min_freq or DEFAULT_MIN_FREQ)


def _words(args_words: Sequence[str], stdin: TextIO) -> list[str]:
    if args_words:
        return list(args_words)
    return tokenize(stdin.read())


# -- subcommands -----------------------------------------------------------

def cmd_check(args, cfg, out, stdin) -> int:
    sp = _speller(cfg)
    bad = 0
    for w in _words(args.words, stdin):
        ok = sp.check(w)
        bad += not ok
        print(f"{normalize(w)}\t{'correct' if ok else 'incorrect'}", file=out)
    return FOUND_ERRORS if bad else OK


def cmd_suggest(args, cfg, out, stdin) -> int:
    sp = _speller(cfg)
    if sp.check(args.word):
        print(f"{normalize(args.word)}\tcorrect", file=out)
        return OK
    for s in sp.suggest(args.word, cfg.max_distance, cfg.max_results, cfg.enable_splits):
        print(f"{s.candidate}\t{s.distance}", file=out)
    return FOUND_ERRORS


def cmd_analyze(args, cfg, out, stdin) -> int:
    analyses = _speller(cfg).analyze(args.word)
    for a in analyses:
        print("\t".join(["+".join(a.morphemes), a.pos_tag or "", a.stem or "",
                         " ".join(a.morph_fields)]), file=out)
    return OK if analyses else FOUND_ERRORS


def cmd_stem(args, cfg, out, stdin) -> int:
    stems = _speller(cfg).stem(args.word)
    for s in stems:
        print(s, file=out)
    return OK if stems else FOUND_ERRORS


def cmd_generate(args, cfg, out, stdin) -> int:
    sp = _speller(cfg)
    entries = sp.dictionary.lookup(normalize(args.lemma))
    if args.pos:
        entries = [e for e in entries if e.tag == args.pos]
    if not entries:
        raise NothingFound(f"no entry {args.lemma!r} in the dictionary")
    forms = set()
    for e in entries:
        forms |= sp.generate(e)
    for f in sorted(forms):
        print(f, file=out)
    return OK


def cmd_baseline_build(args, cfg, out, stdin) -> int:
    for p in args.corpus:
        if not Path(p).is_file():
            raise ResourceError(f"no such file: {p}")
    fl = build_frequency_list(corpus_tokens(args.corpus), args.min_freq)
    fl.save(args.output)
    print(f"{len(fl)}\t{len(fl.admitted)}", file=out)
    return OK


def cmd_baseline_check(args, cfg, out, stdin) -> int:
    fl = _freq_list(cfg, args.min_freq)
    bad = 0
    for w in _words(args.words, stdin):
        ok = baseline_check(w, fl)
        bad += not ok
        print(f"{normalize(w)}\t{'correct' if ok else 'incorrect'}", file=out)
    return FOUND_ERRORS if bad else OK


def cmd_baseline_suggest(args, cfg, out, stdin) -> int:
    fl = _freq_list(cfg, args.min_freq)
    if baseline_check(args.word, fl):
        print(f"{normalize(args.word)}\tcorrect", file=out)
        return OK
    for s in baseline_suggest(args.word, fl, args.k):
        print(f"{s.candidate}\t{s.distance}", file=out)
    return FOUND_ERRORS


def cmd_eval_spell(args, cfg, out, stdin) -> int:
    cases = load_spell_testset(cfg.testset_path)
    if args.system == "engine":
        sp = _speller(cfg)
        checker = sp.check
        def suggester(w):
            return [s.candidate for s in sp.suggest(w, cfg.max_distance, cfg.max_results, cfg.enable_splits)]
    else:
        fl = _freq_list(cfg, args.min_freq)
        checker = lambda w: baseline_check(w, fl)
        suggester = lambda w: [s.candidate for s in baseline_suggest(w, fl, cfg.max_results)]
    name = args.name or Path(cfg.testset_path).stem + ("∖space" if args.drop_spaced else "")
    report = evaluate_spell(cases, checker, suggester, args.system, name, args.drop_spaced)
    out.write(render_report(report, cfg.output_format))
    return OK


def cmd_eval_morph(args, cfg, out, stdin) -> int:
    sp = _speller(cfg)
    cases = load_morph_testset(cfg.testset_path)
    aspects = ASPECTS if args.aspect == "all" else (args.aspect,)
    name = args.name or Path(cfg.testset_path).stem
    reports = [evaluate_morph(cases, sp.analyze, a, "engine", name) for a in aspects]
    out.write(render_report(reports, cfg.output_format))
    return OK


def cmd_eval_coverage(args, cfg, out, stdin) -> int:
    sp = _speller(cfg)
    words = tokenize(Path(args.wordlist).read_text(encoding="utf-8"))
    cov = coverage(words, sp.analyze)
    print(f"{cov.numerator}/{cov.denominator}\t{float(cov) * 100:.2f}", file=out)
    return OK


def cmd_lexicon_validate(args, cfg, out, stdin) -> int:
    dictionary = load_dic(cfg.dict_path) if cfg.dict_path else fixtures.sample_dictionary()
    rules = load_aff(cfg.aff_path) if cfg.aff_path else fixtures.sample_rules()
    problems = [str(d) for d in validate_dictionary(dictionary)]
    problems += [f"UnresolvedFlag\t{e.surface}\tflag {f!r} has no affix class"
                 for e, f in rules.unresolved_flags(dictionary)]
    for p in problems:
        print(p, file=out)
    return FOUND_ERRORS if problems else OK


def cmd_lexicon_merge(args, cfg, out, stdin) -> int:
    sources: list[Source | Dictionary] = []
    if cfg.dict_path:
        sources.append(load_dic(cfg.dict_path))
    for p in args.sources:
        path = Path(p)
        if not path.is_file():
            raise ResourceError(f"no such file: {p}")
        words = [w for w in path.read_text(encoding="utf-8").split() if not w.startswith("#")]
        sources.append(Source(words, args.script, args.flags, args.pos, args.infl_class))
    text = serialize_dic(merge_sources(sources))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return OK


def cmd_wikidata(args, cfg, out, stdin) -> int:
    query = build_sparql_query(args.concept, args.limit)
    if not (args.fetch or args.recorded):
        out.write(query)
        return OK
    endpoint = args.endpoint or os.environ.get(ENDPOINT_ENV) or DEFAULT_ENDPOINT
    client = None
    if args.recorded:
        if not Path(args.recorded).is_file():
            raise ResourceError(f"no such file: {args.recorded}")
        client = RecordedClient.from_file(args.recorded, args.concept)
    labels = fetch_labels(endpoint, query, client)
    if args.as_dic:
        entries = [DicEntry(l, frozenset(args.flags), "Z", needs_review=True) for l in labels if l]
        out.write(serialize_dic(merge_sources([Dictionary(entries)])))
    else:
        for label in labels:
            print(label, file=out)
    return OK


def cmd_transliterate(args, cfg, out, stdin) -> int:
    text = " ".join(args.text) if args.text else stdin.read()
    result = transliterate(text, args.direction)
    out.write(result if result.endswith("\n") else result + "\n")
    return OK


# -- argument parsing ------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    resources = _Parser(add_help=False)
    resources.add_argument("--dic", metavar="FILE", help="dictionary file (default: packaged sample)")
    resources.add_argument("--aff", metavar="FILE", help="affix file (default: packaged sample)")

    search = _Parser(add_help=False)
    search.add_argument("--max-distance", type=int, default=2)
    search.add_argument("--max-results", type=int, default=10)
    search.add_argument("--splits", action="store_true", help="also suggest two-word splits")

    freq = _Parser(add_help=False)
    freq.add_argument("--list", dest="freq_list", metavar="FILE",
                      help="frequency list (default: built from the packaged toy corpus)")
    freq.add_argument("--min-freq", type=int, default=None)

    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default="text")

    parser = _Parser(prog="soranispell", description="Sorani Kurdish spell checker and analyzer.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[resources], help="check words (stdin if none given)")
    p.add_argument("words", nargs="*")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suggest", parents=[resources, search], help="rank corrections")
    p.add_argument("word")
    p.set_defaults(func=cmd_suggest)

    for name, func in (("analyze", cmd_analyze), ("stem", cmd_stem)):
        p = sub.add_parser(name, parents=[resources])
        p.add_argument("word")
        p.set_defaults(func=func)

    p = sub.add_parser("generate", parents=[resources], help="all forms of a dictionary entry")
    p.add_argument("lemma")
    p.add_argument("--pos", help="restrict to homographs with this tag letter")
    p.set_defaults(func=cmd_generate)

    base = sub.add_parser("baseline", help="frequency-list checker")
    bsub = base.add_subparsers(dest="baseline_command", required=True, parser_class=_Parser)
    p = bsub.add_parser("build")
    p.add_argument("corpus", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--min-freq", type=int, default=DEFAULT_MIN_FREQ)
    p.set_defaults(func=cmd_baseline_build)
    p = bsub.add_parser("check", parents=[freq])
    p.add_argument("words", nargs="*")
    p.set_defaults(func=cmd_baseline_check)
    p = bsub.add_parser("suggest", parents=[freq])
    p.add_argument("word")
    p.add_argument("-k", type=int, default=10)
    p.set_defaults(func=cmd_baseline_suggest)

    ev = sub.add_parser("eval", help="evaluation harness")
    esub = ev.add_subparsers(dest="eval_command", required=True, parser_class=_Parser)
    p = esub.add_parser("spell", parents=[resources, search, freq, fmt])
    p.add_argument("testset")
    p.add_argument("--system", choices=("engine", "baseline"), default="engine")
    p.add_argument("--drop-spaced", action="store_true")
    p.add_argument("--name", help="test-set name in the report")
    p.set_defaults(func=cmd_eval_spell)
    p = esub.add_parser("morph", parents=[resources, fmt])
    p.add_argument("testset")
    p.add_argument("--aspect", choices=ASPECTS + ("all",), default="all")
    p.add_argument("--name")
    p.set_defaults(func=cmd_eval_morph)
    p = esub.add_parser("coverage", parents=[resources])
    p.add_argument("wordlist")
    p.set_defaults(func=cmd_eval_coverage)

    lex = sub.add_parser("lexicon", help="lexicon construction")
    lsub = lex.add_subparsers(dest="lexicon_command", required=True, parser_class=_Parser)
    p = lsub.add_parser("validate", parents=[resources])
    p.set_defaults(func=cmd_lexicon_validate)
    p = lsub.add_parser("merge", parents=[resources], help="merge word lists into a draft dictionary")
    p.add_argument("sources", nargs="*", help="whitespace-separated word-list files")
    p.add_argument("--script", choices=("arabic", "latin"), default="arabic")
    p.add_argument("--flags", default="")
    p.add_argument("--pos")
    p.add_argument("--is", dest="infl_class")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_lexicon_merge)
    p = lsub.add_parser("wikidata-query", help="print or run the proper-name label query")
    p.add_argument("concept")
    p.add_argument("--limit", type=int, default=100)
    p.add_argument("--fetch", action="store_true", help="run the query")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--endpoint", help=f"query endpoint (default: ${ENDPOINT_ENV} or {DEFAULT_ENDPOINT})")
    src.add_argument("--recorded", metavar="FILE", help="replay a stored result document")
    p.add_argument("--as-dic", action="store_true", help="emit dictionary lines tagged Z")
    p.add_argument("--flags", default="")
    p.set_defaults(func=cmd_wikidata)

    p = sub.add_parser("transliterate", help="Latin <-> Arabic script")
    p.add_argument("text", nargs="*")
    p.add_argument("--direction", choices=[d.value for d in Direction], required=True)
    p.set_defaults(func=cmd_transliterate)
    return parser


def _validate(args) -> None:
    if getattr(args, "max_distance", 0) < 0 or getattr(args, "max_results", 1) < 1:
        raise _UsageError("--max-distance must be >= 0 and --max-results >= 1")
    if getattr(args, "min_freq", None) is not None and args.min_freq < 1:
        raise _UsageError("--min-freq must be >= 1")
    if getattr(args, "k", 1) < 1:
        raise _UsageError("-k must be >= 1")
    if getattr(args, "command", None) == "eval" and getattr(args, "system", None) == "engine" \
            and args.freq_list:
        raise _UsageError("--list only applies to --system baseline")


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
    except _UsageError as exc:
        print(exc, file=err)
        return USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else OK
    try:
        cfg = CliConfig.from_args(args)
        return args.func(args, cfg, out, stdin)
    except NothingFound as exc:
        print(exc, file=err)
        return FOUND_ERRORS
    except (ResourceError, FormatError, UnresolvedFlag, EmptyTestSet, OSError, ValueError) as exc:
        if isinstance(exc, BadConceptId):
            print(f"error: {exc}", file=err)
            return USAGE
        if isinstance(exc, MalformedResponse):
            print(f"network error: {exc}", file=err)
            return NETWORK
        print(f"error: {exc}", file=err)
        return RESOURCE
    except EndpointUnreachable as exc:
        print(f"network error: {exc}", file=err)
        return NETWORK


def execute(argv: Sequence[str], stdin_text: str = "") -> CliResult:
    """Run the CLI in-process and capture its output streams."""
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err, io.StringIO(stdin_text))
    return CliResult(code, out.getvalue(), err.getvalue())
