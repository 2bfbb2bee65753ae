"""Spell-checker and morphological-analyzer evaluation.

Confusion buckets are defined over correct-word recognition:

    gold correct,   accepted -> TP        gold correct,   rejected -> FP
    gold incorrect, rejected -> TN        gold incorrect, accepted -> FN

so ``precision = TP / (TP + FP)`` is the share of correct words accepted and
``recall = TP / (TP + FN)`` is the share of accepted words that are correct.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from soranispell.script import normalize

Metric = Fraction | None


class NoIncorrectCases(ValueError):
    pass


class EmptyTestSet(ValueError):
    pass


class Label(str, Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    INCORRECT_SPACED = "incorrect_spaced"


class Bucket(str, Enum):
    TP = "TP"
    FP = "FP"
    TN = "TN"
    FN = "FN"


@dataclass(frozen=True)
class SpellTestCase:
    input: str
    gold_label: Label
    gold_corrections: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gold_label", Label(self.gold_label))
        object.__setattr__(self, "gold_corrections", tuple(self.gold_corrections))
        if self.gold_label is Label.CORRECT and self.gold_corrections:
            raise ValueError(f"correct case {self.input!r} cannot carry corrections")
        if self.gold_label is Label.INCORRECT_SPACED and not any(" " in c for c in self.gold_corrections):
            raise ValueError(f"spaced case {self.input!r} needs a correction containing a space")

    @property
    def is_correct(self) -> bool:
        return self.gold_label is Label.CORRECT


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp,
                               self.tn + other.tn, self.fn + other.fn)


@dataclass(frozen=True)
class Metrics:
    acc: Metric
    precision: Metric
    recall: Metric
    f1: Metric


@dataclass(frozen=True)
class SpellReport:
    counts: ConfusionCounts
    acc: Metric
    precision: Metric
    recall: Metric
    f1: Metric
    sugg1: Metric
    sugg3: Metric
    sugg_all: Metric
    system_name: str = ""
    testset_name: str = ""


@dataclass(frozen=True)
class MorphTestCase:
    word: str
    lemma: str
    pos_tags: frozenset[str]
    stem: str | None
    base: str
    prefixes: tuple[str, ...] = ()
    suffixes: tuple[str, ...] = ()
    note: str = ""

    def __post_init__(self):
        if "".join(self.prefixes) + self.base + "".join(self.suffixes) != self.word:
            raise ValueError(f"segmentation of {self.word!r} does not reconstruct it")


@dataclass(frozen=True)
class MorphReport:
    aspect: str
    correct: int
    total: int
    system_name: str = ""
    testset_name: str = ""

    @property
    def accuracy(self) -> Fraction:
        return Fraction(self.correct, self.total)


# -- spelling --------------------------------------------------------------

def classify_case(case: SpellTestCase, verdict: bool) -> Bucket:
    if case.is_correct:
        return Bucket.TP if verdict else Bucket.FP
    return Bucket.FN if verdict else Bucket.TN


def _ratio(num: int, den: int) -> Metric:
    return Fraction(num, den) if den else None


def compute_metrics(c: ConfusionCounts) -> Metrics:
    """Accuracy, lexical precision/recall and F1; ``None`` marks undefined.

    With no gold-correct words (TP + FP = 0) the lexical scores measure
    nothing, so precision, recall and F1 are all undefined.
    """
    acc = _ratio(c.tp + c.tn, c.total)
    if c.tp + c.fp == 0:
        return Metrics(acc, None, None, None)
    p = _ratio(c.tp, c.tp + c.fp)
    r = _ratio(c.tp, c.tp + c.fn)
    if p is None or r is None:
        f1 = None
    elif p + r == 0:
        f1 = None
    else:
        f1 = 2 * p * r / (p + r)
    return Metrics(acc, p, r, f1)


def suggestion_hits(cases: Iterable[SpellTestCase],
                    suggester: Callable[[str], Sequence[str]]) -> tuple[Fraction, Fraction, Fraction]:
    """Share of gold-incorrect cases with a gold correction at rank 1, in
    the top 3, and anywhere in the list."""
    hits1 = hits3 = hits_all = total = 0
    for case in cases:
        if case.is_correct:
            continue
        total += 1
        gold = {normalize(g) for g in case.gold_corrections}
        ranked = [normalize(s) for s in suggester(case.input)]
        rank = next((i for i, s in enumerate(ranked) if s in gold), None)
        if rank is None:
            continue
        hits_all += 1
        hits3 += rank < 3
        hits1 += rank == 0
    if total == 0:
        raise NoIncorrectCases("no gold-incorrect cases to score suggestions on")
    return Fraction(hits1, total), Fraction(hits3, total), Fraction(hits_all, total)


def drop_spaced(cases: Iterable[SpellTestCase]) -> list[SpellTestCase]:
    return [c for c in cases if c.gold_label is not Label.INCORRECT_SPACED]


def evaluate_spell(cases: Sequence[SpellTestCase],
                   checker: Callable[[str], bool],
                   suggester: Callable[[str], Sequence[str]],
                   system_name: str = "",
                   testset_name: str = "",
                   drop_spaced_cases: bool = False) -> SpellReport:
    if drop_spaced_cases:
        cases = drop_spaced(cases)
    tally = {b: 0 for b in Bucket}
    for case in cases:
        tally[classify_case(case, checker(case.input))] += 1
    counts = ConfusionCounts(tally[Bucket.TP], tally[Bucket.FP], tally[Bucket.TN], tally[Bucket.FN])
    m = compute_metrics(counts)
    try:
        s1, s3, sa = suggestion_hits(cases, suggester)
    except NoIncorrectCases:
        s1 = s3 = sa = None
    return SpellReport(counts, m.acc, m.precision, m.recall, m.f1, s1, s3, sa,
                       system_name, testset_name)


# -- morphology ------------------------------------------------------------

ASPECTS = ("segmentation", "pos", "stem")


def _segmentation_ok(case: MorphTestCase, analyses) -> bool:
    gold = ("".join(case.prefixes), case.base, "".join(case.suffixes))
    return any(("".join(a.prefixes), a.base.surface, "".join(a.suffixes)) == gold for a in analyses)


def evaluate_morph(cases: Sequence[MorphTestCase], analyzer, aspect: str,
                   system_name: str = "", testset_name: str = "") -> MorphReport:
    """Accuracy of ``analyzer`` (a word -> list of Analysis callable).

    segmentation: some analysis has the gold prefix block, base and suffix
    block; pos: the returned tags meet the gold tags; stem: the gold stem is
    among the verb stems (verb cases only).
    """
    if aspect not in ASPECTS:
        raise ValueError(f"aspect must be one of {ASPECTS}")
    if aspect == "stem":
        cases = [c for c in cases if c.stem]
    if not cases:
        raise EmptyTestSet(f"no cases for aspect {aspect!r}")
    correct = 0
    for case in cases:
        analyses = analyzer(case.word)
        if aspect == "segmentation":
            ok = _segmentation_ok(case, analyses)
        elif aspect == "pos":
            ok = bool({a.pos_tag for a in analyses} & case.pos_tags)
        else:
            ok = case.stem in {a.base.stem for a in analyses if a.base.is_verb}
        correct += ok
    return MorphReport(aspect, correct, len(cases), system_name, testset_name)


def coverage(words: Iterable[str], analyzer) -> Fraction:
    """Share of distinct normalized words with at least one analysis."""
    distinct = {w for w in (normalize(x) for x in words) if w}
    if not distinct:
        raise EmptyTestSet("empty word list")
    return Fraction(sum(1 for w in distinct if analyzer(w)), len(distinct))


# -- test-set files --------------------------------------------------------

def _data_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line


def parse_spell_testset(text: str) -> list[SpellTestCase]:
    """``input TAB label TAB corrections`` with ``|`` between corrections."""
    cases = []
    for lineno, line in _data_lines(text):
        cols = line.split("\t")
        if len(cols) == 2:
            cols.append("")
        if len(cols) != 3:
            raise ValueError(f"line {lineno}: expected 3 tab-separated columns")
        word, label, corr = cols
        try:
            cases.append(SpellTestCase(normalize(word), Label(label.strip()),
                                       tuple(normalize(c) for c in corr.split("|") if c.strip())))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return cases


def dump_spell_testset(cases: Iterable[SpellTestCase]) -> str:
    return "".join(f"{c.input}\t{c.gold_label.value}\t{'|'.join(c.gold_corrections)}\n" for c in cases)


def parse_morph_testset(text: str) -> list[MorphTestCase]:
    """``word lemma pos stem base prefixes suffixes [note]``, tab-separated.

    ``pos`` holds comma-separated tag letters; prefixes and suffixes are
    ``+``-joined; an empty stem column means no stem.
    """
    cases = []
    for lineno, line in _data_lines(text):
        cols = line.split("\t")
        if len(cols) not in (7, 8):
            raise ValueError(f"line {lineno}: expected 7 or 8 tab-separated columns")
        word, lemma, pos, stem, base, pre, suf = (normalize(c) if i not in (2,) else c
                                                  for i, c in enumerate(cols[:7]))
        note = cols[7] if len(cols) == 8 else ""
        try:
            cases.append(MorphTestCase(
                word, lemma, frozenset(t.strip() for t in pos.split(",") if t.strip()),
                stem or None, base,
                tuple(p for p in pre.split("+") if p), tuple(s for s in suf.split("+") if s), note))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return cases


def dump_morph_testset(cases: Iterable[MorphTestCase]) -> str:
    out = []
    for c in cases:
        cols = [c.word, c.lemma, ",".join(sorted(c.pos_tags)), c.stem or "", c.base,
                "+".join(c.prefixes), "+".join(c.suffixes)]
        if c.note:
            cols.append(c.note)
        out.append("\t".join(cols))
    return "\n".join(out) + "\n"


def load_spell_testset(path: str | Path) -> list[SpellTestCase]:
    return parse_spell_testset(Path(path).read_text(encoding="utf-8"))


def load_morph_testset(path: str | Path) -> list[MorphTestCase]:
    return parse_morph_testset(Path(path).read_text(encoding="utf-8"))


# -- rendering -------------------------------------------------------------

UNDEFINED = "—"
SPELL_COLUMNS = ("System", "Test set", "TP", "FP", "TN", "FN", "Acc (%)", "P_c", "R_c", "F1",
                 "Sugg_1 (%)", "Sugg_3 (%)", "Sugg_>3 (%)")
MORPH_COLUMNS = ("System", "Test set", "Aspect", "Correct", "Total", "Acc (%)")


def _pct(x: Metric) -> str:
    return UNDEFINED if x is None else f"{float(x) * 100:.2f}"


def _dec(x: Metric) -> str:
    return UNDEFINED if x is None else f"{float(x):.2f}"


def _spell_row(r: SpellReport) -> list[str]:
    c = r.counts
    return [r.system_name, r.testset_name, str(c.tp), str(c.fp), str(c.tn), str(c.fn),
            _pct(r.acc), _dec(r.precision), _dec(r.recall), _dec(r.f1),
            _pct(r.sugg1), _pct(r.sugg3), _pct(r.sugg_all)]


def _morph_row(r: MorphReport) -> list[str]:
    return [r.system_name, r.testset_name, r.aspect, str(r.correct), str(r.total), _pct(r.accuracy)]


def _frac(x: Metric) -> str | None:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def _unfrac(s: str | None) -> Metric:
    return None if s is None else Fraction(s)


def _to_dict(r: SpellReport | MorphReport) -> dict:
    if isinstance(r, MorphReport):
        return {"kind": "morph", "system": r.system_name, "testset": r.testset_name,
                "aspect": r.aspect, "correct": r.correct, "total": r.total,
                "accuracy": _frac(r.accuracy)}
    c = r.counts
    return {"kind": "spell", "system": r.system_name, "testset": r.testset_name,
            "counts": {"tp": c.tp, "fp": c.fp, "tn": c.tn, "fn": c.fn},
            "acc": _frac(r.acc), "precision": _frac(r.precision), "recall": _frac(r.recall),
            "f1": _frac(r.f1), "sugg1": _frac(r.sugg1), "sugg3": _frac(r.sugg3),
            "sugg_all": _frac(r.sugg_all)}


def _from_dict(d: dict) -> SpellReport | MorphReport:
    if d["kind"] == "morph":
        return MorphReport(d["aspect"], d["correct"], d["total"], d["system"], d["testset"])
    return SpellReport(ConfusionCounts(**d["counts"]), _unfrac(d["acc"]), _unfrac(d["precision"]),
                       _unfrac(d["recall"]), _unfrac(d["f1"]), _unfrac(d["sugg1"]),
                       _unfrac(d["sugg3"]), _unfrac(d["sugg_all"]), d["system"], d["testset"])


def render_report(reports: SpellReport | MorphReport | Sequence[SpellReport | MorphReport],
                  fmt: str = "text") -> str:
    """Render one or more reports as ``text`` (aligned table), ``tsv`` or ``json``."""
    if isinstance(reports, (SpellReport, MorphReport)):
        reports = [reports]
    reports = list(reports)
    if fmt == "json":
        return json.dumps([_to_dict(r) for r in reports], ensure_ascii=False, indent=2) + "\n"
    out = []
    for kind, columns, row in ((SpellReport, SPELL_COLUMNS, _spell_row),
                               (MorphReport, MORPH_COLUMNS, _morph_row)):
        rows = [row(r) for r in reports if isinstance(r, kind)]
        if not rows:
            continue
        if fmt == "tsv":
            out.append("\t".join(columns))
            out.extend("\t".join(r) for r in rows)
        elif fmt == "text":
            widths = [max(len(x) for x in col) for col in zip(columns, *rows)]
            out.append("  ".join(h.ljust(w) for h, w in zip(columns, widths)).rstrip())
            out.append("  ".join("-" * w for w in widths))
            out.extend("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows)
        else:
            raise ValueError(f"unknown format {fmt!r}")
    return "\n".join(out) + "\n"


def parse_report(text: str) -> list[SpellReport | MorphReport]:
    """Inverse of ``render_report(..., fmt="json")``."""
    return [_from_dict(d) for d in json.loads(text)]


# -- published full-scale figures ------------------------------------------
# These come from the full lexicon, rule set, corpora and test sets, none
# of which ship with this package.  They document the target scale and are
# never asserted against desk-scale runs.

@dataclass(frozen=True)
class PublishedSpellRow:
    system: str
    testset: str
    counts: ConfusionCounts
    acc: float | None
    precision: float | None
    recall: float | None
    f1: float | None
    sugg1: float
    sugg3: float
    sugg_all: float


PUBLISHED_SPELL = (
    PublishedSpellRow("Baseline", "T1", ConfusionCounts(0, 0, 178, 206), None, None, None, None,
                      26.82, 37.76, 46.35),
    PublishedSpellRow("Baseline", "T2", ConfusionCounts(597, 251, 105, 441), 50.36, 0.70, 0.58, 0.63,
                      10.87, 15.76, 19.02),
    PublishedSpellRow("Baseline", "T2∖space", ConfusionCounts(597, 251, 105, 210), 60.36, 0.70, 0.74, 0.72,
                      18.69, 27.10, 32.71),
    PublishedSpellRow("Rule-based", "T1", ConfusionCounts(0, 0, 208, 176), None, None, None, None,
                      22.92, 39.84, 47.66),
    PublishedSpellRow("Rule-based", "T2", ConfusionCounts(367, 481, 182, 364), 39.38, 0.43, 0.50, 0.46,
                      18.30, 26.99, 31.52),
    PublishedSpellRow("Rule-based", "T2∖space", ConfusionCounts(367, 481, 93, 222), 39.55, 0.43, 0.62, 0.51,
                      16.51, 24.30, 27.73),
)

PUBLISHED_MORPH = {"segmentation": 80.14, "pos": 86.02, "stem": 63.75}
PUBLISHED_COVERAGE = 27.16
PUBLISHED_COVERAGE_WORDS = 235_210
PUBLISHED_CORPUS_FORMS = 2_376_405
PUBLISHED_ADMITTED_FORMS = 265_216
PUBLISHED_LEXICON_LEMMATA = 23_223
PUBLISHED_RULES = {"PFX": 1_812, "SFX": 2_481, "total": 4_293}
