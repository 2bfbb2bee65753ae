"""Affix-stripping checker and morphological analyzer.

At most one prefix rule and one suffix rule are stripped per word.  Multi-
morpheme sequences live in the affix file as single, pre-expanded rules.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from soranispell.lexfmt import AffixRule, AffixRuleSet, DicEntry, Dictionary, VERB_TAGS
from soranispell.script import normalize


class UnresolvedFlag(KeyError):
    pass


@dataclass(frozen=True)
class Analysis:
    surface: str
    base: DicEntry
    prefix_rule: AffixRule | None = None
    suffix_rule: AffixRule | None = None

    def __post_init__(self):
        if self.prefix_rule and self.suffix_rule and not (
                self.prefix_rule.cross_product and self.suffix_rule.cross_product):
            raise ValueError("prefix and suffix combined without cross product")

    @property
    def pos_tag(self) -> str | None:
        return self.base.tag

    @property
    def stem(self) -> str | None:
        return self.base.stem

    @property
    def prefixes(self) -> list[str]:
        return [self.prefix_rule.append] if self.prefix_rule and self.prefix_rule.append else []

    @property
    def suffixes(self) -> list[str]:
        return [self.suffix_rule.append] if self.suffix_rule and self.suffix_rule.append else []

    @property
    def morphemes(self) -> list[str]:
        return self.prefixes + [self.base.surface] + self.suffixes

    @property
    def morph_fields(self) -> list[str]:
        out = []
        for rule in (self.prefix_rule, self.suffix_rule):
            if rule:
                out.extend(rule.morph)
        return out

    def reconstruct(self) -> str:
        word = self.base.surface
        if self.suffix_rule:
            word = self.suffix_rule.apply(word)
        if self.prefix_rule:
            word = self.prefix_rule.apply(word)
        return word

    def __str__(self) -> str:
        parts = ["+".join(self.morphemes), f"po:{self.pos_tag or '?'}"]
        if self.stem:
            parts.append(f"st:{self.stem}")
        parts.extend(self.morph_fields)
        return " ".join(parts)


@dataclass(frozen=True, order=True)
class Suggestion:
    """Ordering is the rank key: distance, then source, then the string."""

    distance: int
    priority: int
    candidate: str

    @property
    def rank_key(self) -> tuple[int, int, str]:
        return (self.distance, self.priority, self.candidate)


# source priorities
EDIT, SPLIT = 0, 1


def damerau_levenshtein(a: str, b: str) -> int:
    """Unrestricted Damerau-Levenshtein distance (Lowrance-Wagner)."""
    inf = len(a) + len(b)
    last_row: dict[str, int] = {}
    d = [[inf] * (len(b) + 2) for _ in range(len(a) + 2)]
    for i in range(len(a) + 1):
        d[i + 1][0] = inf
        d[i + 1][1] = i
    for j in range(len(b) + 1):
        d[0][j + 1] = inf
        d[1][j + 1] = j
    for i in range(1, len(a) + 1):
        last_match_col = 0
        for j in range(1, len(b) + 1):
            i1 = last_row.get(b[j - 1], 0)
            j1 = last_match_col
            cost = 1
            if a[i - 1] == b[j - 1]:
                cost = 0
                last_match_col = j
            d[i + 1][j + 1] = min(
                d[i][j] + cost,
                d[i + 1][j] + 1,
                d[i][j + 1] + 1,
                d[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1),
            )
        last_row[a[i - 1]] = i
    return d[len(a) + 1][len(b) + 1]


def edits1(word: str, alphabet: str) -> set[str]:
    """Single substitutions, insertions (over ``alphabet``), deletions and
    adjacent transpositions of ``word``."""
    splits = [(word[:i], word[i:]) for i in range(len(word) + 1)]
    out = set()
    for left, right in splits:
        if right:
            out.add(left + right[1:])
            for c in alphabet:
                if c != right[0]:
                    out.add(left + c + right[1:])
        if len(right) > 1:
            out.add(left + right[1] + right[0] + right[2:])
        for c in alphabet:
            out.add(left + c + right)
    out.discard(word)
    return out


class Speller:
    """Checker/analyzer over one dictionary and affix rule set.

    Both resources are treated as read-only; the derived indices are built
    once here.
    """

    def __init__(self, dictionary: Dictionary, rules: AffixRuleSet):
        self.dictionary = dictionary
        self.rules = rules
        self._sfx: dict[str, list[AffixRule]] = {}
        self._pfx: dict[str, list[AffixRule]] = {}
        for rule in rules.rules():
            index = self._sfx if rule.kind == "SFX" else self._pfx
            index.setdefault(rule.append, []).append(rule)
        self._forms: frozenset[str] | None = None

    # -- analysis ----------------------------------------------------------

    def _bases(self, base: str, *flags: str) -> Iterator[DicEntry]:
        for entry in self.dictionary.lookup(base):
            if all(f in entry.flags for f in flags):
                yield entry

    def _iter_analyses(self, word: str) -> Iterator[Analysis]:
        n = len(word)
        for entry in self.dictionary.lookup(word):
            yield Analysis(word, entry)
        # suffix only
        for k in range(n + 1):
            for rule in self._sfx.get(word[n - k:], ()):
                base = word[:n - k] + rule.strip
                if base and rule.matches(base):
                    for entry in self._bases(base, rule.flag):
                        yield Analysis(word, entry, suffix_rule=rule)
        # prefix only
        for k in range(n + 1):
            for rule in self._pfx.get(word[:k], ()):
                base = rule.strip + word[k:]
                if base and rule.matches(base):
                    for entry in self._bases(base, rule.flag):
                        yield Analysis(word, entry, prefix_rule=rule)
        # prefix + suffix
        for kp in range(n + 1):
            prules = [r for r in self._pfx.get(word[:kp], ()) if r.cross_product]
            if not prules:
                continue
            for ks in range(n - kp + 1):
                srules = [r for r in self._sfx.get(word[n - ks:], ()) if r.cross_product]
                if not srules:
                    continue
                middle = word[kp:n - ks]
                for p in prules:
                    for s in srules:
                        base = p.strip + middle + s.strip
                        if base and p.matches(base) and s.matches(base):
                            for entry in self._bases(base, p.flag, s.flag):
                                yield Analysis(word, entry, prefix_rule=p, suffix_rule=s)

    def analyze(self, word: str) -> list[Analysis]:
        """All decompositions of ``word``, in a fixed order: bare entry,
        suffix only, prefix only, prefix and suffix."""
        word = normalize(word)
        if not word:
            return []
        return list(self._iter_analyses(word))

    def check(self, word: str) -> bool:
        word = normalize(word)
        if not word:
            return False
        return next(self._iter_analyses(word), None) is not None

    def stem(self, word: str) -> list[str]:
        """Stems of the verb analyses of ``word``; nouns etc. give nothing."""
        out: list[str] = []
        for a in self.analyze(word):
            if a.base.tag in VERB_TAGS and a.base.stem and a.base.stem not in out:
                out.append(a.base.stem)
        return out

    # -- generation --------------------------------------------------------

    def _rules_for(self, entry: DicEntry, kind: str) -> list[AffixRule]:
        out = []
        for flag in sorted(entry.flags):
            cls = self.rules.classes.get(flag)
            if cls is None:
                if flag not in self.rules.inert_flags:
                    raise UnresolvedFlag(f"flag {flag!r} of {entry.surface!r} has no affix class")
                continue
            if cls.kind == kind:
                out.extend(cls.rules)
        return out

    def expand(self, entry: DicEntry) -> Iterator[Analysis]:
        """Every (prefix, suffix) application admitted by ``entry``'s flags."""
        base = entry.surface
        sfx = [r for r in self._rules_for(entry, "SFX") if r.applies_to(base)]
        pfx = [r for r in self._rules_for(entry, "PFX") if r.applies_to(base)]
        yield Analysis(base, entry)
        for s in sfx:
            yield Analysis(s.apply(base), entry, suffix_rule=s)
        for p in pfx:
            yield Analysis(p.apply(base), entry, prefix_rule=p)
        for p in pfx:
            if not p.cross_product:
                continue
            for s in sfx:
                if not s.cross_product or len(p.strip) + len(s.strip) > len(base):
                    continue
                yield Analysis(p.apply(s.apply(base)), entry, prefix_rule=p, suffix_rule=s)

    def generate(self, entry: DicEntry) -> set[str]:
        return {a.surface for a in self.expand(entry)}

    def all_forms(self) -> frozenset[str]:
        """Union of ``generate`` over the whole dictionary (cached)."""
        if self._forms is None:
            forms: set[str] = set()
            for entry in self.dictionary:
                forms |= self.generate(entry)
            self._forms = frozenset(forms)
        return self._forms

    # -- suggestion --------------------------------------------------------

    def suggest(self, word: str, max_distance: int = 2, max_results: int = 10,
                enable_splits: bool = False) -> list[Suggestion]:
        """Ranked corrections for a misspelled ``word``; [] if it is correct.

        Candidates are edit sequences over the TRY alphabet up to
        ``max_distance`` deep, REP rewrites, and (opt-in) two-word splits.
        Acceptance is tested against the expanded lexicon, which is the
        same set of words ``check`` accepts.
        """
        word = normalize(word)
        if not word or self.check(word):
            return []
        known = self.all_forms()
        alphabet = self.rules.try_chars
        found: dict[str, int] = {}

        frontier = {word}
        seen = {word}
        for _ in range(max_distance):
            nxt = set()
            for w in frontier:
                nxt |= edits1(w, alphabet)
            nxt -= seen
            seen |= nxt
            for cand in nxt:
                if cand in known:
                    found[cand] = EDIT
            frontier = nxt

        for a, b in self.rules.rep:
            start = word.find(a)
            while a and start >= 0:
                cand = word[:start] + b + word[start + len(a):]
                if cand in known:
                    found[cand] = EDIT
                start = word.find(a, start + 1)

        if enable_splits:
            for i in range(1, len(word)):
                left, right = word[:i], word[i:]
                if left in known and right in known:
                    found.setdefault(f"{left} {right}", SPLIT)

        ranked = sorted(Suggestion(damerau_levenshtein(word, c), prio, c) for c, prio in found.items())
        return ranked[:max_results]
