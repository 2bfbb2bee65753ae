"""Packaged desk-scale resources and the verb paradigm they must cover.

The endoclitic paradigm of the past stem girt is kept as Latin morpheme
rows; the Arabic-script forms are derived through the project
transliteration table, so the Latin originals stay auditable.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from soranispell.baseline import FrequencyList, build_frequency_list
from soranispell.engine import Speller
from soranispell.evaluation import MorphTestCase, SpellTestCase, parse_morph_testset, parse_spell_testset
from soranispell.lexfmt import AffixRuleSet, Dictionary, parse_aff, parse_dic
from soranispell.script import VOWELS, Direction, tokenize, transliterate

DATA_FILES = ("sorani.dic", "sorani.aff", "translit.tsv", "morph_gold.tsv", "spell_gold.tsv",
              "corpus.txt", "latin_words.txt", "wikidata_Q515.json")


def data_file(name: str):
    return resources.files("soranispell").joinpath("data").joinpath(name)


def read_data(name: str) -> str:
    return data_file(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def sample_dictionary() -> Dictionary:
    return parse_dic(read_data("sorani.dic"))


@lru_cache(maxsize=None)
def sample_rules() -> AffixRuleSet:
    return parse_aff(read_data("sorani.aff"))


@lru_cache(maxsize=None)
def sample_speller() -> Speller:
    return Speller(sample_dictionary(), sample_rules())


def spell_gold() -> list[SpellTestCase]:
    return parse_spell_testset(read_data("spell_gold.tsv"))


def morph_gold() -> list[MorphTestCase]:
    return parse_morph_testset(read_data("morph_gold.tsv"))


def corpus_tokens() -> list[str]:
    return tokenize(read_data("corpus.txt"))


def toy_frequency_list(min_freq: int = 10) -> FrequencyList:
    return build_frequency_list(corpus_tokens(), min_freq)


def latin_vocabulary() -> list[str]:
    return [w for w in read_data("latin_words.txt").split() if not w.startswith("#")]


# -- the girt paradigm -----------------------------------------------------

@dataclass(frozen=True)
class ParadigmRow:
    prefixes: tuple[str, ...]
    base: str
    suffixes: tuple[str, ...]
    gloss: str

    @property
    def morphemes(self) -> tuple[str, ...]:
        return self.prefixes + (self.base,) + self.suffixes


GIRT_PARADIGM = (
    ParadigmRow((), "girt", (), "past stem of girtin"),
    ParadigmRow((), "girt", ("im",), "I got."),
    ParadigmRow((), "girt", ("im", "in"), "I got them."),
    ParadigmRow((), "girt", ("im", "in", "e"), "I got them to/with."),
    ParadigmRow((), "girt", ("im", "in", "e", "ewe"), "I got them to/with again."),
    ParadigmRow((), "girt", ("îş", "im", "in", "e", "ewe"), "I got them also to/with again."),
    ParadigmRow(("ne", "îş", "im"), "girt", ("in", "e", "ewe"), "I did not get them also to/with again."),
    ParadigmRow(("ne", "îş", "im", "de"), "girt", ("in", "e", "ewe"),
                "I was not getting them also to/with again."),
    ParadigmRow(("da", "îş", "im", "ne", "de"), "girt", ("in", "e", "ewe"),
                "I was not taking down them also to/with again."),
)

# the plene spelling of the fifth row, with the short vowels written as ی
PARADIGM_PLENE_FORM = "گرتیمینەوە"


def join_latin(morphemes) -> str:
    """Concatenate Latin morphemes; at a vowel-vowel seam the second vowel
    is elided (ne + îş -> neş, e + ewe -> ewe)."""
    out = ""
    for m in morphemes:
        if out and m and out[-1] in VOWELS and m[0] in VOWELS:
            m = m[1:]
        out += m
    return out


def to_arabic(latin: str, bound: bool = False) -> str:
    """Transliterate a Latin word; ``bound`` marks a non-initial chunk,
    which must not get the word-initial hamza seat."""
    if not latin:
        return ""
    if bound:
        return transliterate("b" + latin, Direction.LATIN_TO_ARABIC)[1:]
    return transliterate(latin, Direction.LATIN_TO_ARABIC)


def row_surface(row: ParadigmRow) -> str:
    return to_arabic(join_latin(row.morphemes))


def row_segmentation(row: ParadigmRow) -> tuple[str, str, str]:
    """(prefix block, base, suffix block) in Arabic script."""
    return (to_arabic(join_latin(row.prefixes)), to_arabic(row.base),
            to_arabic(join_latin(row.suffixes), bound=True))


def paradigm_forms() -> list[str]:
    return [row_surface(r) for r in GIRT_PARADIGM]


# examples of the ergative split: (latin, prefix, base, suffix, tag)
ERGATIVITY_EXAMPLES = (
    ("dekewin", "دە", "کەو", "ن", "V"),
    ("degirin", "دە", "گر", "ن", "V"),
    ("kewtin", "", "کەوت", "ن", "I"),
    ("girtyanin", "", "گرت", "یانن", "T"),
)


def example_forms() -> list[str]:
    return [p + b + s for _, p, b, s, _ in ERGATIVITY_EXAMPLES]


def _arabic_morphemes(row: ParadigmRow) -> list[str]:
    return [to_arabic(m, bound=True) if m[0] in VOWELS else to_arabic(m) for m in row.morphemes]


def _reorderings(morphs: list[str]):
    n = len(morphs)
    for i in range(n):
        for j in range(n):
            if i != j:
                moved = morphs[:i] + morphs[i + 1:]
                moved.insert(j, morphs[i])
                yield moved
    yield morphs[::-1]


def expand_paradigm_negatives(speller: Speller | None = None) -> list[str]:
    """Morpheme-order permutations of the paradigm forms that lie outside
    the generated closure, sorted."""
    speller = speller or sample_speller()
    closure = speller.all_forms()
    out = set()
    for row in GIRT_PARADIGM:
        morphs = _arabic_morphemes(row)
        base_at = len(row.prefixes)
        candidates = list(_reorderings(morphs))
        # whole suffix block moved in front, with and without the prefix block
        if row.suffixes:
            pre, base, suf = row_segmentation(row)
            candidates.append(morphs[base_at + 1:] + morphs[:base_at + 1])
            candidates += [[suf, pre, base], [pre, suf, base]]
        for cand in candidates:
            word = "".join(cand)
            if word not in closure:
                out.add(word)
    return sorted(out)
