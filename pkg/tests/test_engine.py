import random

import pytest
from hypothesis import given, settings, strategies as st

from soranispell import fixtures
from soranispell.engine import (EDIT, SPLIT, Analysis, Speller, Suggestion, UnresolvedFlag,
                                damerau_levenshtein, edits1)
from soranispell.lexfmt import AffixRule, DicEntry, Dictionary, parse_aff, parse_dic

from oracles import closure_oracle, edit_distance_bfs


def test_check_paradigm_rows(speller):
    assert speller.check("گرتم")
    assert speller.check("گرتیمینەوە")
    assert speller.check("گرتیمینه‌وه")  # legacy heh + joiner spelling
    assert not speller.check("")
    assert not speller.check("قف")


def test_check_matches_closure(speller):
    closure = speller.all_forms()
    rng = random.Random(3)
    letters = sorted({c for w in closure for c in w})
    probes = list(closure) + ["".join(rng.choice(letters) for _ in range(rng.randint(1, 7)))
                              for _ in range(3000)]
    for w in probes:
        assert speller.check(w) == (w in closure), w
        assert speller.check(w) == bool(speller.analyze(w))


def test_suffix_block_as_prefix_rejected(speller):
    assert not speller.check("منەوەگرت")
    assert not speller.check("نەوەگرتیشم")


@pytest.mark.parametrize("word, seg, tag", [
    ("ده‌که‌ون", ("دە", "کەو", "ن"), "V"),
    ("که‌وتن", ("", "کەوت", "ن"), "I"),
    ("گرتیانن", ("", "گرت", "یانن"), "T"),
    ("دەگرن", ("دە", "گر", "ن"), "V"),
])
def test_analyze_examples(speller, word, seg, tag):
    found = [("".join(a.prefixes), a.base.surface, "".join(a.suffixes), a.pos_tag)
             for a in speller.analyze(word)]
    assert seg + (tag,) in found


def test_analysis_order(speller):
    kinds = [(a.prefix_rule is not None, a.suffix_rule is not None) for a in speller.analyze("کەوتن")]
    assert kinds[0] == (False, False)  # the infinitive entry itself
    assert kinds == sorted(kinds, key=lambda k: {(False, False): 0, (False, True): 1,
                                                  (True, False): 2, (True, True): 3}[k])


def test_analysis_carries_fields(speller):
    a = next(a for a in speller.analyze("دەکەون") if a.prefixes)
    assert a.stem == "کەو" and "is:PROG" in a.morph_fields and "is:3PL" in a.morph_fields
    assert str(a).startswith("دە+کەو+ن po:V st:کەو")


def test_analysis_cross_product_invariant():
    p = AffixRule("PFX", "a", "", "x", (), (), cross_product=False)
    s = AffixRule("SFX", "b", "", "y", (), (), cross_product=True)
    with pytest.raises(ValueError):
        Analysis("xzy", DicEntry("z", frozenset("ab")), p, s)


def test_cross_product_respected():
    d = parse_dic("1\nکەو/Sp\n")
    r = parse_aff("SFX S Y 1\nSFX S 0 ن .\nPFX p N 1\nPFX p 0 دە .\n")
    sp = Speller(d, r)
    assert sp.check("کەون") and sp.check("دەکەو") and not sp.check("دەکەون")
    assert sp.generate(d.entries[0]) == {"کەو", "کەون", "دەکەو"}


def test_stem(speller):
    assert speller.stem("گرتیمینەوە") == ["گرت"]
    assert speller.stem("ئاخیوەکە") == []
    assert speller.stem("شارەکان") == []
    assert speller.stem("zzz") == []
    assert speller.stem("خوێنم") == ["خوێن"]  # the noun homograph gives no stem


def test_generate_paradigm(speller, dictionary):
    girt = next(e for e in dictionary.lookup("گرت") if e.tag == "T")
    forms = speller.generate(girt)
    assert set(fixtures.paradigm_forms()) <= forms
    assert fixtures.PARADIGM_PLENE_FORM in forms


def test_generate_matches_brute_force(speller, dictionary):
    aff_text = fixtures.read_data("sorani.aff")
    for entry in dictionary:
        assert speller.generate(entry) == closure_oracle(entry.surface, entry.flags, aff_text), entry


def test_generate_empty_flags_and_unresolved(rules):
    sp = Speller(Dictionary(), rules)
    assert sp.generate(DicEntry("شار")) == {"شار"}
    with pytest.raises(UnresolvedFlag):
        sp.generate(DicEntry("شار", frozenset("Q")))
    assert sp.generate(DicEntry("شار", frozenset("X"))) == {"شار"}  # inert


def test_duality(speller, dictionary):
    for entry in dictionary:
        for a in speller.expand(entry):
            assert a.reconstruct() == a.surface
            assert any(b.base == entry for b in speller.analyze(a.surface))
    for w in speller.all_forms():
        for a in speller.analyze(w):
            assert a.reconstruct() == w


# -- suggestions -----------------------------------------------------------

def test_suggest_examples(speller):
    sugg = speller.suggest("مرج")
    assert "مەرج" in [s.candidate for s in sugg]
    assert sugg[0] == Suggestion(1, EDIT, "مەرج")
    assert speller.suggest("مەرج") == []
    near = {s.candidate: s.distance for s in speller.suggest("دهتواین")}
    assert near.get("دەتوانین") == 1


def test_suggest_rep_pairs(speller):
    # ێ/ی confusion is covered by a REP pair
    assert "کتێب" in [s.candidate for s in speller.suggest("کتیب")]


def test_suggest_splits(speller):
    assert speller.suggest("شارناو") == [] or all(" " not in s.candidate for s in speller.suggest("شارناو"))
    with_splits = speller.suggest("شارناو", enable_splits=True)
    split = [s for s in with_splits if s.candidate == "شار ناو"]
    assert split and split[0].priority == SPLIT


@settings(max_examples=60)
@given(st.text(alphabet="مەرجشانوکتێبگ", min_size=1, max_size=6))
def test_suggest_invariants(word):
    sp = fixtures.sample_speller()
    sugg = sp.suggest(word, max_results=10)
    keys = [s.rank_key for s in sugg]
    assert keys == sorted(keys) and len(set(s.candidate for s in sugg)) == len(sugg)
    assert len(sugg) <= 10
    for s in sugg:
        assert sp.check(s.candidate)
        assert s.distance == damerau_levenshtein(word, s.candidate)
    assert sugg == sp.suggest(word, max_results=10)


def test_suggest_max_results(speller):
    assert len(speller.suggest("مرج", max_results=3)) == 3
    assert speller.suggest("مرج", max_distance=0) == []


@settings(max_examples=300)
@given(st.text(alphabet="abc", max_size=4), st.text(alphabet="abc", max_size=4))
def test_damerau_levenshtein_vs_search(a, b):
    assert damerau_levenshtein(a, b) == edit_distance_bfs(a, b)


def test_damerau_levenshtein_cases():
    assert damerau_levenshtein("ab", "ba") == 1
    assert damerau_levenshtein("ca", "abc") == 2  # unrestricted variant
    assert damerau_levenshtein("", "abc") == 3


def test_edits1():
    out = edits1("ab", "xy")
    assert "ba" in out and "a" in out and "xab" in out and "ay" in out and "ab" not in out
