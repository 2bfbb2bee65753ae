import pytest
from hypothesis import given, settings

from soranispell import fixtures
from soranispell.lexfmt import (ANY, AffixClass, AffixRule, AffixRuleSet, BadCondition, BadField,
                                CharClass, ClassCountMismatch, CountMismatch, DicEntry, Dictionary,
                                MalformedHeader, MixedKindInClass, UnknownDirective, load_aff, load_dic,
                                parse_aff, parse_condition, parse_dic, parse_dic_line, resolve_tag,
                                serialize_aff, serialize_dic)

from strategies import affix_rule_sets, dictionaries


# -- dictionary ------------------------------------------------------------

def test_sample_entry_noun():
    e = parse_dic_line("ئاخيو/N po:noun st:ئاخ")
    assert (e.surface, e.flags, e.pos, e.stem) == ("ئاخیو", frozenset("N"), "noun", "ئاخ")
    assert e.tag == "N"


def test_sample_entry_infinitive():
    e = parse_dic_line("ئاخيندران/XN po:verb is:infinitive_intransitive_passive st:ئاخ")
    assert e.flags == {"X", "N"}
    assert e.infl_class == "infinitive_intransitive_passive"
    assert e.tag == "X" and e.is_verb


@pytest.mark.parametrize("pos, cls, tag", [
    ("verb", "past_stem_transitive_active", "T"),
    ("verb", "past_stem_intransitive_passive", "I"),
    ("verb", "present_stem_transitive_active", "V"),
    ("verb", "infinitive_transitive_active", "X"),
    ("noun", None, "N"), ("proper_name", None, "Z"), ("E", None, "E"), ("nonsense", None, None),
])
def test_resolve_tag(pos, cls, tag):
    assert resolve_tag(pos, cls) == tag


def test_compound_and_unknown_fields():
    e = parse_dic_line("دەست-نووس/N po:noun gl:manuscript  # needs_review")
    assert e.surface == "دەستنووس" and e.compound_parts == ("دەست", "نووس")
    assert e.extra == (("gl", "manuscript"),) and e.needs_review
    assert parse_dic_line(e.to_line()) == e


def test_count_mismatch():
    with pytest.raises(CountMismatch) as exc:
        parse_dic("3\nشار/N\nناو/N\n")
    assert exc.value.lineno == 1


@pytest.mark.parametrize("text, error, lineno", [
    ("x\nشار\n", MalformedHeader, 1),
    ("# c\n\nthree\n", MalformedHeader, 3),
    ("2\nشار/N\nناو/N bogus\n", BadField, 3),
    ("1\nشار po:noun po:noun\n", BadField, 2),
])
def test_dic_errors(text, error, lineno):
    with pytest.raises(error) as exc:
        parse_dic(text)
    assert exc.value.lineno == lineno


def test_homographs_serialized_separately(dictionary):
    hits = dictionary.lookup("خوێن")
    assert len(hits) == 2 and {e.tag for e in hits} == {"V", "N"}
    lines = [l for l in serialize_dic(dictionary).splitlines() if l.startswith("خوێن")]
    assert len(lines) == 2


def test_empty_dictionary():
    assert serialize_dic(Dictionary()) == "0\n"
    assert parse_dic("0\n") == Dictionary()


def test_lookup_is_exact(dictionary):
    assert dictionary.lookup("شار") and not dictionary.lookup("شا")


def test_sample_dic_round_trip(dictionary):
    text = serialize_dic(dictionary)
    again = parse_dic(text)
    assert again == dictionary
    assert serialize_dic(again) == text


@settings(max_examples=200)
@given(dictionaries)
def test_random_dic_round_trip(d):
    assert parse_dic(serialize_dic(d)) == d


def test_serialization_is_sorted():
    d = Dictionary([DicEntry("ناو", frozenset("N")), DicEntry("ئاو", frozenset("NA"))])
    assert serialize_dic(d).splitlines()[1:] == ["ئاو/AN", "ناو/N"]


# -- affix file ------------------------------------------------------------

def test_condition_with_class():
    rs = parse_aff("SFX N Y 1\nSFX N 0 ەکە [^اەۆێی] is:DEF\n")
    rule = next(rs.rules())
    assert rule.strip == "" and rule.append == "ەکە"
    assert rule.condition == (CharClass(frozenset("اەۆێی"), negated=True),)
    assert rule.matches("شار") and not rule.matches("برا")


def test_condition_parsing():
    assert parse_condition(".") == ()
    assert parse_condition("a.[bc]") == ("a", ANY, CharClass(frozenset("bc")))
    for bad in ("[ab", "ab]", "[]"):
        with pytest.raises(BadCondition):
            parse_condition(bad)


def test_alternation_is_a_separate_rule():
    rs = parse_aff("SFX V Y 2\nSFX V 0 رەوە .\nSFX V 0 ەوە .\n")
    appends = [r.append for r in rs.rules()]
    assert appends == ["رەوە", "ەوە"] and {r.flag for r in rs.rules()} == {"V"}
    # legacy heh spelling of the same suffixes
    legacy = parse_aff("SFX V Y 2\nSFX V 0 رهوه .\nSFX V 0 هوه .\n")
    assert [r.append for r in legacy.rules()] == appends


@pytest.mark.parametrize("text, error, lineno", [
    ("SFX N Y 2\nSFX N 0 ی .\n", ClassCountMismatch, 1),
    ("SET UTF-8\nFOO bar\n", UnknownDirective, 2),
    ("SFX N Y 1\nSFX N 0 ی [ab\n", BadCondition, 2),
    ("SFX N Y 2\nSFX N 0 ی .\nPFX N 0 ی .\n", MixedKindInClass, 3),
    ("SFX N Y 1\nSFX N 0 ی .\nSFX N 0 م .\n", ClassCountMismatch, 3),
    ("REP 2\nREP a b\n", ClassCountMismatch, 1),
    ("SFX N Y 1\nSFX N 0 ی . junk\n", BadField, 2),
])
def test_aff_errors(text, error, lineno):
    with pytest.raises(error) as exc:
        parse_aff(text)
    assert exc.value.lineno == lineno


def test_large_class_count():
    rules = tuple(AffixRule("SFX", "N", "", "ی" * (i % 5 + 1), ("ب",) * (i // 5 % 3)) for i in range(913))
    rs = AffixRuleSet({"N": AffixClass("SFX", "N", True, rules)})
    text = serialize_aff(rs)
    assert "SFX N Y 913" in text.splitlines()
    assert parse_aff(text) == rs


def test_empty_rule_set():
    assert serialize_aff(AffixRuleSet()) == "SET UTF-8\n"
    assert parse_aff("SET UTF-8\n") == AffixRuleSet()


def test_sample_aff_round_trip(rules):
    text = serialize_aff(rules)
    assert parse_aff(text) == rules
    assert serialize_aff(parse_aff(text)) == text
    assert rules.try_chars and rules.rep and rules.inert_flags == {"X"}


@settings(max_examples=200)
@given(affix_rule_sets())
def test_random_aff_round_trip(rs):
    assert parse_aff(serialize_aff(rs)) == rs


def test_flags_resolve(dictionary, rules):
    assert rules.unresolved_flags(dictionary) == []
    stray = Dictionary([DicEntry("شار", frozenset("NQ"))])
    assert rules.unresolved_flags(stray) == [(stray.entries[0], "Q")]


def test_rule_application():
    r = AffixRule("SFX", "N", "ا", "ان", ("ا",))
    assert r.applies_to("برا") and r.apply("برا") == "بران"
    p = AffixRule("PFX", "v", "", "دە", ())
    assert p.apply("کەو") == "دەکەو"


def test_load_from_files(tmp_path, dictionary, rules):
    (tmp_path / "x.dic").write_text(serialize_dic(dictionary), encoding="utf-8")
    (tmp_path / "x.aff").write_text(serialize_aff(rules), encoding="utf-8")
    assert load_dic(tmp_path / "x.dic") == dictionary
    assert load_aff(tmp_path / "x.aff") == rules


def test_load_declared_encoding(tmp_path):
    (tmp_path / "l.aff").write_bytes("SET ISO8859-1\nTRY é\n".encode("latin-1"))
    assert load_aff(tmp_path / "l.aff").try_chars == "é"


@pytest.mark.parametrize("seed", range(40))
def test_seeded_corruption_line_numbers(seed, dictionary, rules):
    from corruption import corrupt_aff, corrupt_dic
    for text, parse, corrupt in ((serialize_dic(dictionary), parse_dic, corrupt_dic),
                                 (fixtures.read_data("sorani.aff"), parse_aff, corrupt_aff)):
        bad, error, lineno = corrupt(text, seed)
        with pytest.raises(error) as exc:
            parse(bad)
        assert exc.value.lineno == lineno
