import json
import subprocess
import sys

import pytest

from soranispell import fixtures
from soranispell.cli import execute
from soranispell.lexfmt import parse_dic


def data(name):
    return str(fixtures.data_file(name))


def test_check_paradigm_form():
    r = execute(["check", "گرتیمینەوە"])
    assert r.code == 0 and r.out == "گرتیمینەوە\tcorrect\n" and r.err == ""


def test_check_reports_errors_and_reads_stdin():
    r = execute(["check"], stdin_text="شار مرج")
    assert r.code == 1 and r.out.splitlines() == ["شار\tcorrect", "مرج\tincorrect"]


def test_missing_dictionary_is_resource_error(tmp_path):
    r = execute(["check", "--dic", str(tmp_path / "none.dic"), "شار"])
    assert r.code == 3 and "none.dic" in r.err and r.out == ""


def test_corrupt_dictionary_is_resource_error(tmp_path):
    (tmp_path / "x.dic").write_text("2\nشار/N\n", encoding="utf-8")
    r = execute(["check", "--dic", str(tmp_path / "x.dic"), "شار"])
    assert r.code == 3 and "line 1" in r.err


def test_unresolved_flag_is_resource_error(tmp_path):
    (tmp_path / "x.dic").write_text("1\nشار/Q\n", encoding="utf-8")
    assert execute(["check", "--dic", str(tmp_path / "x.dic"), "شار"]).code == 3


def test_usage_errors():
    assert execute([]).code == 2
    assert execute(["frobnicate"]).code == 2
    assert execute(["suggest", "x", "--max-results", "0"]).code == 2
    assert execute(["eval", "spell", data("spell_gold.tsv"), "--list", "x.tsv"]).code == 2
    r = execute(["lexicon", "wikidata-query", "Q5", "--endpoint", "http://x", "--recorded", "f.json"])
    assert r.code == 2


def test_suggest_and_analyze():
    r = execute(["suggest", "مرج"])
    assert r.code == 1 and r.out.splitlines()[0] == "مەرج\t1"
    assert execute(["suggest", "مەرج"]).code == 0
    r = execute(["analyze", "ده‌که‌ون"])
    assert r.code == 0 and r.out.split("\t")[:3] == ["دە+کەو+ن", "V", "کەو"]
    assert execute(["analyze", "zz"]).code == 1


def test_stem_and_generate():
    assert execute(["stem", "گرتیمینەوە"]).out == "گرت\n"
    r = execute(["generate", "گرت"])
    assert r.code == 0 and set(fixtures.paradigm_forms()) <= set(r.out.split())
    assert execute(["generate", "خوێن", "--pos", "N"]).out.split()[0] == "خوێن"
    assert execute(["generate", "nope"]).code == 1


def test_baseline_commands(tmp_path):
    out = tmp_path / "freq.tsv"
    r = execute(["baseline", "build", data("corpus.txt"), "-o", str(out)])
    assert r.code == 0 and out.is_file()
    assert execute(["baseline", "check", "--list", str(out), "شار"]).code == 0
    assert execute(["baseline", "check", "--list", str(out), "قف"]).code == 1
    r = execute(["baseline", "suggest", "--list", str(out), "-k", "2", "شاار"])
    assert r.out.splitlines()[0] == "شار\t1" and len(r.out.splitlines()) == 2
    assert execute(["baseline", "build", str(tmp_path / "nope.txt"), "-o", str(out)]).code == 3


def test_eval_spell_synthetic(tmp_path):
    ts = tmp_path / "syn.tsv"
    ts.write_text("شار\tcorrect\t\nشاار\tcorrect\t\nمرج\tincorrect\tمەرج\n"
                  "شارناو\tincorrect_spaced\tشار ناو\n", encoding="utf-8")
    r = execute(["eval", "spell", str(ts), "--format", "tsv"])
    row = r.out.splitlines()[1].split("\t")
    # شار TP, شاار FP, مرج TN with a rank-1 hit, شارناو TN with no hit
    assert row == ["engine", "syn", "1", "1", "2", "0", "75.00", "0.50", "1.00", "0.67",
                   "50.00", "50.00", "50.00"]
    r = execute(["eval", "spell", str(ts), "--format", "tsv", "--drop-spaced"])
    assert r.out.splitlines()[1].split("\t")[2:6] == ["1", "1", "1", "0"]
    r = execute(["eval", "spell", str(ts), "--format", "tsv", "--splits"])
    assert r.out.splitlines()[1].split("\t")[-1] == "100.00"


def test_eval_spell_json_and_baseline():
    r = execute(["eval", "spell", data("spell_gold.tsv"), "--system", "baseline", "--format", "json"])
    (rep,) = json.loads(r.out)
    assert rep["system"] == "baseline" and sum(rep["counts"].values()) == 13


def test_eval_morph_and_coverage(tmp_path):
    r = execute(["eval", "morph", data("morph_gold.tsv"), "--format", "tsv"])
    rows = [l.split("\t") for l in r.out.splitlines()[1:]]
    assert [(x[2], x[5]) for x in rows] == [("segmentation", "100.00"), ("pos", "100.00"),
                                            ("stem", "100.00")]
    wl = tmp_path / "words.txt"
    wl.write_text("\n".join(fixtures.paradigm_forms() + ["ژژقق"]), encoding="utf-8")
    assert execute(["eval", "coverage", str(wl)]).out == "9/10\t90.00\n"


def test_lexicon_commands(tmp_path):
    assert execute(["lexicon", "validate"]).code == 0
    bad = tmp_path / "bad.dic"
    bad.write_text("1\nشار po:Q\n", encoding="utf-8")
    r = execute(["lexicon", "validate", "--dic", str(bad)])
    assert r.code == 1 and r.out.startswith("UnknownTag")
    words = tmp_path / "latin.txt"
    words.write_text("girtin kewtin\n", encoding="utf-8")
    r = execute(["lexicon", "merge", str(words), "--script", "latin", "--flags", "N", "--pos", "noun"])
    assert {e.surface for e in parse_dic(r.out)} == {"گرتن", "کەوتن"}


def test_wikidata_query_commands(monkeypatch):
    r = execute(["lexicon", "wikidata-query", "Q515"])
    assert r.code == 0 and "wd:Q515" in r.out
    assert execute(["lexicon", "wikidata-query", "515"]).code == 2
    r = execute(["lexicon", "wikidata-query", "Q515", "--recorded", data("wikidata_Q515.json"), "--as-dic"])
    d = parse_dic(r.out)
    assert len(d) == 3 and all(e.needs_review and e.tag == "Z" for e in d)
    monkeypatch.setenv("SORANISPELL_SPARQL_ENDPOINT", "http://127.0.0.1:9/sparql")
    r = execute(["lexicon", "wikidata-query", "Q515", "--fetch"])
    assert r.code == 4 and "127.0.0.1:9" in r.err


def test_transliterate():
    assert execute(["transliterate", "--direction", "latin-arabic", "girtin"]).out == "گرتن\n"
    r = execute(["transliterate", "--direction", "arabic-latin"], stdin_text="که‌وتن")
    assert r.out == "kewtin\n"


def test_deterministic():
    args = ["eval", "spell", data("spell_gold.tsv"), "--format", "tsv"]
    assert execute(args).out == execute(args).out


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "soranispell", "check", "گرتم"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "گرتم\tcorrect\n"
