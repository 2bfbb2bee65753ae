# %% [markdown]
# # Comparing the rule-based checker with a frequency-list baseline
#
# Both systems run over the packaged gold set. The baseline accepts any
# corpus word seen at least ten times and ranks suggestions by
# Levenshtein distance.

# %%
from soranispell import fixtures
from soranispell.baseline import baseline_check, baseline_suggest
from soranispell.evaluation import evaluate_spell, render_report

speller = fixtures.sample_speller()
fl = fixtures.toy_frequency_list()
cases = fixtures.spell_gold()
print(len(cases), "test cases,", len(fl.admitted), "admitted corpus words")

# %%
rule = evaluate_spell(cases, speller.check,
                      lambda w: [s.candidate for s in speller.suggest(w)],
                      "rule-based", "desk")
base = evaluate_spell(cases, lambda w: baseline_check(w, fl),
                      lambda w: [s.candidate for s in baseline_suggest(w, fl)],
                      "baseline", "desk")
print(render_report([base, rule]))

# %% [markdown]
# When a system rejects every correct word, precision and recall have no
# value and the table shows a dash. Percentages for the suggestion ranks
# are computed over the misspelled cases only.

# %%
for s in speller.suggest("مرج")[:5]:
    print(s.distance, s.candidate)

# %%
print(render_report([rule], "json"))
