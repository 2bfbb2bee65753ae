# %% [markdown]
# # Generating and analysing a verb paradigm
#
# The past stem گرت (girt) takes person markers, a preverb and the
# postverbal particles inside one orthographic word. This walk-through
# loads the packaged desk lexicon, expands the paradigm and looks at
# what the analyzer returns for each form.

# %%
from soranispell import fixtures
from soranispell.script import Direction, transliterate

speller = fixtures.sample_speller()
print(len(speller.dictionary), "entries,", sum(1 for _ in speller.rules.rules()), "affix rules")

# %% [markdown]
# Each paradigm row is stored as Latin morphemes; the Arabic-script form
# comes from the transliteration table.

# %%
for row, form in zip(fixtures.GIRT_PARADIGM, fixtures.paradigm_forms()):
    latin = "-".join(row.morphemes)
    print(f"{form:>16}  {latin:<28} {speller.check(form)}")

# %% [markdown]
# Analyses: the prefix block, the base entry and the suffix block.

# %%
for form in fixtures.paradigm_forms()[-3:]:
    for a in speller.analyze(form):
        print(form, "=", "+".join(a.prefixes), a.base.surface, "+".join(a.suffixes), a.base.tag)

# %% [markdown]
# Stems are reported only for verbal readings.

# %%
print(speller.stem(fixtures.PARADIGM_PLENE_FORM))
print(speller.stem("کتێبەکان"))

# %% [markdown]
# Reorderings of the same morphemes are outside the closure.

# %%
negatives = fixtures.expand_paradigm_negatives(speller)
print(len(negatives), "negatives, any accepted:", any(speller.check(w) for w in negatives))
print(negatives[:5])

# %%
print(transliterate("nemdegirt", Direction.LATIN_TO_ARABIC))
print(transliterate("نەمدەگرت", Direction.ARABIC_TO_LATIN))
