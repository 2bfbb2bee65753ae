# %% [markdown]
# # Building a draft lexicon from word lists
#
# Word lists in either script are merged into one sorted dictionary.
# New words keep a review mark until someone annotates them. Labels can
# also be harvested from a knowledge-base endpoint; here a recorded
# response stands in for the network.

# %%
from soranispell import fixtures
from soranispell.lexbuild import (RecordedClient, Source, build_sparql_query, fetch_labels,
                                  merge_sources, validate_dictionary)
from soranispell.lexfmt import serialize_dic

query = build_sparql_query("Q515", limit=10)
print(query)

# %%
client = RecordedClient.from_file(fixtures.data_file("wikidata_Q515.json"), "Q515")
cities = fetch_labels("https://example.invalid/sparql", query, client)
print(cities)

# %%
latin = Source(fixtures.latin_vocabulary()[:6], script="latin", flags="N", pos="noun")
names = Source(cities, flags="N", pos="proper_noun")
draft = merge_sources([fixtures.sample_dictionary(), latin, names])
print(len(draft), "entries,", sum(e.needs_review for e in draft), "awaiting review")

# %% [markdown]
# Validation lists annotation problems without stopping at the first.
# The city names were tagged `proper_noun`, which the tag set spells
# `proper_name`, so each of them is flagged.

# %%
for d in validate_dictionary(draft):
    print(d)

# %%
print(serialize_dic(draft)[:400])
