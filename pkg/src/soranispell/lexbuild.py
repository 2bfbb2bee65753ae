"""Lexicon construction: source merging, annotation checks, label fetching."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Protocol, Sequence

import requests

from soranispell.lexfmt import TAGS, VERB_TAGS, DicEntry, Dictionary, resolve_tag
from soranispell.script import Direction, TransliterationTable, normalize, transliterate

DEFAULT_ENDPOINT = "https://query.wikidata.org/sparql"
ENDPOINT_ENV = "SORANISPELL_SPARQL_ENDPOINT"

# concept ids commonly used to harvest proper names
CONCEPTS = {"Q6256": "country", "Q5": "human", "Q515": "city"}


class BadConceptId(ValueError):
    pass


class EndpointUnreachable(RuntimeError):
    pass


class MalformedResponse(ValueError):
    pass


# -- validation ------------------------------------------------------------

@dataclass(frozen=True)
class TagSchema:
    tags: Mapping[str, str] = field(default_factory=lambda: dict(TAGS))
    verb_tags: frozenset[str] = VERB_TAGS

    def __post_init__(self):
        bad = [t for t in self.tags if len(t) != 1]
        if bad:
            raise ValueError(f"tag letters must be single characters: {bad}")
        if not self.verb_tags <= set(self.tags):
            raise ValueError("verb tags must belong to the schema")

    def __contains__(self, letter: str) -> bool:
        return letter in self.tags


class DiagnosticKind(str, Enum):
    UNKNOWN_TAG = "UnknownTag"
    MISSING_STEM = "MissingStem"
    MALFORMED_COMPOUND = "MalformedCompound"
    UNNORMALIZED = "Unnormalized"


@dataclass(frozen=True)
class Diagnostic:
    kind: DiagnosticKind
    surface: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind.value}\t{self.surface}\t{self.message}"


def validate_entry(entry: DicEntry, schema: TagSchema | None = None) -> list[Diagnostic]:
    """Annotation problems of ``entry``; an empty list means it is valid."""
    schema = schema or TagSchema()
    out = []

    def report(kind: DiagnosticKind, msg: str) -> None:
        out.append(Diagnostic(kind, entry.surface, msg))

    letter = resolve_tag(entry.pos, entry.infl_class) if entry.pos is not None else None
    if entry.pos is not None and (letter is None or letter not in schema):
        report(DiagnosticKind.UNKNOWN_TAG, f"po:{entry.pos} is not in the tag set")
    if letter in schema.verb_tags and not entry.stem:
        report(DiagnosticKind.MISSING_STEM, f"verb entry (tag {letter}) has no st: field")
    if entry.compound_parts is not None:
        if len(entry.compound_parts) < 2 or not all(entry.compound_parts):
            report(DiagnosticKind.MALFORMED_COMPOUND, "compound has an empty part")
        elif "".join(entry.compound_parts) != entry.surface:
            report(DiagnosticKind.MALFORMED_COMPOUND, "compound parts do not spell the surface")
    texts = [entry.surface] + ([entry.stem] if entry.stem else []) + list(entry.compound_parts or ())
    if any(t != normalize(t) for t in texts):
        report(DiagnosticKind.UNNORMALIZED, "surface, stem or parts are not normalized")
    return out


def validate_dictionary(dictionary: Dictionary, schema: TagSchema | None = None) -> list[Diagnostic]:
    return [d for e in dictionary for d in validate_entry(e, schema)]


# -- knowledge-base labels -------------------------------------------------

_CONCEPT_RE = re.compile(r"Q[1-9][0-9]*")

_QUERY = """SELECT ?itemLabel
{{
  ?item wdt:P31 wd:{concept} .
  ?article schema:about ?item .
  ?article schema:isPartOf <https://ckb.wikipedia.org/> .
  SERVICE wikibase:label {{ bd:serviceParam wikibase:language "ckb" . }}
  FILTER(EXISTS {{
    ?item rdfs:label ?lang_label.
    FILTER(LANG(?lang_label) = "ckb")
  }})
}} LIMIT {limit}
"""


def build_sparql_query(concept_id: str, limit: int = 100) -> str:
    """Labels of instances of ``concept_id`` that have a Sorani label and a
    Sorani encyclopedia article."""
    if not isinstance(concept_id, str) or not _CONCEPT_RE.fullmatch(concept_id):
        raise BadConceptId(f"not a knowledge-base item id: {concept_id!r}")
    if limit < 1:
        raise ValueError("limit must be >= 1")
    return _QUERY.format(concept=concept_id, limit=limit)


class QueryClient(Protocol):
    def __call__(self, endpoint: str, query: str) -> dict: ...


def http_client(endpoint: str, query: str, timeout: float = 60.0) -> dict:
    """Run ``query`` with an HTTP GET and return the decoded JSON result."""
    try:
        resp = requests.get(
            endpoint,
            params={"query": query, "format": "json"},
            headers={"Accept": "application/sparql-results+json",
                     "User-Agent": "soranispell lexicon builder"},
            timeout=timeout,
        )
        resp.raise_for_status()
    except requests.RequestException as exc:
        raise EndpointUnreachable(f"{endpoint}: {exc}") from exc
    try:
        return resp.json()
    except ValueError as exc:
        raise MalformedResponse(f"response is not JSON: {exc}") from exc


@dataclass
class RecordedClient:
    """Replays stored result documents; keys are concept ids or queries."""

    responses: dict[str, dict]
    calls: list[str] = field(default_factory=list)

    @classmethod
    def from_file(cls, path: str | Path, key: str) -> "RecordedClient":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except ValueError as exc:
            raise MalformedResponse(f"{path}: {exc}") from exc
        return cls({key: doc})

    def __call__(self, endpoint: str, query: str) -> dict:
        self.calls.append(query)
        if query in self.responses:
            return self.responses[query]
        for key, doc in self.responses.items():
            if _CONCEPT_RE.fullmatch(key) and f"wd:{key} " in query:
                return doc
        raise EndpointUnreachable(f"no recorded response for this query at {endpoint}")


def extract_labels(doc: object, column: str | None = None) -> list[str]:
    """Normalized values of ``column`` (default: the first variable)."""
    try:
        variables = doc["head"]["vars"]
        bindings = doc["results"]["bindings"]
        column = column or variables[0]
        if not isinstance(bindings, list):
            raise TypeError("bindings is not a list")
        labels = []
        for row in bindings:
            if column in row:
                labels.append(normalize(row[column]["value"]))
        return labels
    except (KeyError, IndexError, TypeError) as exc:
        raise MalformedResponse(f"unexpected result document: {exc!r}") from exc


def fetch_labels(endpoint: str, query: str, client: QueryClient | None = None) -> list[str]:
    client = client or http_client
    return extract_labels(client(endpoint, query))


# -- merging ---------------------------------------------------------------

@dataclass(frozen=True)
class Source:
    """A pre-extracted word list and the annotation its words receive."""

    words: Sequence[str]
    script: str = "arabic"
    flags: str = ""
    pos: str | None = None
    infl_class: str | None = None
    stems: Mapping[str, str] = field(default_factory=dict)
    needs_review: bool = True

    def __post_init__(self):
        if self.script not in ("arabic", "latin"):
            raise ValueError(f"script must be 'arabic' or 'latin', not {self.script!r}")


def _to_arabic(text: str, script: str, table: TransliterationTable | None) -> str:
    if script == "latin":
        return transliterate(text, Direction.LATIN_TO_ARABIC, table)
    return text


def _entry_from(word: str, src: Source, table: TransliterationTable | None) -> DicEntry:
    word = word.strip()
    stem = src.stems.get(word)
    parts = None
    if "-" in word:
        parts = tuple(normalize(_to_arabic(p, src.script, table)) for p in word.split("-"))
        surface = "".join(parts)
    else:
        surface = normalize(_to_arabic(word, src.script, table))
    if stem is not None:
        stem = normalize(_to_arabic(stem, src.script, table))
    return DicEntry(surface, frozenset(src.flags), src.pos, src.infl_class, stem, parts,
                    needs_review=src.needs_review)


def merge_sources(sources: Iterable[Source | Dictionary],
                  table: TransliterationTable | None = None) -> Dictionary:
    """Merge word lists (and existing dictionaries) into one sorted draft.

    Entries equal in everything but the review mark collapse into one, which
    keeps the mark only if every copy has it.  The same surface with
    different annotations stays as separate homographs.
    """
    merged: dict[tuple, DicEntry] = {}
    for src in sources:
        if isinstance(src, Dictionary):
            entries = list(src)
        else:
            entries = [_entry_from(w, src, table) for w in src.words if w.strip()]
        for e in entries:
            key = e.sort_key()[:-1]
            old = merged.get(key)
            if old is not None and old.needs_review and not e.needs_review:
                merged[key] = e
            elif old is None:
                merged[key] = e
    return Dictionary(sorted(merged.values(), key=DicEntry.sort_key))
