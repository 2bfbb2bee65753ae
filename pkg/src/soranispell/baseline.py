"""Frequency-list spell checker with Levenshtein-ranked suggestions."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from soranispell.engine import Suggestion
from soranispell.script import normalize, tokenize

DEFAULT_MIN_FREQ = 10


@dataclass(frozen=True)
class FrequencyList:
    counts: dict[str, int]
    min_freq: int = DEFAULT_MIN_FREQ
    admitted: frozenset[str] = field(init=False)

    def __post_init__(self):
        if self.min_freq < 1:
            raise ValueError("min_freq must be >= 1")
        object.__setattr__(self, "admitted",
                           frozenset(w for w, c in self.counts.items() if c >= self.min_freq))

    def __len__(self) -> int:
        return len(self.counts)

    def dumps(self) -> str:
        lines = [f"# min_freq={self.min_freq}"]
        lines += [f"{w}\t{self.counts[w]}" for w in sorted(self.counts)]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, min_freq: int | None = None) -> "FrequencyList":
        counts: dict[str, int] = {}
        stored = DEFAULT_MIN_FREQ
        for lineno, line in enumerate(text.splitlines(), 1):
            if line.startswith("# min_freq="):
                stored = int(line.split("=", 1)[1])
                continue
            if not line.strip() or line.startswith("#"):
                continue
            try:
                word, count = line.split("\t")
                counts[normalize(word)] = counts.get(normalize(word), 0) + int(count)
            except ValueError:
                raise ValueError(f"line {lineno}: expected 'word<TAB>count', got {line!r}") from None
        return cls(counts, stored if min_freq is None else min_freq)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path, min_freq: int | None = None) -> "FrequencyList":
        return cls.loads(Path(path).read_text(encoding="utf-8"), min_freq)


def build_frequency_list(tokens: Iterable[str], min_freq: int = DEFAULT_MIN_FREQ) -> FrequencyList:
    counts = Counter(t for t in (normalize(tok) for tok in tokens) if t)
    return FrequencyList(dict(sorted(counts.items())), min_freq)


def corpus_tokens(paths: Iterable[str | Path]) -> Iterable[str]:
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                yield from tokenize(line)


def levenshtein(a: str, b: str) -> int:
    """Insertions, deletions and substitutions over code points."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def baseline_check(word: str, fl: FrequencyList) -> bool:
    return normalize(word) in fl.admitted


def baseline_suggest(word: str, fl: FrequencyList, k: int = 10) -> list[Suggestion]:
    """The ``k`` admitted words closest to ``word``.

    Ties on distance go to the more frequent word, then to the smaller
    string.  Words whose length differs from the query by more than the
    current k-th best distance cannot enter the top k and are skipped.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    word = normalize(word)
    if word in fl.admitted:
        return []
    scored: list[tuple[int, int, str]] = []
    bound = None
    for cand in sorted(fl.admitted, key=lambda w: (abs(len(w) - len(word)), w)):
        if bound is not None and abs(len(cand) - len(word)) > bound:
            break
        scored.append((levenshtein(word, cand), -fl.counts[cand], cand))
        if len(scored) >= k:
            scored.sort()
            del scored[k:]
            bound = scored[-1][0]
    scored.sort()
    return [Suggestion(d, 0, w) for d, _, w in scored[:k]]
