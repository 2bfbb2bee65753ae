"""Arabic-script Kurdish text handling.

Normalization policy (applied in this order):

1. NFC composition; Arabic presentation forms (U+FB50-U+FDFF, U+FE70-U+FEFF)
   are replaced by their compatibility decomposition.
2. Letter substitutions: Arabic kaf U+0643 -> Kurdish kaf U+06A9, Arabic yeh
   U+064A and alef maksura U+0649 -> Farsi yeh U+06CC, teh marbuta U+0629 ->
   ae U+06D5.
3. Heh U+0647 is resolved into the two Kurdish letters it stands for in
   legacy text: heh + ZWNJ -> ae U+06D5 (the ZWNJ is consumed); a word-initial
   heh, or a medial heh before alef / e-with-v / o (U+0627, U+06CE, U+06C6),
   -> heh doachashmee U+06BE; every other heh -> ae U+06D5.
4. ZWNJ is kept only between a dual-joining letter and a following letter,
   where it actually blocks a join. ZWJ and tatweel are dropped.
5. A final NFC pass.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

ZWNJ = "‌"
ZWJ = "‍"
TATWEEL = "ـ"

HEH = "ه"
AE = "ە"
HEH_DOACHASHMEE = "ھ"

CHAR_POLICY = {
    "ك": "ک",  # kaf
    "ي": "ی",  # yeh
    "ى": "ی",  # alef maksura
    "ة": "ە",  # teh marbuta
}

# heh before one of these is the consonant h, not the vowel e
_H_BEFORE = frozenset("اێۆ")

# letters that join only to the preceding letter
RIGHT_JOINING = frozenset(
    "ءآأؤإاةدذرز"
    "وٱڈڑڒژۄۅۆۇۈ"
    "ۉۊۋۍە"
)

_DROP = frozenset((ZWJ, TATWEEL))


def _is_letter(ch: str | None) -> bool:
    return ch is not None and unicodedata.category(ch)[0] in "LM"


def _is_dual_joining(ch: str | None) -> bool:
    if ch is None or ch in RIGHT_JOINING or not _is_letter(ch):
        return False
    return "ؠ" <= ch <= "ۿ" or "ݐ" <= ch <= "ݿ"


def _expand_presentation_forms(text: str) -> str:
    out = []
    for ch in text:
        if "ﭐ" <= ch <= "﷿" or "ﹰ" <= ch <= "﻿":
            out.append(unicodedata.normalize("NFKC", ch))
        else:
            out.append(ch)
    return "".join(out)


def _resolve_heh(text: str) -> str:
    out = []
    n = len(text)
    i = 0
    while i < n:
        ch = text[i]
        if ch != HEH:
            out.append(ch)
            i += 1
            continue
        nxt = text[i + 1] if i + 1 < n else None
        prev = text[i - 1] if i > 0 else None
        if nxt == ZWNJ:
            out.append(AE)
            i += 2
            continue
        if not _is_letter(nxt):
            out.append(AE)
        elif not _is_letter(prev) or nxt in _H_BEFORE:
            out.append(HEH_DOACHASHMEE)
        else:
            out.append(AE)
        i += 1
    return "".join(out)


def _clean_joiners(text: str) -> str:
    text = re.sub(ZWNJ + "+", ZWNJ, text)
    out = []
    n = len(text)
    for i, ch in enumerate(text):
        if ch in _DROP:
            continue
        if ch == ZWNJ:
            prev = out[-1] if out else None
            nxt = text[i + 1] if i + 1 < n else None
            if not (_is_dual_joining(prev) and _is_letter(nxt) and nxt not in _DROP):
                continue
        out.append(ch)
    return "".join(out)


def normalize(text: str) -> str:
    """Return ``text`` in the canonical form used for every lookup."""
    if not text:
        return ""
    text = unicodedata.normalize("NFC", _expand_presentation_forms(text))
    text = "".join(CHAR_POLICY.get(ch, ch) for ch in text)
    text = _resolve_heh(text)
    text = _clean_joiners(text)
    return unicodedata.normalize("NFC", text)


def normalize_affix(text: str, kind: str) -> str:
    """Normalize a bound morpheme.

    A suffix never starts a word, so a leading heh must not be read as the
    consonant h.  The suffix is normalized behind a placeholder letter.
    """
    if not text or kind != "SFX":
        return normalize(text)
    return normalize("ب" + text)[1:]


# -- tokenization ----------------------------------------------------------

def is_separator(ch: str) -> bool:
    """Whitespace and punctuation separate tokens; ZWNJ does not."""
    if ch.isspace():
        return True
    return unicodedata.category(ch)[0] == "P"


def split_with_separators(text: str) -> list[str]:
    """Split normalized ``text`` into alternating token/separator chunks.

    Joining the chunks gives back ``normalize(text)``.
    """
    text = normalize(text)
    chunks: list[str] = []
    buf = ""
    buf_sep: bool | None = None
    for ch in text:
        sep = is_separator(ch)
        if buf and sep != buf_sep:
            chunks.append(buf)
            buf = ""
        buf += ch
        buf_sep = sep
    if buf:
        chunks.append(buf)
    return chunks


def tokenize(text: str) -> list[str]:
    return [c for c in split_with_separators(text) if not is_separator(c[0])]


# -- transliteration -------------------------------------------------------

class Direction(str, Enum):
    LATIN_TO_ARABIC = "latin-arabic"
    ARABIC_TO_LATIN = "arabic-latin"


VOWELS = frozenset("aeêiîouû")
GLIDES = frozenset("wy")
_CODA_FIRST = frozenset("rřlłnmwysşxfzjḧẍ")
_CODA_SECOND = frozenset("tdkgqcçpb")


@dataclass(frozen=True)
class TransliterationTable:
    """Ordered (latin, arabic) rewrite pairs.

    A pattern starting with ``^`` only matches at the start of a word.  When
    two rules share an Arabic pattern, the first one listed wins for the
    Arabic -> Latin direction.
    """

    pairs: tuple[tuple[str, str], ...]

    @classmethod
    def parse(cls, text: str) -> "TransliterationTable":
        pairs = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2 or not cols[0]:
                raise ValueError(f"line {lineno}: expected 'latin<TAB>arabic', got {raw!r}")
            pairs.append((cols[0], cols[1]))
        return cls(tuple(pairs))

    @classmethod
    def load(cls, path: str | Path) -> "TransliterationTable":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def rules(self, direction: Direction) -> list[tuple[str, str, bool]]:
        """(source, target, anchored) triples, longest source first."""
        seen = set()
        out = []
        for latin, arabic in self.pairs:
            src, dst = (latin, arabic) if direction is Direction.LATIN_TO_ARABIC else (arabic, latin)
            anchored = src.startswith("^")
            if direction is Direction.ARABIC_TO_LATIN:
                anchored = dst.startswith("^")
                dst = dst.lstrip("^")
            else:
                src = src.lstrip("^")
            if not src or (src, anchored) in seen:
                continue
            seen.add((src, anchored))
            out.append((src, dst, anchored))
        # stable sort keeps file order among equal lengths; anchored rules first
        out.sort(key=lambda r: (-len(r[0]), not r[2]))
        return out


def default_table() -> TransliterationTable:
    text = resources.files("soranispell").joinpath("data/translit.tsv").read_text(encoding="utf-8")
    return TransliterationTable.parse(text)


def _rewrite(word: str, rules: list[tuple[str, str, bool]]) -> list[tuple[str, bool]]:
    """Longest-match-first rewrite. Returns (chunk, produced_by_rule) pieces."""
    out = []
    i = 0
    while i < len(word):
        for src, dst, anchored in rules:
            if anchored and i != 0:
                continue
            if word.startswith(src, i):
                out.append((dst, True))
                i += len(src)
                break
        else:
            out.append((word[i], False))
            i += 1
    return out


def _coda_ok(a: str, b: str) -> bool:
    return a in _CODA_FIRST and b in _CODA_SECOND


def _resolve_glides(segs: list[str]) -> list[str]:
    segs = list(segs)
    for k, ch in enumerate(segs):
        if ch not in GLIDES or k == 0:
            continue
        prev = segs[k - 1]
        nxt = segs[k + 1] if k + 1 < len(segs) else None
        if prev in VOWELS or nxt in VOWELS:
            continue
        segs[k] = "u" if ch == "w" else "î"
    return segs


def _epenthesize(segs: list[str]) -> list[str]:
    """Re-insert the unwritten short vowel i by greedy syllabification.

    Syllables are (C)V(C)(C).  A two-consonant coda is only built from a
    sonorant or fricative followed by a stop.  The only complex onset is
    consonant + w.  This is a heuristic: Arabic script does not record the
    vowel, so some spellings have more than one plausible reading.
    """
    out: list[str] = []
    i, n = 0, len(segs)
    while i < n:
        onset: list[str] = []
        if segs[i] not in VOWELS:
            if i + 1 == n:
                out += ["i", segs[i]]
                break
            if i + 2 < n and segs[i + 1] == "w" and segs[i + 2] in VOWELS:
                onset = segs[i:i + 2]
                i += 2
            else:
                onset = [segs[i]]
                i += 1
        written = i < n and segs[i] in VOWELS
        if written:
            nucleus = segs[i]
            i += 1
        else:
            nucleus = "i"
        j = i
        while j < n and segs[j] not in VOWELS:
            j += 1
        run = j - i
        if j == n:
            if run <= 1:
                take = run
            elif run == 2 and _coda_ok(segs[i], segs[i + 1]):
                take = 2
            elif written and segs[i] not in GLIDES:
                take = 0
            else:
                take = 1
        else:
            avail = run - 1
            if avail <= 0:
                take = 0
            elif avail >= 2 and _coda_ok(segs[i], segs[i + 1]):
                take = 2
            else:
                take = 1
        out += onset + [nucleus] + segs[i:i + take]
        i += take
    return out


def _vocalize(chunk: str) -> str:
    if not chunk:
        return chunk
    return "".join(_epenthesize(_resolve_glides(list(chunk))))


_WORD_RE = re.compile(r"(?:[^\W\d_]|[‌'‘])+")


def transliterate(text: str, direction: Direction | str, table: TransliterationTable | None = None) -> str:
    """Rewrite ``text`` word by word; characters without a rule pass through."""
    direction = Direction(direction)
    table = table or default_table()
    rules = table.rules(direction)
    if direction is Direction.ARABIC_TO_LATIN:
        text = normalize(text)
    else:
        text = text.lower()

    def convert(m: re.Match) -> str:
        pieces = _rewrite(m.group(0), rules)
        if direction is Direction.LATIN_TO_ARABIC:
            return "".join(p for p, _ in pieces)
        # vowel restoration only runs over stretches produced by rules
        out, run = [], []
        for chunk, ruled in pieces:
            if ruled:
                run.append(chunk)
            else:
                out.append(_vocalize("".join(run)))
                run = []
                out.append(chunk)
        out.append(_vocalize("".join(run)))
        return "".join(out)

    return _WORD_RE.sub(convert, text)
