"""Reading and writing ``.dic`` / ``.aff`` resources.

Dictionary lines look like::

    ئاخیو/N po:noun st:ئاخ
    دەری-بکەن/V po:verb st:کەن  # needs_review

Affix files hold ``SET``, ``TRY``, ``REP``, ``INERT`` directives followed by
``PFX``/``SFX`` classes::

    SFX N Y 2
    SFX N 0 ەکە [^اەۆێیو] is:DEF.SG
    SFX N 0 کە [اەۆێیو] is:DEF.SG
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from soranispell.script import normalize, normalize_affix

DEFAULT_ENCODING = "UTF-8"

KNOWN_FIELDS = ("po", "is", "st")
_FIELD_RE = re.compile(r"^([a-z][a-z0-9_]*):(.+)$")

VERB_TAGS = frozenset("VITX")

# tag letter -> part of speech
TAGS = {
    "N": "noun",
    "V": "present stem of a verb",
    "I": "past stem of intransitive verb",
    "T": "past stem of transitive verb",
    "A": "adjective",
    "R": "adverb",
    "E": "numeral",
    "C": "conjunction",
    "D": "interjection",
    "B": "pronoun",
    "F": "adposition",
    "G": "particle",
    "X": "infinitive",
    "Z": "proper name",
    "W": "exceptional case",
}

_POS_NAMES = {
    "noun": "N", "adjective": "A", "adverb": "R", "numeral": "E",
    "conjunction": "C", "interjection": "D", "pronoun": "B",
    "adposition": "F", "particle": "G", "proper": "Z", "proper_name": "Z",
    "exceptional": "W",
}


class FormatError(ValueError):
    """Base class for resource parse errors; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


class MalformedHeader(FormatError):
    pass


class CountMismatch(FormatError):
    pass


class BadField(FormatError):
    pass


class UnknownDirective(FormatError):
    pass


class ClassCountMismatch(FormatError):
    pass


class BadCondition(FormatError):
    pass


class MixedKindInClass(FormatError):
    pass


def resolve_tag(pos: str | None, infl_class: str | None = None) -> str | None:
    """Map a ``po:`` value (tag letter or name) to a tag letter.

    ``po:verb`` is split by the ``is:`` class: present stems are V, past
    stems I or T, infinitives X.
    """
    if pos is None:
        return None
    if pos in TAGS:
        return pos
    name = pos.lower()
    if name == "verb":
        cls = (infl_class or "").lower()
        if cls.startswith("infinitive"):
            return "X"
        if cls.startswith("present"):
            return "V"
        if cls.startswith("past"):
            return "T" if "_transitive" in cls and "intransitive" not in cls else "I"
        return "V"
    return _POS_NAMES.get(name)


@dataclass(frozen=True)
class DicEntry:
    surface: str
    flags: frozenset[str] = frozenset()
    pos: str | None = None
    infl_class: str | None = None
    stem: str | None = None
    compound_parts: tuple[str, ...] | None = None
    extra: tuple[tuple[str, str], ...] = ()
    needs_review: bool = False

    @property
    def tag(self) -> str | None:
        return resolve_tag(self.pos, self.infl_class)

    @property
    def is_verb(self) -> bool:
        return self.tag in VERB_TAGS

    def sort_key(self) -> tuple:
        return (self.surface, "".join(sorted(self.flags)), self.pos or "",
                self.infl_class or "", self.stem or "", self.compound_parts or (),
                self.extra, self.needs_review)

    def to_line(self) -> str:
        head = "-".join(self.compound_parts) if self.compound_parts else self.surface
        if self.flags:
            head += "/" + "".join(sorted(self.flags))
        parts = [head]
        if self.pos is not None:
            parts.append(f"po:{self.pos}")
        if self.infl_class is not None:
            parts.append(f"is:{self.infl_class}")
        if self.stem is not None:
            parts.append(f"st:{self.stem}")
        parts.extend(f"{k}:{v}" for k, v in self.extra)
        line = " ".join(parts)
        if self.needs_review:
            line += "  # needs_review"
        return line


class Dictionary:
    """Multimap from normalized surface to entries; homographs are allowed."""

    def __init__(self, entries: Iterable[DicEntry] = ()):
        self.entries: tuple[DicEntry, ...] = tuple(entries)
        self._index: dict[str, list[DicEntry]] = {}
        for e in self.entries:
            self._index.setdefault(e.surface, []).append(e)

    @property
    def declared_count(self) -> int:
        return len(self.entries)

    def lookup(self, surface: str) -> list[DicEntry]:
        return list(self._index.get(surface, ()))

    def __contains__(self, surface: str) -> bool:
        return surface in self._index

    def __iter__(self) -> Iterator[DicEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dictionary):
            return NotImplemented
        return sorted(self.entries, key=DicEntry.sort_key) == sorted(other.entries, key=DicEntry.sort_key)

    def __repr__(self) -> str:
        return f"Dictionary({len(self.entries)} entries)"


def _split_comment(line: str) -> tuple[str, str]:
    idx = line.find("#")
    if idx < 0:
        return line, ""
    return line[:idx], line[idx + 1:]


def _is_blank_or_comment(line: str) -> bool:
    s = line.strip()
    return not s or s.startswith("#")


def parse_dic_line(line: str, lineno: int | None = None) -> DicEntry:
    body, comment = _split_comment(line)
    tokens = body.split()
    if not tokens:
        raise BadField("empty entry", lineno)
    head, fields = tokens[0], tokens[1:]
    if "/" in head:
        word, flagstr = head.split("/", 1)
        if not flagstr:
            raise BadField(f"empty flag field in {head!r}", lineno)
    else:
        word, flagstr = head, ""
    if not word:
        raise BadField("empty surface", lineno)
    parts = None
    if "-" in word:
        parts = tuple(normalize(p) for p in word.split("-"))
        surface = "".join(parts)
    else:
        surface = normalize(word)
    known: dict[str, str] = {}
    extra = []
    for tok in fields:
        m = _FIELD_RE.match(tok)
        if not m:
            raise BadField(f"not a key:value field: {tok!r}", lineno)
        key, value = m.groups()
        if key in KNOWN_FIELDS:
            if key in known:
                raise BadField(f"duplicate field {key!r}", lineno)
            known[key] = normalize(value) if key == "st" else value
        else:
            # unknown keys are kept verbatim
            extra.append((key, value))
    return DicEntry(
        surface=surface,
        flags=frozenset(flagstr),
        pos=known.get("po"),
        infl_class=known.get("is"),
        stem=known.get("st"),
        compound_parts=parts,
        extra=tuple(extra),
        needs_review="needs_review" in comment,
    )


def parse_dic(text: str) -> Dictionary:
    lines = text.splitlines()
    header_no = None
    declared = 0
    entries = []
    for lineno, line in enumerate(lines, 1):
        if _is_blank_or_comment(line):
            continue
        if header_no is None:
            header_no = lineno
            try:
                declared = int(line.strip())
            except ValueError:
                raise MalformedHeader(f"expected entry count, got {line.strip()!r}", lineno) from None
            if declared < 0:
                raise MalformedHeader(f"negative entry count {declared}", lineno)
            continue
        entries.append(parse_dic_line(line, lineno))
    if header_no is None:
        raise MalformedHeader("missing entry count", 1)
    if declared != len(entries):
        raise CountMismatch(f"header declares {declared} entries, found {len(entries)}", header_no)
    return Dictionary(entries)


def serialize_dic(dictionary: Dictionary) -> str:
    entries = sorted(dictionary.entries, key=DicEntry.sort_key)
    lines = [str(len(entries))] + [e.to_line() for e in entries]
    return "\n".join(lines) + "\n"


# -- affix files -----------------------------------------------------------

@dataclass(frozen=True)
class CharClass:
    chars: frozenset[str]
    negated: bool = False

    def matches(self, ch: str) -> bool:
        return (ch in self.chars) != self.negated


ANY = CharClass(frozenset(), negated=True)


def parse_condition(cond: str, lineno: int | None = None, kind: str = "SFX") -> tuple[CharClass | str, ...]:
    """Parse a condition into atoms: literal characters or character classes."""
    if cond == ".":
        return ()
    atoms: list[CharClass | str] = []
    i = 0
    while i < len(cond):
        ch = cond[i]
        if ch == "[":
            end = cond.find("]", i + 1)
            if end < 0:
                raise BadCondition(f"unbalanced '[' in condition {cond!r}", lineno)
            body = cond[i + 1:end]
            negated = body.startswith("^")
            if negated:
                body = body[1:]
            if not body:
                raise BadCondition(f"empty character class in {cond!r}", lineno)
            chars = frozenset(normalize_affix(c, kind) or c for c in body)
            atoms.append(CharClass(chars, negated))
            i = end + 1
        elif ch == "]":
            raise BadCondition(f"unbalanced ']' in condition {cond!r}", lineno)
        elif ch == ".":
            atoms.append(ANY)
            i += 1
        else:
            atoms.append(normalize_affix(ch, kind) or ch)
            i += 1
    return tuple(atoms)


def _atom_str(atom: CharClass | str) -> str:
    if isinstance(atom, str):
        return atom
    if atom is ANY or (atom.negated and not atom.chars):
        return "."
    return "[" + ("^" if atom.negated else "") + "".join(sorted(atom.chars)) + "]"


def condition_str(atoms: tuple[CharClass | str, ...]) -> str:
    return "".join(_atom_str(a) for a in atoms) or "."


def _atoms_match(atoms, text: str) -> bool:
    for atom, ch in zip(atoms, text):
        if isinstance(atom, str):
            if atom != ch:
                return False
        elif not atom.matches(ch):
            return False
    return True


@dataclass(frozen=True)
class AffixRule:
    kind: str
    flag: str
    strip: str
    append: str
    condition: tuple[CharClass | str, ...] = ()
    morph: tuple[str, ...] = ()
    cross_product: bool = True

    def matches(self, base: str) -> bool:
        """Does the condition hold on ``base`` (end for SFX, start for PFX)?"""
        n = len(self.condition)
        if n > len(base):
            return False
        if self.kind == "SFX":
            return _atoms_match(self.condition, base[len(base) - n:])
        return _atoms_match(self.condition, base[:n])

    def applies_to(self, base: str) -> bool:
        if self.kind == "SFX":
            return base.endswith(self.strip) and self.matches(base)
        return base.startswith(self.strip) and self.matches(base)

    def apply(self, base: str) -> str:
        if self.kind == "SFX":
            return base[:len(base) - len(self.strip)] + self.append
        return self.append + base[len(self.strip):]

    @property
    def fields(self) -> dict[str, str]:
        out = {}
        for f in self.morph:
            key, _, value = f.partition(":")
            out.setdefault(key, value)
        return out

    def to_line(self) -> str:
        parts = [self.kind, self.flag, self.strip or "0", self.append or "0", condition_str(self.condition)]
        parts.extend(self.morph)
        return " ".join(parts)


@dataclass(frozen=True)
class AffixClass:
    kind: str
    flag: str
    cross_product: bool
    rules: tuple[AffixRule, ...]


@dataclass
class AffixRuleSet:
    classes: dict[str, AffixClass] = field(default_factory=dict)
    encoding: str = DEFAULT_ENCODING
    try_chars: str = ""
    rep: tuple[tuple[str, str], ...] = ()
    inert_flags: frozenset[str] = frozenset()

    def rules(self, kind: str | None = None) -> Iterator[AffixRule]:
        for cls in self.classes.values():
            if kind is None or cls.kind == kind:
                yield from cls.rules

    def resolves(self, flag: str) -> bool:
        return flag in self.classes or flag in self.inert_flags

    def unresolved_flags(self, dictionary: Dictionary) -> list[tuple[DicEntry, str]]:
        return [(e, f) for e in dictionary for f in sorted(e.flags) if not self.resolves(f)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffixRuleSet):
            return NotImplemented
        return (self.encoding.upper() == other.encoding.upper()
                and self.try_chars == other.try_chars
                and self.rep == other.rep
                and self.inert_flags == other.inert_flags
                and self.classes == other.classes)


_DIRECTIVES = ("SET", "TRY", "REP", "INERT", "PFX", "SFX")


def parse_aff(text: str) -> AffixRuleSet:
    rs = AffixRuleSet()
    pending: dict[str, tuple[int, str, bool, int, list[AffixRule]]] = {}
    rep_expected: tuple[int, int] | None = None
    rep: list[tuple[str, str]] = []

    def close(flag: str) -> None:
        lineno, kind, cross, count, rules = pending.pop(flag)
        if count != len(rules):
            raise ClassCountMismatch(f"{kind} {flag} declares {count} rules, found {len(rules)}", lineno)
        rs.classes[flag] = AffixClass(kind, flag, cross, tuple(rules))

    for lineno, raw in enumerate(text.splitlines(), 1):
        if _is_blank_or_comment(raw):
            continue
        body, _ = _split_comment(raw) if " #" in raw or "\t#" in raw else (raw, "")
        tok = body.split()
        if not tok:
            continue
        key = tok[0]
        if key not in _DIRECTIVES:
            raise UnknownDirective(f"unknown directive {key!r}", lineno)
        if key == "SET":
            if len(tok) != 2:
                raise BadField("SET takes one argument", lineno)
            rs.encoding = tok[1]
        elif key == "TRY":
            if len(tok) != 2:
                raise BadField("TRY takes one argument", lineno)
            rs.try_chars = normalize_affix(tok[1], "SFX")
        elif key == "INERT":
            if len(tok) != 2:
                raise BadField("INERT takes one argument", lineno)
            rs.inert_flags = rs.inert_flags | frozenset(tok[1])
        elif key == "REP":
            if rep_expected is None and len(tok) == 2 and tok[1].isdigit():
                rep_expected = (lineno, int(tok[1]))
            elif rep_expected is not None and len(tok) == 3:
                rep.append((normalize_affix(tok[1], "SFX"), normalize_affix(tok[2], "SFX")))
            else:
                raise BadField("malformed REP line", lineno)
        else:
            if len(tok) < 4:
                raise BadField(f"short {key} line", lineno)
            flag = tok[1]
            if len(flag) != 1:
                raise BadField(f"flag must be one character, got {flag!r}", lineno)
            is_header = (flag not in pending and len(tok) == 4 and tok[2] in ("Y", "N")
                         and tok[3].isdigit())
            if is_header:
                if flag in rs.classes:
                    raise BadField(f"class {flag!r} declared twice", lineno)
                pending[flag] = (lineno, key, tok[2] == "Y", int(tok[3]), [])
                continue
            if flag not in pending:
                if flag in rs.classes:
                    raise ClassCountMismatch(f"more rules than declared for {flag!r}", lineno)
                raise BadField(f"rule for undeclared class {flag!r}", lineno)
            hdr_line, kind, cross, count, rules = pending[flag]
            if kind != key:
                raise MixedKindInClass(f"{key} rule in {kind} class {flag!r}", lineno)
            if len(tok) < 5:
                raise BadField(f"rule needs STRIP APPEND CONDITION", lineno)
            if len(rules) >= count:
                raise ClassCountMismatch(f"more rules than declared for {flag!r}", lineno)
            strip = "" if tok[2] == "0" else normalize_affix(tok[2], key)
            append = "" if tok[3] == "0" else normalize_affix(tok[3], key)
            cond = parse_condition(tok[4], lineno, key)
            for m in tok[5:]:
                if not _FIELD_RE.match(m):
                    raise BadField(f"not a key:value field: {m!r}", lineno)
            rules.append(AffixRule(key, flag, strip, append, cond, tuple(tok[5:]), cross))
            if len(rules) == count:
                close(flag)
    for flag in list(pending):
        close(flag)
    if rep_expected is not None and rep_expected[1] != len(rep):
        raise ClassCountMismatch(f"REP declares {rep_expected[1]} pairs, found {len(rep)}", rep_expected[0])
    rs.rep = tuple(rep)
    return rs


def serialize_aff(rules: AffixRuleSet) -> str:
    lines = [f"SET {rules.encoding}"]
    if rules.try_chars:
        lines.append(f"TRY {rules.try_chars}")
    if rules.inert_flags:
        lines.append("INERT " + "".join(sorted(rules.inert_flags)))
    if rules.rep:
        lines.append(f"REP {len(rules.rep)}")
        lines.extend(f"REP {a} {b}" for a, b in rules.rep)
    for flag in sorted(rules.classes, key=lambda f: (rules.classes[f].kind, f)):
        cls = rules.classes[flag]
        lines.append("")
        lines.append(f"{cls.kind} {flag} {'Y' if cls.cross_product else 'N'} {len(cls.rules)}")
        lines.extend(r.to_line() for r in cls.rules)
    return "\n".join(lines) + "\n"


# -- file helpers ----------------------------------------------------------

_SET_RE = re.compile(rb"^SET\s+(\S+)", re.MULTILINE)


def _python_codec(name: str) -> str:
    return {"UTF-8": "utf-8", "ISO8859-1": "latin-1"}.get(name.upper(), name)


def load_aff(path: str | Path) -> AffixRuleSet:
    data = Path(path).read_bytes()
    m = _SET_RE.search(data)
    enc = _python_codec(m.group(1).decode("ascii")) if m else "utf-8"
    return parse_aff(data.decode(enc))


def load_dic(path: str | Path, encoding: str = DEFAULT_ENCODING) -> Dictionary:
    return parse_dic(Path(path).read_bytes().decode(_python_codec(encoding)))
