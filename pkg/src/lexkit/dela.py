"""DELAF/DELAS line-oriented dictionary text formats.

Line grammar, applied after backslash-unescaping:

    delaf_line := form ',' lemma '.' pos ('+' name '=' value)* (':' group)*
    group      := name '=' value (';' name '=' value)*
    delas_line := lemma '.' pos ('+' name '=' value)* (':' paradigm_name)?

A DELAF line yields one word-form entry per inflectional group (one entry
with no group features when there is no group).  Blank lines and lines
starting with '#' are skipped.  The characters , . + : ; = \\ # are
escapable with a backslash; the writers escape all of them, so canonical
output never needs look-ahead to parse.

Canonical output is sorted byte-wise and carries one analysis per line.
"""

from .model import (
    FeatureAssignment,
    LemmaEntry,
    Lexicon,
    LexiconError,
    ParadigmRef,
    PartOfSpeech,
    WordFormEntry,
)

ESCAPABLE = ",.+:;=\\#"


class DelaParseError(LexiconError):
    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


def escape(text: str) -> str:
    """Backslash-escape every occurrence of a structural character."""
    if not any(c in ESCAPABLE for c in text):
        return text
    return "".join("\\" + c if c in ESCAPABLE else c for c in text)


def unescape(text: str) -> str:
    """Drop backslashes; a backslash before any character yields that character."""
    if "\\" not in text:
        return text
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\" and i + 1 < len(text):
            out.append(text[i + 1])
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def split_fields(text: str) -> list[str]:
    """Split on unescaped whitespace, keeping escape sequences intact."""
    fields = []
    current: list[str] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\" and i + 1 < len(text):
            current.append(text[i : i + 2])
            i += 2
        elif c.isspace():
            if current:
                fields.append("".join(current))
                current = []
            i += 1
        else:
            current.append(c)
            i += 1
    if current:
        fields.append("".join(current))
    return fields


def _decode(text: str) -> list[tuple[str, bool]]:
    """Turn raw text into (char, was_escaped) pairs.

    Raises ValueError on a dangling trailing backslash.
    """
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\\":
            if i + 1 >= n:
                raise ValueError("dangling backslash at end of line")
            out.append((text[i + 1], True))
            i += 2
        else:
            out.append((c, False))
            i += 1
    return out


class _Cursor:
    """Walks decoded characters, splitting fields at unescaped separators."""

    def __init__(self, decoded: list[tuple[str, bool]]):
        self.chars = decoded
        self.pos = 0

    def take_until(self, separators: str) -> tuple[str, str | None]:
        """Consume up to the next unescaped separator.

        Returns (field text, separator) where the separator is consumed too;
        separator is None when the line ended first.
        """
        out = []
        while self.pos < len(self.chars):
            ch, escaped = self.chars[self.pos]
            if not escaped and ch in separators:
                self.pos += 1
                return "".join(out), ch
            out.append(ch)
            self.pos += 1
        return "".join(out), None


def _parse_pair(cursor: _Cursor, stop: str, line_number: int) -> tuple[FeatureAssignment, str | None]:
    name, sep = cursor.take_until("=" + stop)
    if sep != "=":
        raise DelaParseError(line_number, f"malformed pair (expected '=' after {name!r})")
    value, sep = cursor.take_until(stop)
    try:
        return FeatureAssignment(name, value), sep
    except LexiconError as exc:
        raise DelaParseError(line_number, str(exc)) from exc


def _parse_feature_list(cursor: _Cursor, stop: str, line_number: int) -> tuple[list[FeatureAssignment], str | None]:
    """Parse '+'-chained pairs; ``stop`` are the separators ending the list."""
    features = []
    sep: str | None = "+"
    while sep == "+":
        pair, sep = _parse_pair(cursor, "+" + stop, line_number)
        features.append(pair)
    return features, sep


def _parse_group(cursor: _Cursor, line_number: int) -> tuple[list[FeatureAssignment], str | None]:
    features = []
    sep: str | None = ";"
    while sep == ";":
        pair, sep = _parse_pair(cursor, ";:", line_number)
        features.append(pair)
    return features, sep


def _iter_lines(text: str):
    for number, line in enumerate(text.split("\n"), start=1):
        if line.endswith("\r"):
            line = line[:-1]
        if not line.strip() or line.startswith("#"):
            continue
        yield number, line


def _decode_line(number: int, line: str) -> _Cursor:
    try:
        return _Cursor(_decode(line))
    except ValueError as exc:
        raise DelaParseError(number, str(exc)) from exc


def _parse_delaf_fields(number: int, line: str):
    """(form, lemma, pos, shared features, groups) for one line."""
    if "\\" not in line:
        # fast path: without escapes the separators are plain characters
        form, comma, rest = line.partition(",")
        if not comma:
            raise DelaParseError(number, "missing ',' after form")
        lemma, dot, rest = rest.partition(".")
        if not dot:
            raise DelaParseError(number, "missing '.' after lemma")
        head, *raw_groups = rest.split(":")
        pos, *raw_pairs = head.split("+")
        if not form or not lemma or not pos:
            raise DelaParseError(number, "empty form, lemma or part of speech")
        shared = []
        for raw in raw_pairs:
            name, eq, value = raw.partition("=")
            if not eq:
                raise DelaParseError(number, f"malformed pair (expected '=' after {name!r})")
            try:
                shared.append(FeatureAssignment(name, value))
            except LexiconError as exc:
                raise DelaParseError(number, str(exc)) from exc
        groups = []
        for raw_group in raw_groups:
            group = []
            for raw in raw_group.split(";"):
                name, eq, value = raw.partition("=")
                if not eq:
                    raise DelaParseError(number, f"malformed pair (expected '=' after {name!r})")
                try:
                    group.append(FeatureAssignment(name, value))
                except LexiconError as exc:
                    raise DelaParseError(number, str(exc)) from exc
            groups.append(group)
        return form, lemma, pos, shared, groups

    cursor = _decode_line(number, line)
    form, sep = cursor.take_until(",")
    if sep is None:
        raise DelaParseError(number, "missing ',' after form")
    lemma, sep = cursor.take_until(".")
    if sep is None:
        raise DelaParseError(number, "missing '.' after lemma")
    pos, sep = cursor.take_until("+:")
    if not form or not lemma or not pos:
        raise DelaParseError(number, "empty form, lemma or part of speech")
    shared = []
    if sep == "+":
        shared, sep = _parse_feature_list(cursor, ":", number)
    groups = []
    while sep == ":":
        group, sep = _parse_group(cursor, number)
        groups.append(group)
    return form, lemma, pos, shared, groups


def parse_delaf(text: str) -> Lexicon:
    """Parse DELAF text into a wordform lexicon."""
    entries = []
    for number, line in _iter_lines(text):
        form, lemma, pos, shared, groups = _parse_delaf_fields(number, line)
        try:
            pos_value = PartOfSpeech(pos)
            if groups:
                for group in groups:
                    entries.append(
                        WordFormEntry(form, lemma, pos_value, tuple(shared + group))
                    )
            else:
                entries.append(WordFormEntry(form, lemma, pos_value, tuple(shared)))
        except LexiconError as exc:
            raise DelaParseError(number, str(exc)) from exc
    return Lexicon("wordform", tuple(entries))


def _feature_text(features: tuple[FeatureAssignment, ...]) -> str:
    return "".join(f"+{escape(f.name)}={escape(f.value)}" for f in features)


def write_delaf(lexicon: Lexicon) -> str:
    """Serialize a wordform lexicon to canonical DELAF text.

    One analysis per line; every feature is written as a '+name=value'
    pair; lines are sorted byte-wise by (form, lemma, pos, features).
    """
    if lexicon.kind != "wordform":
        raise LexiconError(f"cannot write {lexicon.kind} lexicon as DELAF")
    keyed = []
    for e in lexicon.entries:
        feats = _feature_text(e.features)
        key = (
            e.form.encode("utf-8"),
            e.lemma.encode("utf-8"),
            e.pos.name.encode("utf-8"),
            feats.encode("utf-8"),
        )
        keyed.append((key, f"{escape(e.form)},{escape(e.lemma)}.{escape(e.pos.name)}{feats}"))
    keyed.sort(key=lambda item: item[0])
    return "".join(line + "\n" for _, line in keyed)


def parse_delas(text: str) -> Lexicon:
    """Parse DELAS text into a lemma-based lexicon."""
    entries = []
    for number, line in _iter_lines(text):
        cursor = _decode_line(number, line)
        lemma, sep = cursor.take_until(".")
        if sep is None:
            raise DelaParseError(number, "missing '.' after lemma")
        pos, sep = cursor.take_until("+:")
        if not lemma or not pos:
            raise DelaParseError(number, "empty lemma or part of speech")
        features: list[FeatureAssignment] = []
        if sep == "+":
            features, sep = _parse_feature_list(cursor, ":", number)
        inflection = None
        if sep == ":":
            paradigm, trailing = cursor.take_until(":;+")
            if trailing is not None:
                raise DelaParseError(number, f"unexpected {trailing!r} after paradigm name")
            try:
                inflection = ParadigmRef(paradigm)
            except LexiconError as exc:
                raise DelaParseError(number, str(exc)) from exc
        try:
            entries.append(
                LemmaEntry(len(entries), lemma, PartOfSpeech(pos), tuple(features), inflection)
            )
        except LexiconError as exc:
            raise DelaParseError(number, str(exc)) from exc
    return Lexicon("lemma", tuple(entries))


def write_delas(lexicon: Lexicon) -> str:
    """Serialize a lemma-based lexicon to canonical DELAS text."""
    if lexicon.kind != "lemma":
        raise LexiconError(f"cannot write {lexicon.kind} lexicon as DELAS")
    keyed = []
    for e in lexicon.entries:
        if not isinstance(e.inflection, (ParadigmRef, type(None))):
            raise LexiconError(
                f"entry {e.id} has explicit inflected forms; DELAS carries paradigm references only"
            )
        feats = _feature_text(e.features)
        paradigm = e.inflection.paradigm if isinstance(e.inflection, ParadigmRef) else ""
        line = f"{escape(e.lemma)}.{escape(e.pos.name)}{feats}"
        if paradigm:
            line += ":" + escape(paradigm)
        key = (
            e.lemma.encode("utf-8"),
            e.pos.name.encode("utf-8"),
            feats.encode("utf-8"),
            paradigm.encode("utf-8"),
        )
        keyed.append((key, line))
    keyed.sort(key=lambda item: item[0])
    return "".join(line + "\n" for _, line in keyed)


def format_analysis(lemma: str, pos: PartOfSpeech, features: tuple[FeatureAssignment, ...]) -> str:
    """One analysis as a DELAF line without the leading 'form,' part."""
    return f"{escape(lemma)}.{escape(pos.name)}{_feature_text(features)}"


def parse_analysis(text: str) -> tuple[str, PartOfSpeech, tuple[FeatureAssignment, ...]]:
    """Inverse of format_analysis; accepts ':'-group features as well."""
    cursor = _decode_line(0, text)
    lemma, sep = cursor.take_until(".")
    if sep is None:
        raise DelaParseError(0, "missing '.' after lemma")
    pos, sep = cursor.take_until("+:")
    if not lemma or not pos:
        raise DelaParseError(0, "empty lemma or part of speech")
    features: list[FeatureAssignment] = []
    if sep == "+":
        features, sep = _parse_feature_list(cursor, ":", 0)
    while sep == ":":
        group, sep = _parse_group(cursor, 0)
        features.extend(group)
    return lemma, PartOfSpeech(pos), tuple(features)
