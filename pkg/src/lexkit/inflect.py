"""Inflected-form generation: paradigm rules, expansion and flattening.

A paradigm is a named, shared list of suffix-rewrite rules.  Applying a
rule strips a number of trailing characters from the lemma and appends a
suffix; the rule's features become the inflectional features of the
produced form.  Expansion turns a lemma-based lexicon into a mixed one,
flattening turns a mixed lexicon into a word-form one by copying the
lemma-level information into every form.

Paradigm definition file, UTF-8, one paradigm per block:

    PARADIGM N1
    strip=0 append= number=singular
    strip=0 append=s number=plural

Rule lines hold two or three whitespace-separated fields; the third is a
';'-separated feature list and may be omitted.  Escaping as in the DELA
formats ('\\ ' survives inside an append value); '#' starts a comment line.
"""

import dataclasses
from dataclasses import dataclass

from . import dela
from .dela import _Cursor, _decode, _parse_pair  # intra-package reuse
from .model import (
    ExplicitForms,
    FeatureAssignment,
    InflectedForm,
    LemmaEntry,
    Lexicon,
    LexiconError,
    ParadigmRef,
    WordFormEntry,
    _check_unique_names,
    merge_features,
)


class InflectionError(LexiconError):
    pass


class ParadigmParseError(LexiconError):
    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


@dataclass(frozen=True)
class InflectionRule:
    strip: int
    append: str
    features: tuple[FeatureAssignment, ...] = ()

    def __post_init__(self) -> None:
        if self.strip < 0:
            raise LexiconError("strip count must be non-negative")
        _check_unique_names(self.features, "inflection rule")


@dataclass(frozen=True)
class InflectionParadigm:
    name: str
    rules: tuple[InflectionRule, ...]

    def __post_init__(self) -> None:
        if not self.name or any(c.isspace() for c in self.name):
            raise LexiconError("paradigm name must be non-empty without whitespace")
        if not self.rules:
            raise LexiconError(f"paradigm {self.name!r} has no rules")


@dataclass(frozen=True)
class ParadigmSet:
    paradigms: dict

    def __post_init__(self) -> None:
        for name, paradigm in self.paradigms.items():
            if name != paradigm.name:
                raise LexiconError(f"paradigm {paradigm.name!r} stored under {name!r}")

    def get(self, name: str) -> InflectionParadigm | None:
        return self.paradigms.get(name)

    def names(self) -> list[str]:
        return sorted(self.paradigms)

    def __len__(self) -> int:
        return len(self.paradigms)

    @classmethod
    def of(cls, *paradigms: InflectionParadigm) -> "ParadigmSet":
        return cls({p.name: p for p in paradigms})


def apply_rule(lemma: str, rule: InflectionRule) -> InflectedForm:
    """Strip, append, and attach the rule's features."""
    if rule.strip > len(lemma):
        raise InflectionError(
            f"strip {rule.strip} exceeds lemma {lemma!r} of length {len(lemma)}"
        )
    form = lemma[: len(lemma) - rule.strip] + rule.append
    if not form:
        raise InflectionError(f"rule produces an empty form for lemma {lemma!r}")
    return InflectedForm(form, rule.features)


def expand_entry(entry: LemmaEntry, paradigms: ParadigmSet) -> LemmaEntry:
    """Replace a paradigm reference by the explicit list of generated forms.

    Entries without a paradigm reference are returned unchanged.
    """
    if not isinstance(entry.inflection, ParadigmRef):
        return entry
    paradigm = paradigms.get(entry.inflection.paradigm)
    if paradigm is None:
        raise InflectionError(
            f"entry {entry.id}: unknown paradigm {entry.inflection.paradigm!r}"
        )
    forms = []
    for index, rule in enumerate(paradigm.rules):
        try:
            forms.append(apply_rule(entry.lemma, rule))
        except InflectionError as exc:
            raise InflectionError(f"entry {entry.id}, rule {index}: {exc}") from exc
    return dataclasses.replace(entry, inflection=ExplicitForms(tuple(forms)))


def expand_lexicon(lexicon: Lexicon, paradigms: ParadigmSet) -> Lexicon:
    """lemma-based -> mixed; aborts on the first failing entry."""
    if lexicon.kind != "lemma":
        raise LexiconError(f"cannot expand a {lexicon.kind} lexicon")
    return Lexicon("mixed", tuple(expand_entry(e, paradigms) for e in lexicon.entries))


def flatten(lexicon: Lexicon) -> Lexicon:
    """mixed -> wordform; lemma-level features are copied into every form."""
    if lexicon.kind != "mixed":
        raise LexiconError(f"cannot flatten a {lexicon.kind} lexicon")
    entries = []
    for e in lexicon.entries:
        if not isinstance(e.inflection, ExplicitForms):
            raise InflectionError(f"entry {e.id} has no explicit inflected forms")
        for form in e.inflection.forms:
            entries.append(
                WordFormEntry(form.form, e.lemma, e.pos, merge_features(e.features, form.features))
            )
    return Lexicon("wordform", tuple(entries))


def _parse_keyed_field(field: str, expected: str, number: int) -> str:
    cursor = _Cursor(_decode(field))
    key, sep = cursor.take_until("=")
    if sep != "=" or key != expected:
        raise ParadigmParseError(number, f"expected {expected}=..., got {field!r}")
    value, _ = cursor.take_until("")
    return value


def _parse_rule_features(field: str, number: int) -> tuple[FeatureAssignment, ...]:
    cursor = _Cursor(_decode(field))
    features = []
    sep: str | None = ";"
    while sep == ";":
        try:
            pair, sep = _parse_pair(cursor, ";", number)
        except dela.DelaParseError as exc:
            raise ParadigmParseError(number, exc.reason) from exc
        features.append(pair)
    return tuple(features)


def parse_paradigms(text: str) -> ParadigmSet:
    """Parse a paradigm definition file."""
    paradigms: dict = {}
    name: str | None = None
    rules: list[InflectionRule] = []

    def finish(number: int):
        if name is None:
            return
        try:
            paradigm = InflectionParadigm(name, tuple(rules))
        except LexiconError as exc:
            raise ParadigmParseError(number, str(exc)) from exc
        paradigms[name] = paradigm

    for number, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = dela.split_fields(line)
        if fields[0] == "PARADIGM":
            if len(fields) != 2:
                raise ParadigmParseError(number, "PARADIGM header takes exactly one name")
            finish(number)
            name = dela.unescape(fields[1])
            if name in paradigms:
                raise ParadigmParseError(number, f"duplicate paradigm {name!r}")
            rules = []
            continue
        if name is None:
            raise ParadigmParseError(number, "rule line before any PARADIGM header")
        if len(fields) not in (2, 3):
            raise ParadigmParseError(
                number, "rule line takes strip=, append= and an optional feature list"
            )
        strip_text = _parse_keyed_field(fields[0], "strip", number)
        try:
            strip = int(strip_text)
        except ValueError:
            raise ParadigmParseError(number, f"strip count {strip_text!r} is not an integer")
        append = _parse_keyed_field(fields[1], "append", number)
        features = _parse_rule_features(fields[2], number) if len(fields) == 3 else ()
        try:
            rules.append(InflectionRule(strip, append, features))
        except LexiconError as exc:
            raise ParadigmParseError(number, str(exc)) from exc
    finish(len(text.split("\n")))
    return ParadigmSet(paradigms)
