"""XML lexicon dialects for the three models, plus validation.

Content models (writers emit children in this order, parsers accept any):

    lemma kind:    dic -> entry* ; entry -> lemma, pos, f*, inflection?
    mixed kind:    dic -> entry* ; entry -> lemma, pos, f*, inflected*
                   inflected -> form, f*
    wordform kind: dic -> entry* ; entry -> form, lemma, pos, f*

``pos`` carries a required ``name`` attribute, ``f`` carries required
``name`` and ``value``, ``inflection`` a required ``paradigm``.  Unknown
elements and attributes are hard errors: exchange formats fail loudly.

Output is canonical: UTF-8, two-space indent, single-quoted attributes,
fixed child order, so structurally equal lexica serialize byte-identically.
"""

import xml.parsers.expat
from dataclasses import dataclass

from .model import (
    ExplicitForms,
    FeatureAssignment,
    InflectedForm,
    LemmaEntry,
    Lexicon,
    LexiconError,
    ParadigmRef,
    PartOfSpeech,
    WordFormEntry,
)

XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>'


@dataclass(frozen=True)
class ValidationIssue:
    line: int
    column: int
    message: str
    severity: str = "error"


class LexiconXmlError(LexiconError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class _Elem:
    __slots__ = ("tag", "attrs", "line", "column", "children", "text")

    def __init__(self, tag, attrs, line, column):
        self.tag = tag
        self.attrs = attrs
        self.line = line
        self.column = column
        self.children: list = []
        self.text: list = []

    def content(self) -> str:
        return "".join(self.text)


def parse_tree(document: bytes | str) -> _Elem:
    """Parse bytes into a positioned element tree (internal reader)."""
    if isinstance(document, str):
        document = document.encode("utf-8")
    parser = xml.parsers.expat.ParserCreate("UTF-8")
    parser.buffer_text = True
    stack: list[_Elem] = []
    root: list[_Elem] = []
    push = stack.append
    pop = stack.pop

    def start(tag, attrs):
        elem = _Elem(tag, attrs, parser.CurrentLineNumber, parser.CurrentColumnNumber + 1)
        if stack:
            stack[-1].children.append(elem)
        else:
            root.append(elem)
        push(elem)

    def end(tag):
        pop()

    def chars(data):
        if stack:
            stack[-1].text.append(data)

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    try:
        parser.Parse(document, True)
    except xml.parsers.expat.ExpatError as exc:
        raise LexiconXmlError(
            exc.lineno, exc.offset + 1, xml.parsers.expat.errors.messages[exc.code]
        ) from exc
    return root[0]


def _fail(elem: _Elem, message: str):
    raise LexiconXmlError(elem.line, elem.column, message)


def _check_no_text(elem: _Elem):
    if elem.content().strip():
        _fail(elem, f"unexpected text content in <{elem.tag}>")


def _check_attrs(elem: _Elem, required: tuple = (), optional: tuple = ()):
    for name in required:
        if name not in elem.attrs:
            _fail(elem, f"<{elem.tag}> is missing required attribute \"{name}\"")
    for name in elem.attrs:
        if name not in required and name not in optional:
            _fail(elem, f"unknown attribute \"{name}\" on <{elem.tag}>")


def _check_leaf(elem: _Elem):
    _check_attrs(elem)
    if elem.children:
        _fail(elem.children[0], f"<{elem.tag}> must not contain elements")


def _wrap_model_error(elem: _Elem, exc: LexiconError):
    raise LexiconXmlError(elem.line, elem.column, str(exc)) from exc


def _parse_features(elems: list) -> tuple[FeatureAssignment, ...]:
    features = []
    names = set()
    for f in elems:
        _check_attrs(f, required=("name", "value"))
        _check_no_text(f)
        if f.children:
            _fail(f, "<f> must be empty")
        if f.attrs["name"] in names:
            _fail(f, f"duplicate feature name \"{f.attrs['name']}\"")
        names.add(f.attrs["name"])
        try:
            features.append(FeatureAssignment(f.attrs["name"], f.attrs["value"]))
        except LexiconError as exc:
            _wrap_model_error(f, exc)
    return tuple(features)


def _partition_children(entry: _Elem, allowed: tuple) -> dict:
    _check_attrs(entry)
    _check_no_text(entry)
    buckets: dict = {tag: [] for tag in allowed}
    for child in entry.children:
        if child.tag not in buckets:
            _fail(child, f"unknown element <{child.tag}>")
        buckets[child.tag].append(child)
    return buckets


def _one(entry: _Elem, buckets: dict, tag: str) -> _Elem:
    elems = buckets[tag]
    if not elems:
        _fail(entry, f"<entry> is missing <{tag}>")
    if len(elems) > 1:
        _fail(elems[1], f"<entry> has more than one <{tag}>")
    _check_leaf(elems[0])
    return elems[0]


def _parse_pos(buckets: dict, entry: _Elem) -> PartOfSpeech:
    elems = buckets["pos"]
    if not elems:
        _fail(entry, "<entry> is missing <pos>")
    if len(elems) > 1:
        _fail(elems[1], "<entry> has more than one <pos>")
    pos = elems[0]
    _check_attrs(pos, required=("name",))
    _check_no_text(pos)
    if pos.children:
        _fail(pos, "<pos> must be empty")
    try:
        return PartOfSpeech(pos.attrs["name"])
    except LexiconError as exc:
        _wrap_model_error(pos, exc)


def _parse_lemma_entry(entry: _Elem, entry_id: int, mixed: bool) -> LemmaEntry:
    allowed = ("lemma", "pos", "f", "inflected") if mixed else ("lemma", "pos", "f", "inflection")
    buckets = _partition_children(entry, allowed)
    lemma = _one(entry, buckets, "lemma").content()
    pos = _parse_pos(buckets, entry)
    features = _parse_features(buckets["f"])
    inflection = None
    if mixed:
        forms = []
        for elem in buckets["inflected"]:
            sub = _partition_children(elem, ("form", "f"))
            form_text = _one(elem, sub, "form").content()
            try:
                forms.append(InflectedForm(form_text, _parse_features(sub["f"])))
            except LexiconError as exc:
                _wrap_model_error(elem, exc)
        # zero <inflected> children = an uninflected entry (kept as such so
        # expanded lexica containing uninflected entries stay representable)
        if forms:
            inflection = ExplicitForms(tuple(forms))
    elif buckets["inflection"]:
        if len(buckets["inflection"]) > 1:
            _fail(buckets["inflection"][1], "<entry> has more than one <inflection>")
        elem = buckets["inflection"][0]
        _check_attrs(elem, required=("paradigm",))
        _check_no_text(elem)
        if elem.children:
            _fail(elem, "<inflection> must be empty")
        try:
            inflection = ParadigmRef(elem.attrs["paradigm"])
        except LexiconError as exc:
            _wrap_model_error(elem, exc)
    try:
        return LemmaEntry(entry_id, lemma, pos, features, inflection)
    except LexiconError as exc:
        _wrap_model_error(entry, exc)


def _parse_wordform_entry(entry: _Elem) -> WordFormEntry:
    buckets = _partition_children(entry, ("form", "lemma", "pos", "f"))
    form = _one(entry, buckets, "form").content()
    lemma = _one(entry, buckets, "lemma").content()
    pos = _parse_pos(buckets, entry)
    features = _parse_features(buckets["f"])
    try:
        return WordFormEntry(form, lemma, pos, features)
    except LexiconError as exc:
        _wrap_model_error(entry, exc)


def _detect_kind(entries: list) -> str | None:
    saw_wordform = False
    for entry in entries:
        for child in entry.children:
            if child.tag == "inflected":
                return "mixed"
            if child.tag == "form":
                saw_wordform = True
    return "wordform" if saw_wordform else None


def parse_lexicon(document: bytes | str, expected_kind: str | None = None) -> Lexicon:
    """Parse an XML lexicon; the kind is detected from element shapes.

    ``expected_kind`` both checks the detected kind and settles the kind
    of an empty or shape-ambiguous document.
    """
    root = parse_tree(document)
    if root.tag != "dic":
        _fail(root, f"unknown element <{root.tag}> (expected <dic>)")
    _check_attrs(root)
    _check_no_text(root)
    entries = []
    for child in root.children:
        if child.tag != "entry":
            _fail(child, f"unknown element <{child.tag}>")
        entries.append(child)
    kind = _detect_kind(entries)
    if kind is None:
        kind = expected_kind or "lemma"
    if expected_kind is not None and kind != expected_kind:
        _fail(root, f"expected a {expected_kind} lexicon, found {kind}")
    if kind == "wordform":
        parsed: tuple = tuple(_parse_wordform_entry(e) for e in entries)
    else:
        parsed = tuple(
            _parse_lemma_entry(e, i, kind == "mixed") for i, e in enumerate(entries)
        )
    try:
        return Lexicon(kind, parsed)
    except LexiconError as exc:
        _wrap_model_error(root, exc)


_TEXT_ESCAPES = {"&": "&amp;", "<": "&lt;", ">": "&gt;", "\r": "&#13;"}
_ATTR_ESCAPES = {
    "&": "&amp;",
    "<": "&lt;",
    ">": "&gt;",
    "'": "&apos;",
    '"': "&quot;",
    "\n": "&#10;",
    "\t": "&#9;",
    "\r": "&#13;",
}


def escape_text(value: str) -> str:
    for raw, entity in _TEXT_ESCAPES.items():
        if raw in value:
            value = value.replace(raw, entity)
    return value


def escape_attr(value: str) -> str:
    for raw, entity in _ATTR_ESCAPES.items():
        if raw in value:
            value = value.replace(raw, entity)
    return value


def _feature_lines(features: tuple, indent: str, out: list):
    for f in features:
        out.append(f"{indent}<f name='{escape_attr(f.name)}' value='{escape_attr(f.value)}'/>")


def write_lexicon(lexicon: Lexicon) -> bytes:
    """Serialize to canonical XML (UTF-8 bytes)."""
    out = [XML_DECLARATION]
    if not lexicon.entries:
        out.append("<dic></dic>")
        return ("\n".join(out) + "\n").encode("utf-8")
    out.append("<dic>")
    for e in lexicon.entries:
        out.append("  <entry>")
        if lexicon.kind == "wordform":
            out.append(f"    <form>{escape_text(e.form)}</form>")
        out.append(f"    <lemma>{escape_text(e.lemma)}</lemma>")
        out.append(f"    <pos name='{escape_attr(e.pos.name)}'/>")
        _feature_lines(e.features, "    ", out)
        if lexicon.kind != "wordform":
            if isinstance(e.inflection, ParadigmRef):
                out.append(f"    <inflection paradigm='{escape_attr(e.inflection.paradigm)}'/>")
            elif isinstance(e.inflection, ExplicitForms):
                for form in e.inflection.forms:
                    out.append("    <inflected>")
                    out.append(f"      <form>{escape_text(form.form)}</form>")
                    _feature_lines(form.features, "      ", out)
                    out.append("    </inflected>")
        out.append("  </entry>")
    out.append("</dic>")
    return ("\n".join(out) + "\n").encode("utf-8")


def validate(document: bytes | str) -> list[ValidationIssue]:
    """Check a document; empty result means parse_lexicon would succeed."""
    try:
        parse_lexicon(document)
    except LexiconXmlError as exc:
        return [ValidationIssue(exc.line, exc.column, exc.message)]
    return []
