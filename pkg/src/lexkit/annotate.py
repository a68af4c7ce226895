"""Tokenization, case-aware lookup and corpus tagging.

Tokens are maximal runs of Unicode letters (words) or decimal digits
(numbers); any other non-whitespace character is a one-character symbol
token.  Offsets are byte offsets into the UTF-8 encoding of the source
text.

Tagging walks the word tokens left to right and consumes, at each
position, the longest run of consecutive word tokens whose space-joined
surface is in the lexicon (greedy longest match for multi-word units,
window capped at the longest key's word count).  Case variation is a
lookup-time policy: 'exact' matches the surface as-is, 'smart' also tries
the first-scalar-lowercased and, for all-caps surfaces, the fully
lowercased variant.

Annotated corpora serialize to XML reusing the lexicon element
vocabulary:

    corpus -> token* ; token[start, end] -> form, tag*
    tag -> lemma, pos, f*
"""

import re
from dataclasses import dataclass
from typing import Literal

from . import xmlio
from .fsa import CompiledLexicon, analyses_at, rank_lookup
from .model import FeatureAssignment, LexiconError, PartOfSpeech
from .xmlio import LexiconXmlError, escape_attr, escape_text

CasePolicy = Literal["exact", "smart"]

TOKEN_KINDS = ("word", "number", "symbol")


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    kind: str

    def __post_init__(self) -> None:
        if self.start < 0 or self.start >= self.end:
            raise LexiconError(f"bad token offsets {self.start}..{self.end}")
        if self.kind not in TOKEN_KINDS:
            raise LexiconError(f"unknown token kind {self.kind!r}")


@dataclass(frozen=True)
class WordTag:
    """A lexical analysis carried by a token: lemma, pos, features."""

    lemma: str
    pos: PartOfSpeech
    features: tuple[FeatureAssignment, ...] = ()


@dataclass(frozen=True)
class AnnotatedToken:
    """A token (or multi-word span) with its analyses; no tags = unknown."""

    token: Token
    tags: tuple[WordTag, ...] = ()


_TOKEN_RE = re.compile(r"(?P<word>[^\W\d_]+)|(?P<number>\d+)|(?P<symbol>\S)")


def _char_kind(c: str) -> str:
    if c.isalpha():
        return "word"
    if c.isdecimal():
        return "number"
    return "symbol"


def _reclassify(text: str, start: int, end: int):
    """Slow path for \\w-matched runs containing non-letter scalars."""
    i = start
    while i < end:
        kind = _char_kind(text[i])
        j = i + 1
        if kind != "symbol":
            while j < end and _char_kind(text[j]) == kind:
                j += 1
        yield kind, i, j
        i = j


def tokenize(text: str) -> list:
    """Split text into word/number/symbol tokens with byte offsets."""
    spans = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "word" and not m.group().isalpha():
            # regex word class admits a few numeric-letter scalars; re-split
            spans.extend(_reclassify(text, m.start(), m.end()))
        else:
            spans.append((kind, m.start(), m.end()))

    tokens = []
    if text.isascii():
        for kind, start, end in spans:
            tokens.append(Token(text[start:end], start, end, kind))
        return tokens
    char_pos = 0
    byte_pos = 0
    for kind, start, end in spans:
        byte_start = byte_pos + len(text[char_pos:start].encode("utf-8"))
        surface = text[start:end]
        byte_end = byte_start + len(surface.encode("utf-8"))
        tokens.append(Token(surface, byte_start, byte_end, kind))
        char_pos = end
        byte_pos = byte_end
    return tokens


def _tags_for(compiled: CompiledLexicon, surface: str) -> list:
    rank = rank_lookup(compiled, surface)
    if rank is None:
        return []
    return [WordTag(lemma, pos, features) for lemma, pos, features in analyses_at(compiled, rank)]


def _smart_variants(surface: str) -> list:
    variants = [surface]
    if surface and surface[0].isupper():
        lowered_first = surface[0].lower() + surface[1:]
        if lowered_first not in variants:
            variants.append(lowered_first)
    cased = [c for c in surface if c.lower() != c.upper()]
    if len(surface) > 1 and cased and all(c.isupper() for c in cased):
        lowered = surface.lower()
        if lowered not in variants:
            variants.append(lowered)
    return variants


def lookup(compiled: CompiledLexicon, surface: str, policy: CasePolicy = "smart") -> list:
    """All analyses of a surface under the case policy, exact matches first."""
    if policy == "exact":
        return _tags_for(compiled, surface)
    if policy != "smart":
        raise LexiconError(f"unknown case policy {policy!r}")
    tags = []
    seen = set()
    for variant in _smart_variants(surface):
        for tag in _tags_for(compiled, variant):
            if tag not in seen:
                seen.add(tag)
                tags.append(tag)
    return tags


def _max_key_words(compiled: CompiledLexicon) -> int:
    """Largest number of space-separated words in any accepted key."""
    if compiled.key_count == 0:
        return 1
    n = compiled.state_count
    NEG = -1 << 30
    best = [None] * n  # max spaces from state to any final, NEG if none

    stack = [(0, False)]
    while stack:
        state, expanded = stack.pop()
        if best[state] is not None:
            continue
        lo = compiled.first_transitions[state]
        hi = lo + compiled.transition_counts[state]
        if expanded:
            value = 0 if compiled.finals[state] else NEG
            for i in range(lo, hi):
                sub = best[compiled.targets[i]]
                if sub <= NEG:
                    continue
                cost = sub + (1 if compiled.labels[i] == 0x20 else 0)
                if cost > value:
                    value = cost
            best[state] = value
            continue
        stack.append((state, True))
        stack.extend(
            (compiled.targets[i], False)
            for i in range(lo, hi)
            if best[compiled.targets[i]] is None
        )
    spaces = best[0]
    return 1 if spaces is None or spaces <= NEG else spaces + 1


def tag_corpus(compiled: CompiledLexicon, text: str, policy: CasePolicy = "smart") -> list:
    """Tokenize and tag; multi-word units are matched greedily, longest first."""
    tokens = tokenize(text)
    cap = _max_key_words(compiled)
    cache: dict = {}

    def cached_tags(surface: str) -> tuple:
        tags = cache.get(surface)
        if tags is None:
            tags = tuple(lookup(compiled, surface, policy))
            cache[surface] = tags
        return tags

    annotated = []
    i = 0
    n = len(tokens)
    while i < n:
        token = tokens[i]
        if token.kind != "word":
            annotated.append(AnnotatedToken(token, ()))
            i += 1
            continue
        if cap > 1:
            run_end = i
            while run_end + 1 < n and run_end - i + 1 < cap and tokens[run_end + 1].kind == "word":
                run_end += 1
            matched = False
            for j in range(run_end, i, -1):
                surface = " ".join(tokens[k].surface for k in range(i, j + 1))
                tags = cached_tags(surface)
                if tags:
                    span = Token(surface, token.start, tokens[j].end, "word")
                    annotated.append(AnnotatedToken(span, tags))
                    i = j + 1
                    matched = True
                    break
            if matched:
                continue
        annotated.append(AnnotatedToken(token, cached_tags(token.surface)))
        i += 1
    return annotated


def write_annotated(annotated: list) -> bytes:
    """Serialize annotated tokens as canonical corpus XML."""
    out = [xmlio.XML_DECLARATION]
    if not annotated:
        out.append("<corpus></corpus>")
        return ("\n".join(out) + "\n").encode("utf-8")
    out.append("<corpus>")
    for item in annotated:
        token = item.token
        out.append(f"  <token start='{token.start}' end='{token.end}'>")
        out.append(f"    <form>{escape_text(token.surface)}</form>")
        for tag in item.tags:
            out.append("    <tag>")
            out.append(f"      <lemma>{escape_text(tag.lemma)}</lemma>")
            out.append(f"      <pos name='{escape_attr(tag.pos.name)}'/>")
            for f in tag.features:
                out.append(
                    f"      <f name='{escape_attr(f.name)}' value='{escape_attr(f.value)}'/>"
                )
            out.append("    </tag>")
        out.append("  </token>")
    out.append("</corpus>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _infer_kind(surface: str) -> str:
    first = surface[0]
    if first.isalpha():
        return "word"
    if first.isdecimal():
        return "number"
    return "symbol"


def read_annotated(document: bytes | str) -> list:
    """Parse corpus XML back into annotated tokens.

    Token kind is not serialized; it is re-derived from the surface's
    first character, which matches every token the tokenizer can produce.
    """
    root = xmlio.parse_tree(document)
    if root.tag != "corpus":
        raise LexiconXmlError(root.line, root.column, f"unknown element <{root.tag}>")
    annotated = []
    for token_elem in root.children:
        if token_elem.tag != "token":
            raise LexiconXmlError(
                token_elem.line, token_elem.column, f"unknown element <{token_elem.tag}>"
            )
        attrs = token_elem.attrs
        for required in ("start", "end"):
            if required not in attrs:
                raise LexiconXmlError(
                    token_elem.line,
                    token_elem.column,
                    f"<token> is missing required attribute \"{required}\"",
                )
        try:
            start, end = int(attrs["start"]), int(attrs["end"])
        except ValueError:
            raise LexiconXmlError(
                token_elem.line, token_elem.column, "token offsets must be decimal integers"
            )
        form = None
        tags = []
        for child in token_elem.children:
            if child.tag == "form":
                form = child.content()
            elif child.tag == "tag":
                lemma = None
                pos = None
                features = []
                names = set()
                for sub in child.children:
                    if sub.tag == "lemma":
                        lemma = sub.content()
                    elif sub.tag == "pos":
                        pos = sub.attrs.get("name")
                        if pos is None:
                            raise LexiconXmlError(
                                sub.line, sub.column, "<pos> is missing required attribute \"name\""
                            )
                    elif sub.tag == "f":
                        name = sub.attrs.get("name")
                        value = sub.attrs.get("value")
                        if name is None or value is None:
                            raise LexiconXmlError(
                                sub.line,
                                sub.column,
                                "<f> requires \"name\" and \"value\" attributes",
                            )
                        if name in names:
                            raise LexiconXmlError(sub.line, sub.column, "duplicate feature name")
                        names.add(name)
                        try:
                            features.append(FeatureAssignment(name, value))
                        except LexiconError as exc:
                            raise LexiconXmlError(sub.line, sub.column, str(exc)) from exc
                    else:
                        raise LexiconXmlError(
                            sub.line, sub.column, f"unknown element <{sub.tag}>"
                        )
                if lemma is None or pos is None:
                    raise LexiconXmlError(
                        child.line, child.column, "<tag> requires <lemma> and <pos>"
                    )
                try:
                    tags.append(WordTag(lemma, PartOfSpeech(pos), tuple(features)))
                except LexiconError as exc:
                    raise LexiconXmlError(child.line, child.column, str(exc)) from exc
            else:
                raise LexiconXmlError(
                    child.line, child.column, f"unknown element <{child.tag}>"
                )
        if form is None or not form:
            raise LexiconXmlError(
                token_elem.line, token_elem.column, "<token> requires a non-empty <form>"
            )
        try:
            token = Token(form, start, end, _infer_kind(form))
        except LexiconError as exc:
            raise LexiconXmlError(token_elem.line, token_elem.column, str(exc)) from exc
        deduped = []
        for tag in tags:
            if tag not in deduped:
                deduped.append(tag)
        annotated.append(AnnotatedToken(token, tuple(deduped)))
    return annotated
