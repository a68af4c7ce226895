"""Lexical masks: underspecified word tags used as match predicates.

A mask can constrain the surface form, the lemma, the part of speech and
any number of features; absent constraints match anything.  Patterns are
finite automata over masks, simulated nondeterministically over annotated
tokens (masks do not form a finite alphabet, so no determinization).

Mask text syntax (escaping as in the DELA formats):

    <lemma.pos:name=value;name=value>   any part may be omitted
    bareword                            surface-form-only mask

Examples: ``<game.noun:number=plural>``, ``<.noun>``, ``<:number=plural>``,
``games``.
"""

from dataclasses import dataclass

from . import dela
from .dela import _Cursor, _decode, _parse_pair
from .model import FeatureAssignment, LexiconError, _check_unique_names


class MaskSyntaxError(LexiconError):
    pass


@dataclass(frozen=True)
class LexicalMask:
    form: str | None = None
    lemma: str | None = None
    pos: str | None = None
    features: tuple[FeatureAssignment, ...] = ()

    def __post_init__(self) -> None:
        _check_unique_names(self.features, "mask")


@dataclass(frozen=True)
class MaskPattern:
    """Finite automaton over masks; transitions are (from, mask, to)."""

    states: int
    start: int
    finals: frozenset
    transitions: tuple

    def __post_init__(self) -> None:
        if self.states < 1:
            raise LexiconError("pattern needs at least one state")
        if not (0 <= self.start < self.states):
            raise LexiconError("start state out of range")
        if not self.finals:
            raise LexiconError("pattern needs at least one final state")
        for state in self.finals:
            if not (0 <= state < self.states):
                raise LexiconError("final state out of range")
        for source, _, target in self.transitions:
            if not (0 <= source < self.states and 0 <= target < self.states):
                raise LexiconError("transition state out of range")


@dataclass(frozen=True)
class MatchSpan:
    first_token: int
    last_token: int

    def __post_init__(self) -> None:
        if self.first_token > self.last_token:
            raise LexiconError("span ends before it starts")


def mask_matches(mask: LexicalMask, annotated_token) -> bool:
    """True when the token satisfies every constraint of the mask.

    Tag-level constraints (lemma, pos, features) are existential over the
    token's tags; the form constraint compares against the surface, so a
    form-only mask also matches untagged tokens.
    """
    if mask.form is not None and annotated_token.token.surface != mask.form:
        return False
    if mask.lemma is None and mask.pos is None and not mask.features:
        return True
    for tag in annotated_token.tags:
        if mask.lemma is not None and tag.lemma != mask.lemma:
            continue
        if mask.pos is not None and tag.pos.name != mask.pos:
            continue
        values = {f.name: f.value for f in tag.features}
        if all(values.get(f.name) == f.value for f in mask.features):
            return True
    return False


def parse_mask(text: str) -> LexicalMask:
    """Parse mask text; a bare word is a surface-form-only mask."""
    if not text:
        raise MaskSyntaxError("empty mask")
    try:
        decoded = _decode(text)
    except ValueError as exc:
        raise MaskSyntaxError(str(exc)) from exc
    if decoded[0] != ("<", False):
        form = "".join(ch for ch, _ in decoded)
        return LexicalMask(form=form)
    if decoded[-1] != (">", False):
        raise MaskSyntaxError(f"mask {text!r} does not end with '>'")
    cursor = _Cursor(decoded[1:-1])
    lemma, sep = cursor.take_until(".:")
    pos = None
    if sep == ".":
        pos, sep = cursor.take_until(":")
    features = []
    if sep == ":":
        next_sep: str | None = ";"
        while next_sep == ";":
            try:
                pair, next_sep = _parse_pair(cursor, ";", 0)
            except dela.DelaParseError as exc:
                raise MaskSyntaxError(f"mask {text!r}: {exc.reason}") from exc
            features.append(pair)
    try:
        return LexicalMask(
            form=None,
            lemma=lemma or None,
            pos=pos or None,
            features=tuple(features),
        )
    except LexiconError as exc:
        raise MaskSyntaxError(str(exc)) from exc


def parse_pattern_line(line: str) -> MaskPattern:
    """One pattern per line: whitespace-separated mask fields."""
    fields = dela.split_fields(line)
    if not fields:
        raise MaskSyntaxError("empty pattern line")
    return sequence_pattern([parse_mask(field) for field in fields])


def sequence_pattern(masks: list) -> MaskPattern:
    """Linear automaton matching the masks in sequence."""
    if not masks:
        raise LexiconError("a sequence pattern needs at least one mask")
    transitions = tuple((i, mask, i + 1) for i, mask in enumerate(masks))
    return MaskPattern(len(masks) + 1, 0, frozenset({len(masks)}), transitions)


def search(pattern: MaskPattern, annotated: list) -> list:
    """All leftmost-longest matches, one per accepting start position.

    Every start index is tried; the longest accepting span at each start
    is reported, so overlapping matches from different starts coexist.
    Zero-length matches (a final start state) are not reported: a span
    covers at least one token.
    """
    by_source: dict = {}
    for source, mask, target in pattern.transitions:
        by_source.setdefault(source, []).append((mask, target))
    finals = pattern.finals
    spans = []
    n = len(annotated)
    for start in range(n):
        states = {pattern.start}
        last_hit = None
        position = start
        while states and position < n:
            token = annotated[position]
            following = set()
            for state in states:
                for mask, target in by_source.get(state, ()):
                    if mask_matches(mask, token):
                        following.add(target)
            states = following
            if states & finals:
                last_hit = position
            position += 1
        if last_hit is not None:
            spans.append(MatchSpan(start, last_hit))
    return spans
