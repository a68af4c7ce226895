"""Core domain types shared by every lexicon model.

Three entry granularities coexist:

* lemma-based: entries are lemmas, inflection given by paradigm name
  (or absent),
* mixed: lemma entries embed their full list of inflected forms,
* wordform-based: entries are inflected forms repeating the lemma-level
  information.

All types are immutable values; invariants are checked at construction
time so that downstream code can rely on well-formed data.
"""

from dataclasses import dataclass, field


class LexiconError(ValueError):
    """A domain invariant does not hold."""


_KNOWN_GOOD_NAMES: set = set()


def _check_token_name(name: str, what: str) -> None:
    """Validate a token string used as an XML-attribute-style name."""
    if name in _KNOWN_GOOD_NAMES:
        return
    if not name:
        raise LexiconError(f"{what} must be non-empty")
    first = name[0]
    if not (first.isalpha() or first == "_"):
        raise LexiconError(f"{what} {name!r} must start with a letter or underscore")
    for ch in name[1:]:
        if not (ch.isalpha() or ch.isdigit() or ch in "._-"):
            raise LexiconError(f"{what} {name!r} contains invalid character {ch!r}")
    # names repeat across entries (number, gender, noun, ...): memoize
    if len(_KNOWN_GOOD_NAMES) < 65536:
        _KNOWN_GOOD_NAMES.add(name)


def _check_unique_names(features: tuple["FeatureAssignment", ...], owner: str) -> None:
    seen = set()
    for f in features:
        if f.name in seen:
            raise LexiconError(f"duplicate feature name {f.name!r} in {owner}")
        seen.add(f.name)


@dataclass(frozen=True)
class FeatureAssignment:
    """A name=value pair attached to an entry, inflected form, tag or mask."""

    name: str
    value: str

    def __post_init__(self) -> None:
        _check_token_name(self.name, "feature name")


@dataclass(frozen=True)
class PartOfSpeech:
    name: str

    def __post_init__(self) -> None:
        _check_token_name(self.name, "part-of-speech name")


@dataclass(frozen=True)
class InflectedForm:
    """One surface form plus its inflectional features (number, gender, ...)."""

    form: str
    features: tuple[FeatureAssignment, ...] = ()

    def __post_init__(self) -> None:
        if not self.form:
            raise LexiconError("inflected form must be non-empty")
        _check_unique_names(self.features, f"inflected form {self.form!r}")


@dataclass(frozen=True)
class ParadigmRef:
    """Inflection expressed as a reference to a named paradigm."""

    paradigm: str

    def __post_init__(self) -> None:
        if not self.paradigm or any(c.isspace() for c in self.paradigm):
            raise LexiconError("paradigm name must be non-empty without whitespace")


@dataclass(frozen=True)
class ExplicitForms:
    """Inflection expressed as the complete list of inflected forms."""

    forms: tuple[InflectedForm, ...]

    def __post_init__(self) -> None:
        if not self.forms:
            raise LexiconError("explicit inflection requires at least one form")


#: How a lemma entry inflects: by paradigm, by explicit form list, or not at all.
Inflection = ParadigmRef | ExplicitForms | None


def _check_lemma_spacing(lemma: str, what: str) -> None:
    # multi-word units use single internal spaces; any other whitespace
    # layout (leading/trailing/doubled spaces, tabs, ...) is malformed
    if not lemma:
        raise LexiconError(f"{what} must be non-empty")
    if lemma != " ".join(lemma.split()):
        raise LexiconError(
            f"{what} {lemma!r} must use single internal spaces only"
        )


@dataclass(frozen=True)
class LemmaEntry:
    """A lemma with its part of speech, lemma-level features and inflection.

    ``id`` is a synthetic stable identifier assigned at load/create time.
    It is excluded from equality: two entries are structurally equal when
    their linguistic content matches, regardless of id.
    """

    id: int = field(compare=False)
    lemma: str
    pos: PartOfSpeech
    features: tuple[FeatureAssignment, ...] = ()
    inflection: Inflection = None

    def __post_init__(self) -> None:
        if self.id < 0:
            raise LexiconError("entry id must be non-negative")
        _check_lemma_spacing(self.lemma, "lemma")
        _check_unique_names(self.features, f"entry {self.lemma!r}")


@dataclass(frozen=True)
class WordFormEntry:
    """One word form with its lemma, part of speech and merged features."""

    form: str
    lemma: str
    pos: PartOfSpeech
    features: tuple[FeatureAssignment, ...] = ()

    def __post_init__(self) -> None:
        if not self.form:
            raise LexiconError("word form must be non-empty")
        if not self.lemma:
            raise LexiconError("lemma must be non-empty")
        _check_unique_names(self.features, f"word form {self.form!r}")


LEXICON_KINDS = ("lemma", "mixed", "wordform")


@dataclass(frozen=True)
class Lexicon:
    """A whole dictionary in one of the three models.

    kind=lemma holds LemmaEntry values without explicit form lists,
    kind=mixed holds LemmaEntry values without paradigm references,
    kind=wordform holds WordFormEntry values.
    """

    kind: str
    entries: tuple = ()

    def __post_init__(self) -> None:
        if self.kind not in LEXICON_KINDS:
            raise LexiconError(f"unknown lexicon kind {self.kind!r}")
        if self.kind == "wordform":
            for e in self.entries:
                if not isinstance(e, WordFormEntry):
                    raise LexiconError("wordform lexicon requires WordFormEntry values")
            return
        ids = set()
        for e in self.entries:
            if not isinstance(e, LemmaEntry):
                raise LexiconError(f"{self.kind} lexicon requires LemmaEntry values")
            if e.id in ids:
                raise LexiconError(f"duplicate entry id {e.id}")
            ids.add(e.id)
            if self.kind == "lemma" and isinstance(e.inflection, ExplicitForms):
                raise LexiconError(
                    f"entry {e.id} uses explicit forms in a lemma-based lexicon"
                )
            if self.kind == "mixed" and isinstance(e.inflection, ParadigmRef):
                raise LexiconError(
                    f"entry {e.id} uses a paradigm reference in a mixed lexicon"
                )

    def __len__(self) -> int:
        return len(self.entries)


def merge_features(
    lemma_features: tuple[FeatureAssignment, ...] | list,
    inflectional_features: tuple[FeatureAssignment, ...] | list,
) -> tuple[FeatureAssignment, ...]:
    """Union of lemma-level and inflectional features.

    On a name collision the inflectional value wins; output keeps the
    lemma-level order first, then the inflectional features that did not
    override anything.
    """
    _check_unique_names(tuple(lemma_features), "lemma features")
    _check_unique_names(tuple(inflectional_features), "inflectional features")
    override = {f.name: f for f in inflectional_features}
    merged = [override.pop(f.name, f) for f in lemma_features]
    merged.extend(f for f in inflectional_features if f.name in override)
    return tuple(merged)
