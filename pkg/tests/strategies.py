"""Hypothesis strategies for model values, shared across test modules."""

import dataclasses

from hypothesis import strategies as st

from lexkit.model import (
    ExplicitForms,
    FeatureAssignment,
    InflectedForm,
    LemmaEntry,
    Lexicon,
    ParadigmRef,
    PartOfSpeech,
    WordFormEntry,
)

NAME_FIRST = "abcdefgz_é"
NAME_REST = "abcdefgz0123._-é"
# values stress the DELA escaping table and XML escaping, no line breaks
VALUE_ALPHABET = "ab xyz,.+:;=\\#'\"<>&0é!"
WORD_ALPHABET = "abcdefgé,.+\\#:;=!'"

names = st.builds(
    lambda first, rest: first + rest,
    st.sampled_from(NAME_FIRST),
    st.text(alphabet=NAME_REST, max_size=6),
)
values = st.text(alphabet=VALUE_ALPHABET, max_size=8)
xml_values = st.text(alphabet=VALUE_ALPHABET + "\n\t\r", max_size=8)

features = st.builds(FeatureAssignment, names, values)
feature_lists = st.lists(features, max_size=4, unique_by=lambda f: f.name).map(tuple)

words = st.text(alphabet=WORD_ALPHABET, min_size=1, max_size=8)
lemmas = st.lists(words, min_size=1, max_size=3).map(" ".join)
pos_values = st.builds(PartOfSpeech, names)

inflected_forms = st.builds(InflectedForm, lemmas, feature_lists)
explicit_inflections = st.lists(inflected_forms, min_size=1, max_size=4).map(
    lambda forms: ExplicitForms(tuple(forms))
)
paradigm_refs = st.builds(ParadigmRef, st.text(alphabet="ABCD0-", min_size=1, max_size=5))

wordform_entries = st.builds(WordFormEntry, lemmas, lemmas, pos_values, feature_lists)


def renumber(entries) -> tuple:
    return tuple(dataclasses.replace(e, id=i) for i, e in enumerate(entries))


def _lemma_entry(inflections):
    return st.builds(LemmaEntry, st.just(0), lemmas, pos_values, feature_lists, inflections)


lemma_lexica = st.lists(
    _lemma_entry(st.none() | paradigm_refs), max_size=6
).map(lambda entries: Lexicon("lemma", renumber(entries)))

mixed_lexica = st.lists(
    _lemma_entry(st.none() | explicit_inflections), max_size=6
).map(lambda entries: Lexicon("mixed", renumber(entries)))

wordform_lexica = st.lists(wordform_entries, max_size=8).map(
    lambda entries: Lexicon("wordform", tuple(entries))
)

lexica = st.one_of(lemma_lexica, mixed_lexica, wordform_lexica)
