import pytest
from hypothesis import given

import strategies as strat
from lexkit.model import (
    ExplicitForms,
    FeatureAssignment,
    InflectedForm,
    LemmaEntry,
    Lexicon,
    LexiconError,
    ParadigmRef,
    PartOfSpeech,
    WordFormEntry,
    merge_features,
)


def fa(name, value):
    return FeatureAssignment(name, value)


class TestMergeFeatures:
    def test_disjoint_union(self):
        merged = merge_features((fa("reliability", "1"),), (fa("number", "plural"),))
        assert merged == (fa("reliability", "1"), fa("number", "plural"))

    def test_empty_identity(self):
        assert merge_features((), ()) == ()

    def test_inflectional_value_wins(self):
        merged = merge_features((fa("number", "singular"),), (fa("number", "plural"),))
        assert merged == (fa("number", "plural"),)

    def test_override_keeps_lemma_position(self):
        merged = merge_features(
            (fa("a", "1"), fa("number", "singular"), fa("b", "2")),
            (fa("number", "plural"), fa("c", "3")),
        )
        assert merged == (fa("a", "1"), fa("number", "plural"), fa("b", "2"), fa("c", "3"))

    @given(strat.feature_lists, strat.feature_lists)
    def test_size_bound(self, lemma_feats, infl_feats):
        merged = merge_features(lemma_feats, infl_feats)
        assert len(merged) <= len(lemma_feats) + len(infl_feats)
        disjoint = not ({f.name for f in lemma_feats} & {f.name for f in infl_feats})
        assert (len(merged) == len(lemma_feats) + len(infl_feats)) == disjoint

    @given(strat.feature_lists)
    def test_idempotent_when_subset(self, lemma_feats):
        subset = lemma_feats[: len(lemma_feats) // 2 + 1] if lemma_feats else ()
        assert merge_features(lemma_feats, subset) == lemma_feats

    @given(strat.feature_lists, strat.feature_lists)
    def test_names_unique_and_inflectional_values_win(self, lemma_feats, infl_feats):
        merged = merge_features(lemma_feats, infl_feats)
        names = [f.name for f in merged]
        assert len(names) == len(set(names))
        wanted = {f.name: f.value for f in lemma_feats}
        wanted.update({f.name: f.value for f in infl_feats})
        assert {f.name: f.value for f in merged} == wanted

    def test_duplicate_input_rejected(self):
        with pytest.raises(LexiconError):
            merge_features((fa("x", "1"), fa("x", "2")), ())


class TestInvariants:
    def test_feature_name_rules(self):
        with pytest.raises(LexiconError):
            FeatureAssignment("", "v")
        with pytest.raises(LexiconError):
            FeatureAssignment("has space", "v")
        with pytest.raises(LexiconError):
            FeatureAssignment("1leading", "v")
        assert FeatureAssignment("number", "").value == ""

    def test_pos_name_rules(self):
        with pytest.raises(LexiconError):
            PartOfSpeech("")
        assert PartOfSpeech("noun").name == "noun"

    def test_inflected_form_nonempty(self):
        with pytest.raises(LexiconError):
            InflectedForm("", ())

    def test_duplicate_feature_names(self):
        with pytest.raises(LexiconError):
            InflectedForm("x", (fa("n", "1"), fa("n", "2")))
        with pytest.raises(LexiconError):
            WordFormEntry("x", "y", PartOfSpeech("noun"), (fa("n", "1"), fa("n", "2")))

    def test_lemma_spacing(self):
        LemmaEntry(0, "hot dog", PartOfSpeech("noun"))
        for bad in ("", " x", "x ", "a  b"):
            with pytest.raises(LexiconError):
                LemmaEntry(0, bad, PartOfSpeech("noun"))

    def test_explicit_forms_nonempty(self):
        with pytest.raises(LexiconError):
            ExplicitForms(())

    def test_paradigm_ref_name(self):
        with pytest.raises(LexiconError):
            ParadigmRef("")
        with pytest.raises(LexiconError):
            ParadigmRef("a b")

    def test_negative_id(self):
        with pytest.raises(LexiconError):
            LemmaEntry(-1, "x", PartOfSpeech("noun"))


class TestLexiconKinds:
    def entry(self, entry_id, inflection):
        return LemmaEntry(entry_id, "game", PartOfSpeech("noun"), (), inflection)

    def test_lemma_kind_forbids_explicit(self):
        explicit = ExplicitForms((InflectedForm("games"),))
        with pytest.raises(LexiconError):
            Lexicon("lemma", (self.entry(0, explicit),))

    def test_mixed_kind_forbids_paradigm_ref(self):
        with pytest.raises(LexiconError):
            Lexicon("mixed", (self.entry(0, ParadigmRef("N1")),))

    def test_duplicate_ids(self):
        with pytest.raises(LexiconError):
            Lexicon("lemma", (self.entry(3, None), self.entry(3, None)))

    def test_kind_entry_type_mismatch(self):
        wf = WordFormEntry("games", "game", PartOfSpeech("noun"))
        with pytest.raises(LexiconError):
            Lexicon("lemma", (wf,))
        with pytest.raises(LexiconError):
            Lexicon("wordform", (self.entry(0, None),))

    def test_unknown_kind(self):
        with pytest.raises(LexiconError):
            Lexicon("sense", ())

    def test_ids_excluded_from_equality(self):
        a = self.entry(0, ParadigmRef("N1"))
        b = self.entry(42, ParadigmRef("N1"))
        assert a == b
        assert Lexicon("lemma", (a,)) == Lexicon("lemma", (b,))
