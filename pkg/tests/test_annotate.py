import random

import pytest
from hypothesis import given, strategies as st

import oracles
from lexkit.annotate import (
    AnnotatedToken,
    Token,
    WordTag,
    lookup,
    read_annotated,
    tag_corpus,
    tokenize,
    write_annotated,
)
from lexkit.dela import parse_delaf
from lexkit.fsa import compile
from lexkit.model import FeatureAssignment, LexiconError, PartOfSpeech
from lexkit.xmlio import LexiconXmlError

GAME_INDEX = compile(
    parse_delaf(
        "game,game.noun+reliability=1:number=singular\n"
        "games,game.noun+reliability=1:number=plural\n"
    )
)

MWU_INDEX = compile(parse_delaf("hot,hot.adjective\ndog,dog.noun\nhot dog,hot dog.noun\n"))

texts = st.text(alphabet="ab c1². \n\tétÅ!?-_Ⅷ,", max_size=40)


class TestTokenize:
    def test_words_and_symbol(self):
        tokens = tokenize("The games!")
        assert [(t.surface, t.start, t.end, t.kind) for t in tokens] == [
            ("The", 0, 3, "word"),
            ("games", 4, 9, "word"),
            ("!", 9, 10, "symbol"),
        ]

    def test_empty(self):
        assert tokenize("") == []

    def test_two_words(self):
        assert [t.surface for t in tokenize("hot dog")] == ["hot", "dog"]
        assert [t.kind for t in tokenize("hot dog")] == ["word", "word"]

    def test_numbers_and_symbols(self):
        tokens = tokenize("12 cats, 3 dogs...")
        assert [(t.surface, t.kind) for t in tokens] == [
            ("12", "number"),
            ("cats", "word"),
            (",", "symbol"),
            ("3", "number"),
            ("dogs", "word"),
            (".", "symbol"),
            (".", "symbol"),
            (".", "symbol"),
        ]

    def test_byte_offsets_for_multibyte_text(self):
        text = "é café 42"
        tokens = tokenize(text)
        raw = text.encode("utf-8")
        for token in tokens:
            assert raw[token.start : token.end].decode("utf-8") == token.surface
        assert [t.surface for t in tokens] == ["é", "café", "42"]
        assert tokens[1].start == 3

    def test_numeric_letter_scalars_are_symbols(self):
        # ² and Ⅷ are numeric but not letters nor decimal digits
        assert [(t.surface, t.kind) for t in tokenize("x² Ⅷy")] == [
            ("x", "word"),
            ("²", "symbol"),
            ("Ⅷ", "symbol"),
            ("y", "word"),
        ]

    def test_underscore_is_a_symbol(self):
        assert [t.kind for t in tokenize("a_b")] == ["word", "symbol", "word"]

    @given(texts)
    def test_matches_character_classification_oracle(self, text):
        got = [(t.kind, t.surface) for t in tokenize(text)]
        expected = [(kind, text[i:j]) for kind, i, j in oracles.classify_chars(text)]
        assert got == expected

    @given(texts)
    def test_slices_reconstruct_text(self, text):
        raw = text.encode("utf-8")
        position = 0
        for token in tokenize(text):
            assert token.start >= position
            assert raw[position : token.start].decode("utf-8").strip() == ""
            assert raw[token.start : token.end].decode("utf-8") == token.surface
            position = token.end
        assert raw[position:].decode("utf-8").strip() == ""


class TestLookup:
    def test_exact_hit(self):
        tags = lookup(GAME_INDEX, "games", "exact")
        assert tags == [
            WordTag(
                "game",
                PartOfSpeech("noun"),
                (FeatureAssignment("reliability", "1"), FeatureAssignment("number", "plural")),
            )
        ]

    def test_smart_capitalized(self):
        assert lookup(GAME_INDEX, "Games", "smart") == lookup(GAME_INDEX, "games", "exact")

    def test_exact_capitalized_misses(self):
        assert lookup(GAME_INDEX, "Games", "exact") == []

    def test_smart_all_caps(self):
        assert lookup(GAME_INDEX, "GAMES", "smart") == lookup(GAME_INDEX, "games", "exact")

    def test_smart_never_uppercases(self):
        index = compile(parse_delaf("mcdonald,mcdonald.noun\n"))
        assert lookup(index, "McDonald", "smart") == []

    def test_single_uppercase_letter_not_fully_lowered(self):
        # length-1 surfaces only get the first-scalar rule
        index = compile(parse_delaf("a,a.determiner\n"))
        assert lookup(index, "A", "smart") == lookup(index, "a", "exact")

    def test_smart_contains_exact(self):
        index = compile(parse_delaf("games,game.noun\nGames,Games.name\n"))
        exact = lookup(index, "Games", "exact")
        smart = lookup(index, "Games", "smart")
        assert smart[: len(exact)] == exact
        assert len(smart) == 2

    def test_unknown_word(self):
        assert lookup(GAME_INDEX, "xyzzy", "smart") == []

    def test_bad_policy(self):
        with pytest.raises(LexiconError):
            lookup(GAME_INDEX, "games", "fuzzy")


class TestTagCorpus:
    def test_single_word(self):
        annotated = tag_corpus(GAME_INDEX, "games", "smart")
        assert len(annotated) == 1
        assert annotated[0].token.surface == "games"
        assert len(annotated[0].tags) == 1

    def test_unknown_word_gets_no_tags(self):
        annotated = tag_corpus(GAME_INDEX, "xyzzy", "smart")
        assert annotated[0].tags == ()

    def test_multiword_unit_greedy(self):
        annotated = tag_corpus(MWU_INDEX, "hot dog", "smart")
        assert len(annotated) == 1
        token = annotated[0].token
        assert token.surface == "hot dog"
        assert (token.start, token.end) == (0, 7)
        assert annotated[0].tags[0].lemma == "hot dog"

    def test_multiword_normalizes_inner_whitespace(self):
        annotated = tag_corpus(MWU_INDEX, "hot   dog", "smart")
        assert annotated[0].token.surface == "hot dog"
        assert (annotated[0].token.start, annotated[0].token.end) == (0, 9)

    def test_symbol_breaks_multiword_window(self):
        annotated = tag_corpus(MWU_INDEX, "hot, dog", "smart")
        assert [a.token.surface for a in annotated] == ["hot", ",", "dog"]

    def test_number_and_symbol_tokens_pass_untagged(self):
        index = compile(parse_delaf("42,42.numeral\n"))
        annotated = tag_corpus(index, "42", "smart")
        assert annotated[0].token.kind == "number"
        assert annotated[0].tags == ()

    def test_without_mwu_equals_per_token_lookup(self):
        text = "The games are games"
        annotated = tag_corpus(GAME_INDEX, text, "smart")
        tokens = tokenize(text)
        assert [a.token for a in annotated] == tokens
        for item, token in zip(annotated, tokens):
            assert list(item.tags) == lookup(GAME_INDEX, token.surface, "smart")

    def test_offsets_strictly_increasing_within_bounds(self):
        text = "hot dog ate a hot hot dog!"
        annotated = tag_corpus(MWU_INDEX, text, "smart")
        position = 0
        raw = text.encode("utf-8")
        for item in annotated:
            assert item.token.start >= position
            assert item.token.end <= len(raw)
            span = raw[item.token.start : item.token.end].decode("utf-8")
            assert span.split() == item.token.surface.split()
            position = item.token.end

    def test_greedy_matches_bruteforce_oracle(self):
        rng = random.Random(23)
        vocabulary = ["a", "b", "ab", "a b", "a b a", "b a"]
        index = compile(parse_delaf("".join(f"{v},{v}.x\n" for v in vocabulary)))
        known = set(vocabulary)
        for _ in range(200):
            words = [rng.choice(["a", "b", "c", ","]) for _ in range(rng.randint(0, 12))]
            text = " ".join(words)
            annotated = tag_corpus(index, text, "exact")
            token_list = [(t.kind, t.surface) for t in tokenize(text)]
            expected = oracles.greedy_tag_spans(token_list, known, 3)
            assert [a.token.surface for a in annotated] == [s for _, _, s in expected]


class TestAnnotatedXml:
    def test_single_token_structure(self):
        annotated = tag_corpus(GAME_INDEX, "games", "smart")
        data = write_annotated(annotated)
        assert b"<token start='0' end='5'>" in data
        assert b"<form>games</form>" in data
        assert b"<lemma>game</lemma>" in data
        assert b"<pos name='noun'/>" in data
        assert b"<f name='reliability' value='1'/>" in data
        assert b"<f name='number' value='plural'/>" in data

    def test_matches_inline_reference_document(self):
        annotated = tag_corpus(GAME_INDEX, "games", "smart")
        inline = (
            b"<corpus><token start='0' end='5'><form>games</form>"
            b"<tag><lemma>game</lemma><pos name='noun'/>"
            b"<f name='reliability' value='1'/><f name='number' value='plural'/>"
            b"</tag></token></corpus>"
        )
        assert read_annotated(inline) == annotated
        assert read_annotated(write_annotated(annotated)) == annotated

    def test_empty(self):
        assert write_annotated([]) == b'<?xml version="1.0" encoding="UTF-8"?>\n<corpus></corpus>\n'
        assert read_annotated(b"<corpus></corpus>") == []

    def test_round_trip_random(self):
        rng = random.Random(97)
        surfaces = ["game", "games", "Dog", "1", "42", "!", "?", "hot dog", "é"]
        for _ in range(1000):
            annotated = []
            position = 0
            for _ in range(rng.randint(0, 6)):
                surface = rng.choice(surfaces)
                first = surface[0]
                kind = "word" if first.isalpha() else "number" if first.isdecimal() else "symbol"
                start = position + rng.randint(0, 3)
                end = start + len(surface.encode("utf-8"))
                position = end
                tags = []
                for _ in range(rng.randint(0, 2)):
                    tags.append(
                        WordTag(
                            rng.choice(("game", "dog")),
                            PartOfSpeech(rng.choice(("noun", "verb"))),
                            (FeatureAssignment("number", rng.choice(("singular", "plural"))),),
                        )
                    )
                deduped = tuple(dict.fromkeys(tags))
                annotated.append(AnnotatedToken(Token(surface, start, end, kind), deduped))
            assert read_annotated(write_annotated(annotated)) == annotated

    def test_reader_rejects_bad_documents(self):
        with pytest.raises(LexiconXmlError):
            read_annotated(b"<corpus><thing/></corpus>")
        with pytest.raises(LexiconXmlError):
            read_annotated(b"<corpus><token start='0'><form>x</form></token></corpus>")
        with pytest.raises(LexiconXmlError):
            read_annotated(b"<corpus><token start='0' end='1'></token></corpus>")
        with pytest.raises(LexiconXmlError):
            read_annotated(b"<corpus><token start='3' end='1'><form>x</form></token></corpus>")
