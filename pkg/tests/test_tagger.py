import pytest
from hypothesis import given, strategies as st

from isaonto.errors import EmptySentenceError
from isaonto.tagger import detokenize, format_pretagged, parse_pretagged, tag, tokenize

from goldens import corpus_lines, lexicon


def tags(sentence, lex):
    return [t.tag for t in tag(sentence, lex)]


def test_copula_example(lex):
    assert format_pretagged(tag("John is a student", lex)) == "John_NNP is_VBX a_DT student_NN"


@pytest.mark.parametrize(
    "sentence, expected",
    [
        ("Swimming is healthy", ["VBG", "VBX", "JJ"]),
        ("Mary is quickly running", ["NNP", "VBX", "RB", "VBG"]),
        ("Kitty is the happiest cat", ["NNP", "VBX", "DT", "JJS", "NN"]),
        ("The dog is taller than the cat", ["DT", "NN", "VBX", "JJR", "IN", "DT", "NN"]),
    ],
)
def test_suffix_heuristics(lex, sentence, expected):
    assert tags(sentence, lex) == expected


def test_unknown_word_defaults_to_noun(lex):
    assert tags("Zorblat is a glorp", lex)[-1] == "NN"


def test_capitalized_inside_sentence_is_proper(lex):
    assert tags("Tom is a student of Harvard University", lex)[-2:] == ["NNP", "NNP"]


def test_tokenize_splits_punctuation():
    assert tokenize("Mary, as a student, is good.") == ["Mary", ",", "as", "a", "student", ",", "is", "good", "."]


def test_detokenize_inverts_tokenize():
    text = "Mary, as a student, is good."
    assert detokenize(tokenize(text)) == text


def test_pretagged_round_trip(lex):
    tokens = tag("Either John or Joe is student body member", lex)
    assert parse_pretagged(format_pretagged(tokens)) == tokens


def test_pretagged_maps_be_forms_to_vbx():
    tokens = parse_pretagged("Cats_NNS are_VBP animals_NNS")
    assert [t.tag for t in tokens] == ["NNS", "VBX", "NNS"]


def test_pretagged_multiword_lexeme():
    assert parse_pretagged("New_York_NNP is_VBZ big_JJ")[0].lexeme == "New York"


def test_pretagged_rejects_untagged_token():
    with pytest.raises(ValueError):
        parse_pretagged("John is a student")


@pytest.mark.parametrize("line", ["", "   "])
def test_empty_sentence(lex, line):
    with pytest.raises(EmptySentenceError):
        parse_pretagged(line)


def test_tagging_is_deterministic_on_corpus(lex):
    for name in ("trivial", "nontrivial"):
        for line in corpus_lines(name):
            assert tag(line.raw, lex) == tag(line.raw, lex)


@given(st.lists(st.sampled_from(["cat", "is", "a", "Tom", "happy", "running", ",", "and", "the"]), min_size=1, max_size=12))
def test_every_token_gets_one_tag(words):
    tokens = tag(" ".join(words), lexicon())
    assert len(tokens) == len(words)
    assert all(t.tag for t in tokens)
    assert [t.index for t in tokens] == list(range(len(tokens)))


def test_plural_example(lex):
    assert tags("Some women are smokers", lex) == ["DT", "NNS", "VBX", "NNS"]


def test_foreign_words_become_nouns(lex):
    assert tags("Glorblat is a vehicle", lex)[0] == "NN"


def test_empty_raw_sentence_is_rejected(lex):
    with pytest.raises(EmptySentenceError):
        tag("   ", lex)


def test_retagging_detokenized_corpus_is_stable(lex):
    for name in ("trivial", "nontrivial"):
        for line in corpus_lines(name):
            first = tag(line.raw, lex)
            again = tag(detokenize(first), lex)
            assert [t.tag for t in again] == [t.tag for t in first], line.raw
            assert "FW" not in {t.tag for t in first}
