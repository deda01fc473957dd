import numpy as np
import pytest

from scripts.errors import EmptySentence
from scripts.textmetrics import (
    TokenizedSentence,
    count_syllables,
    fres,
    fres_delta,
    line_fres,
    tokenize,
)


def sentence(words, syllables, sentences=1):
    return TokenizedSentence(tokens=('x',) * words, word_count=words,
                             syllable_count=syllables, sentence_count=sentences)


class TestTokenize:
    def test_detaches_final_period(self):
        result = tokenize("The cat sat.")
        assert result.tokens == ("The", "cat", "sat", ".")
        assert result.word_count == 3
        assert result.sentence_count == 1

    def test_empty_line(self):
        result = tokenize("")
        assert result.tokens == ()
        assert result.word_count == 0
        assert result.syllable_count == 0

    def test_space_separated_clitic_is_one_token(self):
        result = tokenize("the trader 's creditors")
        assert result.tokens == ("the", "trader", "'s", "creditors")
        assert result.word_count == 4

    def test_attached_clitic_stays_in_the_word(self):
        assert tokenize("the trader's creditors").tokens == ("the", "trader's", "creditors")

    def test_punctuation_runs_and_numbers(self):
        result = tokenize('("Hello," she said...) 42')
        assert result.tokens == ('("', 'Hello', '",', 'she', 'said', '...)', '42')
        assert result.word_count == 3

    def test_internal_punctuation_stays(self):
        assert tokenize("the U.S. state-run firm").tokens == ("the", "U.S", ".", "state-run", "firm")

    def test_quoted_word_is_not_a_clitic(self):
        assert tokenize("'hello'").tokens == ("'", "hello", "'")

    @pytest.mark.parametrize("line", [
        "The cat sat.",
        "the trader 's creditors , who ( mostly ) agreed ...",
        '("Hello," she said...) 42',
        "Ünïcödé wörds, ça va?",
        "   spaced   out\ttabs  ",
        "'s. ''quoted'' (’re)",
    ])
    def test_retokenizing_is_idempotent(self, line):
        first = tokenize(line)
        assert tokenize(first.text).tokens == first.tokens

    def test_unicode_letters_count_as_words(self):
        assert tokenize("café naïve").word_count == 2

    def test_invariants_on_random_lines(self):
        rng = np.random.default_rng(11)
        alphabet = list("abcdeiouy .,;'!?-()0123456789")
        for _ in range(500):
            line = "".join(rng.choice(alphabet, size=int(rng.integers(0, 40))))
            result = tokenize(line)
            assert result.word_count <= len(result.tokens)
            assert result.syllable_count >= result.word_count
            assert tokenize(result.text).tokens == result.tokens


class TestCountSyllables:
    @pytest.mark.parametrize("word, expected", [
        ("cat", 1),
        ("the", 1),
        ("beautiful", 3),
        ("happy", 2),
        ("table", 2),
        ("cake", 1),
        ("paper", 2),
        ("noon", 1),
        ("rhythm", 1),
        ("CAT", 1),
    ])
    def test_vowel_group_rule(self, word, expected):
        assert count_syllables(word) == expected

    @pytest.mark.parametrize("token", [".", "42", "", "...", "'"])
    def test_non_words_count_one(self, token):
        assert count_syllables(token) == 1

    def test_never_below_one(self):
        for word in ["nth", "b", "e", "le", "shh", "'s"]:
            assert count_syllables(word) >= 1


class TestFres:
    def test_three_one_syllable_words(self):
        assert fres(sentence(3, 3)).value == pytest.approx(119.19, abs=1e-9)

    def test_ten_words_twenty_syllables(self):
        assert fres(sentence(10, 20)).value == pytest.approx(27.485, abs=1e-9)

    def test_from_tokenized_line(self):
        assert fres(tokenize("The cat sat.")).value == pytest.approx(119.19, abs=1e-9)

    def test_not_clamped(self):
        assert fres(sentence(1, 1)).value > 100
        assert fres(sentence(30, 120)).value < 0

    def test_no_words_raises(self):
        with pytest.raises(EmptySentence):
            fres(tokenize("... 42 !"))

    def test_extra_syllable_lowers_score_by_fixed_step(self):
        for words in (1, 4, 13):
            drop = fres(sentence(words, words)).value - fres(sentence(words, words + 1)).value
            assert drop == pytest.approx(84.6 / words, abs=1e-9)

    def test_line_fres_matches_fres(self):
        assert line_fres("The cat sat.") == fres(tokenize("The cat sat.")).value


class TestFresDelta:
    def test_identical_sentences(self):
        a = tokenize("The cat sat on the mat.")
        assert fres_delta(a, a) == 0

    def test_difference_and_antisymmetry(self):
        a = tokenize("Notwithstanding considerable opposition, legislation passed.")
        b = tokenize("The law passed anyway.")
        assert fres_delta(a, b) == fres(b).value - fres(a).value
        assert fres_delta(a, b) == -fres_delta(b, a)
        assert fres_delta(a, b) > 0

    def test_propagates_empty_sentence(self):
        with pytest.raises(EmptySentence):
            fres_delta(tokenize("a cat"), tokenize(""))
