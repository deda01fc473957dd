"""
Sentence readability metrics - tokenization, syllables and Flesch Reading Ease

All functions are pure: they can be called from any number of workers.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from functools import lru_cache

from scripts.errors import EmptySentence

# Flesch Reading Ease coefficients
FRES_BASE = 206.835
FRES_WORD_WEIGHT = 1.015
FRES_SYLLABLE_WEIGHT = 84.6

VOWELS = frozenset("aeiouy")
APOSTROPHES = ("'", "’")
CLITICS = frozenset({"s", "re", "ve", "ll", "d", "m", "t"})


@dataclass(frozen=True)
class TokenizedSentence:
    """Tokens of one line plus the counts Flesch Reading Ease needs"""
    tokens: tuple
    word_count: int
    syllable_count: int
    sentence_count: int = 1

    @property
    def text(self):
        return " ".join(self.tokens)


@dataclass(frozen=True)
class FresScore:
    value: float


def _is_punct(ch):
    return unicodedata.category(ch)[0] in "PS"


def is_word(token: str) -> bool:
    """A token is a word iff it holds at least one letter"""
    return any(ch.isalpha() for ch in token)


def _split_chunk(chunk):
    start = 0
    while start < len(chunk) and _is_punct(chunk[start]):
        start += 1
    if start == len(chunk):
        # all punctuation: one token, so "..." survives retokenization
        return [chunk]

    end = len(chunk)
    while _is_punct(chunk[end - 1]):
        end -= 1

    lead, core, trail = chunk[:start], chunk[start:end], chunk[end:]

    # keep clitics like 's and 're whole
    if lead and lead[-1] in APOSTROPHES and core.lower() in CLITICS:
        core = lead[-1] + core
        lead = lead[:-1]

    return [part for part in (lead, core, trail) if part]


def tokenize(line: str) -> TokenizedSentence:
    """
    Split a line on whitespace, then detach punctuation runs from token edges.

    Already space-separated clitics ("'s", "'re") stay single tokens.
    An empty line gives no tokens and a word_count of 0.
    """
    tokens = []
    for chunk in line.split():
        tokens.extend(_split_chunk(chunk))

    words = [token for token in tokens if is_word(token)]
    return TokenizedSentence(
        tokens=tuple(tokens),
        word_count=len(words),
        syllable_count=sum(count_syllables(word) for word in words),
        sentence_count=1,
    )


def count_syllables(word: str) -> int:
    """
    Estimate syllables by counting vowel groups.

    A trailing silent "e" is dropped when the word has two or more vowel
    groups and does not end in consonant + "le". The result is never below 1.
    """
    word = word.lower()
    if not is_word(word):
        return 1

    groups = 0
    prev_was_vowel = False
    for ch in word:
        is_vowel = ch in VOWELS
        if is_vowel and not prev_was_vowel:
            groups += 1
        prev_was_vowel = is_vowel

    if word.endswith("e") and groups >= 2:
        consonant_le = (
            word.endswith("le")
            and len(word) >= 3
            and word[-3].isalpha()
            and word[-3] not in VOWELS
        )
        if not consonant_le:
            groups -= 1

    return max(1, groups)


def fres(sentence: TokenizedSentence) -> FresScore:
    """Flesch Reading Ease, unclamped; raises EmptySentence without words"""
    if sentence.word_count == 0:
        raise EmptySentence("sentence has no words")

    words_per_sentence = sentence.word_count / sentence.sentence_count
    syllables_per_word = sentence.syllable_count / sentence.word_count
    value = (
        FRES_BASE
        - FRES_WORD_WEIGHT * words_per_sentence
        - FRES_SYLLABLE_WEIGHT * syllables_per_word
    )
    return FresScore(value)


def fres_delta(source: TokenizedSentence, target: TokenizedSentence) -> float:
    """How much easier target reads than source (negative when harder)"""
    return fres(target).value - fres(source).value


@lru_cache(maxsize=1 << 16)
def line_fres(line: str) -> float:
    """Memoized FRES of a raw line; repeated sentences are common in web corpora"""
    return fres(tokenize(line)).value
