import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from scripts.corpus import SentencePair


# Same number of words on both sides, so each FRES gap is
# 84.6 * (syllable difference) / (word count).
SELECTOR_FIXTURE = [
    # 6 words, 7 vs 6 syllables: gain 14.1
    ("the happy cat sat on mat", "the big cat sat on mat"),
    # 9 words, 10 vs 9 syllables: gain 9.4
    ("the happy cat sat on the mat with me", "the big cat sat on the mat with me"),
    # 5 words, 6 vs 5 syllables: gain 16.92
    ("the happy dog ran far", "the big dog ran far"),
    # 10 words, target is harder: gain -8.46
    ("the big red dog ran to the box at noon", "the big red dog ran to the paper at noon"),
]


@pytest.fixture
def selector_pairs():
    return [SentencePair(source, target, i) for i, (source, target) in enumerate(SELECTOR_FIXTURE)]


@pytest.fixture
def write_tsv(tmp_path):
    """Write (source, target) rows or raw lines to a TSV file and return its path"""
    def _write(rows, name='pairs.tsv'):
        path = tmp_path / name
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            for row in rows:
                f.write(row + '\n' if isinstance(row, str) else f"{row[0]}\t{row[1]}\n")
        return path
    return _write
