"""
Paraphrase corpus I/O, seeded reservoir sampling and corpus statistics

Readers stream: memory grows with the vocabulary (stats) or the sample size
(sampling), never with the corpus.
"""

from __future__ import annotations

import gzip
import io
import logging
import math
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from functools import reduce
from itertools import zip_longest

import numpy as np
import pandas as pd
from tqdm import tqdm

# Add parent directory to path for config import
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from config import RUNTIME_CONFIG
from scripts.errors import (
    AlignmentMismatch,
    ConfigError,
    EmptyCorpus,
    InputError,
    InvalidUtf8,
    MalformedLine,
)
from scripts.textmetrics import tokenize
from scripts.workers import chunked, ordered_map

logger = logging.getLogger(__name__)

MAX_LOGGED_ISSUES = 10

# seeds are 64-bit; negative values wrap two's complement style
SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SentencePair:
    """One paraphrase record; ordinal is its 0-based line position"""
    source: str
    target: str
    ordinal: int


def pair_sides(pair):
    """(complex, simple) for oriented pairs, (source, target) for raw ones"""
    if hasattr(pair, 'complex'):
        return pair.complex, pair.simple
    return pair.source, pair.target


# =============================================================================
# FILE HANDLING
# =============================================================================

@contextmanager
def open_input(path):
    """Open a byte stream; '-' is stdin and '.gz' is decompressed on the fly"""
    path = str(path)
    if path == '-':
        yield sys.stdin.buffer
        return
    try:
        handle = gzip.open(path, 'rb') if path.endswith('.gz') else open(path, 'rb')
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    with handle:
        yield handle


@contextmanager
def open_output(path):
    """Open a UTF-8, LF text stream; '-' is stdout"""
    path = str(path)
    if path == '-':
        sys.stdout.flush()
        wrapper = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', newline='\n')
        try:
            yield wrapper
        finally:
            wrapper.flush()
            wrapper.detach()
        return
    try:
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        handle = open(path, 'w', encoding='utf-8', newline='\n')
    except OSError as e:
        raise InputError(f"cannot write {path}: {e}") from e
    with handle:
        yield handle


def read_lines(path):
    """Read a plain text file into a list of lines without their newlines"""
    with open_input(path) as stream:
        try:
            return [raw.decode('utf-8').rstrip('\n') for raw in stream]
        except UnicodeDecodeError as e:
            raise InputError(f"{path} is not valid UTF-8: {e}") from e


# =============================================================================
# READING PAIRS
# =============================================================================

def parse_line(raw, line_number, ordinal):
    """Parse one TSV record; raises MalformedLine or InvalidUtf8"""
    if raw.endswith(b'\n'):
        raw = raw[:-1]
    try:
        line = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        raise InvalidUtf8(line_number, f"invalid UTF-8 at byte {e.start}") from e

    fields = line.split('\t')
    if len(fields) != 2:
        raise MalformedLine(line_number, f"expected 1 tab, found {len(fields) - 1}")
    source, target = fields
    if not source or not target:
        raise MalformedLine(line_number, "empty field")
    return SentencePair(source, target, ordinal)


class PairReader:
    """Stream SentencePairs out of a TSV byte stream, skipping bad lines"""

    def __init__(self, stream, progress=False, desc="Reading pairs"):
        self.stream = stream
        self.progress = progress
        self.desc = desc
        self.issues = []
        self.stats = {
            'read': 0,
            'malformed': 0,
            'invalid_utf8': 0
        }

    def _record(self, issue):
        self.stats['malformed'] += 1
        if isinstance(issue, InvalidUtf8):
            self.stats['invalid_utf8'] += 1
        if len(self.issues) < MAX_LOGGED_ISSUES:
            self.issues.append(issue)
            logger.warning(f"⚠️  Skipping malformed {issue}")

    def __iter__(self):
        lines = tqdm(self.stream, desc=self.desc, unit=' lines',
                     disable=not self.progress, file=sys.stderr)
        for ordinal, raw in enumerate(lines):
            self.stats['read'] += 1
            try:
                pair = parse_line(raw, ordinal + 1, ordinal)
            except MalformedLine as issue:
                self._record(issue)
                continue
            yield pair

        if self.stats['malformed']:
            logger.warning(
                f"⚠️  {self.stats['malformed']} of {self.stats['read']} lines malformed "
                f"({self.stats['invalid_utf8']} invalid UTF-8)"
            )
        logger.info(f"📥 Read {self.stats['read']} lines")


def read_pairs(stream, progress=False):
    """Iterable of pairs in input order; reader.stats holds the line report"""
    return PairReader(stream, progress=progress)


def read_parallel(complex_path, simple_path):
    """Pairs from two line-aligned files (complex.txt + simple.txt layout)"""
    with open_input(complex_path) as complex_stream, open_input(simple_path) as simple_stream:
        for ordinal, (left, right) in enumerate(zip_longest(complex_stream, simple_stream)):
            if left is None or right is None:
                raise AlignmentMismatch(
                    f"{complex_path} and {simple_path} differ in length at line {ordinal + 1}"
                )
            try:
                yield SentencePair(
                    left.decode('utf-8').rstrip('\n'),
                    right.decode('utf-8').rstrip('\n'),
                    ordinal,
                )
            except UnicodeDecodeError as e:
                raise InputError(f"line {ordinal + 1} is not valid UTF-8: {e}") from e


# =============================================================================
# WRITING PAIRS
# =============================================================================

def write_pairs(pairs, stream):
    """Write pairs as TSV records; returns the number written"""
    count = 0
    for pair in pairs:
        left, right = pair_sides(pair)
        stream.write(f"{left}\t{right}\n")
        count += 1
    return count


def write_parallel(pairs, complex_stream, simple_stream):
    """Write pairs as two line-aligned files; returns the number written"""
    count = 0
    for pair in pairs:
        left, right = pair_sides(pair)
        complex_stream.write(left + '\n')
        simple_stream.write(right + '\n')
        count += 1
    return count


# =============================================================================
# SAMPLING
# =============================================================================

def _uniform(rng):
    # (0, 1], so the logarithm is always finite
    return 1.0 - rng.random()


def _next_skip(rng, weight):
    if weight >= 1.0:
        return 0
    if weight <= 0.0:
        return sys.maxsize
    skip = math.log(_uniform(rng)) / math.log1p(-weight)
    return math.floor(skip) if math.isfinite(skip) else sys.maxsize


def sample(pairs, n, seed):
    """
    Uniform seeded reservoir sample of min(n, len(pairs)) pairs.

    Single pass with geometric skips between replacements, so the cost
    follows the number of replacements rather than the corpus size.
    Output is restored to input order.
    """
    if n < 1:
        raise ConfigError(f"sample size must be >= 1, got {n}")

    rng = np.random.default_rng(int(seed) & SEED_MASK)
    reservoir = []
    iterator = iter(pairs)
    for pair in iterator:
        reservoir.append(pair)
        if len(reservoir) == n:
            break
    else:
        logger.info(f"📊 Input has {len(reservoir)} pairs, keeping all (n={n})")
        return sorted(reservoir, key=lambda p: p.ordinal)

    weight = math.exp(math.log(_uniform(rng)) / n)
    skip = _next_skip(rng, weight)
    for pair in iterator:
        if skip > 0:
            skip -= 1
            continue
        reservoir[int(rng.integers(n))] = pair
        weight *= math.exp(math.log(_uniform(rng)) / n)
        skip = _next_skip(rng, weight)

    return sorted(reservoir, key=lambda p: p.ordinal)


# =============================================================================
# STATISTICS
# =============================================================================

@dataclass(frozen=True)
class CorpusStats:
    vocab_complex: int
    vocab_simple: int
    avg_complex: float
    avg_simple: float
    total_pairs: int

    def to_dict(self, malformed_lines=0):
        return {
            'vocab_complex': self.vocab_complex,
            'vocab_simple': self.vocab_simple,
            'avg_complex': self.avg_complex,
            'avg_simple': self.avg_simple,
            'total_pairs': self.total_pairs,
            'malformed_lines': malformed_lines
        }


class StatsAccumulator:
    """Mergeable running totals: vocab sets union, counts add"""

    def __init__(self):
        self.vocab_complex = set()
        self.vocab_simple = set()
        self.words_complex = 0
        self.words_simple = 0
        self.total_pairs = 0

    def add(self, pair):
        complex_line, simple_line = pair_sides(pair)
        complex_sentence = tokenize(complex_line)
        simple_sentence = tokenize(simple_line)

        self.vocab_complex.update(token.lower() for token in complex_sentence.tokens)
        self.vocab_simple.update(token.lower() for token in simple_sentence.tokens)
        self.words_complex += complex_sentence.word_count
        self.words_simple += simple_sentence.word_count
        self.total_pairs += 1
        return self

    def merge(self, other):
        merged = StatsAccumulator()
        merged.vocab_complex = self.vocab_complex | other.vocab_complex
        merged.vocab_simple = self.vocab_simple | other.vocab_simple
        merged.words_complex = self.words_complex + other.words_complex
        merged.words_simple = self.words_simple + other.words_simple
        merged.total_pairs = self.total_pairs + other.total_pairs
        return merged

    def result(self):
        if self.total_pairs == 0:
            raise EmptyCorpus("no pairs to compute statistics on")
        return CorpusStats(
            vocab_complex=len(self.vocab_complex),
            vocab_simple=len(self.vocab_simple),
            avg_complex=self.words_complex / self.total_pairs,
            avg_simple=self.words_simple / self.total_pairs,
            total_pairs=self.total_pairs,
        )


def _accumulate(chunk):
    accumulator = StatsAccumulator()
    for pair in chunk:
        accumulator.add(pair)
    return accumulator


def compute_stats(pairs, workers=1, chunk_size=None):
    """Vocabulary sizes, average word counts and total pairs of a corpus"""
    chunk_size = chunk_size or RUNTIME_CONFIG['chunk_size']
    partials = ordered_map(_accumulate, chunked(pairs, chunk_size), workers=workers)
    return reduce(StatsAccumulator.merge, partials, StatsAccumulator()).result()


STATS_ROWS = {
    'Vocab(complex)': 'vocab_complex',
    'Vocab(simple)': 'vocab_simple',
    'Avg(complex)': 'avg_complex',
    'Avg(simple)': 'avg_simple',
    'Total pairs': 'total_pairs'
}


def stats_table(named_stats):
    """Side-by-side comparison of several corpora, one column each"""
    columns = {
        name: [getattr(stats, field) for field in STATS_ROWS.values()]
        for name, stats in named_stats.items()
    }
    return pd.DataFrame(columns, index=list(STATS_ROWS), dtype=object)
