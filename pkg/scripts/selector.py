"""
FRES-difference selector - turns paraphrase pairs into a pseudo simplification corpus

Each pair is oriented complex -> simple by Flesch Reading Ease and kept only
when the simple side reads easier by more than the threshold (10 points is
one school grade).
"""

from __future__ import annotations

import logging
import math
import os
import sys
from dataclasses import dataclass, field
from enum import Enum
from functools import partial

import numpy as np

# Add parent directory to path for config import
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from config import RUNTIME_CONFIG, SELECTOR_CONFIG
from scripts.errors import ConfigError, EmptySentence, Unscoreable
from scripts.textmetrics import line_fres
from scripts.workers import chunked, ordered_map

logger = logging.getLogger(__name__)

HISTOGRAM_EDGES = np.arange(-100, 101, 10)


class Orientation(str, Enum):
    AUTO = 'auto'
    KEEP_ORDER = 'keep_order'


class Comparison(str, Enum):
    STRICT_GREATER = 'strict_greater'
    GREATER_EQUAL = 'greater_equal'


COMPARISON_ALIASES = {
    'gt': Comparison.STRICT_GREATER,
    '>': Comparison.STRICT_GREATER,
    'ge': Comparison.GREATER_EQUAL,
    '>=': Comparison.GREATER_EQUAL
}


def _parse_enum(kind, value, aliases=None):
    if isinstance(value, kind):
        return value
    value = str(value).strip().lower()
    if aliases and value in aliases:
        return aliases[value]
    try:
        return kind(value)
    except ValueError:
        choices = [member.value for member in kind] + sorted(aliases or {})
        raise ConfigError(f"invalid {kind.__name__.lower()} {value!r}, choose from {choices}")


@dataclass(frozen=True)
class SelectorConfig:
    threshold: float = 10.0
    orientation: Orientation = Orientation.AUTO
    comparison: Comparison = Comparison.STRICT_GREATER

    def __post_init__(self):
        threshold = float(self.threshold)
        if not math.isfinite(threshold) or threshold < 0:
            raise ConfigError(f"threshold must be a finite number >= 0, got {self.threshold}")
        object.__setattr__(self, 'threshold', threshold)
        object.__setattr__(self, 'orientation', _parse_enum(Orientation, self.orientation))
        object.__setattr__(
            self, 'comparison', _parse_enum(Comparison, self.comparison, COMPARISON_ALIASES)
        )

    @classmethod
    def from_config(cls, **overrides):
        """Defaults from config.SELECTOR_CONFIG, with non-None overrides applied"""
        values = dict(SELECTOR_CONFIG)
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def to_dict(self):
        return {
            'threshold': self.threshold,
            'orientation': self.orientation.value,
            'comparison': self.comparison.value
        }


@dataclass(frozen=True)
class OrientedPair:
    """A pair oriented complex -> simple; delta = fres_simple - fres_complex"""
    complex: str
    simple: str
    fres_complex: float
    fres_simple: float
    delta: float
    ordinal: int = -1


@dataclass
class SelectorReport:
    read: int = 0
    kept: int = 0
    dropped_below_threshold: int = 0
    dropped_unscoreable: int = 0
    kept_delta_sum: float = 0.0
    histogram: np.ndarray = field(
        default_factory=lambda: np.zeros(len(HISTOGRAM_EDGES) - 1, dtype=np.int64)
    )

    def absorb(self, other):
        """Add another report's counters into this one"""
        self.read += other.read
        self.kept += other.kept
        self.dropped_below_threshold += other.dropped_below_threshold
        self.dropped_unscoreable += other.dropped_unscoreable
        self.kept_delta_sum += other.kept_delta_sum
        self.histogram = self.histogram + other.histogram
        return self

    def merge(self, other):
        return SelectorReport().absorb(self).absorb(other)

    @property
    def mean_delta(self):
        return self.kept_delta_sum / self.kept if self.kept else None

    def histogram_dict(self):
        labels = [
            f"[{lo},{hi}]" if hi == HISTOGRAM_EDGES[-1] else f"[{lo},{hi})"
            for lo, hi in zip(HISTOGRAM_EDGES[:-1], HISTOGRAM_EDGES[1:])
        ]
        return {label: int(count) for label, count in zip(labels, self.histogram)}

    def to_dict(self):
        return {
            'read': self.read,
            'kept': self.kept,
            'dropped_below_threshold': self.dropped_below_threshold,
            'dropped_unscoreable': self.dropped_unscoreable,
            'mean_delta': self.mean_delta,
            'delta_histogram': self.histogram_dict()
        }


def _side_score(line, side, ordinal):
    try:
        return line_fres(line)
    except EmptySentence:
        raise Unscoreable(side, ordinal) from None


def orient(pair, policy=Orientation.AUTO):
    """
    Orient a SentencePair complex -> simple.

    auto puts the lower-FRES side first (ties keep input order);
    keep_order maps source -> complex regardless, so delta may be negative.
    Raises Unscoreable if either side has no words.
    """
    policy = _parse_enum(Orientation, policy)
    source_score = _side_score(pair.source, 'source', pair.ordinal)
    target_score = _side_score(pair.target, 'target', pair.ordinal)

    if policy is Orientation.AUTO and source_score > target_score:
        return OrientedPair(pair.target, pair.source, target_score, source_score,
                            source_score - target_score, pair.ordinal)
    return OrientedPair(pair.source, pair.target, source_score, target_score,
                        target_score - source_score, pair.ordinal)


def select(pair, config):
    """Does the pair's FRES gain clear the threshold?"""
    if config.comparison is Comparison.GREATER_EQUAL:
        return pair.delta >= config.threshold
    return pair.delta > config.threshold


def _select_chunk(chunk, config):
    kept = []
    deltas = []
    report = SelectorReport()
    for pair in chunk:
        report.read += 1
        try:
            oriented = orient(pair, config.orientation)
        except Unscoreable:
            report.dropped_unscoreable += 1
            continue

        deltas.append(oriented.delta)
        if select(oriented, config):
            kept.append(oriented)
        else:
            report.dropped_below_threshold += 1

    report.kept = len(kept)
    report.kept_delta_sum = math.fsum(pair.delta for pair in kept)
    if deltas:
        report.histogram, _ = np.histogram(np.clip(deltas, -100, 100), bins=HISTOGRAM_EDGES)
    return kept, report


class PseudoCorpusBuilder:
    """Streams oriented, threshold-filtered pairs and keeps a running report"""

    def __init__(self, config=None, workers=1, chunk_size=None):
        self.config = config or SelectorConfig.from_config()
        self.workers = workers
        self.chunk_size = chunk_size or RUNTIME_CONFIG['chunk_size']
        self.report = SelectorReport()

    def build(self, pairs):
        """Yield kept OrientedPairs in input order"""
        logger.info(
            f"🔍 Selecting pairs with FRES gain {self.config.comparison.value} "
            f"{self.config.threshold} ({self.config.orientation.value} orientation, "
            f"{self.workers} workers)"
        )
        work = partial(_select_chunk, config=self.config)
        for kept, chunk_report in ordered_map(work, chunked(pairs, self.chunk_size),
                                              workers=self.workers):
            self.report.absorb(chunk_report)
            yield from kept

        report = self.report
        ratio = (report.kept / report.read * 100) if report.read else 0.0
        logger.info(f"✅ Kept {report.kept} of {report.read} pairs ({ratio:.1f}%)")
        if report.dropped_unscoreable:
            logger.warning(f"⚠️  Dropped {report.dropped_unscoreable} unscoreable pairs")


def build_pseudo_corpus(pairs, config=None, workers=1, chunk_size=None):
    """
    Orient and filter a stream of pairs.

    Returns (iterator of OrientedPair, SelectorReport); the report is filled
    in as the iterator is consumed and complete once it is exhausted.
    """
    builder = PseudoCorpusBuilder(config, workers=workers, chunk_size=chunk_size)
    return builder.build(pairs), builder.report


def write_scored(pairs, stream):
    """TSV with complex, simple, fres_complex, fres_simple, delta"""
    count = 0
    for pair in pairs:
        stream.write(
            f"{pair.complex}\t{pair.simple}\t{pair.fres_complex:.4f}\t"
            f"{pair.fres_simple:.4f}\t{pair.delta:.4f}\n"
        )
        count += 1
    return count
