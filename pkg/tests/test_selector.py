import time

import numpy as np
import pytest

from scripts.corpus import SentencePair
from scripts.errors import ConfigError, Unscoreable
from scripts.selector import (
    Comparison,
    OrientedPair,
    Orientation,
    SelectorConfig,
    build_pseudo_corpus,
    orient,
    select,
)
from scripts.textmetrics import line_fres

WORDS = ["the", "cat", "sat", "on", "mat", "happy", "paper", "beautiful",
         "considerable", "notwithstanding", "legislation", "dog", "ran", "is", "a"]


def oriented(delta):
    return OrientedPair("c", "s", 0.0, delta, delta)


def run(pairs, config=None, **kwargs):
    stream, report = build_pseudo_corpus(pairs, config or SelectorConfig(), **kwargs)
    return list(stream), report


def random_pairs(count, seed):
    rng = np.random.default_rng(seed)

    def line():
        return " ".join(rng.choice(WORDS, size=int(rng.integers(1, 12))))

    return [SentencePair(line(), line(), i) for i in range(count)]


class TestConfig:
    def test_defaults(self):
        config = SelectorConfig()
        assert config.threshold == 10.0
        assert config.orientation is Orientation.AUTO
        assert config.comparison is Comparison.STRICT_GREATER

    def test_string_values_and_aliases(self):
        config = SelectorConfig(threshold=5, orientation='keep_order', comparison='ge')
        assert config.orientation is Orientation.KEEP_ORDER
        assert config.comparison is Comparison.GREATER_EQUAL

    @pytest.mark.parametrize("kwargs", [
        {'threshold': -1.0},
        {'threshold': float('nan')},
        {'orientation': 'sideways'},
        {'comparison': 'lt'},
    ])
    def test_invalid_values(self, kwargs):
        with pytest.raises(ConfigError):
            SelectorConfig(**kwargs)

    def test_from_config_overrides(self):
        config = SelectorConfig.from_config(threshold=3.5, orientation=None)
        assert config.threshold == 3.5
        assert config.orientation is Orientation.AUTO


class TestOrient:
    def test_easier_target_stays_put(self, selector_pairs):
        pair = orient(selector_pairs[0], Orientation.AUTO)
        assert pair.complex == selector_pairs[0].source
        assert pair.simple == selector_pairs[0].target
        assert pair.delta == pytest.approx(14.1, abs=1e-9)

    def test_harder_target_is_swapped(self, selector_pairs):
        pair = orient(selector_pairs[3], Orientation.AUTO)
        assert pair.complex == selector_pairs[3].target
        assert pair.simple == selector_pairs[3].source
        assert pair.delta == pytest.approx(8.46, abs=1e-9)

    def test_keep_order_allows_negative_delta(self, selector_pairs):
        pair = orient(selector_pairs[3], Orientation.KEEP_ORDER)
        assert pair.complex == selector_pairs[3].source
        assert pair.delta == pytest.approx(-8.46, abs=1e-9)

    def test_delta_is_exact_difference(self, selector_pairs):
        for source_pair in selector_pairs:
            pair = orient(source_pair, 'auto')
            assert pair.delta == pair.fres_simple - pair.fres_complex
            assert pair.fres_complex == line_fres(pair.complex)

    def test_tie_keeps_input_order(self):
        pair = orient(SentencePair("the cat sat", "a dog ran", 0), Orientation.AUTO)
        assert pair.complex == "the cat sat"
        assert pair.delta == 0

    def test_unscoreable_side(self):
        with pytest.raises(Unscoreable) as info:
            orient(SentencePair("a real sentence", "... !!", 4), Orientation.AUTO)
        assert info.value.side == 'target'
        assert info.value.ordinal == 4


class TestSelect:
    def test_above_threshold(self):
        assert select(oriented(15.0), SelectorConfig())

    def test_boundary_in_both_modes(self):
        assert not select(oriented(10.0), SelectorConfig(comparison='strict_greater'))
        assert select(oriented(10.0), SelectorConfig(comparison='greater_equal'))

    def test_zero_delta(self):
        for threshold in (0.0, 5.0, 10.0):
            assert not select(oriented(0.0), SelectorConfig(threshold=threshold))


class TestBuildPseudoCorpus:
    def test_fixture_keeps_first_and_third(self, selector_pairs):
        kept, report = run(selector_pairs)
        assert [p.ordinal for p in kept] == [0, 2]
        assert report.read == 4
        assert report.kept == 2
        assert report.dropped_below_threshold == 2
        assert report.dropped_unscoreable == 0
        assert report.mean_delta == pytest.approx((14.1 + 16.92) / 2, abs=1e-9)

    def test_empty_stream(self):
        kept, report = run([])
        assert kept == []
        assert report.to_dict()['read'] == 0
        assert report.kept == report.dropped_below_threshold == report.dropped_unscoreable == 0
        assert report.mean_delta is None

    def test_vacuous_filter_keeps_every_scoreable_pair(self, selector_pairs):
        pairs = selector_pairs + [SentencePair("...", "a cat", 4)]
        kept, report = run(pairs, SelectorConfig(threshold=0, comparison='ge'))
        assert len(kept) == 4
        assert report.dropped_unscoreable == 1

    def test_histogram_counts_scoreable_pairs(self, selector_pairs):
        _, report = run(selector_pairs)
        histogram = report.histogram_dict()
        assert sum(histogram.values()) == 4
        assert histogram['[10,20)'] == 2
        assert histogram['[0,10)'] == 2
        assert '[90,100]' in histogram

    def test_report_fills_while_streaming(self, selector_pairs):
        stream, report = build_pseudo_corpus(selector_pairs, SelectorConfig(), chunk_size=1)
        next(stream)
        assert 0 < report.read < 4
        list(stream)
        assert report.read == 4

    def test_randomized_invariants(self):
        pairs = random_pairs(10_000, seed=5) + [SentencePair("!!", "?", 10_000)]
        config = SelectorConfig()
        start = time.perf_counter()
        kept, report = run(pairs, config)
        assert time.perf_counter() - start < 10

        assert all(p.delta > 10.0 for p in kept)
        assert all(line_fres(p.simple) - line_fres(p.complex) > 10.0 for p in kept)
        assert report.read == report.kept + report.dropped_below_threshold + report.dropped_unscoreable
        assert report.read == len(pairs)
        assert report.dropped_unscoreable == 1

        # idempotent on its own output
        again = [SentencePair(p.complex, p.simple, i) for i, p in enumerate(kept)]
        kept_again, report_again = run(again, config)
        assert report_again.kept == len(kept)
        assert [(p.complex, p.simple) for p in kept_again] == [(p.complex, p.simple) for p in kept]

    def test_order_and_result_independent_of_workers(self):
        pairs = random_pairs(3000, seed=9)
        single, single_report = run(pairs, workers=1, chunk_size=100)
        multi, multi_report = run(pairs, workers=4, chunk_size=100)
        assert single == multi
        assert single_report.to_dict() == multi_report.to_dict()
        ordinals = [p.ordinal for p in single]
        assert ordinals == sorted(ordinals)
