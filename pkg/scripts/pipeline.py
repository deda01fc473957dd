"""
Pseudo corpus pipeline orchestrator - coordinates sampling, FRES selection and statistics

Builds both initialization corpora from one paraphrase TSV:
    first/   random sample of the paraphrase corpus
    second/  the sample oriented and filtered by FRES difference
and a comparison table of their statistics.
"""

import json
import logging
import os
import sys
from datetime import datetime

# Add parent directory to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))
from config import OUTPUT_NAMES, SAMPLING_CONFIG, create_output_directories
from scripts.corpus import (
    compute_stats,
    open_input,
    open_output,
    read_pairs,
    sample,
    stats_table,
    write_parallel,
)
from scripts.selector import SelectorConfig, build_pseudo_corpus

logger = logging.getLogger(__name__)


class PseudoCorpusPipeline:
    """Orchestrates sample -> filter -> stats over one paraphrase corpus"""

    def __init__(self, input_path, output_dir, n=None, seed=None, selector_config=None,
                 workers=1, progress=False):
        self.input_path = input_path
        self.output_dir = output_dir
        self.n = n or SAMPLING_CONFIG['n']
        self.seed = SAMPLING_CONFIG['seed'] if seed is None else seed
        self.selector_config = selector_config or SelectorConfig.from_config()
        self.workers = workers
        self.progress = progress
        self.results = {}

    def _path(self, *parts):
        return os.path.join(self.output_dir, *parts)

    def _write_corpus(self, subdir, pairs):
        with open_output(self._path(subdir, OUTPUT_NAMES['complex'])) as complex_stream, \
                open_output(self._path(subdir, OUTPUT_NAMES['simple'])) as simple_stream:
            return write_parallel(pairs, complex_stream, simple_stream)

    def _write_stats(self, subdir, stats, malformed_lines=0):
        with open_output(self._path(subdir, OUTPUT_NAMES['stats'])) as stream:
            json.dump(stats.to_dict(malformed_lines), stream, indent=2)
            stream.write('\n')

    def run_sampling(self):
        """First strategy: random sample of the paraphrase corpus"""
        logger.info("=" * 50)
        logger.info(f"🎲 SAMPLING {self.n} PAIRS (seed {self.seed})")
        logger.info("=" * 50)

        with open_input(self.input_path) as stream:
            reader = read_pairs(stream, progress=self.progress)
            sampled = sample(reader, self.n, self.seed)

        written = self._write_corpus(OUTPUT_NAMES['first_dir'], sampled)
        self.results['first'] = {
            'pairs': sampled,
            'written': written,
            'reader': dict(reader.stats)
        }
        logger.info(f"💾 First corpus: {written} pairs")
        return sampled

    def run_selection(self, pairs):
        """Second strategy: orient and keep pairs with a large enough FRES gain"""
        logger.info("=" * 50)
        logger.info("🔍 SELECTING BY FRES DIFFERENCE")
        logger.info("=" * 50)

        kept_stream, report = build_pseudo_corpus(pairs, self.selector_config, workers=self.workers)
        kept = list(kept_stream)
        written = self._write_corpus(OUTPUT_NAMES['second_dir'], kept)
        self.results['second'] = {
            'pairs': kept,
            'written': written,
            'report': report
        }
        return kept

    def run_statistics(self):
        """Statistics for both corpora plus the side-by-side table"""
        logger.info("📊 Computing corpus statistics...")
        malformed = self.results['first']['reader']['malformed']
        named = {}
        for key, label in (('first', 'First'), ('second', 'Second')):
            pairs = self.results[key]['pairs']
            if not pairs:
                logger.warning(f"⚠️  {label} corpus is empty, no statistics")
                continue
            stats = compute_stats(pairs, workers=self.workers)
            self._write_stats(OUTPUT_NAMES[f'{key}_dir'], stats,
                              malformed if key == 'first' else 0)
            self.results[key]['stats'] = stats
            named[label] = stats

        if named:
            table = stats_table(named)
            table.to_csv(self._path(OUTPUT_NAMES['table']))
            self.results['table'] = table
        return named

    def counts(self):
        first = self.results.get('first', {})
        second = self.results.get('second', {})
        counts = {
            'read': first.get('reader', {}).get('read', 0),
            'malformed_lines': first.get('reader', {}).get('malformed', 0),
            'sampled': first.get('written', 0)
        }
        if 'report' in second:
            counts['selector'] = second['report'].to_dict()
        return counts

    def run_complete_pipeline(self):
        """Execute sample -> filter -> stats; returns True on success"""
        logger.info("🚀 STARTING PSEUDO CORPUS PIPELINE")
        start_time = datetime.now()

        create_output_directories(self.output_dir)
        sampled = self.run_sampling()
        self.run_selection(sampled)
        self.run_statistics()

        duration = (datetime.now() - start_time).total_seconds()
        logger.info(f"✅ PIPELINE COMPLETED in {duration:.1f} s")
        logger.info(f"   First corpus:  {self.results['first']['written']} pairs")
        logger.info(f"   Second corpus: {self.results['second']['written']} pairs")
        return True
