"""
SARI - n-gram keep / add / delete scoring of simplification outputs

Counts are multisets; multiple references contribute fractional counts
(the reference average). Scores are reported on a 0-100 scale.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import partial

import pandas as pd

from scripts.corpus import read_lines
from scripts.errors import AlignmentMismatch, EmptyCorpus, EmptyReferences, RaggedReferences
from scripts.workers import chunked, ordered_map

logger = logging.getLogger(__name__)

MAX_N = 4


@dataclass(frozen=True)
class SariInstance:
    original: tuple
    system: tuple
    references: tuple

    def __post_init__(self):
        if not self.references:
            raise EmptyReferences("a SARI instance needs at least one reference")
        object.__setattr__(self, 'original', tuple(self.original))
        object.__setattr__(self, 'system', tuple(self.system))
        object.__setattr__(self, 'references', tuple(tuple(ref) for ref in self.references))


@dataclass(frozen=True)
class NGramScore:
    n: int
    keep: float
    add: float
    delete: float

    def to_dict(self):
        return {'n': self.n, 'keep': self.keep, 'add': self.add, 'del': self.delete}


@dataclass(frozen=True)
class SariScore:
    overall: float
    keep_f1: float
    add_f1: float
    del_score: float
    per_n: tuple

    def to_dict(self):
        return {
            'overall': self.overall,
            'keep': self.keep_f1,
            'add': self.add_f1,
            'del': self.del_score,
            'per_n': [score.to_dict() for score in self.per_n]
        }


def ngram_counts(tokens, n):
    """Sliding-window n-grams with multiplicity"""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _ratio(numerator, denominator):
    return numerator / denominator if denominator else 0.0


def _f1(precision, recall):
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _operation_score(candidate, reference, with_recall=True):
    """
    Score one operation from per-gram candidate and reference amounts.

    Both totals zero means nothing to do and nothing done: perfect agreement.
    """
    candidate_total = math.fsum(candidate.values())
    reference_total = math.fsum(reference.values())
    if candidate_total == 0 and reference_total == 0:
        return 1.0

    matched = math.fsum(min(amount, reference.get(gram, 0)) for gram, amount in candidate.items())
    precision = _ratio(matched, candidate_total)
    if not with_recall:
        return precision
    return _f1(precision, _ratio(matched, reference_total))


def _ngram_scores(inst, n, del_f1=False):
    original = ngram_counts(inst.original, n)
    system = ngram_counts(inst.system, n)

    reference_sum = Counter()
    for reference in inst.references:
        reference_sum.update(ngram_counts(reference, n))
    reference = {gram: count / len(inst.references) for gram, count in reference_sum.items()}

    grams = set(original) | set(system) | set(reference)
    keep_sys, keep_ref, add_sys, add_ref, del_sys, del_ref = ({} for _ in range(6))
    for gram in grams:
        o, s, r = original.get(gram, 0), system.get(gram, 0), reference.get(gram, 0)
        keep_sys[gram], keep_ref[gram] = min(o, s), min(o, r)
        add_sys[gram], add_ref[gram] = max(0, s - o), max(0, r - o)
        del_sys[gram], del_ref[gram] = max(0, o - s), max(0, o - r)

    return NGramScore(
        n=n,
        keep=100 * _operation_score(keep_sys, keep_ref),
        add=100 * _operation_score(add_sys, add_ref),
        delete=100 * _operation_score(del_sys, del_ref, with_recall=del_f1),
    )


def _from_per_n(per_n):
    keep = math.fsum(score.keep for score in per_n) / len(per_n)
    add = math.fsum(score.add for score in per_n) / len(per_n)
    delete = math.fsum(score.delete for score in per_n) / len(per_n)
    return SariScore(
        overall=(keep + add + delete) / 3,
        keep_f1=keep,
        add_f1=add,
        del_score=delete,
        per_n=tuple(per_n),
    )


def sari_sentence(inst, del_f1=False, max_n=MAX_N):
    """SARI of one system output against its original and references"""
    if not inst.references:
        raise EmptyReferences("a SARI instance needs at least one reference")
    return _from_per_n([_ngram_scores(inst, n, del_f1) for n in range(1, max_n + 1)])


def _score_chunk(chunk, del_f1, max_n):
    return [sari_sentence(inst, del_f1, max_n) for inst in chunk]


def score_sentences(instances, del_f1=False, max_n=MAX_N, workers=1, chunk_size=256):
    """Per-sentence scores in input order; all instances must share a reference count"""
    instances = list(instances)
    if not instances:
        raise EmptyCorpus("no sentences to score")
    ref_counts = {len(inst.references) for inst in instances}
    if len(ref_counts) > 1:
        raise RaggedReferences(f"instances have differing reference counts: {sorted(ref_counts)}")

    work = partial(_score_chunk, del_f1=del_f1, max_n=max_n)
    scores = []
    for chunk_scores in ordered_map(work, chunked(instances, chunk_size), workers=workers):
        scores.extend(chunk_scores)
    return scores


def average_scores(scores):
    """Macro-average of sentence scores"""
    if not scores:
        raise EmptyCorpus("no sentence scores to average")
    max_n = len(scores[0].per_n)
    per_n = []
    for i in range(max_n):
        per_n.append(NGramScore(
            n=i + 1,
            keep=math.fsum(score.per_n[i].keep for score in scores) / len(scores),
            add=math.fsum(score.per_n[i].add for score in scores) / len(scores),
            delete=math.fsum(score.per_n[i].delete for score in scores) / len(scores),
        ))
    return _from_per_n(per_n)


def sari_corpus(instances, del_f1=False, max_n=MAX_N, workers=1):
    """Corpus SARI as the mean of sentence scores"""
    return average_scores(score_sentences(instances, del_f1, max_n, workers=workers))


def prepare(line, lowercase=True):
    """Scoring tokenization: inputs are pre-tokenized, so split on whitespace"""
    return (line.lower() if lowercase else line).split()


def load_instances(orig_path, sys_path, ref_paths, lowercase=True):
    """Build instances from line-aligned original, system and reference files"""
    if not ref_paths:
        raise EmptyReferences("at least one reference file is required")

    original = read_lines(orig_path)
    system = read_lines(sys_path)
    references = [read_lines(path) for path in ref_paths]

    lengths = {str(orig_path): len(original), str(sys_path): len(system)}
    lengths.update({str(path): len(lines) for path, lines in zip(ref_paths, references)})
    if len(set(lengths.values())) > 1:
        raise AlignmentMismatch(f"line counts differ: {lengths}")

    logger.info(f"📥 Loaded {len(original)} sentences with {len(references)} references each")
    return [
        SariInstance(
            original=prepare(orig, lowercase),
            system=prepare(out, lowercase),
            references=[prepare(ref[i], lowercase) for ref in references],
        )
        for i, (orig, out) in enumerate(zip(original, system))
    ]


def sentence_frame(scores):
    """One row per sentence, for CSV export"""
    return pd.DataFrame(
        [
            {
                'sentence': i,
                'overall': score.overall,
                'keep': score.keep_f1,
                'add': score.add_f1,
                'del': score.del_score
            }
            for i, score in enumerate(scores)
        ]
    )
