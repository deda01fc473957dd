"""
Command-line entry point for pseudo simplification corpus construction and SARI scoring

    python -m scripts.cli fres sentences.txt
    python -m scripts.cli sample parabank.tsv -o sample.tsv --n 2000000 --seed 7
    python -m scripts.cli filter sample.tsv --output-dir second/
    python -m scripts.cli stats --complex second/complex.txt --simple second/simple.txt
    python -m scripts.cli compare WikiLarge=wiki.tsv Second=second/complex.txt,second/simple.txt
    python -m scripts.cli sari --orig test.orig --sys system.out --refs ref.0,ref.1
    python -m scripts.cli pipeline parabank.tsv --output-dir corpora/

stdout carries data only; the run manifest and diagnostics go to stderr.
Exit codes: 0 ok, 2 I/O, 3 flags, 4 empty corpus, 5 alignment mismatch.
"""

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field

# Add parent directory to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))
from config import (
    FRES_CONFIG,
    OUTPUT_NAMES,
    RUNTIME_CONFIG,
    SAMPLING_CONFIG,
    SARI_CONFIG,
    SELECTOR_CONFIG,
    get_config_summary,
    progress_enabled,
)
from scripts import __version__
from scripts.corpus import (
    compute_stats,
    open_input,
    open_output,
    read_pairs,
    read_parallel,
    sample,
    stats_table,
    write_pairs,
    write_parallel,
)
from scripts.errors import ConfigError, EmptyReferences, InputError, SimplicorpusError
from scripts.pipeline import PseudoCorpusPipeline
from scripts.sari import average_scores, load_instances, score_sentences, sentence_frame
from scripts.selector import (
    COMPARISON_ALIASES,
    Comparison,
    Orientation,
    SelectorConfig,
    build_pseudo_corpus,
    write_scored,
)
from scripts.textmetrics import fres, tokenize

logger = logging.getLogger('simplicorpus')


@dataclass
class RunManifest:
    """Everything needed to reproduce a run"""
    subcommand: str
    config: dict
    counts: dict = field(default_factory=dict)
    duration_seconds: float = 0.0
    version: str = __version__


class CliArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to the flag-error exit code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ConfigError.exit_code, f"{self.prog}: error: {message}\n")


def positive_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}")
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {number}")
    return number


def non_negative_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}")
    if number < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {number}")
    return number


def non_negative_float(value):
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}")
    if not number >= 0 or number == float('inf'):
        raise argparse.ArgumentTypeError(f"must be a finite number >= 0, got {value}")
    return number


def comma_list(value):
    return [item for item in value.split(',') if item]


def _emit_json(payload, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps(payload, indent=2, ensure_ascii=False) + '\n')
    stream.flush()


def _emit_manifest(manifest, report_path=None):
    payload = asdict(manifest)
    if report_path:
        with open_output(report_path) as stream:
            _emit_json(payload, stream)
    else:
        _emit_json({'manifest': payload}, sys.stderr)


def _progress(args):
    return not args.quiet and progress_enabled(sys.stderr)


def _selector_config(args):
    return SelectorConfig(
        threshold=args.threshold,
        orientation=args.orient,
        comparison=args.cmp,
    )


# =============================================================================
# SUBCOMMANDS
# =============================================================================

def cmd_fres(args):
    """One "score<TAB>line" per input line; lines without words get NA"""
    precision = args.precision
    lines = 0
    unscoreable = 0
    with open_input(args.input) as stream, open_output('-') as out:
        for raw in stream:
            line = raw.decode('utf-8', errors='replace').rstrip('\n')
            sentence = tokenize(line)
            if sentence.word_count == 0:
                out.write(f"NA\t{line}\n")
                unscoreable += 1
            else:
                out.write(f"{fres(sentence).value:.{precision}f}\t{line}\n")
            lines += 1
    return {'lines': lines, 'unscoreable': unscoreable}


def cmd_sample(args):
    with open_input(args.input) as stream:
        reader = read_pairs(stream, progress=_progress(args))
        sampled = sample(reader, args.n, args.seed)
    with open_output(args.output) as out:
        written = write_pairs(sampled, out)
    logger.info(f"🎲 Sampled {written} of {reader.stats['read'] - reader.stats['malformed']} pairs")
    return {
        'read': reader.stats['read'],
        'malformed_lines': reader.stats['malformed'],
        'sampled': written
    }


def cmd_filter(args):
    if args.output_dir is None and args.tsv is None:
        raise ConfigError("filter needs --output-dir or --tsv")
    if args.output_dir is not None and args.tsv is not None:
        raise ConfigError("give either --output-dir or --tsv, not both")
    if args.emit_scores and args.tsv is None:
        raise ConfigError("--emit-scores needs --tsv")

    config = _selector_config(args)
    with open_input(args.input) as stream:
        reader = read_pairs(stream, progress=_progress(args))
        kept, report = build_pseudo_corpus(reader, config, workers=args.threads)
        if args.tsv is not None:
            with open_output(args.tsv) as out:
                written = write_scored(kept, out) if args.emit_scores else write_pairs(kept, out)
        else:
            complex_path = os.path.join(args.output_dir, OUTPUT_NAMES['complex'])
            simple_path = os.path.join(args.output_dir, OUTPUT_NAMES['simple'])
            with open_output(complex_path) as complex_out, open_output(simple_path) as simple_out:
                written = write_parallel(kept, complex_out, simple_out)

    logger.info(f"💾 Wrote {written} pairs")
    counts = report.to_dict()
    counts['malformed_lines'] = reader.stats['malformed']
    if args.tsv != '-':
        _emit_json(counts)
    return counts


def _stats_source(args):
    if args.input is not None:
        if args.complex or args.simple:
            raise ConfigError("give either a TSV input or --complex/--simple, not both")
        return args.input, None
    if not (args.complex and args.simple):
        raise ConfigError("stats needs a TSV input or both --complex and --simple")
    return args.complex, args.simple


def _corpus_stats(first, second, threads, progress=False):
    """Stats of a TSV (second is None) or of a complex/simple file pair"""
    if second is not None:
        return compute_stats(read_parallel(first, second), workers=threads), 0
    with open_input(first) as stream:
        reader = read_pairs(stream, progress=progress)
        stats = compute_stats(reader, workers=threads)
    return stats, reader.stats['malformed']


def cmd_stats(args):
    first, second = _stats_source(args)
    stats, malformed = _corpus_stats(first, second, args.threads, _progress(args))
    payload = stats.to_dict(malformed)
    _emit_json(payload)
    return payload


def cmd_compare(args):
    named = {}
    for entry in args.corpora:
        name, sep, paths = entry.partition('=')
        if not sep or not name or not paths:
            raise ConfigError(f"expected NAME=PATH or NAME=COMPLEX,SIMPLE, got {entry!r}")
        parts = comma_list(paths)
        if len(parts) > 2:
            raise ConfigError(f"too many paths for {name}: {parts}")
        first, second = parts[0], (parts[1] if len(parts) == 2 else None)
        named[name], _ = _corpus_stats(first, second, args.threads)

    table = stats_table(named)
    with open_output('-') as out:
        if args.format == 'csv':
            table.to_csv(out)
        else:
            out.write(table.to_string() + '\n')
    return {'corpora': len(named)}


def cmd_sari(args):
    instances = load_instances(args.orig, args.sys, args.refs, lowercase=args.lowercase)
    scores = score_sentences(instances, del_f1=args.del_f1, max_n=SARI_CONFIG['max_n'],
                             workers=args.threads)
    corpus = average_scores(scores)

    payload = corpus.to_dict()
    payload['sentences'] = len(scores)
    _emit_json(payload)
    print(
        f"SARI {corpus.overall:.2f} (keep {corpus.keep_f1:.2f} | add {corpus.add_f1:.2f} | "
        f"del {corpus.del_score:.2f}) over {len(scores)} sentences, {len(args.refs)} references",
        file=sys.stderr,
    )

    if args.per_sentence:
        try:
            sentence_frame(scores).to_csv(args.per_sentence, index=False)
        except OSError as e:
            raise InputError(f"cannot write {args.per_sentence}: {e}") from e
        logger.info(f"💾 Per-sentence scores saved to: {args.per_sentence}")

    return {'sentences': len(scores), 'references': len(args.refs), 'overall': corpus.overall}


def cmd_pipeline(args):
    pipeline = PseudoCorpusPipeline(
        args.input,
        args.output_dir,
        n=args.n,
        seed=args.seed,
        selector_config=_selector_config(args),
        workers=args.threads,
        progress=_progress(args),
    )
    pipeline.run_complete_pipeline()
    return pipeline.counts()


# =============================================================================
# PARSER
# =============================================================================

def _add_selector_flags(parser):
    parser.add_argument('--threshold', type=non_negative_float,
                        default=SELECTOR_CONFIG['threshold'],
                        help='minimum FRES gain of the simple side (default: %(default)s)')
    parser.add_argument('--orient', choices=[o.value for o in Orientation],
                        default=SELECTOR_CONFIG['orientation'],
                        help='re-orient pairs by FRES or keep source->target (default: %(default)s)')
    parser.add_argument('--cmp', choices=[c.value for c in Comparison] + sorted(COMPARISON_ALIASES),
                        default=SELECTOR_CONFIG['comparison'],
                        help='strict (gt) or inclusive (ge) threshold test (default: %(default)s)')


def _add_sampling_flags(parser):
    parser.add_argument('--n', type=positive_int, default=SAMPLING_CONFIG['n'],
                        help='number of pairs to sample (default: %(default)s)')
    parser.add_argument('--seed', type=int, default=SAMPLING_CONFIG['seed'],
                        help='random seed (default: %(default)s)')


def build_parser():
    common = CliArgumentParser(add_help=False)
    common.add_argument('--threads', type=positive_int, default=max(1, RUNTIME_CONFIG['threads']),
                        help='worker processes; outputs do not depend on it (default: %(default)s)')
    common.add_argument('--report', help='write the run manifest here instead of stderr')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('--quiet', '-q', action='store_true', help='warnings and errors only')
    verbosity.add_argument('--verbose', '-v', action='store_true', help='debug logging')

    parser = CliArgumentParser(
        prog='simplicorpus',
        description='Build pseudo sentence-simplification corpora from paraphrase corpora '
                    'and score simplification outputs with SARI.',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    fres_parser = subparsers.add_parser('fres', parents=[common], help='FRES of every line')
    fres_parser.add_argument('input', nargs='?', default='-', help='text file (default: stdin)')
    fres_parser.add_argument('--precision', type=non_negative_int, default=FRES_CONFIG['precision'],
                             help='decimal places (default: %(default)s)')
    fres_parser.set_defaults(handler=cmd_fres)

    sample_parser = subparsers.add_parser('sample', parents=[common],
                                          help='seeded uniform sample of a paraphrase TSV')
    sample_parser.add_argument('input', help="paraphrase TSV ('-' for stdin, .gz ok)")
    sample_parser.add_argument('--output', '-o', default='-', help='output TSV (default: stdout)')
    _add_sampling_flags(sample_parser)
    sample_parser.set_defaults(handler=cmd_sample)

    filter_parser = subparsers.add_parser('filter', parents=[common],
                                          help='orient pairs and keep those with a large FRES gain')
    filter_parser.add_argument('input', help="paraphrase TSV ('-' for stdin, .gz ok)")
    filter_parser.add_argument('--output-dir', '-o', help='write complex.txt and simple.txt here')
    filter_parser.add_argument('--tsv', help="write complex<TAB>simple records here instead ('-' for stdout)")
    filter_parser.add_argument('--emit-scores', action='store_true',
                               help='add fres_complex, fres_simple and delta columns to --tsv output')
    _add_selector_flags(filter_parser)
    filter_parser.set_defaults(handler=cmd_filter)

    stats_parser = subparsers.add_parser('stats', parents=[common],
                                         help='vocabulary sizes and average lengths')
    stats_parser.add_argument('input', nargs='?', help='pairs TSV')
    stats_parser.add_argument('--complex', help='complex side of a line-aligned file pair')
    stats_parser.add_argument('--simple', help='simple side of a line-aligned file pair')
    stats_parser.set_defaults(handler=cmd_stats)

    compare_parser = subparsers.add_parser('compare', parents=[common],
                                           help='statistics of several corpora side by side')
    compare_parser.add_argument('corpora', nargs='+', metavar='NAME=PATH',
                                help='NAME=pairs.tsv or NAME=complex.txt,simple.txt')
    compare_parser.add_argument('--format', choices=['text', 'csv'], default='text')
    compare_parser.set_defaults(handler=cmd_compare)

    sari_parser = subparsers.add_parser('sari', parents=[common],
                                        help='SARI of a system output against references')
    sari_parser.add_argument('--orig', required=True, help='original sentences')
    sari_parser.add_argument('--sys', required=True, help='system outputs')
    sari_parser.add_argument('--refs', required=True, type=comma_list, action='extend',
                             help='reference files, comma separated or repeated')
    sari_parser.add_argument('--del-f1', action='store_true', default=SARI_CONFIG['del_f1'],
                             help='score deletion by F1 instead of precision')
    sari_parser.add_argument('--no-lowercase', dest='lowercase', action='store_false',
                             default=SARI_CONFIG['lowercase'], help='keep case when scoring')
    sari_parser.add_argument('--per-sentence', help='write per-sentence scores to this CSV')
    sari_parser.set_defaults(handler=cmd_sari)

    pipeline_parser = subparsers.add_parser('pipeline', parents=[common],
                                            help='sample, filter and compare in one run')
    pipeline_parser.add_argument('input', help="paraphrase TSV ('-' for stdin, .gz ok)")
    pipeline_parser.add_argument('--output-dir', '-o', required=True)
    _add_sampling_flags(pipeline_parser)
    _add_selector_flags(pipeline_parser)
    pipeline_parser.set_defaults(handler=cmd_pipeline)

    return parser


def configure_logging(args):
    level = RUNTIME_CONFIG['log_level'].upper()
    if args.quiet:
        level = 'WARNING'
    elif args.verbose:
        level = 'DEBUG'
    logging.basicConfig(stream=sys.stderr, level=level, format='%(message)s', force=True)


def _resolved_config(args):
    config = {key: value for key, value in vars(args).items() if key not in ('handler',)}
    return json.loads(json.dumps(config, default=str))


def main(argv=None):
    """Run one subcommand; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # usage errors exit 3, --help and --version exit 0
        return e.code
    configure_logging(args)
    logger.debug(f"Environment defaults: {get_config_summary()}")

    start = time.perf_counter()
    try:
        counts = args.handler(args)
    except SimplicorpusError as e:
        logger.error(f"❌ {e}")
        return e.exit_code
    except EmptyReferences as e:
        logger.error(f"❌ {e}")
        return ConfigError.exit_code
    except OSError as e:
        logger.error(f"❌ I/O error: {e}")
        return InputError.exit_code

    manifest = RunManifest(
        subcommand=args.subcommand,
        config=_resolved_config(args),
        counts=counts,
        duration_seconds=round(time.perf_counter() - start, 3),
    )
    try:
        _emit_manifest(manifest, args.report)
    except SimplicorpusError as e:
        logger.error(f"❌ {e}")
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
