"""
Configuration for pseudo simplification corpus construction
No automatic directory creation or validation on import
"""

import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# =============================================================================
# BASIC CONFIGURATION - NO AUTOMATIC EXECUTION
# =============================================================================

SELECTOR_CONFIG = {
    'threshold': float(os.getenv('SIMPLICORPUS_THRESHOLD', 10.0)),
    'orientation': os.getenv('SIMPLICORPUS_ORIENT', 'auto'),
    'comparison': os.getenv('SIMPLICORPUS_CMP', 'strict_greater')
}

SAMPLING_CONFIG = {
    'n': int(os.getenv('SIMPLICORPUS_SAMPLE_SIZE', 2_000_000)),
    'seed': int(os.getenv('SIMPLICORPUS_SEED', 0))
}

RUNTIME_CONFIG = {
    'threads': int(os.getenv('SIMPLICORPUS_THREADS', os.cpu_count() or 1)),
    'chunk_size': int(os.getenv('SIMPLICORPUS_CHUNK_SIZE', 2000)),
    'log_level': os.getenv('SIMPLICORPUS_LOG_LEVEL', 'INFO'),
    # None means "on when stderr is a terminal"
    'progress': os.getenv('SIMPLICORPUS_PROGRESS')
}

SARI_CONFIG = {
    'max_n': 4,
    'del_f1': False,
    'lowercase': True
}

FRES_CONFIG = {
    'precision': 2
}

OUTPUT_NAMES = {
    'complex': 'complex.txt',
    'simple': 'simple.txt',
    'pairs': 'pairs.tsv',
    'report': 'report.json',
    'stats': 'stats.json',
    'first_dir': 'first',
    'second_dir': 'second',
    'table': 'comparison.csv'
}

# =============================================================================
# HELPER FUNCTIONS - BUT DON'T CALL THEM AUTOMATICALLY
# =============================================================================

def create_output_directories(root):
    """Create the pipeline output layout under root - call this manually"""
    for sub in ('first_dir', 'second_dir'):
        os.makedirs(os.path.join(root, OUTPUT_NAMES[sub]), exist_ok=True)


def progress_enabled(stream):
    """Resolve the progress setting against the given stream"""
    setting = RUNTIME_CONFIG['progress']
    if setting is None:
        return hasattr(stream, 'isatty') and stream.isatty()
    return setting.strip().lower() in ('1', 'true', 'yes', 'on')


def get_config_summary():
    """Get config summary - call this manually if needed"""
    return {
        'threshold': SELECTOR_CONFIG['threshold'],
        'orientation': SELECTOR_CONFIG['orientation'],
        'comparison': SELECTOR_CONFIG['comparison'],
        'sample_size': SAMPLING_CONFIG['n'],
        'seed': SAMPLING_CONFIG['seed'],
        'threads': RUNTIME_CONFIG['threads'],
        'chunk_size': RUNTIME_CONFIG['chunk_size']
    }
