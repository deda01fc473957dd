"""
Exception hierarchy for corpus construction and evaluation.

Library code raises these; only the CLI turns them into exit codes.
"""


class SimplicorpusError(Exception):
    """Base error; exit_code is the stable CLI contract"""
    exit_code = 1


class InputError(SimplicorpusError):
    """Unreadable or missing input"""
    exit_code = 2


class ConfigError(SimplicorpusError, ValueError):
    """Invalid flag or configuration value"""
    exit_code = 3


class EmptyCorpus(SimplicorpusError):
    exit_code = 4


class AlignmentMismatch(SimplicorpusError):
    """Line-aligned inputs disagree in length"""
    exit_code = 5


class EmptySentence(ValueError):
    """A sentence with no word tokens cannot be scored by FRES"""


class Unscoreable(EmptySentence):
    """One side of a pair has no word tokens"""

    def __init__(self, side, ordinal=None):
        self.side = side
        self.ordinal = ordinal
        super().__init__(f"{side} side of pair {ordinal} has no words")


class MalformedLine(ValueError):
    """A TSV record without exactly two non-empty tab-separated fields"""

    def __init__(self, line_number, reason):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}")


class InvalidUtf8(MalformedLine):
    pass


class EmptyReferences(ValueError):
    """A SARI instance was given no references"""


class RaggedReferences(AlignmentMismatch):
    """SARI instances disagree in reference count"""
