"""Exception types raised across the pipeline.

DataError subclasses map to CLI exit code 2, ScorerError to exit code 3.
"""


class LemcorefError(Exception):
    """Base class for all package errors."""


class DataError(LemcorefError):
    """Invalid or inconsistent input data."""


class MalformedRecord(DataError):
    def __init__(self, line_no: int, field: str, message: str):
        self.line_no = line_no
        self.field = field
        super().__init__(f"line {line_no}, field '{field}': {message}")


class DuplicateMentionId(DataError):
    pass


class MissingGoldLabel(DataError):
    pass


class MissingGroupKey(DataError):
    pass


class EmptySplitSelection(DataError):
    pass


class UnknownMentionId(DataError):
    pass


class InconsistentPairSet(DataError):
    pass


class EmptyGrid(DataError):
    pass


class MissingDocumentText(DataError):
    pass


class MissingPair(DataError):
    pass


class DuplicatePair(DataError):
    pass


class ScoreOutOfRange(DataError):
    pass


class UniverseMismatch(DataError):
    pass


class ScorerError(LemcorefError):
    """External scorer process failed or misbehaved."""
