"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: DataError and subclasses are data or
validation problems (exit 2), MetricUndefinedError means a requested metric
has no defined value on the given input (exit 3).
"""


class DataError(Exception):
    """Invalid or inconsistent input data."""


class Rs3ParseError(DataError):
    """Malformed rs3 XML. Carries the position of the first offending byte."""

    def __init__(self, message, line=None, column=None, byte_offset=None):
        self.line = line
        self.column = column
        self.byte_offset = byte_offset
        if byte_offset is not None:
            message = f"{message} (line {line}, column {column}, byte offset {byte_offset})"
        super().__init__(message)


class StructuralError(DataError):
    """A discourse tree violates a structural invariant."""


class InventoryError(DataError):
    """A relation name is used but not declared, or declared inconsistently."""


class MetaError(DataError):
    """Token/sentence/EDU metadata is malformed or does not tile the document."""


class TreeMetaMismatchError(DataError):
    """A tree and its document metadata disagree about the segment set."""


class AnnotationFormatError(DataError):
    """An annotation payload violates the annotation file format."""


class PropositionReferenceError(DataError):
    """An annotation refers to a proposition index outside the document."""


class SingularDesignError(DataError):
    """A regression design matrix contains linearly dependent columns."""

    def __init__(self, columns):
        self.columns = list(columns)
        super().__init__("singular design matrix; collinear columns: " + ", ".join(self.columns))


class VersionConflictError(Exception):
    """An annotation write carried a stale version number."""

    def __init__(self, expected, current):
        self.expected = expected
        self.current = current
        super().__init__(f"stale write: client version {expected}, stored version {current}")


class MetricUndefinedError(Exception):
    """The requested metric is undefined on this input (e.g. empty table)."""
