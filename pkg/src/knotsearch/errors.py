"""Exception hierarchy shared by the harness modules."""


class KnotSearchError(Exception):
    """Base class for all harness errors."""


class DataError(KnotSearchError):
    """Raised for problems with input data (mapped to CLI exit code 2)."""


class UnreadableFile(DataError):
    pass


class MalformedRow(DataError):
    def __init__(self, row: int, expected: int, found: int):
        super().__init__(f"row {row}: expected {expected} columns, found {found}")
        self.row = row


class UnparseableCell(DataError):
    def __init__(self, column: str, row: int | None, cell: str, reason: str = ""):
        where = f"column {column!r}" + (f", row {row}" if row is not None else "")
        msg = f"{where}: cannot parse {cell!r}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)
        self.column = column
        self.row = row


class UnknownColumn(DataError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class NonNumericTarget(DataError):
    pass


class NonIntegerTarget(DataError):
    pass


class InsufficientData(DataError):
    pass


class EvaluationAtPole(KnotSearchError, ZeroDivisionError):
    pass


class ZeroPolynomial(KnotSearchError, ValueError):
    pass


class WindowTooSmall(KnotSearchError, ValueError):
    pass


class DimensionMismatch(KnotSearchError, ValueError):
    pass


class NonFiniteLoss(KnotSearchError, FloatingPointError):
    def __init__(self, epoch: int, batch: int):
        super().__init__(f"non-finite loss at epoch {epoch}, batch {batch}")
        self.epoch = epoch
        self.batch = batch


class LengthMismatch(KnotSearchError, ValueError):
    pass


class ZeroActual(KnotSearchError, ZeroDivisionError):
    pass


class EmptyGrid(KnotSearchError, ValueError):
    pass


class MalformedResultsLine(DataError):
    def __init__(self, line_no: int, line: str, reason: str = ""):
        super().__init__(f"results line {line_no}: {reason or 'malformed'}: {line!r}")
        self.line_no = line_no


class MissingSubsetResult(UserWarning):
    """Warned when pruning cannot find a lower-arity result to compare against."""


class DataQualityWarning(UserWarning):
    pass
