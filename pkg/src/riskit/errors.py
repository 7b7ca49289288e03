"""Exception hierarchy shared by every riskit module."""

from __future__ import annotations


class RiskitError(ValueError):
    """Base class for domain errors; the CLI maps these to exit code 1."""

    code = "RiskitError"


class NotSquareError(RiskitError):
    code = "NotSquare"


class EntryOutOfRangeError(RiskitError):
    code = "EntryOutOfRange"


class ColumnNotPermutationError(RiskitError):
    code = "ColumnNotPermutation"

    def __init__(self, column: int):
        super().__init__(f"column {column} is not a permutation")
        self.column = column


class EmptyStructureError(RiskitError):
    code = "EmptyStructure"


class BoundExceededError(RiskitError):
    code = "BoundExceeded"


class InvalidTableError(RiskitError):
    code = "InvalidTable"


class NotFaithfulError(RiskitError):
    code = "NotFaithful"


class NotRisandleError(RiskitError):
    code = "NotRisandle"


class DiagramSyntaxError(RiskitError):
    code = "SyntaxError"

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ArcOutOfRangeError(RiskitError):
    code = "ArcOutOfRange"


class ArcCountMismatchError(RiskitError):
    code = "ArcCountMismatch"


class WordSyntaxError(RiskitError):
    code = "SyntaxError"


class QuotientNotFiniteError(RiskitError):
    code = "QuotientNotFinite"


class BudgetExceededError(RiskitError):
    code = "BudgetExceeded"
