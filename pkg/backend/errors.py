"""
Error types for Monova
One hierarchy so the CLI and HTTP layers can map failures to exit codes and status codes
"""

from typing import Optional, Tuple


class MonovaError(Exception):
    """Base class for every error raised by the backend modules"""


class WordParseError(MonovaError, ValueError):
    """Malformed word, identity, variety or presentation text"""

    def __init__(self, message: str, column: Optional[int] = None, text: str = ""):
        self.column = column
        self.text = text
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class LetterLookupError(MonovaError, LookupError):
    """A letter or occurrence that the word does not contain"""


class DomainError(MonovaError, ValueError):
    """An operation applied outside its domain, e.g. ell of the empty word"""


class ArgumentError(MonovaError, ValueError):
    """Invalid parameters for a family, a bound or a triple"""


class UnsupportedVariety(MonovaError, ValueError):
    """A variety name with no decision procedure"""


class BlocksDoNotCorrespond(MonovaError, ValueError):
    """Dist requested for an identity outside the domain variety of its kind"""


class PresentationError(MonovaError):
    """A presentation that did not close, or closed into a non-monoid"""


class IdempotentsNotClosed(MonovaError):
    """The idempotents of a monoid do not form a submonoid"""

    def __init__(self, pair: Tuple[str, str]):
        self.pair = pair
        super().__init__(
            f"idempotents not closed under product: {pair[0]} * {pair[1]} is not idempotent"
        )


class BudgetExceeded(MonovaError):
    """A brute-force or enumeration job larger than the configured budget"""

    def __init__(self, required: int, budget: int, progress: str = ""):
        self.required = required
        self.budget = budget
        self.progress = progress
        message = f"budget exceeded: {required} evaluations required, budget is {budget}"
        if progress:
            message += f" ({progress})"
        super().__init__(message)


class TableError(MonovaError, ValueError):
    """A multiplication table that is not an associative monoid table"""
