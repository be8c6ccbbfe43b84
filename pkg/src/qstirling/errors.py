"""Exception types shared across the package."""


class QStirlingError(Exception):
    pass


class ParseError(QStirlingError, ValueError):
    """Malformed text input (multiset, word, tree, code pair)."""


class ValidationError(QStirlingError, ValueError):
    """An object does not belong to the class an operation requires."""


class PatternError(ValidationError):
    """A word contains the forbidden ``abab`` pattern."""


class DomainError(QStirlingError, ValueError):
    """An operation was applied outside its mathematical domain."""


class SizeLimitError(QStirlingError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"multiset size K={size} exceeds the enumeration cap {cap}")
