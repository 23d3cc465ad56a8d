from __future__ import annotations


class LefblockError(Exception):
    """Base class for errors raised by lefblock."""


class TableMismatch(LefblockError):
    pass


class NotVirtual(LefblockError):
    """A class function is not a Z-combination of irreducibles."""


class UnknownName(LefblockError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class AmbiguousName(LefblockError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class RecipeInvalid(LefblockError):
    pass


class ZeroDegree(LefblockError):
    pass


class UnknownBlock(LefblockError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class MissingBlockData(LefblockError):
    pass


class NotVProjective(LefblockError):
    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class NegativeMultiplicity(LefblockError):
    pass


class BoundExceeded(LefblockError):
    pass


class ParseError(LefblockError):
    def __init__(self, msg: str, path: str = "", line: int = 0, column: int = 0):
        self.path, self.line, self.column = path, line, column
        where = f"{path}:{line}:{column}: " if path else (f"line {line}, column {column}: " if line else "")
        super().__init__(where + msg)


class BundleReferenceError(LefblockError):
    """A bundle file refers to an id that the bundle does not define."""


class ValidationError(LefblockError):
    def __init__(self, check: str, detail: str = ""):
        self.check = check
        super().__init__(f"{check}: {detail}" if detail else check)
