"""Exception types shared across the package."""


class DragonflyError(Exception):
    """Base class for all package errors."""


class DomainError(DragonflyError, ValueError):
    """A value does not belong to the scale, or a precondition on the system fails."""


class UnsupportedOperation(DragonflyError):
    """The operation needs a finite carrier (e.g. enumeration on the product system)."""


class StructureError(DragonflyError, ValueError):
    """A table or vector has the wrong shape for its universe."""


class GuardExceeded(DragonflyError):
    """An exhaustive enumeration would be too large to run."""

    def __init__(self, what: str, estimate: int, limit: int):
        super().__init__(f"{what}: estimated {estimate} items exceeds limit {limit}")
        self.estimate = estimate
        self.limit = limit


class ParseError(DragonflyError, ValueError):
    """Malformed input text; carries an optional source location."""

    def __init__(self, message: str, source: str | None = None, line: int | None = None):
        where = ""
        if source is not None:
            where = source
        if line is not None:
            where = f"{where}:{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)
        self.source = source
        self.line = line
