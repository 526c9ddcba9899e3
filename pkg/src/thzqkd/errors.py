"""Exception hierarchy shared across the simulator."""


class ThzQkdError(Exception):
    """Base class for all errors raised by :mod:`thzqkd`."""


class DomainError(ThzQkdError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PhysicalityError(ThzQkdError, ArithmeticError):
    """A covariance matrix or entropy came out unphysical beyond tolerance.

    ``context`` carries whatever the caller knows about where it happened
    (subcarrier index, distance, scenario name) so the CLI can report it.
    """

    def __init__(self, message, **context):
        self.context = dict(context)
        if context:
            detail = ", ".join(f"{key}={val}" for key, val in context.items())
            message = f"{message} ({detail})"
        super().__init__(message)


class ParseError(ThzQkdError, ValueError):
    """Malformed input file (line list, spectrum table)."""

    def __init__(self, message, *, line=None, columns=None):
        self.line = line
        self.columns = columns
        where = []
        if line is not None:
            where.append(f"record {line}")
        if columns is not None:
            where.append(f"columns {columns[0]}-{columns[1]}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class ValidationError(ThzQkdError, ValueError):
    """A scenario document failed validation; ``path`` is a JSON path."""

    def __init__(self, message, path="$"):
        self.path = path
        super().__init__(f"{path}: {message}")
