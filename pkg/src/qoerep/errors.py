"""Exception types shared across the pipeline."""

from __future__ import annotations


class ValidationError(ValueError):
    """Input data violates a precondition (unlabeled record, single class, ...)."""


class ParseError(ValueError):
    """A file could not be parsed under its declared format."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class NumericalError(ArithmeticError):
    """NaN or Inf appeared in a forward pass or loss."""


class ContractError(RuntimeError):
    """An internal object was used against its contract (e.g. a stale cache)."""
