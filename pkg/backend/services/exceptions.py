from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Tuple


class ServiceError(Exception):
    """Base class for service-layer errors."""


class InputError(ServiceError):
    """Raised when user supplied data (files, words, parameters) is malformed."""


class DatasetNotFound(InputError):
    """Raised when a requested built-in table, graph or matrix cannot be located."""


@dataclass
class ParseError(InputError):
    """Structured parse error for operator expressions in U and D."""

    message: str
    expression: str
    line: int | None = None
    column: int | None = None
    context: str | None = None

    def __str__(self) -> str:  # pragma: no cover - formatting helper
        location = ""
        if self.line is not None and self.column is not None:
            location = f" (line {self.line}, column {self.column})"
        return f"{self.message}{location}"


@dataclass
class TableIntegrityError(InputError):
    """A character table failed orthogonality or integrality checks."""

    message: str
    pair: Optional[Tuple[Any, Any]] = None

    def __str__(self) -> str:  # pragma: no cover - formatting helper
        if self.pair is None:
            return self.message
        return f"{self.message} (at {self.pair[0]!r}, {self.pair[1]!r})"


class NotFaithfulError(InputError):
    """Raised when a critical group is requested for a non-faithful representation."""


@dataclass
class IncompatibleMapError(ServiceError):
    """The square F·M = N·X has no integer solution X."""

    message: str
    shapes: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def __str__(self) -> str:  # pragma: no cover - formatting helper
        return self.message


class InternalConsistencyError(ServiceError):
    """Two independent computations of a guaranteed identity disagree."""
