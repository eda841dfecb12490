# exception hierarchy
#
# Exceptions raised by the package. Validation routines return violations as
# data; these exceptions are reserved for operations that cannot proceed.
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from dataclasses import dataclass
from typing import Iterable, List, Optional


@dataclass(frozen=True)
class Violation:
    """A single broken invariant of a model.

    kind names the invariant (e.g. ``determinism``, ``unreachable``,
    ``input-locality``), subject the offending element and detail a
    human-readable explanation.
    """

    kind: str
    subject: str
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.kind}: {self.subject}"
        return f"{text} ({self.detail})" if self.detail else text


class MSError(Exception):
    """Base exception of the package.

    Args:
        message: Error message.
        hint: Optional guidance on how to resolve the problem.
    """

    def __init__(self, message: str, hint: str = "") -> None:
        self.message = message
        self.hint = hint
        super().__init__(message)

    def __str__(self) -> str:
        return " ".join([self.message, self.hint]).rstrip()


class UserInputError(MSError):
    """Raised when the arguments of an operation are invalid."""


class NotEnabledError(MSError):
    """Raised when executing a step that is not free-enabled."""


class ValidationError(MSError):
    """Raised when an operation requires a model that fails validation."""

    def __init__(
        self, message: str, violations: Iterable[Violation] = (), hint: str = ""
    ) -> None:
        self.violations: List[Violation] = list(violations)
        if self.violations:
            message = message + ": " + "; ".join(str(v) for v in self.violations)
        super().__init__(message, hint=hint)


class ParseError(MSError):
    """Raised when a model file cannot be parsed.

    Args:
        message: What is wrong.
        path: The file being read, if any.
        location: Where in the document, e.g. ``arcs[3].step`` or
            ``line 4 column 9``.
    """

    def __init__(
        self, message: str, path: Optional[str] = None, location: Optional[str] = None
    ) -> None:
        self.reason = message
        self.path = path
        self.location = location
        where = ":".join(x for x in (path, location) if x)
        super().__init__(f"{where}: {message}" if where else message)
