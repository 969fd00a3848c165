"""
Exception hierarchy for skeinlab.

Library code raises these; the CLI maps them to exit codes
(diagram errors -> 2, guard/budget errors -> 3, group errors -> 4).
"""
from dataclasses import dataclass
from typing import Optional


class SkeinlabError(Exception):
    """Base class for every error raised by skeinlab."""


# --- Groups ---

class GroupError(SkeinlabError):
    """A permutation group could not be built or read."""


class DegreeMismatchError(GroupError):
    pass


class GroupTooLargeError(GroupError):
    pass


class GroupFormatError(GroupError):
    """Unknown builtin name or malformed group file."""


# --- Tensors and models ---

class IndexRangeError(SkeinlabError, ValueError):
    """An index, point or leg position lies outside its allowed range."""


class ShapeMismatchError(SkeinlabError, ValueError):
    """Operands disagree on rank or dimension."""


class EnumerationGuardError(SkeinlabError):
    pass


class RepresentativeError(SkeinlabError, ValueError):
    pass


class BindingError(SkeinlabError):
    """A custom tensor name is unbound or its shape does not match the box."""


# --- Diagrams ---

@dataclass(frozen=True)
class SourceLocation:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class DiagramError(SkeinlabError):
    """Invalid diagram; carries a source location when it came from DSL text."""

    def __init__(self, message: str, location: Optional[SourceLocation] = None):
        self.message = message
        self.location = location
        prefix = f"{location}: " if location else ""
        super().__init__(f"{prefix}{message}")

    @property
    def line(self) -> Optional[int]:
        return self.location.line if self.location else None

    @property
    def column(self) -> Optional[int]:
        return self.location.column if self.location else None


class DSLSyntaxError(DiagramError):
    pass


class UnknownBoxKindError(DiagramError):
    pass


class ArityMismatchError(DiagramError):
    pass


class DanglingPortError(DiagramError):
    pass


class DuplicateWireError(DiagramError):
    pass


class UnknownBoxError(DiagramError):
    pass


class DuplicateBoxError(DiagramError):
    pass


class NonClosedDiagramError(DiagramError):
    pass


class UnsupportedBoxError(DiagramError):
    """The symbolic evaluator was handed a CUSTOM box."""


# --- Budgets ---

class GuardExceededError(SkeinlabError):
    def __init__(self, message: str, required: int, guard: int):
        self.required = required
        self.guard = guard
        super().__init__(message)


class TermBudgetExceededError(SkeinlabError):
    def __init__(self, message: str, terms: int, budget: int):
        self.terms = terms
        self.budget = budget
        super().__init__(message)
