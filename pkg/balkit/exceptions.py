"""
Custom exceptions for balkit.
"""

from typing import Optional, Sequence


class BalkitError(Exception):
    """Base exception for balkit."""
    pass


class InputError(BalkitError):
    """Raised when a face, colour set, file or argument is malformed."""

    def __init__(self, detail: str):
        self.detail = detail
        self.message = f"Invalid input: {detail}"
        super().__init__(self.message)


class EmptyComplexError(BalkitError):
    """Raised when an operation would produce or receive a complex without vertices."""

    def __init__(self, operation: str, message: Optional[str] = None):
        self.operation = operation
        self.message = message or f"{operation}: empty complex"
        super().__init__(self.message)


class NotAFaceError(BalkitError):
    """Raised when link or star is asked for a set that is not a face."""

    def __init__(self, face: Sequence[str]):
        self.face = tuple(face)
        self.message = f"{{{', '.join(self.face)}}} is not a face of the complex"
        super().__init__(self.message)


class NotAPseudomanifoldError(BalkitError):
    """Raised when some ridge lies in three or more facets."""

    def __init__(self, ridge: Sequence[str], count: int):
        self.ridge = tuple(ridge)
        self.count = count
        self.message = (
            f"Ridge {{{', '.join(self.ridge)}}} lies in {count} facets; "
            f"a pseudomanifold allows at most 2"
        )
        super().__init__(self.message)


class ImproperColoringError(BalkitError):
    """Raised when a coloring assigns one color to both ends of an edge."""

    def __init__(self, edge: Sequence[str], color: int):
        self.edge = tuple(edge)
        self.color = color
        self.message = f"Edge {{{', '.join(self.edge)}}} is monochromatic (color {color})"
        super().__init__(self.message)


class PreconditionError(BalkitError):
    """Raised when a predicate's precondition fails; distinct from a fail verdict."""

    def __init__(self, check: str, reason: str):
        self.check = check
        self.reason = reason
        self.message = f"{check}: precondition failed: {reason}"
        super().__init__(self.message)


class ConstructionDataError(BalkitError):
    """Raised when transcribed construction data does not assemble into the advertised object."""

    def __init__(self, piece: str, reason: str):
        self.piece = piece
        self.reason = reason
        self.message = f"Construction data for '{piece}' is inconsistent: {reason}"
        super().__init__(self.message)


class RegimeError(BalkitError):
    """Raised when an enumeration spec lies outside the supported regime."""

    def __init__(self, spec: str, reason: str):
        self.spec = spec
        self.reason = reason
        self.message = f"Refusing enumeration {spec}: {reason}"
        super().__init__(self.message)


class BudgetExhausted(BalkitError):
    """Raised inside searches when the node budget runs out."""

    def __init__(self, nodes: int, budget: int):
        self.nodes = nodes
        self.budget = budget
        self.message = f"Search budget exhausted after {nodes} of {budget} nodes"
        super().__init__(self.message)


class BuilderUnavailable(BalkitError):
    """Raised when a search-backed builder has no certificate and its search was undecided."""

    def __init__(self, name: str, reason: str):
        self.name = name
        self.reason = reason
        self.message = f"Builder '{name}' unavailable: {reason}"
        super().__init__(self.message)
