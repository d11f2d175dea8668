"""Exception hierarchy for qlab.

Constructors raise these for broken *structure*. Checkers never raise for a
failed *property*; they return a :class:`qlab.report.Report` instead.
"""

from typing import Any, Optional


class QlabError(Exception):
    """Base class for all qlab errors."""


class EnumerationBoundError(QlabError):
    """An enumeration would exceed the configured bound."""

    def __init__(self, what: str, size: int, bound: int):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(
            f"Enumerating {what} needs {size} candidates, over the bound {bound} "
            "(raise QLAB_MAX_ENUM or pass bound=...)"
        )


class LawViolation(QlabError):
    """A structural law fails; carries the law id and a concrete witness."""

    def __init__(self, law: str, witness: Any = None, message: Optional[str] = None):
        self.law = law
        self.witness = witness
        super().__init__(message or f"{law} fails at {witness!r}")


class JoinPreservationError(LawViolation):
    """A map fails to preserve the join of ``witness`` (a tuple of elements)."""

    def __init__(self, witness: tuple, message: Optional[str] = None):
        super().__init__(
            "map.preserves_joins",
            witness,
            message or f"map does not preserve the join of {list(witness)!r}",
        )


class HypothesisError(QlabError):
    """A checker's precondition is not met."""

    def __init__(self, hypothesis: str, message: Optional[str] = None):
        self.hypothesis = hypothesis
        super().__init__(message or f"hypothesis not satisfied: {hypothesis}")


class CrossValidationError(QlabError):
    """Frame-side and spatial computations of the same object disagree."""


class SchemaError(QlabError):
    """A model file is malformed."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")
