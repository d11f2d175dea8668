"""Check reports.

Every checker in qlab returns a :class:`Report`: a list of :class:`Check`
records, each naming a statement from :mod:`qlab.statements`, whether it
held, and a concrete witness when it did not.
"""

import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator

from qlab.errors import EnumerationBoundError
from qlab.statements import STATEMENTS, describe

logger = logging.getLogger(__name__)


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_jsonable(v) for v in value), key=repr)
    return repr(value)


class Check(BaseModel):
    """Outcome of a single statement on a single instance."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    statement: str = Field(description="Statement id, see qlab.statements")
    passed: bool
    witness: Optional[Any] = Field(default=None, description="Counterexample when the check failed")
    detail: str = ""
    inconclusive: bool = Field(default=False, description="Skipped because an enumeration bound was hit")

    @field_validator("statement")
    @classmethod
    def check_statement(cls, v):
        if v not in STATEMENTS:
            raise ValueError(f"unknown statement id {v!r}")
        return v

    @field_serializer("witness")
    def serialize_witness(self, witness: Any) -> Any:
        return _jsonable(witness)

    @property
    def description(self) -> str:
        return describe(self.statement)

    def line(self) -> str:
        if self.inconclusive:
            icon = "⏸"
        else:
            icon = "✅" if self.passed else "❌"
        text = f"{icon} {self.statement}"
        if self.detail:
            text += f" ({self.detail})"
        if not self.passed and self.witness is not None:
            text += f" witness={self.witness!r}"
        return text


class Report(BaseModel):
    """Results of running checkers against a subject."""

    subject: str
    checks: List[Check] = Field(default_factory=list)
    elapsed: float = 0.0
    notes: Dict[str, Any] = Field(default_factory=dict, description="Properties observed on the way that are not checks")

    @field_serializer("notes")
    def serialize_notes(self, notes: Dict[str, Any]) -> Dict[str, Any]:
        return _jsonable(notes)

    def check(self, statement: str, passed: bool, witness: Any = None, detail: str = "") -> bool:
        """Record a check and return ``passed``."""
        self.checks.append(Check(statement=statement, passed=passed, witness=None if passed else witness, detail=detail))
        if passed:
            logger.debug("%s: %s holds", self.subject, statement)
        else:
            logger.info("%s: %s fails at %r", self.subject, statement, witness)
        return passed

    def witness(self, statement: str, witness: Any, detail: str = "") -> bool:
        """Record a check from a ``*_witness`` helper: ``None`` means it held."""
        return self.check(statement, witness is None, witness, detail)

    def note(self, key: str, value: Any) -> None:
        self.notes[key] = value
        logger.debug("%s: %s = %r", self.subject, key, value)

    def skip(self, statement: str, detail: str) -> None:
        self.checks.append(Check(statement=statement, passed=True, inconclusive=True, detail=detail))
        logger.warning("%s: %s inconclusive: %s", self.subject, statement, detail)

    @contextmanager
    def bounded(self, statement: str) -> Iterator[None]:
        """Run a block, recording ``statement`` as inconclusive if it hits the bound."""
        try:
            yield
        except EnumerationBoundError as exc:
            self.skip(statement, str(exc))

    @contextmanager
    def timed(self) -> Iterator["Report"]:
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed += time.perf_counter() - start

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        self.elapsed += other.elapsed
        self.notes.update(other.notes)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def inconclusive(self) -> bool:
        return any(c.inconclusive for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def first_failure(self) -> Optional[Check]:
        failures = self.failures
        return failures[0] if failures else None

    def get(self, statement: str) -> Optional[Check]:
        for c in self.checks:
            if c.statement == statement:
                return c
        return None

    def __getitem__(self, statement: str) -> Check:
        found = self.get(statement)
        if found is None:
            raise KeyError(statement)
        return found

    def __contains__(self, statement: str) -> bool:
        return self.get(statement) is not None

    def holds(self, statement: str) -> bool:
        """Whether every check recorded under ``statement`` passed."""
        matching = [c for c in self.checks if c.statement == statement]
        if not matching:
            raise KeyError(statement)
        return all(c.passed for c in matching)

    @property
    def exit_code(self) -> int:
        if not self.passed:
            return 1
        if self.inconclusive:
            return 3
        return 0

    def to_json(self) -> str:
        """The report as JSON, witnesses included as nested lists or their repr."""
        return self.model_dump_json(indent=2)

    def summary(self) -> Dict[str, int]:
        return {
            "checks": len(self.checks),
            "failed": len(self.failures),
            "inconclusive": sum(c.inconclusive for c in self.checks),
        }

    def __str__(self) -> str:
        lines = ["", "=" * 60, f"Report: {self.subject}", "=" * 60]
        status = "PASS" if self.passed else "FAIL"
        if self.passed and self.inconclusive:
            status = "INCONCLUSIVE"
        lines.append(f"Status: {status}  ({self.elapsed:.3f}s)")
        lines.append("-" * 60)
        lines.extend(c.line() for c in self.checks)
        lines.extend(f"• {key}: {value}" for key, value in self.notes.items())
        lines.append("=" * 60)
        return "\n".join(lines)
