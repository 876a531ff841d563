"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class LabGraphsError(Exception):
    """Base class for all library errors."""


class PreconditionError(LabGraphsError):
    """A named precondition of an operation was violated."""

    def __init__(self, name: str, message: str = ""):
        self.name = name
        super().__init__(f"{name}: {message}" if message else name)


class NotALabeledPath(LabGraphsError):
    """The word has no representative path in the graph."""


class NotAMember(LabGraphsError):
    """The vertex set is not a member of the collection."""


class AxiomFailure(LabGraphsError):
    """A group axiom failed; ``witness`` holds the violating elements."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class OutOfWindow(LabGraphsError):
    """A group element escaped the enforced materialization window."""


class LiftFailure(LabGraphsError):
    """Path lifting was not unique (zero or several lifts)."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NonFreeWitness(LabGraphsError):
    """No unique solver element exists; the action cannot be free."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class WellDefinednessError(LabGraphsError):
    """Quotient data is inconsistent; ``witness`` is the offending pair."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class SearchSpaceExceeded(LabGraphsError):
    """The candidate space is larger than the configured cap."""


class NoFundamentalDomain(LabGraphsError):
    """No fundamental domain was found (or the supplied one is invalid)."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class VerificationError(LabGraphsError):
    """A constructed object failed one of its defining laws."""

    def __init__(self, law: str, witness=None):
        self.law = law
        self.witness = witness
        super().__init__(f"verification failed: {law} (witness={witness!r})")


class LabelConsistencyViolation(LabGraphsError):
    """Derived cocycles are not label consistent despite a verified
    fundamental domain.  This contradicts the reconstruction theory and is
    therefore classified as an internal error, never user input."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class ParseError(LabGraphsError):
    """Malformed JSON input; carries line and column."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"parse error at line {line}, column {column}: {message}")


class SchemaError(LabGraphsError):
    """Structurally valid JSON that violates the document schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"schema error at {path}: {message}")
