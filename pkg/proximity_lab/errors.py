"""Exception hierarchy shared by the library, the CLI, the API and the MCP tools.

Library code raises these; only the outer surfaces translate them into exit
codes, HTTP responses or error dictionaries.
"""
from typing import Optional


class LabError(Exception):
    """Base class for every error the lab raises on purpose."""

    exit_code = 1


class ParseError(LabError):
    """Polynomial text does not conform to the grammar."""

    exit_code = 2

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PreconditionError(LabError):
    exit_code = 3


class ArityError(PreconditionError):
    pass


class UnknownVariableError(PreconditionError):
    pass


class ZeroPolynomialError(PreconditionError):
    pass


class ElementNotFoundError(PreconditionError):
    pass


class DuplicateElementError(PreconditionError):
    pass


class EmptyGridError(PreconditionError):
    pass


class CylinderError(PreconditionError):
    """The surface does not depend on one of its coordinates (case (B))."""


class ZDegreeCollapseError(PreconditionError):
    pass


class OffCurveError(PreconditionError):
    pass


class DegenerateCurveError(PreconditionError):
    """The curve has no y-dependence once its content is removed."""

    def __init__(self, message: str, vertical_lines=()):
        self.vertical_lines = tuple(vertical_lines)
        super().__init__(message)


class UnsortedInputError(PreconditionError):
    pass


class ForbidCapacityError(PreconditionError):
    pass


class UnfillableWindowError(ForbidCapacityError):
    """No point of a scan window is allowed by both forbid maps."""

    def __init__(self, message: str, anchor: int, window: tuple):
        self.anchor = anchor
        self.window = tuple(window)
        super().__init__(message)


class ForbiddenAngleError(PreconditionError):
    pass


class CollinearAnchorsError(PreconditionError):
    pass


class DegenerateFitError(PreconditionError):
    pass


class InvariantViolation(LabError):
    """An exact guarantee was checked at run time and failed."""

    exit_code = 4


class StageError(LabError):
    """A LabError raised inside a named pipeline stage."""

    def __init__(self, stage: str, cause: LabError):
        self.stage = stage
        self.cause = cause
        self.exit_code = cause.exit_code
        super().__init__(f"[{stage}] {cause}")
