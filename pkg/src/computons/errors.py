"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ComputonError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInputError(ComputonError):
    """Raw data cannot even be read as a candidate structure (duplicate ids, unknown keys)."""


class ElementNotFoundError(ComputonError, KeyError):
    def __init__(self, element: str, where: str = "computon"):
        self.element = element
        super().__init__(f"unknown element {element!r} in {where}")

    def __str__(self) -> str:
        return self.args[0]


class InvalidColourError(ComputonError, ValueError):
    pass


class InvalidComputonError(ComputonError):
    """A structure violates the computon axioms where a valid computon was required."""

    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class InvalidMorphismError(ComputonError):
    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class CompositionMismatchError(ComputonError):
    pass


class InvalidSpanError(ComputonError):
    pass


class PushoutUndefinedError(ComputonError):
    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class SequencingRejected(ComputonError):
    """A span fails one of the sequential-computon conditions (i)-(iv)."""

    def __init__(self, condition: str, message: str):
        self.condition = condition
        super().__init__(f"condition ({condition}) failed: {message}")


class NotSequentiableError(ComputonError):
    pass


class InvalidPairingError(ComputonError):
    pass


class NotParallelisableError(ComputonError):
    pass


class CapacityError(ComputonError):
    pass


class FiringError(ComputonError):
    pass
