"""Exception hierarchy shared across the package."""

from __future__ import annotations


class HopfClassError(Exception):
    """Base class for all domain errors raised by this package."""


class NonPrime(HopfClassError):
    pass


class ReducibleModulus(HopfClassError):
    pass


class DegreeMismatch(HopfClassError):
    pass


class DivisionByZero(HopfClassError):
    pass


class NoSolution(HopfClassError):
    pass


class NotAugmented(HopfClassError):
    pass


class NotPMapCompatible(HopfClassError):
    pass


class NotCocycle(HopfClassError):
    pass


class NotCoboundary(HopfClassError):
    pass


class NotZCharacteristic(HopfClassError):
    pass


class NotAdmissible(HopfClassError):
    pass


class InvalidData(HopfClassError):
    """Raised when construction is attempted from data that fails validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class OutOfRange(HopfClassError):
    pass


class TypeMismatch(HopfClassError):
    pass


class BudgetExceeded(HopfClassError):
    pass


class MissingRecord(HopfClassError):
    pass


class MalformedInput(HopfClassError):
    pass
