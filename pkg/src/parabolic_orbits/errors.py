"""Exception hierarchy shared across the package."""


class ParabolicOrbitsError(Exception):
    """Base class for all errors raised by this package."""


class LengthMismatch(ParabolicOrbitsError, ValueError):
    pass


class ShapeMismatch(ParabolicOrbitsError, ValueError):
    pass


class IndexOutOfRange(ParabolicOrbitsError, IndexError):
    pass


class RelationViolation(ParabolicOrbitsError, ValueError):
    pass


class NotInNormalForm(ParabolicOrbitsError, ValueError):
    pass


class NotComparable(ParabolicOrbitsError, ValueError):
    pass


class FieldTooSmall(ParabolicOrbitsError, RuntimeError):
    """Randomised splitting failed and the deterministic fallback ran out of budget.

    Retrying over a larger prime field usually helps.
    """


class BudgetExceeded(ParabolicOrbitsError, RuntimeError):
    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class NotStabilized(ParabolicOrbitsError, RuntimeError):
    pass


class InvariantViolation(ParabolicOrbitsError, AssertionError):
    """An internal consistency check failed (maps to CLI exit code 4)."""


class WitnessNotFound(InvariantViolation):
    pass


class DichotomyViolation(InvariantViolation):
    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


class DualOracleMismatch(InvariantViolation):
    pass
