"""Exception hierarchy shared by every module."""


class SymKlError(Exception):
    """Base class for all library errors."""


class BudgetExceeded(SymKlError):
    pass


class NotRational(SymKlError):
    pass


class NonIntegralCoefficient(SymKlError):
    pass


class InexactDivision(SymKlError):
    pass


class DegreeMismatch(SymKlError):
    pass


class CheckFailed(SymKlError):
    """A certification check did not hold.

    ``check`` names the failing check and ``index`` points at the offending
    coefficient or item when there is one.
    """

    def __init__(self, check, message, index=None, details=None):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.index = index
        self.details = details or {}

    def to_dict(self):
        return {"check": self.check, "message": str(self), "index": self.index,
                "details": self.details}


class Mismatch(CheckFailed):
    pass


class RecipeMismatch(SymKlError):
    pass


class CrossCheckFailed(SymKlError):
    pass


class StabilizationFailure(SymKlError):
    pass


class MismatchWithTheorem(SymKlError):
    pass


class QuadratureDiverged(SymKlError):
    pass


class TruncationTooSmall(SymKlError):
    pass


class MissingEulerFactor(SymKlError):
    def __init__(self, p):
        super().__init__(f"no Euler factor for p={p}")
        self.p = p
