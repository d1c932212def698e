"""Exception types.  Each carries a stable machine-readable code."""


class BinringError(Exception):
    code = "error"

    def __init__(self, message: str | None = None):
        super().__init__(message or self.code)


class InvariantViolation(BinringError):
    code = "invariant-violation"


class DegreeOutOfRange(BinringError, IndexError):
    code = "degree-out-of-range"


class NotFinite(BinringError, ValueError):
    code = "not-finite"


class NotPolynomial(BinringError, ValueError):
    code = "not-polynomial-of-degree-t"


class RankMismatch(BinringError, ValueError):
    code = "rank-mismatch"


class CosimplicialIdentityViolation(InvariantViolation):
    code = "cosimplicial-identity-violation"


class NeedMoreLevels(BinringError, ValueError):
    code = "need-more-levels"


class ConnectiveRangeUnsupported(BinringError, ValueError):
    code = "connective-range-unsupported"


class TruncationUnstable(BinringError):
    code = "truncation-unstable"


class PointingNotPrimitive(InvariantViolation):
    code = "pointing-not-primitive"


class NotACocycle(InvariantViolation):
    code = "not-a-cocycle"


class NotPrime(BinringError, ValueError):
    code = "not-prime"
