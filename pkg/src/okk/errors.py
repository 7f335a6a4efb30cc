"""Exception hierarchy shared by all modules."""


class OkkError(Exception):
    """Base class; every error the library raises derives from this."""


class InputError(OkkError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class Unbounded(InputError):
    pass


class NotPrimitive(InputError):
    pass


class NotCCW(InputError):
    pass


class NotUnimodular(InputError):
    pass


class NotBig(InputError):
    pass


class NotAmple(InputError):
    pass


class NotEffective(InputError):
    pass


class EmptyPolytope(InputError):
    pass


class NonSmoothVertex(InputError):
    pass


class PointNotOnBoundary(InputError):
    pass


class NuPositive(InputError):
    """The binomial curve is part of the negative part of D."""


class ParseError(InputError):
    pass


class InvalidWitness(InputError):
    def __init__(self, index, reason):
        super().__init__(f"witness {index}: {reason}")
        self.index = index
        self.reason = reason


class Refusal(OkkError):
    """A certificate cannot be produced; carries the offending data."""

    def __init__(self, reason, point=None, detail=None):
        msg = reason if point is None else f"{reason} at {point}"
        super().__init__(msg)
        self.reason = reason
        self.point = point
        self.detail = detail


class VerificationFailure(OkkError):
    """An internal self-check failed (CLI exit code 3). Should never fire."""
