"""Exception hierarchy shared by every module."""


class BsshiftError(Exception):
    """Base class for domain errors (mapped to exit code 1 by the CLI)."""


class ExponentTooSmall(BsshiftError):
    pass


class UnsupportedArity(BsshiftError):
    pass


class PreconditionFailed(BsshiftError):
    pass


class NonTerminating(BsshiftError):
    pass


class RegimeViolation(BsshiftError):
    pass


class ResonantDenominator(BsshiftError):
    pass


class M1Violation(BsshiftError):
    pass


class IntegerShiftableRoot(BsshiftError):
    pass


class NotSolitary(BsshiftError):
    pass


class NotBistable(BsshiftError):
    pass


class SizeLimit(BsshiftError):
    pass


class UnknownParameter(BsshiftError):
    pass
