"""Exception hierarchy; ``exit_code`` drives the CLI process status."""


class Imm0Error(Exception):
    """Base class for everything this package raises on purpose."""

    exit_code = 1


class ParseError(Imm0Error):
    """Malformed input document (bad JSON, wrong shape, unknown keys)."""

    exit_code = 2


class InvariantError(Imm0Error):
    """A stated geometric or structural invariant does not hold."""

    exit_code = 3


class NumericError(Imm0Error):
    """An iteration failed to converge or produce a usable result."""

    exit_code = 4


class NotImmersed(InvariantError):
    pass


class Undersampled(InvariantError):
    pass


class NonIntegerWinding(InvariantError):
    pass


class NotClosed(InvariantError):
    pass


class NonZeroDegree(InvariantError):
    pass


class NonPeriodic(InvariantError):
    pass


class BadDiffeo(InvariantError):
    pass


class NotBased(InvariantError):
    pass


class TailTooLarge(InvariantError):
    pass


class ZeroSequence(InvariantError):
    pass


class OutOfRange(InvariantError):
    pass


class AtPole(InvariantError):
    pass


class VarTooSmall(InvariantError):
    pass


class HullDegenerate(InvariantError):
    pass


class InvariantViolation(InvariantError):
    """Catch-all for invariant breaches without a more specific name."""


class NewtonDiverged(NumericError):
    pass


class NoPositiveSolution(NumericError):
    pass
