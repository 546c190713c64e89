"""Exception hierarchy shared by all modules."""


class SharpConstError(ValueError):
    """Base class for every error raised by this package."""


# polyroot
class NoSignChange(SharpConstError):
    pass


class NonFinite(SharpConstError):
    pass


# bestconst
class BadOrder(SharpConstError):
    pass


class DescartesViolation(SharpConstError):
    """The coefficient sign pattern of p'_n is not the expected single change."""


class Unsupported(SharpConstError):
    pass


# simplex
class NotInterior(SharpConstError):
    pass


class BadSum(SharpConstError):
    pass


class ResolutionTooSmall(SharpConstError):
    pass


class AtCentroid(SharpConstError):
    pass


class NonPositiveDenominator(SharpConstError):
    """A denominator that is provably positive came out <= 0. Indicates a defect."""


class OutOfRange(SharpConstError):
    pass


class DegenerateDirection(SharpConstError):
    pass


class NotPositive(SharpConstError):
    pass


# geometry
class Degenerate(SharpConstError):
    pass


class InteriorRequired(SharpConstError):
    pass


class CrossCheckFailed(SharpConstError):
    """Two independent evaluations of the same quantity disagree."""
