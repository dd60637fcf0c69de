"""Exception hierarchy shared by every reachkit module."""


class ReachkitError(ValueError):
    """Base class for all reachkit input and estimation errors."""


class DimensionMismatch(ReachkitError):
    pass


class RankDeficient(ReachkitError):
    pass


class NotSymmetric(ReachkitError):
    pass


class IdenticalPoints(ReachkitError):
    pass


class MissingFrames(ReachkitError):
    pass


class AllPairsDegenerate(ReachkitError):
    """Every ordered pair is tangential, so the infimum is never attained."""


class NonPositiveReach(ReachkitError):
    pass


class InvalidSpec(ReachkitError):
    pass


class UnsupportedSpec(ReachkitError):
    pass


class DegenerateFit(ReachkitError):
    """A rate fit was requested on a loss table containing exact zeros."""
