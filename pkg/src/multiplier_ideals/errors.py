"""Exception hierarchy shared by the library and the command line."""


class MultiplierIdealError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(MultiplierIdealError, ValueError):
    """Input data is structurally broken (bad indices, wrong lengths, bad JSON)."""


class InvalidResolution(MultiplierIdealError, ValueError):
    """Resolution data is well formed but violates a required identity."""


class CrossCheckError(MultiplierIdealError, AssertionError):
    """Two independent computations of the same quantity disagree.

    This never signals bad user data; it means the implementation is wrong.
    """
