"""Exception hierarchy shared by every dqi_lab module."""


class DqiLabError(Exception):
    """Base class for all library errors."""


class ZeroInverse(DqiLabError, ZeroDivisionError):
    pass


class DimensionMismatch(DqiLabError, ValueError):
    pass


class BadDimension(DqiLabError, ValueError):
    pass


class DuplicatePoints(DqiLabError, ValueError):
    pass


class IndexOutOfRange(DqiLabError, IndexError):
    pass


class DomainError(DqiLabError, ValueError):
    pass


class TooLarge(DqiLabError):
    """An exact enumeration would exceed its size guard."""


class NoSolution(DqiLabError):
    pass


class AmbiguousSolution(DqiLabError):
    pass


class RankDeficient(DqiLabError):
    pass


class RaggedTargets(DqiLabError, ValueError):
    """Target sets do not share a common size r."""


class NormalizationFailure(DqiLabError):
    """A state that should be unit norm is not (usually ell >= d_perp / 2)."""


class DecoderUnavailable(DqiLabError):
    pass
