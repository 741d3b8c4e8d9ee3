"""Exception hierarchy shared by every iturlab module."""


class IturError(Exception):
    """Base class for all iturlab errors."""


class DomainError(IturError, ValueError):
    """A parameter lies outside the domain where the quantity is defined."""


class NormalizationError(IturError, ValueError):
    """A distribution or density does not integrate to one."""


class NegativeProbabilityError(IturError, ValueError):
    pass


class GridError(IturError, ValueError):
    """A grid is malformed (wrong size, non-uniform spacing, ...)."""


class GridMismatchError(GridError):
    """Two grids, or a grid and a mesh size, are incompatible."""


class QuadratureError(IturError, ArithmeticError):
    pass


class AliasingError(QuadratureError):
    """Too much mass near the grid edges for a faithful discrete Fourier transform."""


class DivergentEntropyError(QuadratureError):
    """An entropy needed by a check is infinite.

    ``side`` names the offending distribution ("position" or "momentum").
    """

    def __init__(self, message, side=None):
        super().__init__(message)
        self.side = side


class InfiniteVarianceError(QuadratureError):
    pass


class TailMassError(GridError):
    pass


class SupportError(GridError):
    pass


class SingularMatrixError(IturError, ArithmeticError):
    pass


class UnsupportedNormPairError(IturError, ValueError):
    pass


class BoundViolationError(IturError, ArithmeticError):
    """A quantity that is provably bounded came out below its bound."""


class ParseError(IturError, ValueError):
    pass
