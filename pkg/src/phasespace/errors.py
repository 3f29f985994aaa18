"""Exception types raised across the package."""


class PhaseSpaceError(Exception):
    pass


class GridTooCoarse(PhaseSpaceError):
    """Requested momenta exceed the Nyquist limit of the position sampling."""


class GridTooNarrow(PhaseSpaceError):
    """Grid does not cover enough widths of the state to hold it."""


class GridMismatch(PhaseSpaceError, ValueError):
    pass


class DimensionMismatch(PhaseSpaceError, ValueError):
    pass


class OrderTooHighForGrid(PhaseSpaceError):
    pass


class DeltaNotAllowed(PhaseSpaceError, TypeError):
    pass


class TruncationLeakage(PhaseSpaceError):
    """State has weight on Fock levels that the truncated matrices corrupt."""


class ExpressionSyntaxError(PhaseSpaceError, SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonPolynomial(PhaseSpaceError, ValueError):
    pass


class UnknownSuite(PhaseSpaceError, ValueError):
    pass
