"""Exception types raised across the package."""


class SegreError(Exception):
    """Base class for all package errors."""


class VarSpaceMismatch(SegreError):
    pass


class TruncationUnsound(SegreError):
    pass


class UnknownVariable(SegreError):
    pass


class UnpairedVariable(SegreError):
    pass


class DimensionMismatch(SegreError):
    pass


class ParseError(SegreError):
    pass


class RealityViolation(SegreError):
    """The graph data does not define a real manifold; carries the first bad monomial."""

    def __init__(self, message, component=None, monomial=None):
        super().__init__(message)
        self.component = component
        self.monomial = monomial


class SingularInput(SegreError):
    pass


class OffManifold(SegreError):
    pass


class NotAHypersurface(SegreError):
    pass


class WitnessNotFound(SegreError):
    pass


class ChartMismatch(SegreError):
    pass


class WrongDimensions(SegreError):
    pass


class RankAssumptionViolated(SegreError):
    pass
