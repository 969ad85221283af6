"""Exception hierarchy. Every domain error derives from :class:`BoxSplineError`."""


class BoxSplineError(Exception):
    """Base class for all domain errors raised by the package."""


class EmptyList(BoxSplineError):
    pass


class DimensionMismatch(BoxSplineError):
    pass


class NotSpanning(BoxSplineError):
    pass


class NotSpanningSub(NotSpanning):
    pass


class NotSalient(BoxSplineError):
    pass


class PointOutsideZonotope(BoxSplineError):
    pass


class DirectionOutsideCone(BoxSplineError):
    pass


class NotRegular(BoxSplineError):
    pass


class NotRegularShifted(NotRegular):
    pass


class NotGeneric(BoxSplineError):
    pass


class SearchExhausted(BoxSplineError):
    pass


class DegenerateAlcove(BoxSplineError):
    pass


class PointOutsideAlcove(BoxSplineError):
    pass


class ResonantParameter(BoxSplineError):
    pass


class ParameterTooLarge(BoxSplineError):
    pass


class NumericDivergence(BoxSplineError):
    pass


class TruncationNotConverged(BoxSplineError):
    pass


class LatticePointNotCovered(BoxSplineError):
    pass


class NuNotCovered(BoxSplineError):
    pass


class OnConeBoundary(BoxSplineError):
    pass


class Not1D(BoxSplineError):
    pass


class InternalCheckFailed(BoxSplineError):
    """A self-check on an exact computation failed; indicates a bug."""
