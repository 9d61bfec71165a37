"""Exception hierarchy shared by all geoprod modules."""


class GeoprodError(ValueError):
    """Base class for every error raised by geoprod."""


class DimensionError(GeoprodError):
    pass


class BranchError(GeoprodError):
    pass


class SymmetryError(GeoprodError):
    pass


class AlgebraError(GeoprodError):
    pass


class ClosureError(GeoprodError):
    pass


class UnsupportedError(GeoprodError):
    pass


class SignatureError(GeoprodError):
    pass


class ReductivityError(GeoprodError):
    pass


class ChainError(GeoprodError):
    pass


class DegenerateMetricError(GeoprodError):
    pass


class DomainError(GeoprodError):
    pass


class TransportIndexError(GeoprodError, IndexError):
    pass


class ConfigError(GeoprodError):
    pass


class ComparisonError(GeoprodError):
    pass


class SpecError(GeoprodError):
    """Invalid space specification document."""
