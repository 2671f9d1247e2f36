"""Exception hierarchy. Each class maps to a distinct CLI exit code."""


class OrbifoldError(Exception):
    exit_code = 1


class SchemaError(OrbifoldError, ValueError):
    """Malformed input file, coefficient string or quintic."""

    exit_code = 2


class NotAutomorphismError(OrbifoldError):
    exit_code = 3


class NotGorensteinError(OrbifoldError):
    exit_code = 3


class GroupCapExceeded(OrbifoldError):
    exit_code = 4


class ConductorError(OrbifoldError):
    exit_code = 4


class ConsistencyError(OrbifoldError):
    """An internal invariant failed (non-integral Burnside average, odd Euler number, ...)."""

    exit_code = 5


class SmoothnessError(ConsistencyError):
    """The data contradicts the assumption that the quintic is smooth."""

    exit_code = 6
