"""Exception types raised by microcurve."""


class MicrocurveError(Exception):
    """Base class for all library errors."""


class InvalidMaterialError(MicrocurveError, ValueError):
    pass


class DomainError(MicrocurveError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SolverError(MicrocurveError, RuntimeError):
    """A linear solve, root bracket or integrator failed."""


class UnphysicalDeformationError(MicrocurveError, ValueError):
    """A deformed radius came out non-positive."""


class NoCriticalRatioError(MicrocurveError, ValueError):
    """The stationarity cubic has no admissible root for this mode."""


class TableBuildError(MicrocurveError, RuntimeError):
    pass


class UnbuckledInRange(MicrocurveError):
    """The shell ratio lies above every tabulated critical ratio, so it never buckles."""


class TableExtensionError(MicrocurveError, ValueError):
    """The shell ratio lies below the table; rebuild with a larger ``n_max``."""


class WouldExpandError(MicrocurveError, ValueError):
    """Net loading would inflate the cavity, which the loading model excludes."""


class SingularCorrectionError(MicrocurveError, ZeroDivisionError):
    pass


class IntegrationError(MicrocurveError, RuntimeError):
    pass


class ConfigError(MicrocurveError, ValueError):
    """Bad configuration file; the message names the key and line."""
