"""Exception hierarchy."""


class TDQError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TDQError, ValueError):
    """A parameter or time lies outside the domain where the formulas hold."""


class DegenerateError(TDQError, ArithmeticError):
    """A normalization condition cannot be satisfied."""


class UnsupportedCase(TDQError, NotImplementedError):
    """The requested (system, regime, sign) combination is not available."""


class GridError(TDQError, ValueError):
    """A spatial grid is too small or not uniform."""


class TailError(TDQError, ValueError):
    """A wavefunction has not decayed at the edges of its grid."""


class ConventionError(TDQError, RuntimeError):
    """No operator convention reproduces the equation within tolerance."""


class OverflowGuardError(TDQError, OverflowError):
    """Requested Hermite order is beyond the supported range."""
