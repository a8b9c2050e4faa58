"""Exception types shared across the package."""


class GutPatternsError(Exception):
    """Base class for all package errors."""


class ParameterError(GutPatternsError, ValueError):
    """Invalid model parameter, domain, or configuration value."""


class CalibrationError(GutPatternsError, ValueError):
    """Requested equilibrium is unreachable with a positive porosity feedback."""


class ConsistencyError(GutPatternsError, RuntimeError):
    """Two independent computations of the same quantity disagree.

    Raised when a cross-check fails (e.g. bisection root vs closed-form
    root). Always signals an implementation bug, never bad user input.
    """


class InvariantError(GutPatternsError, RuntimeError):
    """A runtime invariant of the solver was violated beyond tolerance."""


class DegenerateSpectrumError(GutPatternsError, ValueError):
    """Spectral analysis requested on a constant field."""


class ConfigError(GutPatternsError, ValueError):
    """Config file could not be parsed or validated."""
