"""Exception types shared across the package."""


class EitCoolError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(EitCoolError):
    """Invalid parameters, cutoffs, basis tags, or sweep specifications."""


class FormulaDivergenceError(EitCoolError):
    """A closed form was evaluated at a point where it diverges.

    Sweeps use this to distinguish "the formula is invalid here" from
    "the occupation is large".
    """


class DegenerateSteadyStateError(EitCoolError):
    """The generator has more than one stationary state.

    Returning an arbitrary element of a degenerate nullspace would be
    silently wrong, so callers get this instead.
    """


class NumericalFailureError(EitCoolError):
    """A linear solve or integration failed to meet its accuracy contract."""
