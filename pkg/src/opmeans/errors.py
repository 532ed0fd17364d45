"""Exception hierarchy shared by the library and the command line."""


class OpMeansError(Exception):
    """Base class for all errors raised by opmeans."""

    category = "error"


class NotHermitianError(OpMeansError, ValueError):
    category = "domain-error"


class NotPositiveDefiniteError(OpMeansError, ValueError):
    category = "domain-error"


class DomainError(OpMeansError, ValueError):
    """A scalar or spectral argument lies outside the domain of a function."""

    category = "domain-error"


class DegenerateProblemError(OpMeansError, ValueError):
    """The barycenter problem has no unique solution (flat or undefined objective)."""

    category = "degenerate"


class EigenSolverError(OpMeansError, RuntimeError):
    category = "numerical-error"
