"""Exceptions raised by the ChebyGF core."""


class ChebyGFError(Exception):
    """Base class for every error raised by the app package."""


class UsageError(ChebyGFError, ValueError):
    """A caller passed arguments that violate an operation's preconditions."""


class VariableMismatchError(UsageError):
    """Two polynomials over different variables were combined."""


class DegreeBoundError(UsageError):
    """A degree window is smaller than the degree of the polynomial."""


class SizeGuardError(UsageError):
    """A request exceeds a configured size guard."""


class DivisionError(ChebyGFError, ArithmeticError):
    """Exact division was impossible in the coefficient domain."""


class SeriesDomainError(ChebyGFError, ValueError):
    """A series operation was applied outside its domain."""


class ResultantDomainError(ChebyGFError, ValueError):
    """Resultant or discriminant requested for degenerate operands."""


class InconsistentPowerSumsError(ChebyGFError, ValueError):
    """The zeroth power sum disagrees with the claimed degree."""


class PipelineAssertionError(ChebyGFError, AssertionError):
    """An internal consistency check of the generating-function pipeline failed."""
