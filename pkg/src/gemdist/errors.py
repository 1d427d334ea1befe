"""Exception hierarchy shared by every gemdist module."""


class GemError(Exception):
    """Base class for all gemdist errors."""


class DomainError(GemError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class NonConvergenceError(GemError, ArithmeticError):
    """An iterative method (series, continued fraction, root finder, quadrature) failed."""

    def __init__(self, message, operation=None):
        super().__init__(message)
        self.operation = operation


class RangeViolation(GemError, ValueError):
    """A model parameter is outside its admissible range."""


class EvenFunctionViolation(GemError, ValueError):
    """Model I/III exponents that would not give an even (symmetric) density."""


class UnsupportedVariant(GemError, ValueError):
    """The operation is undefined for this model variant."""


class UnsupportedMapping(GemError, ValueError):
    """A named distribution has no direct GEM parameter map."""


class UnsupportedCombination(GemError, ValueError):
    """A transform cannot be applied to the given source distribution."""


class MomentDoesNotExist(GemError, ArithmeticError):
    """The requested moment diverges."""


class DegenerateSample(GemError, ValueError):
    """A sample carries no information about a shape parameter (e.g. constant data)."""


class NoFit(GemError, RuntimeError):
    """Every fitting strategy failed."""
