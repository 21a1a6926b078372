"""Exception hierarchy.

Every domain error carries a stable ``name`` used by the CLI when reporting
failures as JSON.
"""


class SalemDynError(Exception):
    """Base class for all domain errors raised by the package."""

    @property
    def name(self) -> str:
        return type(self).__name__


class InvalidInput(SalemDynError, ValueError):
    pass


class EndpointRoot(SalemDynError):
    """An interval endpoint handed to a Sturm count is itself a root."""


class NotSquarefree(SalemDynError):
    pass


class Indeterminate(SalemDynError):
    """A certified decision could not be reached within the configured limits."""


class ZeroElement(SalemDynError):
    pass


class NotReciprocal(SalemDynError):
    pass


class NotSalem(SalemDynError):
    pass


class NotIrreducible(SalemDynError):
    pass


class UnsupportedResidueChar(SalemDynError):
    pass


class WorkBoundExceeded(SalemDynError):
    pass


class NotTotallyReal(SalemDynError):
    pass


class NoPrimeFound(SalemDynError):
    pass


class NotAFieldGenerator(SalemDynError):
    pass


class NotACircleRoot(SalemDynError):
    pass


class NotFound(SalemDynError):
    pass


class Unsupported(SalemDynError):
    pass


class InvalidDescriptor(SalemDynError):
    pass


class InfiniteFixedLocus(SalemDynError):
    pass


class Unclassified(SalemDynError):
    pass


class NotAnAutomorphism(SalemDynError):
    pass


class HypothesisNotMet(SalemDynError):
    pass


class ModeBudgetExceeded(SalemDynError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class MaybeNonMaximal(UserWarning):
    """The power order may be strictly smaller than the ring of integers."""
