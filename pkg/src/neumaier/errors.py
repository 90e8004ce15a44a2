"""Exception hierarchy shared by every module."""


class NeumaierError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(NeumaierError):
    """A vertex set does not have the combinatorial structure required of it."""


class ValidationError(NeumaierError, ValueError):
    """Inputs to a construction or switching violate a stated condition."""


class InfeasibleError(NeumaierError, ValueError):
    """A request has no solutions for counting reasons alone."""


class CertificationError(NeumaierError):
    """A graph failed one of the Neumaier conditions.

    ``condition`` names the first condition that failed.
    """

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class InternalConsistencyError(NeumaierError, AssertionError):
    """A result disagrees with a property that must hold by construction."""


class QuotientError(NeumaierError, ValueError):
    """A sublattice is too coarse for the quotient graph to be simple."""
