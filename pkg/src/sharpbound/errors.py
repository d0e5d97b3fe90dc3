"""Exception types shared across the package."""


class SharpBoundError(Exception):
    """Base class for all package errors."""


class DomainError(SharpBoundError, ValueError):
    """Evaluation requested outside a function's domain (a pole, z = 0 for Laurent input)."""


class ContractError(SharpBoundError, ValueError):
    """An operation was called with arguments violating its precondition."""


class SizeError(ContractError):
    """Input degree exceeds what the floating construction can represent."""


class ConsistencyError(SharpBoundError, RuntimeError):
    """An internal identity failed; indicates a construction bug."""


class RootFindingError(SharpBoundError, RuntimeError):
    """Root polishing did not meet the residual contract.

    ``best`` carries the best iterate found.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NotNonnegativeError(SharpBoundError, ValueError):
    """A Laurent polynomial is not nonnegative on the unit circle.

    ``witness_angle`` is an angle where the negativity (or the unpaired root) was observed.
    """

    def __init__(self, message, witness_angle=None):
        super().__init__(message)
        self.witness_angle = witness_angle


class HypothesisViolation(SharpBoundError, ValueError):
    """The hypothesis of an inequality does not hold for the given input."""


class UnboundedLPError(SharpBoundError, RuntimeError):
    """The discretized linear program is unbounded."""


class InfeasibleLPError(SharpBoundError, RuntimeError):
    """The linear program has no feasible point."""
