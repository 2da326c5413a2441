"""Exception hierarchy shared by every layer of the package."""


class HeunSpecError(Exception):
    """Base class for all package errors."""


class ContractViolation(HeunSpecError, ValueError):
    """An operation was called outside its documented preconditions."""


class SolvabilityError(HeunSpecError):
    """A polynomial solution that should exist could not be constructed."""


class SingularPivotError(SolvabilityError):
    """The coefficient recurrence hit a vanishing pivot ``(j+1)(j*alpha1 + beta0)``."""

    def __init__(self, j, message=None):
        self.j = j
        super().__init__(message or f"recurrence pivot vanishes at j={j}")


class BridgeUndefinedError(HeunSpecError):
    """The scale factors linking C_j to P_j(eps0) are undefined (zero pivot product)."""


class IdentityError(HeunSpecError):
    """An exact algebraic identity failed to hold."""


class FactorizationError(IdentityError):
    """A polynomial that should divide exactly left a nonzero remainder."""


class UnderdeterminedMoments(HeunSpecError):
    """Requested moments are not fixed by the finite orthogonal sequence."""


class InsufficientResolution(HeunSpecError):
    """A finite-difference grid is too coarse for the requested eigenvalues."""


class QuadratureError(HeunSpecError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        self.estimate = estimate
        self.error = error
        super().__init__(message)


class PoleError(HeunSpecError):
    """A special function was evaluated at a pole."""


class WeightDomainError(HeunSpecError):
    """Weight-function parameters violate an integrability or closed-form constraint."""
