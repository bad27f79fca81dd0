"""Exception types raised by thinent."""


class ThinentError(ValueError):
    """Base class for every error raised by this package."""


class NegativeWeight(ThinentError):
    pass


class ZeroMass(ThinentError):
    pass


class InvalidFraction(ThinentError):
    """A thinning fraction outside [0, 1]."""


class DegenerateAlpha(ThinentError):
    """A closed form that divides by alpha (or 1 - alpha) was evaluated at an endpoint."""


class SupportViolation(ThinentError):
    """Relative entropy D(f||g) is infinite because f puts mass where g does not."""


class DomainError(ThinentError):
    pass


class LengthMismatch(ThinentError):
    pass


class PreconditionFailed(ThinentError):
    """Inputs fall outside the regime in which an inequality is claimed."""
