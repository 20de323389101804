"""Exceptions raised by the solver library.

The CLI turns every `HyperlandauError` into exit code 2.
"""


class HyperlandauError(Exception):
    """Base class of all library errors."""


class InvalidParameter(HyperlandauError, ValueError):
    """Malformed parameters: NaN/inf values, C1 = 0, unreadable tables."""


class DomainError(HyperlandauError, ValueError):
    """Evaluation outside u > 0."""


class UnsupportedCase(HyperlandauError):
    """Operation only defined for some field cases."""


class NoBoundStates(HyperlandauError):
    """Parameters do not admit a normalizable ground state."""


class AnalyticUnavailable(HyperlandauError):
    """No closed form for these parameters; use the numeric engine."""


class DegenerateParameters(HyperlandauError, ArithmeticError):
    """Jacobi recurrence hit an exactly vanishing denominator."""


class SingularPotential(HyperlandauError, ValueError):
    """Potential is not finite at some grid point."""

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__("Potential is not finite at grid index {} (value {})".format(index, value))


class EigenvectorFailure(HyperlandauError, RuntimeError):
    """Inverse iteration did not converge after the allowed retries."""
