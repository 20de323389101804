import enum
from abc import abstractmethod
from dataclasses import dataclass

import numpy as np

from .types_ import *


def log_tanh_half(u):
    return np.log(np.tanh(u / 2))


def log_sinh(u):
    return u + np.log(-np.expm1(-2 * u)) - np.log(2)


def log_cosh(u):
    return u + np.log1p(np.exp(-2 * u)) - np.log(2)


class Admissibility(enum.Enum):
    ADMISSIBLE = "admissible"
    FAILS_AT_ORIGIN = "fails_at_origin"
    FAILS_AT_INFINITY = "fails_at_infinity"


@dataclass(frozen=True)
class ZeroModeVerdict:
    """Leading behaviour of g_{1,0}.

    g_{1,0} ~ u**origin_exponent as u -> 0 and ~ exp(-decay_rate u) as u -> oo.
    """
    status: Admissibility
    origin_exponent: float
    decay_rate: float

    @property
    def admissible(self):
        return self.status is Admissibility.ADMISSIBLE


class BaseGauge:
    """Rotationally symmetric gauge function alpha(u) of one field case.

    Subclasses provide alpha, its derivative, the flux f = alpha sinh u and
    the pole strength lim_{u->0} f(u). The magnetic field defaults to the
    centered-difference derivative of the flux.
    """

    def __init__(self, case) -> None:
        self.case = case

    @property
    def tag(self):
        return self.case.tag

    @abstractmethod
    def alpha(self, u: Array) -> Array:
        pass

    @abstractmethod
    def alpha_prime(self, u: Array) -> Array:
        pass

    @abstractmethod
    def flux(self, u: Array) -> Array:
        """Flux in quanta through the disc of hyperbolic radius u, alpha sinh u."""
        pass

    @abstractmethod
    def pole_flux(self) -> float:
        """lim_{u->0} alpha(u) sinh u; nonzero for a flux string at the pole."""
        pass

    @abstractmethod
    def asymptotic_alpha(self) -> float:
        pass

    def alpha_integral(self, u: Array) -> Array:
        """Antiderivative of alpha (any fixed constant)."""
        raise NotImplementedError

    def magnetic_field(self, u: Array) -> Array:
        from utils.numerics import centered_derivative
        return centered_derivative(self.flux, u) / np.sinh(u)

    def flux_surface(self, u: Array) -> Array:
        """Surface integral of b over the disc, excluding any pole string."""
        return self.flux(u) - self.pole_flux()

    def analytic_available(self, lam) -> bool:
        return False

    def origin_exponent(self, lam) -> float:
        return lam.value - self.pole_flux()

    def origin_admissible(self, lam) -> bool:
        return self.origin_exponent(lam) >= 0

    def zero_mode_verdict(self, lam) -> ZeroModeVerdict:
        """Admissibility of g_{1,0} = tanh(u/2)**lambda exp(-int alpha)."""
        p = self.origin_exponent(lam)
        kappa = self.asymptotic_alpha()
        if not self.origin_admissible(lam):
            status = Admissibility.FAILS_AT_ORIGIN
        elif not kappa > 0:
            status = Admissibility.FAILS_AT_INFINITY
        else:
            status = Admissibility.ADMISSIBLE
        return ZeroModeVerdict(status, p, kappa)

    def describe(self):
        return "{}({})".format(type(self).__name__, self.case)
