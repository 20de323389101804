"""Core value types shared by every other module.

All quantities are dimensionless with hbar = c = 1 and the electron charge
q = -e absorbed into the gauge function, so that

    alpha(u) = (qR/c hbar) A(u),  b(u) = (qR^2/c hbar) B(u),  f(u) = Phi(u)/phi_0.

The radius R only enters when the partner eigenvalue epsilon = R^2 E^2 is
turned into a Dirac energy E (in units of 1/R).
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import constants

from .errors import InvalidParameter

UNIT_CONVENTION = ("hbar=c=1; q=-e absorbed: alpha=(qR/c hbar)A, b=(qR^2/c hbar)B, "
                   "f=Phi/phi0; epsilon=R^2 E^2; energies in 1/R")
FERMI_VELOCITY = constants.c / 300


@dataclass(frozen=True)
class AngularMomentum:
    """Total angular momentum eigenvalue lambda.

    Stored as the integer 2*lambda so that half-odd values compare exactly.
    `relaxed_value`, when given, overrides `two_lambda` and marks the value as
    non-physical (integer lambda, as used by some figure parameter sets).
    """
    two_lambda: int
    relaxed_value: float = None

    def __post_init__(self):
        if self.relaxed_value is None:
            if int(self.two_lambda) != self.two_lambda:
                raise InvalidParameter("two_lambda must be an integer, got {}".format(self.two_lambda))
            if self.two_lambda % 2 == 0:
                raise InvalidParameter(
                    "lambda={}/2 is not half-odd; use relaxed mode for non-physical values".format(self.two_lambda))
        elif not math.isfinite(self.relaxed_value):
            raise InvalidParameter("relaxed lambda must be finite, got {}".format(self.relaxed_value))

    @classmethod
    def from_value(cls, value, relaxed=False):
        """Build from a number (or anything `Fraction` accepts)."""
        try:
            exact = Fraction(value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise InvalidParameter("Cannot read lambda from {!r}".format(value))
        twice = 2 * exact
        if twice.denominator == 1 and twice.numerator % 2 == 1:
            return cls(two_lambda=twice.numerator)
        if not relaxed:
            raise InvalidParameter(
                "lambda={} is not half-odd; pass it with --relaxed to run it anyway".format(value))
        return cls(two_lambda=int(round(float(twice))), relaxed_value=float(exact))

    @classmethod
    def parse(cls, text, relaxed=False):
        """Parse "7/2", "3.5" or (relaxed) "7"."""
        return cls.from_value(str(text).strip(), relaxed=relaxed)

    @property
    def value(self):
        if self.relaxed_value is not None:
            return self.relaxed_value
        return self.two_lambda / 2

    @property
    def is_physical(self):
        return self.relaxed_value is None

    def __str__(self):
        if self.relaxed_value is not None:
            return "{:g} (relaxed)".format(self.relaxed_value)
        return "{}/2".format(self.two_lambda)


@dataclass(frozen=True)
class UnitSystem:
    """Hyperboloid radius and, optionally, the physical energy scale.

    Parameters
    ----------
    R : float
        Hyperboloid radius. Dirac energies are reported in units of 1/R.

    fermi_velocity : float, optional
        Carrier velocity in m/s, used only by `physical_energy_ev` where R is
        read as nanometres.
    """
    R: float = 1.0
    fermi_velocity: float = FERMI_VELOCITY

    def __post_init__(self):
        if not (math.isfinite(self.R) and self.R > 0):
            raise InvalidParameter("R must be a positive finite number, got {}".format(self.R))

    def dirac_energy(self, epsilon):
        return math.sqrt(epsilon) / self.R

    def physical_energy_ev(self, dirac_energy):
        """E = hbar v_F * energy, with the energy given in 1/nm."""
        return constants.hbar * self.fermi_velocity * dirac_energy * 1e9 / constants.e


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid on [u_min, u_max]; the pole u = 0 is excluded."""
    u_min: float
    u_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.u_min) and math.isfinite(self.u_max)):
            raise InvalidParameter("Grid bounds must be finite: [{}, {}]".format(self.u_min, self.u_max))
        if self.u_min <= 0:
            raise InvalidParameter("u_min must be > 0, got {}".format(self.u_min))
        if self.u_max <= self.u_min:
            raise InvalidParameter("u_max={} must exceed u_min={}".format(self.u_max, self.u_min))
        if self.n_points < 16:
            raise InvalidParameter("n_points must be >= 16, got {}".format(self.n_points))

    @classmethod
    def default(cls):
        return cls(1e-3, 30.0, 8000)

    @property
    def h(self):
        return (self.u_max - self.u_min) / (self.n_points - 1)

    @property
    def points(self):
        return np.linspace(self.u_min, self.u_max, self.n_points)

    def refined(self):
        """Same interval with the step halved."""
        return RadialGrid(self.u_min, self.u_max, 2 * self.n_points - 1)

    def half_shifted(self):
        """Same u_max and size, first point at h/2.

        Reflecting this grid through u = 0 gives a uniform grid on
        (-u_max, u_max) that does not contain the origin.
        """
        step = self.u_max / (self.n_points - 0.5)
        return RadialGrid(step / 2, self.u_max, self.n_points)


@dataclass(frozen=True)
class SpectrumEntry:
    """One level n of the Dirac spectrum.

    `epsilon` is the partner eigenvalue R^2 E^2 and the two Dirac energies are
    +-sqrt(epsilon)/R.
    """
    n: int
    epsilon: float
    dirac_energy_plus: float
    dirac_energy_minus: float
    is_threshold: bool = False
    degeneracy: str = ""
    non_physical: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameter("Level index must be >= 0, got {}".format(self.n))
        if self.epsilon < 0:
            raise InvalidParameter("epsilon must be >= 0, got {}".format(self.epsilon))
        if self.dirac_energy_plus != -self.dirac_energy_minus:
            raise InvalidParameter("Dirac energies must come in +- pairs")

    @classmethod
    def from_epsilon(cls, n, epsilon, R=1.0, **kwargs):
        if not epsilon >= 0:
            raise InvalidParameter("epsilon must be >= 0, got {}".format(epsilon))
        energy = UnitSystem(R).dirac_energy(epsilon)
        return cls(n=n, epsilon=epsilon, dirac_energy_plus=energy, dirac_energy_minus=-energy, **kwargs)

    def epsilon_from_energy(self, R=1.0):
        return (R * self.dirac_energy_plus) ** 2
