"""Gauge functions, magnetic fields, fluxes and superpotentials.

Every function takes a field case (or a gauge built from one) and evaluates
elementwise on u > 0.
"""
from dataclasses import dataclass

import numpy as np

from models.domain import AngularMomentum
from models.errors import DomainError
from models.gauges import get_gauge


def _check_domain(u, include_zero=False):
    u = np.asarray(u, dtype=float)
    inside = u >= 0 if include_zero else u > 0
    if np.any(~inside):
        bad = u[~inside].flat[0]
        raise DomainError("u must be {} 0, got {}".format(">=" if include_zero else ">", bad))
    return u


def _out(value, u):
    return value if np.ndim(u) else float(value)


def alpha(case, u):
    """Dimensionless gauge function alpha(u)."""
    x = _check_domain(u)
    return _out(get_gauge(case).alpha(x), u)


def alpha_prime(case, u):
    x = _check_domain(u)
    return _out(get_gauge(case).alpha_prime(x), u)


def magnetic_field(case, u):
    """b(u) = (alpha sinh u)' / sinh u; closed forms for the analytic cases."""
    x = _check_domain(u)
    return _out(get_gauge(case).magnetic_field(x), u)


def flux_in_quanta(case, u):
    """Circulation of the gauge field around the circle of radius u, in flux quanta."""
    x = _check_domain(u)
    return _out(get_gauge(case).flux(x), u)


def flux_surface(case, u):
    """Surface integral of b over the disc of radius u.

    Differs from `flux_in_quanta` by the flux string a singular gauge
    carries at the pole.
    """
    x = _check_domain(u)
    return _out(get_gauge(case).flux_surface(x), u)


@dataclass(frozen=True)
class Superpotential:
    """W(u) = -lambda / sinh u + alpha(u) for one angular momentum channel."""
    lam: AngularMomentum
    gauge: object

    def __post_init__(self):
        object.__setattr__(self, "gauge", get_gauge(self.gauge))

    @property
    def case(self):
        return self.gauge.case

    def __call__(self, u):
        x = _check_domain(u)
        return _out(-self.lam.value / np.sinh(x) + self.gauge.alpha(x), u)

    def derivative(self, u):
        x = _check_domain(u)
        return _out(self.lam.value * np.cosh(x) / np.sinh(x) ** 2 + self.gauge.alpha_prime(x), u)

    def asymptotic_value(self):
        """lim_{u -> oo} W(u)."""
        return self.gauge.asymptotic_alpha()


def superpotential(case, lam, u):
    return Superpotential(lam, case)(u)
