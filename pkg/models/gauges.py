import math

import numpy as np
from scipy import integrate
from scipy.interpolate import PchipInterpolator

from .base import BaseGauge, log_tanh_half, log_sinh, log_cosh
from .cases import ConstantField, Eckart, PoschlTeller, GeneralizedPT, Tabulated
from .errors import InvalidParameter

# zero-mode integrals of tabulated gauges start here
U_REF = 1.0
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12


def _same(a, b):
    return math.isclose(a, b, rel_tol=0.0, abs_tol=1e-12)


class ConstantFieldGauge(BaseGauge):
    """alpha = A0 coth u, b = A0: the Landau problem on the hyperboloid."""

    def alpha(self, u):
        return self.case.A0 / np.tanh(u)

    def alpha_prime(self, u):
        return -self.case.A0 / np.sinh(u) ** 2

    def flux(self, u):
        return self.case.A0 * np.cosh(u)

    def pole_flux(self):
        return self.case.A0

    def asymptotic_alpha(self):
        return self.case.A0

    def alpha_integral(self, u):
        return self.case.A0 * log_sinh(u)

    def magnetic_field(self, u):
        return np.full_like(np.asarray(u, dtype=float), self.case.A0)

    def analytic_available(self, lam):
        return True


class EckartGauge(BaseGauge):
    """alpha = lambda'/sinh u - C1 coth u + D1/C1; b decays to D1/C1 - C1."""

    def alpha(self, u):
        c = self.case
        return c.lambda_prime / np.sinh(u) - c.C1 / np.tanh(u) + c.D1 / c.C1

    def alpha_prime(self, u):
        c = self.case
        csch = 1 / np.sinh(u)
        return -c.lambda_prime * csch / np.tanh(u) + c.C1 * csch ** 2

    def flux(self, u):
        c = self.case
        return c.lambda_prime - c.C1 * np.cosh(u) + c.D1 / c.C1 * np.sinh(u)

    def pole_flux(self):
        return self.case.lambda_prime - self.case.C1

    def asymptotic_alpha(self):
        return self.case.D1 / self.case.C1 - self.case.C1

    def alpha_integral(self, u):
        c = self.case
        return c.lambda_prime * log_tanh_half(u) - c.C1 * log_sinh(u) + c.D1 / c.C1 * u

    def magnetic_field(self, u):
        c = self.case
        return -c.C1 + c.D1 / c.C1 / np.tanh(u)

    def analytic_available(self, lam):
        return _same(lam.value, self.case.lambda_prime)

    def origin_admissible(self, lam):
        # ground states are only claimed for lambda >= lambda'
        return (lam.value >= self.case.lambda_prime - 1e-12
                and self.origin_exponent(lam) >= 0)


class PoschlTellerGauge(BaseGauge):
    """alpha = lambda'/sinh u + C2 tanh u + D2/C2."""

    def _shift(self):
        c = self.case
        return c.D2 / c.C2 if c.D2 != 0 else 0.0

    def alpha(self, u):
        c = self.case
        return c.lambda_prime / np.sinh(u) + c.C2 * np.tanh(u) + self._shift()

    def alpha_prime(self, u):
        c = self.case
        return -c.lambda_prime / (np.sinh(u) * np.tanh(u)) + c.C2 / np.cosh(u) ** 2

    def flux(self, u):
        c = self.case
        return c.lambda_prime + (c.C2 * np.tanh(u) + self._shift()) * np.sinh(u)

    def pole_flux(self):
        return self.case.lambda_prime

    def asymptotic_alpha(self):
        return self.case.C2 + self._shift()

    def alpha_integral(self, u):
        c = self.case
        return c.lambda_prime * log_tanh_half(u) + c.C2 * log_cosh(u) + self._shift() * u

    def magnetic_field(self, u):
        c = self.case
        return c.C2 * (1 + 1 / np.cosh(u) ** 2) + self._shift() / np.tanh(u)

    def analytic_available(self, lam):
        return self.case.D2 == 0 and _same(lam.value, self.case.lambda_prime)


class GeneralizedPTGauge(BaseGauge):
    """alpha = lambda'/sinh u + C3 tanh u + D3 sech u."""

    def alpha(self, u):
        c = self.case
        return c.lambda_prime / np.sinh(u) + c.C3 * np.tanh(u) + c.D3 / np.cosh(u)

    def alpha_prime(self, u):
        c = self.case
        sech = 1 / np.cosh(u)
        return -c.lambda_prime / (np.sinh(u) * np.tanh(u)) + c.C3 * sech ** 2 - c.D3 * sech * np.tanh(u)

    def flux(self, u):
        c = self.case
        return c.lambda_prime + c.C3 * np.sinh(u) * np.tanh(u) + c.D3 * np.tanh(u)

    def pole_flux(self):
        return self.case.lambda_prime

    def asymptotic_alpha(self):
        return self.case.C3

    def alpha_integral(self, u):
        c = self.case
        # gudermannian for the sech term
        return (c.lambda_prime * log_tanh_half(u) + c.C3 * log_cosh(u)
                + c.D3 * 2 * np.arctan(np.tanh(u / 2)))

    def magnetic_field(self, u):
        c = self.case
        sech2 = 1 / np.cosh(u) ** 2
        return c.C3 * (1 + sech2) + c.D3 * sech2 / np.sinh(u)

    def analytic_available(self, lam):
        return self.case.D3 == 0 and _same(lam.value, self.case.lambda_prime)


class TabulatedGauge(BaseGauge):
    """Gauge given by samples of alpha.

    The flux f = alpha sinh u is interpolated with a monotone cubic and held
    constant outside the sampled range, so the field vanishes there and the
    total flux is finite.
    """

    def __init__(self, case) -> None:
        super().__init__(case)
        self.u_samples = np.asarray(case.u)
        self.flux_samples = np.asarray(case.alpha) * np.sinh(self.u_samples)
        self._interpolant = PchipInterpolator(self.u_samples, self.flux_samples, extrapolate=False)

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        inside = self._interpolant(np.clip(u, self.u_samples[0], self.u_samples[-1]))
        return np.where(u < self.u_samples[0], self.flux_samples[0],
                        np.where(u > self.u_samples[-1], self.flux_samples[-1], inside))

    def alpha(self, u):
        return self.flux(u) / np.sinh(u)

    def alpha_prime(self, u):
        from utils.numerics import centered_derivative
        return centered_derivative(self.alpha, u)

    def pole_flux(self):
        return float(self.flux_samples[0])

    def total_flux(self):
        return float(self.flux_samples[-1])

    def asymptotic_alpha(self):
        return 0.0

    def _segment_integral(self, start, stop):
        """int_start^stop alpha, split at the table knots so each piece is smooth."""
        low, high = min(start, stop), max(start, stop)
        knots = self.u_samples[(self.u_samples > low) & (self.u_samples < high)]
        edges = np.concatenate([[low], knots, [high]])
        total = sum(integrate.quad(self._alpha_scalar, a, b, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL)[0]
                    for a, b in zip(edges[:-1], edges[1:]))
        return total if stop >= start else -total

    def _alpha_scalar(self, x):
        return float(self.alpha(x))

    def alpha_integral(self, u):
        """int_{U_REF}^u alpha, accumulated between sorted points."""
        u = np.asarray(u, dtype=float)
        flat = np.atleast_1d(u)
        order = np.argsort(flat)
        values = np.empty_like(flat)

        def sweep(indices, start):
            total, previous = 0.0, start
            for i in indices:
                total += self._segment_integral(previous, flat[i])
                previous = flat[i]
                values[i] = total

        above = [i for i in order if flat[i] >= U_REF]
        below = [i for i in order[::-1] if flat[i] < U_REF]
        sweep(above, U_REF)
        sweep(below, U_REF)
        return values.reshape(u.shape)


GAUGES_DICT = {ConstantField: ConstantFieldGauge,
               Eckart: EckartGauge,
               PoschlTeller: PoschlTellerGauge,
               GeneralizedPT: GeneralizedPTGauge,
               Tabulated: TabulatedGauge}


def get_gauge(case):
    """Return the gauge function of a field case."""
    if isinstance(case, BaseGauge):
        return case
    try:
        Gauge = GAUGES_DICT[type(case)]
    except KeyError:
        raise InvalidParameter("Unknown field case: {!r}".format(case))
    return Gauge(case)
