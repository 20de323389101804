"""Closed-form supersymmetric machinery of the radial Dirac problem.

H1 = L+ L- and H2 = L- L+ with L-+ = +-d/du + W(u) share their spectra except
for the zero mode of H1. For the solvable cases the spectra are algebraic and
the eigenfunctions are prefactors times Jacobi polynomials in
w(u) in {cosh u, coth u, tanh u}.
"""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from fields import Superpotential, _check_domain, _out
from models.cases import ConstantField, Eckart, PoschlTeller, GeneralizedPT, Tabulated
from models.domain import AngularMomentum, SpectrumEntry, UnitSystem
from models.errors import AnalyticUnavailable, NoBoundStates, UnsupportedCase
from models.gauges import get_gauge
from models.validation import validate_case
from utils.jacobi import jacobi, jacobi_derivative
from utils.numerics import SampledFunction

COMPONENTS = ["g1", "g2"]
LOG2 = math.log(2)


def _csch(u):
    return 1 / np.sinh(u)


def _sech(u):
    return 1 / np.cosh(u)


def _solvable(case):
    """Case with the parameters the closed forms are written in.

    Case (iv) with D3 = 0 is case (iii) with C2 = C3.
    """
    if isinstance(case, GeneralizedPT) and case.D3 == 0:
        return PoschlTeller(case.lambda_prime, case.C3, 0.0)
    return case


# Partner potentials

@dataclass(frozen=True)
class PartnerPotentials:
    """V1 = W^2 - W' and V2 = W^2 + W', with the continuum threshold lim W^2."""
    V1: Callable
    V2: Callable
    asymptotic_value: float
    closed_form: bool = False


def _closed_potentials(case, lam):
    case = _solvable(case)
    lam_value = lam.value
    if isinstance(case, ConstantField):
        A0 = case.A0

        def V1(u):
            return A0 ** 2 + (A0 ** 2 + lam_value ** 2 + A0) * _csch(u) ** 2 \
                - lam_value * (2 * A0 + 1) * _csch(u) / np.tanh(u)

        def V2(u):
            return A0 ** 2 + (A0 ** 2 + lam_value ** 2 - A0) * _csch(u) ** 2 \
                - lam_value * (2 * A0 - 1) * _csch(u) / np.tanh(u)

        return V1, V2
    if isinstance(case, Eckart):
        C, D = case.C1, case.D1

        def V1(u):
            return D ** 2 / C ** 2 + C ** 2 + C * (C - 1) * _csch(u) ** 2 - 2 * D / np.tanh(u)

        def V2(u):
            return D ** 2 / C ** 2 + C ** 2 + C * (C + 1) * _csch(u) ** 2 - 2 * D / np.tanh(u)

        return V1, V2
    if isinstance(case, PoschlTeller):
        C = case.C2

        def V1(u):
            return C ** 2 - C * (C + 1) * _sech(u) ** 2

        def V2(u):
            return C ** 2 - C * (C - 1) * _sech(u) ** 2

        return V1, V2
    return None


def partner_potentials(W):
    """Partner potentials of a `Superpotential`.

    Closed forms are used where the case is solvable at this lambda, W^2 -+ W'
    otherwise.
    """
    gauge = W.gauge
    threshold = W.asymptotic_value() ** 2
    if gauge.analytic_available(W.lam):
        V1, V2 = _closed_potentials(gauge.case, W.lam)

        def checked(V):
            def evaluate(u):
                x = _check_domain(u)
                return _out(V(x), u)
            return evaluate

        return PartnerPotentials(checked(V1), checked(V2), threshold, closed_form=True)

    def V1(u):
        return W(u) ** 2 - W.derivative(u)

    def V2(u):
        return W(u) ** 2 + W.derivative(u)

    return PartnerPotentials(V1, V2, threshold)


def shape_invariance_residual(A0, lam, u):
    """V2(u; A0+1) - V1(u; A0) - 2 A0 - 1 for the constant field; zero up to rounding."""
    if isinstance(A0, (Eckart, PoschlTeller, GeneralizedPT, Tabulated)):
        raise UnsupportedCase("Shape invariance in A0 only holds for the constant field, got case {}".format(A0.tag))
    if isinstance(A0, ConstantField):
        A0 = A0.A0
    upper = partner_potentials(Superpotential(lam, ConstantField(A0 + 1)))
    lower = partner_potentials(Superpotential(lam, ConstantField(A0)))
    return upper.V2(u) - lower.V1(u) - 2 * A0 - 1


@dataclass(frozen=True)
class RadialProblem:
    """Superpotential, its partner potentials and what validation found."""
    W: Superpotential
    potentials: PartnerPotentials
    report: object

    @classmethod
    def build(cls, case, lam):
        report = validate_case(case, lam)
        W = Superpotential(lam, case)
        return cls(W, partner_potentials(W), report)


# Spectra

def _require_analytic(case, lam):
    gauge = get_gauge(case)
    if not gauge.analytic_available(lam):
        if isinstance(case, Tabulated):
            raise AnalyticUnavailable("tabulated gauges have no closed form; use the numeric engine")
        raise AnalyticUnavailable(
            "case {} has no closed form at lambda={} ({}); use the numeric engine".format(
                case.tag, lam, gauge.describe()))
    verdict = gauge.zero_mode_verdict(lam)
    if not verdict.admissible:
        raise NoBoundStates("no bound states: zero mode {} (origin exponent {:g}, decay rate {:g})".format(
            verdict.status.value.replace("_", " "), verdict.origin_exponent, verdict.decay_rate))
    return _solvable(case)


def _levels(case):
    """(n, epsilon, is_threshold) for every level up to and including the threshold."""
    if isinstance(case, ConstantField):
        A0 = case.A0
        n_max = int(math.floor(A0))
        return [(n, A0 ** 2 - (A0 - n) ** 2, math.isclose(n, A0)) for n in range(n_max + 1)]
    if isinstance(case, Eckart):
        C, D = case.C1, case.D1
        out = []
        n = 0
        while (C + n) ** 2 <= D or math.isclose((C + n) ** 2, D):
            eps = C ** 2 - (C + n) ** 2 - D ** 2 / (C + n) ** 2 + D ** 2 / C ** 2
            out.append((n, eps, math.isclose((C + n) ** 2, D)))
            n += 1
        return out
    if isinstance(case, PoschlTeller):
        C = case.C2
        n_max = int(math.floor(C))
        return [(n, C ** 2 - (C - n) ** 2, math.isclose(n, C)) for n in range(n_max + 1)]
    raise UnsupportedCase("No closed-form spectrum for case {}".format(case.tag))


def degeneracy_descriptor(case):
    """Set of half-odd lambda sharing the spectrum of `case`."""
    case = _solvable(case)
    if isinstance(case, ConstantField):
        if not case.A0 > 0:
            return "none"
        lowest = 2 * math.ceil(case.A0 - 0.5) + 1
        return "infinite: half-odd lambda >= {}/2".format(lowest)
    return "lambda = {:g} only".format(case.lambda_prime)


def spectrum(case, lam, R=1.0, include_threshold=False):
    """Bound states eps_n < lim W^2 of the solvable cases.

    Parameters
    ----------
    case : FieldCase

    lam : AngularMomentum

    R : float, optional
        Hyperboloid radius; Dirac energies are +-sqrt(eps_n)/R.

    include_threshold : bool, optional
        Append the level sitting exactly at the threshold, flagged.

    Raises
    ------
    AnalyticUnavailable
        If the case is not solvable at this lambda.

    NoBoundStates
        If the zero mode is not normalizable.
    """
    units = UnitSystem(R)
    solvable = _require_analytic(case, lam)
    degeneracy = degeneracy_descriptor(solvable)
    entries = []
    for n, eps, at_threshold in _levels(solvable):
        if at_threshold and not include_threshold:
            continue
        entries.append(SpectrumEntry.from_epsilon(n, max(eps, 0.0), units.R,
                                                  is_threshold=at_threshold,
                                                  degeneracy=degeneracy,
                                                  non_physical=not lam.is_physical))
    return entries


def bound_level_count(case, lam):
    return len(spectrum(case, lam))


# Eigenfunctions

@dataclass(frozen=True)
class EigenfunctionForm:
    """g(u) = (w - 1)^p (w + 1)^q P_n^(a,b)(w) with w = cosh u or coth u, or
    g(u) = (1 - w)^p (1 + w)^q P_n^(a,b)(w) with w = tanh u.
    """
    component: str
    level: int
    degree: int
    p: float
    q: float
    a: float
    b: float
    variable: str

    def _w_and_logs(self, u):
        if self.variable == "cosh":
            return (np.cosh(u), LOG2 + 2 * np.log(np.sinh(u / 2)), LOG2 + 2 * np.log(np.cosh(u / 2)))
        if self.variable == "coth":
            log_expm1 = np.log(np.expm1(2 * u))
            return (1 / np.tanh(u), LOG2 - log_expm1, LOG2 + 2 * u - log_expm1)
        log_denominator = np.logaddexp(0, 2 * u)
        return (np.tanh(u), LOG2 - log_denominator, LOG2 + 2 * u - log_denominator)

    def log_prefactor(self, u):
        _, log_minus, log_plus = self._w_and_logs(u)
        return self.p * log_minus + self.q * log_plus

    def value(self, u):
        x = _check_domain(u, include_zero=self.variable == "tanh")
        w, _, _ = self._w_and_logs(x)
        return _out(np.exp(self.log_prefactor(x)) * jacobi(self.degree, self.a, self.b, w), u)

    def derivative(self, u):
        """Exact d/du of `value`."""
        x = _check_domain(u, include_zero=self.variable == "tanh")
        w, _, _ = self._w_and_logs(x)
        P = jacobi(self.degree, self.a, self.b, w)
        dP = jacobi_derivative(self.degree, self.a, self.b, w)
        if self.variable == "cosh":
            dlog = self.p / np.tanh(x / 2) + self.q * np.tanh(x / 2)
            dw = np.sinh(x)
        else:
            dlog = -self.p * (1 + w) + self.q * (1 - w)
            dw = 1 - w ** 2
        return _out(np.exp(self.log_prefactor(x)) * (dlog * P + dw * dP), u)


def _form(case, lam, component, degree, level):
    lam_value = lam.value
    if isinstance(case, ConstantField):
        s_minus, s_plus = lam_value - case.A0, lam_value + case.A0
        if component == "g1":
            return EigenfunctionForm(component, level, degree, s_minus / 2, -s_plus / 2,
                                     s_minus - 0.5, -s_plus - 0.5, "cosh")
        return EigenfunctionForm(component, level, degree, (s_minus + 1) / 2, -(s_plus - 1) / 2,
                                 s_minus + 0.5, -s_plus + 0.5, "cosh")
    if isinstance(case, Eckart):
        k = case.C1 + degree + (1 if component == "g2" else 0)
        s_plus, s_minus = case.D1 / k - k, -case.D1 / k - k
        return EigenfunctionForm(component, level, degree, s_plus / 2, s_minus / 2,
                                 s_plus, s_minus, "coth")
    s = case.C2 - degree - (1 if component == "g2" else 0)
    return EigenfunctionForm(component, level, degree, s / 2, s / 2, s, s, "tanh")


def eigenfunction_form(case, lam, n, component="g1"):
    """Closed-form descriptor of g1,n or of its partner g2,n-1 at level n."""
    if component not in COMPONENTS:
        raise ValueError("Unknown component: {}".format(component))
    levels = spectrum(case, lam)
    if not 0 <= n < len(levels):
        raise IndexError("level n={} outside the {} bound states".format(n, len(levels)))
    if component == "g2" and n == 0:
        raise IndexError("g2 has no partner of the zero mode: level n=0")
    degree = n if component == "g1" else n - 1
    return _form(_solvable(case), lam, component, degree, n)


def eigenfunction_value(case, lam, n, component, u):
    """Unnormalized closed-form g1,n(u), or g2,n-1(u) for component "g2"."""
    return eigenfunction_form(case, lam, n, component).value(u)


def eigenfunction_derivative(case, lam, n, component, u):
    return eigenfunction_form(case, lam, n, component).derivative(u)


def normalized_eigenfunction(case, lam, n, component, grid):
    """Closed form sampled on `grid`, divided by sqrt of its grid norm."""
    form = eigenfunction_form(case, lam, n, component)
    return SampledFunction.from_function(form.value, grid).normalized()


def apply_lowering(W, g, dg, u):
    """L- g = g' + W g from samples of g and g' at u."""
    return np.asarray(dg) + W(u) * np.asarray(g)


# Zero modes

def zero_mode(gauge, lam, u):
    """tanh(u/2)^lambda exp(-int alpha); normalization is arbitrary."""
    gauge = get_gauge(gauge)
    x = _check_domain(u)
    log_g = lam.value * np.log(np.tanh(x / 2)) - gauge.alpha_integral(x)
    return _out(np.exp(log_g), u)


def zero_mode_admissible(gauge, lam):
    """Verdict on the normalizability of the zero mode, with its exponents."""
    return get_gauge(gauge).zero_mode_verdict(lam)


def degenerate_lambdas(case, two_lambda_max, two_lambda_min=None):
    """Half-odd lambda with |2 lambda| <= two_lambda_max whose zero mode is admissible.

    A finite window onto what is, for the constant field, an infinite set.
    """
    if isinstance(case, Tabulated):
        raise UnsupportedCase("Degeneracy needs a closed-form case, got tabulated")
    gauge = get_gauge(case)
    low = -two_lambda_max if two_lambda_min is None else max(two_lambda_min, -two_lambda_max)
    out = []
    for two_lambda in range(low, two_lambda_max + 1):
        if two_lambda % 2 == 0:
            continue
        lam = AngularMomentum(two_lambda)
        if gauge.zero_mode_verdict(lam).admissible:
            out.append(lam)
    return out


@dataclass(frozen=True)
class NoGoVerdict:
    """Zero mode of a field with finite total flux: g ~ tanh(u/2)^tail_exponent."""
    tail_exponent: float
    normalizable: bool = False


def finite_flux_no_go(total_flux_quanta, lam):
    """Beyond the support of the field g1,0 tends to a nonzero constant.

    Whatever the sign of the tail exponent, tanh(u/2)^p -> 1, so the zero
    mode is never square integrable.
    """
    return NoGoVerdict(float(lam.value - total_flux_quanta), normalizable=False)


# Spinors

def _values(g):
    return g.values if isinstance(g, SampledFunction) else np.asarray(g, dtype=float)


def spinor_assembly(g1, g2, lam, u, phi):
    """Surface spinor from the radial pair (g1, g2).

    (psi1, psi2) = (g1, i g2) / sqrt(sinh u) is rotated by exp(-(u/2) sigma_y)
    and the components get the phases exp(i (lambda -+ 1/2) phi).
    """
    x = _check_domain(u)
    scale = 1 / np.sqrt(np.sinh(x))
    psi1 = _values(g1) * scale
    psi2 = 1j * _values(g2) * scale
    c, s = np.cosh(x / 2), np.sinh(x / 2)
    F1 = c * psi1 + 1j * s * psi2
    F2 = -1j * s * psi1 + c * psi2
    F1 = F1 * np.exp(1j * (lam.value - 0.5) * phi)
    F2 = F2 * np.exp(1j * (lam.value + 0.5) * phi)
    return F1, F2


def spinor_density(F1, F2):
    return np.abs(F1) ** 2 + np.abs(F2) ** 2
