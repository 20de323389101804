"""The magnetic field cases: four solvable vector-potential families and a
user-supplied table.

A case is plain immutable data. The matching evaluators live in
`models.gauges`.
"""
import math
from dataclasses import dataclass, fields
from typing import ClassVar, Tuple

import numpy as np
import pandas as pd

from .errors import InvalidParameter

TABLE_COLUMNS = ["u", "alpha"]


def _check_finite(case):
    for f in fields(case):
        value = getattr(case, f.name)
        if isinstance(value, float) and not math.isfinite(value):
            raise InvalidParameter("{}: parameter {}={} is not finite".format(case.tag, f.name, value))


@dataclass(frozen=True)
class ConstantField:
    """Case (i): alpha(u) = A0 coth u, a constant field b = A0."""
    tag: ClassVar[str] = "i"
    A0: float

    def __post_init__(self):
        _check_finite(self)


@dataclass(frozen=True)
class Eckart:
    """Case (ii): alpha(u) = lambda'/sinh u - C1 coth u + D1/C1."""
    tag: ClassVar[str] = "ii"
    lambda_prime: float
    C1: float
    D1: float

    def __post_init__(self):
        _check_finite(self)
        if self.C1 == 0:
            raise InvalidParameter("ii: C1 must be nonzero")


@dataclass(frozen=True)
class PoschlTeller:
    """Case (iii): alpha(u) = lambda'/sinh u + C2 tanh u + D2/C2."""
    tag: ClassVar[str] = "iii"
    lambda_prime: float
    C2: float
    D2: float = 0.0

    def __post_init__(self):
        _check_finite(self)
        if self.C2 == 0 and self.D2 != 0:
            raise InvalidParameter("iii: D2/C2 is undefined for C2 = 0")


@dataclass(frozen=True)
class GeneralizedPT:
    """Case (iv): alpha(u) = lambda'/sinh u + C3 tanh u + D3 sech u."""
    tag: ClassVar[str] = "iv"
    lambda_prime: float
    C3: float
    D3: float = 0.0

    def __post_init__(self):
        _check_finite(self)


@dataclass(frozen=True)
class Tabulated:
    """Gauge function sampled at strictly increasing u > 0."""
    tag: ClassVar[str] = "tabulated"
    u: Tuple[float, ...]
    alpha: Tuple[float, ...]

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        alpha = np.asarray(self.alpha, dtype=float)
        if u.ndim != 1 or u.shape != alpha.shape:
            raise InvalidParameter("tabulated: u and alpha must be 1-d of equal length")
        if len(u) < 2:
            raise InvalidParameter("tabulated: need at least 2 samples, got {}".format(len(u)))
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(alpha))):
            raise InvalidParameter("tabulated: samples must be finite")
        if u[0] <= 0:
            raise InvalidParameter("tabulated: u must be > 0, first sample is {}".format(u[0]))
        if np.any(np.diff(u) <= 0):
            raise InvalidParameter("tabulated: u must be strictly increasing")
        object.__setattr__(self, "u", tuple(float(x) for x in u))
        object.__setattr__(self, "alpha", tuple(float(x) for x in alpha))

    @classmethod
    def from_csv(cls, path):
        """Read a two-column CSV with header line "u,alpha"."""
        try:
            table = pd.read_csv(path)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise InvalidParameter("Cannot read gauge table {}: {}".format(path, e))
        if list(table.columns) != TABLE_COLUMNS:
            raise InvalidParameter("Gauge table {} must have header {}, got {}".format(
                path, ",".join(TABLE_COLUMNS), ",".join(map(str, table.columns))))
        return cls(tuple(table["u"].astype(float)), tuple(table["alpha"].astype(float)))

    @classmethod
    def from_flux(cls, u, flux):
        """Build from flux-in-quanta samples f(u) = alpha(u) sinh u."""
        u = np.asarray(u, dtype=float)
        return cls(tuple(u), tuple(np.asarray(flux, dtype=float) / np.sinh(u)))


def truncated_landau(total_flux, u0, n_samples=400, u_end=None):
    """Constant field for u < u0 and no field beyond, carrying `total_flux` quanta.

    The gauge is regular at the pole (no flux string): f(u) = A (cosh u - 1)
    with A fixed by f(u0) = total_flux.
    """
    if u0 <= 0:
        raise InvalidParameter("u0 must be > 0, got {}".format(u0))
    u_end = 2 * u0 if u_end is None else u_end
    strength = total_flux / (math.cosh(u0) - 1)
    u = np.linspace(u0 / n_samples, u_end, n_samples)
    flux = np.where(u < u0, strength * (np.cosh(u) - 1), total_flux)
    return Tabulated.from_flux(u, flux)


CASES_DICT = {"i": ConstantField,
              "ii": Eckart,
              "iii": PoschlTeller,
              "iv": GeneralizedPT,
              "tabulated": Tabulated}

CASES = list(CASES_DICT.keys())


def get_case(tag, **params):
    """Return the case of the given tag built from `params`."""
    try:
        Case = CASES_DICT[tag]
    except KeyError:
        raise InvalidParameter("Unknown case: {}".format(tag))
    try:
        return Case(**params)
    except TypeError as e:
        raise InvalidParameter("Bad parameters for case {}: {}".format(tag, e))
