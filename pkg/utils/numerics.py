"""Finite-difference machinery: sampled functions, quadrature and the
tridiagonal radial Hamiltonian with its lowest eigenpairs.
"""
import logging
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from scipy import integrate, linalg

from models.domain import RadialGrid
from models.errors import InvalidParameter, SingularPotential, EigenvectorFailure

BOUNDARIES = ["dirichlet", "mirror"]
# absolute bisection tolerance, in units of the operator norm
EIGENVALUE_TOL = 1e-14
RESIDUAL_TOL = 1e-9
SIGN_THRESHOLD = 1e-8

Eigenpair = namedtuple("Eigenpair", ["value", "vector"])


def centered_derivative(func, u, h=None):
    """Richardson-extrapolated centered difference of `func` at `u`.

    The default step min(1e-3, u/4) keeps every stencil point inside u > 0.
    """
    u = np.asarray(u, dtype=float)
    h = np.minimum(1e-3, u / 4) if h is None else h

    def diff(step):
        return (func(u + step) - func(u - step)) / (2 * step)

    return (4 * diff(h / 2) - diff(h)) / 3


@dataclass(frozen=True)
class SampledFunction:
    """Real samples of a function on a `RadialGrid`."""
    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n_points,):
            raise InvalidParameter("Got {} samples for a grid of {} points".format(
                values.shape, self.grid.n_points))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, func, grid):
        return cls(grid, func(grid.points))

    @property
    def points(self):
        return self.grid.points

    def norm(self):
        """sqrt of the grid quadrature of g**2."""
        return float(np.sqrt(quadrature(SampledFunction(self.grid, self.values ** 2))))

    def normalized(self):
        norm = self.norm()
        if norm == 0:
            raise InvalidParameter("Cannot normalize a function that vanishes on the grid")
        return SampledFunction(self.grid, self.values / norm)


def quadrature(f):
    """Composite Simpson integral of `f` over its grid.

    With an even number of points the last interval is added with the
    trapezoid rule.
    """
    y, h = f.values, f.grid.h
    if len(y) < 3:
        raise InvalidParameter("Quadrature needs at least 3 samples, got {}".format(len(y)))
    if len(y) % 2 == 1:
        return float(integrate.simpson(y, dx=h))
    return float(integrate.simpson(y[:-1], dx=h) + h * (y[-2] + y[-1]) / 2)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix of -d^2/du^2 + V on a grid.

    With `boundary="mirror"` the unknowns live on the reflection of the
    half-shifted `grid` through u = 0, so the diagonal holds 2N entries.
    """
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: RadialGrid
    boundary: str = "dirichlet"

    def __post_init__(self):
        if len(self.off_diagonal) != len(self.diagonal) - 1:
            raise InvalidParameter("Off-diagonal must have {} entries, got {}".format(
                len(self.diagonal) - 1, len(self.off_diagonal)))

    @property
    def size(self):
        return len(self.diagonal)

    def norm(self):
        """Infinity norm (max absolute row sum)."""
        off = np.abs(self.off_diagonal)
        rows = np.abs(self.diagonal).copy()
        rows[:-1] += off
        rows[1:] += off
        return float(rows.max())

    def apply(self, vector):
        out = self.diagonal * vector
        out[:-1] += self.off_diagonal * vector[1:]
        out[1:] += self.off_diagonal * vector[:-1]
        return out

    def banded(self, shift=0.0):
        """(l, u) = (1, 1) band storage of T - shift, for `solve_banded`."""
        ab = np.zeros((3, self.size))
        ab[0, 1:] = self.off_diagonal
        ab[1, :] = self.diagonal - shift
        ab[2, :-1] = self.off_diagonal
        return ab

    def restrict(self, vector):
        """Map a solution vector to samples on `grid` (u > 0)."""
        if self.boundary == "mirror":
            return vector[self.grid.n_points:]
        return vector


def discretize(V, grid, boundary="dirichlet"):
    """Second-order stencil of -d^2/du^2 + V(u) with Dirichlet ends.

    Parameters
    ----------
    V : callable
        Potential evaluated elementwise on the grid points.

    grid : RadialGrid

    boundary : {"dirichlet", "mirror"}
        "mirror" discretizes an even potential, regular at u = 0, on the
        reflected interval (-u_max, u_max) so both parity sectors appear.
    """
    if boundary not in BOUNDARIES:
        raise InvalidParameter("Unknown boundary: {}".format(boundary))
    if boundary == "mirror":
        grid = grid.half_shifted()
    values = np.asarray(V(grid.points), dtype=float)
    bad = np.flatnonzero(~np.isfinite(values))
    if len(bad) > 0:
        raise SingularPotential(int(bad[0]), values[bad[0]])
    if boundary == "mirror":
        values = np.concatenate([values[::-1], values])

    h2 = grid.h ** 2
    diagonal = 2 / h2 + values
    off_diagonal = np.full(len(values) - 1, -1 / h2)
    return TridiagonalOperator(diagonal, off_diagonal, grid, boundary)


def lowest_eigenvalues(operator, k):
    """The k smallest eigenvalues by Sturm-sequence bisection."""
    if k == 0:
        return np.empty(0)
    if not 0 < k <= operator.size:
        raise InvalidParameter("k must be in [0, {}], got {}".format(operator.size, k))
    return linalg.eigh_tridiagonal(operator.diagonal, operator.off_diagonal,
                                   eigvals_only=True, select='i', select_range=(0, k - 1),
                                   lapack_driver='stebz', tol=EIGENVALUE_TOL * operator.norm())


def extrapolated_eigenvalues(V, grid, k, boundary="dirichlet"):
    """Lowest k eigenvalues of -d^2/du^2 + V with the O(h^2) stencil error removed.

    Solves on `grid` and on its refinement and combines the two by Richardson
    extrapolation in the actual step ratio.
    """
    coarse = discretize(V, grid, boundary)
    fine = discretize(V, grid.refined(), boundary)
    ratio2 = (coarse.grid.h / fine.grid.h) ** 2
    return (ratio2 * lowest_eigenvalues(fine, k) - lowest_eigenvalues(coarse, k)) / (ratio2 - 1)


def _fix_sign(vector):
    big = np.flatnonzero(np.abs(vector) > SIGN_THRESHOLD * np.abs(vector).max())
    return -vector if vector[big[0]] < 0 else vector


def _inverse_iteration(operator, value, previous, rng, n_retries=4, max_iter=8):
    norm = operator.norm()
    for attempt in range(n_retries):
        shift = value - norm * 1e-12 * 10 ** attempt
        ab = operator.banded(shift)
        x = rng.standard_normal(operator.size)
        x /= np.linalg.norm(x)
        for _ in range(max_iter):
            try:
                x = linalg.solve_banded((1, 1), ab, x)
            except linalg.LinAlgError:
                break
            for v in previous:
                x -= np.dot(v, x) * v
            x_norm = np.linalg.norm(x)
            if not np.isfinite(x_norm) or x_norm == 0:
                break
            x /= x_norm
            if np.linalg.norm(operator.apply(x) - value * x) <= RESIDUAL_TOL * norm:
                return x
    raise EigenvectorFailure("Inverse iteration failed for eigenvalue {} after {} shifts".format(
        value, n_retries))


def lowest_eigenpairs(operator, k, seed=0, logger=logging.getLogger(__name__)):
    """The k smallest eigenpairs of a `TridiagonalOperator`.

    Eigenvalues come from bisection, vectors from inverse iteration with a
    seeded start per level. Vectors are restricted to u > 0, normalized so
    that the grid quadrature of g**2 is 1 and signed so that their first
    non-negligible sample is positive.

    Returns
    -------
    list of Eigenpair(value, SampledFunction)
    """
    values = lowest_eigenvalues(operator, k)
    vectors = []
    pairs = []
    for i, value in enumerate(values):
        rng = np.random.default_rng(seed + i)
        x = _inverse_iteration(operator, value, vectors, rng)
        vectors.append(x)
        g = SampledFunction(operator.grid, operator.restrict(x)).normalized()
        pairs.append(Eigenpair(float(value), SampledFunction(g.grid, _fix_sign(g.values))))
        logger.debug("level {}: eigenvalue {:.10g}".format(i, value))
    return pairs
