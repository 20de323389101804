import numpy as np
import pytest
from hypothesis import assume, given
import hypothesis.strategies as st
from scipy import special

from models.errors import DegenerateParameters
from utils.jacobi import jacobi, jacobi_derivative
from utils.numerics import centered_derivative

degrees = st.integers(0, 8)
parameters = st.floats(-12.0, 5.0)
points = st.floats(-1.0, 3.0)


def explicit_terms(n, a, b, w):
    """Terms of P_n^(a,b)(w) = sum_s C(n+a, n-s) C(n+b, s) ((w-1)/2)^s ((w+1)/2)^(n-s)."""
    return np.array([special.binom(n + a, n - s) * special.binom(n + b, s)
                     * ((w - 1) / 2) ** s * ((w + 1) / 2) ** (n - s) for s in range(n + 1)])


def well_conditioned(n, a, b):
    return all(abs(k + a + b) > 1e-2 and abs(2 * k + a + b - 2) > 1e-2 for k in range(2, n + 1))


@given(n=degrees, a=parameters, b=parameters, w=points)
def test_recurrence_matches_explicit_sum(n, a, b, w):
    assume(well_conditioned(n, a, b))
    terms = explicit_terms(n, a, b, w)
    assert abs(jacobi(n, a, b, w) - terms.sum()) <= 1e-8 * max(1.0, np.abs(terms).sum())


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("a, b", [(0.0, 0.0), (0.5, -0.5), (2.0, 3.0), (-0.5, 1.5)])
def test_classical_parameters(n, a, b):
    w = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(jacobi(n, a, b, w), special.eval_jacobi(n, a, b, w), rtol=1e-10, atol=1e-12)


def test_low_degrees():
    assert jacobi(0, -7.5, 3.0, 0.3) == 1.0
    assert jacobi(1, 2.0, -13.0, 2.0) == pytest.approx(3.0 + (-9.0) * 0.5)


@pytest.mark.parametrize("n, a", [(3, 1.5), (4, -9.5), (2, 0.0)])
def test_value_at_one(n, a):
    assert jacobi(n, a, -6.5, 1.0) == pytest.approx(special.binom(n + a, n))


def test_scalar_and_array():
    assert isinstance(jacobi(3, 1.0, 2.0, 0.5), float)
    assert isinstance(jacobi(0, 1.0, 2.0, 0.5), float)
    assert jacobi(3, 1.0, 2.0, np.array([0.1, 0.2])).shape == (2,)


def test_negative_degree():
    with pytest.raises(IndexError):
        jacobi(-1, 0.0, 0.0, 0.5)


def test_degenerate_denominator():
    with pytest.raises(DegenerateParameters):
        jacobi(2, -1.0, -1.0, 0.5)


@given(n=st.integers(1, 6), a=parameters, b=parameters, w=st.floats(-0.9, 2.5))
def test_derivative(n, a, b, w):
    assume(well_conditioned(n, a, b) and well_conditioned(n - 1, a + 1, b + 1))
    numeric = centered_derivative(lambda x: jacobi(n, a, b, x), w, h=1e-3)
    scale = max(1.0, np.abs(explicit_terms(n, a, b, w)).sum() + np.abs(explicit_terms(n, a, b, w + 1e-3)).sum())
    assert abs(jacobi_derivative(n, a, b, w) - numeric) <= 1e-6 * scale


def test_derivative_of_constant():
    assert jacobi_derivative(0, 1.0, 2.0, 0.4) == 0.0
    np.testing.assert_array_equal(jacobi_derivative(0, 1.0, 2.0, np.ones(3)), np.zeros(3))
