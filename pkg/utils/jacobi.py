"""Jacobi polynomials P_n^(a,b) from the three-term recurrence.

The recurrence defines a polynomial family for every real (a, b), including
the a, b <= -1 values met by the closed-form eigenfunctions, where the
classical orthogonality no longer holds.
"""
import numpy as np

from models.errors import DegenerateParameters


def jacobi(n, a, b, w):
    """Evaluate P_n^(a,b)(w); `w` may be a scalar or an array.

    Raises
    ------
    DegenerateParameters
        If a recurrence denominator 2k (k+a+b) (2k+a+b-2) is exactly zero.
    """
    if n < 0:
        raise IndexError("Jacobi degree must be >= 0, got {}".format(n))
    w = np.asarray(w, dtype=float)
    p_prev = np.ones_like(w)
    if n == 0:
        return p_prev if w.ndim else float(p_prev)

    apb = a + b
    p = (a + 1) + (apb + 2) * (w - 1) / 2
    for k in range(2, n + 1):
        a1 = 2 * k * (k + apb) * (2 * k + apb - 2)
        if a1 == 0:
            raise DegenerateParameters(
                "Jacobi recurrence denominator vanishes at k={} for a={}, b={}".format(k, a, b))
        a2 = (2 * k + apb - 1) * (a * a - b * b)
        a3 = (2 * k + apb - 2) * (2 * k + apb - 1) * (2 * k + apb)
        a4 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + apb)
        p, p_prev = ((a2 + a3 * w) * p - a4 * p_prev) / a1, p
    return p if w.ndim else float(p)


def jacobi_derivative(n, a, b, w):
    """d/dw P_n^(a,b)(w) = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)(w); exactly 0 for n = 0."""
    if n == 0:
        w = np.asarray(w, dtype=float)
        return np.zeros_like(w) if w.ndim else 0.0
    return (n + a + b + 1) / 2 * jacobi(n - 1, a + 1, b + 1, w)
