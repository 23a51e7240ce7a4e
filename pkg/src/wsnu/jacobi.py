"""Jacobi polynomials P_n^{(a, b)}(x) for arbitrary complex parameters."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class JacobiParams:
    n: int
    a_param: complex
    b_param: complex

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("degree must be non-negative")

    def __call__(self, x):
        return jacobi_values(self.n, self.a_param, self.b_param, x)


def _pochhammer(x, m):
    out = 1.0 + 0j
    for j in range(m):
        out *= x + j
    return out


def jacobi_explicit(n, a, b, x):
    """Finite hypergeometric sum; polynomial in (a, b), so it has no poles.

    P_n(x) = sum_m (n+a+b+1)_m (a+m+1)_{n-m} / (m! (n-m)!) ((x-1)/2)^m
    """
    x = np.asarray(x, dtype=complex)
    t = (x - 1.0) / 2.0
    out = np.zeros_like(x)
    for m in range(n, -1, -1):
        coef = _pochhammer(n + a + b + 1, m) * _pochhammer(a + m + 1, n - m) / (factorial(m) * factorial(n - m))
        out = out * t + coef if m < n else np.full_like(x, coef)
    return out


def jacobi_values(n, a, b, x):
    """Three-term recurrence; falls back to the explicit sum when a recurrence
    denominator vanishes (which can happen for non-classical parameters)."""
    a = complex(a)
    b = complex(b)
    x = np.asarray(x, dtype=complex)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p_cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    ab = a + b
    for k in range(2, n + 1):
        c = 2 * k + ab
        den = 2.0 * k * (k + ab) * (c - 2.0)
        if abs(den) <= _DEGENERATE_TOL * (1.0 + abs(c)) ** 3:
            return jacobi_explicit(n, a, b, x)
        lin = (c - 1.0) * (c * (c - 2.0) * x + (a * a - b * b))
        p_prev, p_cur = p_cur, (lin * p_cur - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * p_prev) / den
    return p_cur


def jacobi_eval(jp, x):
    return jacobi_values(jp.n, jp.a_param, jp.b_param, x)


def jacobi_derivatives(n, a, b, x):
    """(P, dP/dx, d2P/dx2) via d/dx P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}."""
    x = np.asarray(x, dtype=complex)
    p0 = jacobi_values(n, a, b, x)
    if n == 0:
        zero = np.zeros_like(x)
        return p0, zero, zero
    p1 = 0.5 * (n + a + b + 1.0) * jacobi_values(n - 1, a + 1.0, b + 1.0, x)
    if n == 1:
        return p0, p1, np.zeros_like(x)
    p2 = 0.25 * (n + a + b + 1.0) * (n + a + b + 2.0) * jacobi_values(n - 2, a + 2.0, b + 2.0, x)
    return p0, p1, p2
