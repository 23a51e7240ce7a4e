import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsnu.jacobi import JacobiParams, jacobi_derivatives, jacobi_eval, jacobi_explicit, jacobi_values


def test_degree_zero():
    assert jacobi_values(0, 3.7 + 1j, -2.2, np.array([0.3, 5.0])) == pytest.approx([1, 1])


def test_p1_at_one():
    assert jacobi_eval(JacobiParams(1, 2.0, 1.0), 1.0) == pytest.approx(3.0)


def test_legendre_p2():
    assert jacobi_values(2, 0, 0, 0.0) == pytest.approx(-0.5)


def test_negative_degree():
    with pytest.raises(ValueError):
        JacobiParams(-1, 0, 0)


@pytest.mark.parametrize("n", range(0, 9))
@pytest.mark.parametrize("ab", [(0.5, 1.0), (1.618, 3.0), (-0.3, 2.5), (2.0 + 1.5j, 0.5 - 0.7j)])
def test_against_mpmath(n, ab):
    a, b = ab
    x = np.linspace(-1.3, 1.7, 7)
    ref = np.array([complex(mpmath.jacobi(n, a, b, xi)) for xi in x])
    got = jacobi_values(n, a, b, x)
    assert np.max(abs(got - ref)) <= 1e-12 * max(1.0, np.max(abs(ref)))


def test_degenerate_recurrence_falls_back():
    # a + b = -3 makes the k + a + b factor vanish at k = 3
    a, b = -1.5, -1.5
    x = np.array([0.1, 0.7])
    assert jacobi_values(3, a, b, x) == pytest.approx(jacobi_explicit(3, a, b, x), rel=1e-12)
    ref = [complex(mpmath.jacobi(3, a, b, xi)) for xi in x]
    assert jacobi_values(3, a, b, x) == pytest.approx(ref, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(0, 8), a=st.floats(-0.9, 5), b=st.floats(-0.9, 5), x=st.floats(-1, 1),
)
def test_recurrence_matches_explicit(n, a, b, x):
    r = jacobi_values(n, a, b, x)
    e = jacobi_explicit(n, a, b, x)
    assert abs(r - e) <= 1e-10 * max(1.0, abs(e))


@pytest.mark.parametrize("n", [1, 2, 5])
def test_derivatives_by_difference(n):
    a, b = 0.8 + 0.3j, 1.7
    x = np.linspace(-0.8, 0.8, 5)
    h = 1e-5
    p0, p1, p2 = jacobi_derivatives(n, a, b, x)
    fd1 = (jacobi_values(n, a, b, x + h) - jacobi_values(n, a, b, x - h)) / (2 * h)
    fd2 = (jacobi_values(n, a, b, x + h) - 2 * p0 + jacobi_values(n, a, b, x - h)) / h**2
    assert np.max(abs(p1 - fd1)) <= 1e-7 * max(1, np.max(abs(p1)))
    assert np.max(abs(p2 - fd2)) <= 1e-4 * max(1, np.max(abs(p2)))


@pytest.mark.parametrize("n", range(1, 7))
def test_real_roots_classical(n):
    x = np.linspace(-1, 1, 20001)
    v = jacobi_values(n, 1.618, 0.5, x).real
    assert np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])) == n
