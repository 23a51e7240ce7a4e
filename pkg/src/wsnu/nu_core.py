"""Generic Nikiforov-Uvarov reduction for hypergeometric-type equations.

An equation of the form

    psi'' + (tau_t / sigma) psi' + (sigma_t / sigma**2) psi = 0

with deg(sigma), deg(sigma_t) <= 2 and deg(tau_t) <= 1 is factorised as
psi = phi * y, where phi'/phi = pi / sigma and y solves

    sigma y'' + tau y' + lam y = 0,    tau = tau_t + 2 pi,    lam = k + pi'.

Polynomial solutions exist when lam equals
lam_n = -n tau' - n (n - 1) sigma'' / 2. Everything here works with complex
coefficients so the same code serves the Hermitian and the non-Hermitian
problems.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import comb, factorial

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    KUnsolvableError,
    NoAdmissibleBranchError,
    RodriguesDepthError,
    UnsupportedSigmaError,
)

DEGREE_TOL = 1e-14
MAX_RODRIGUES_DEGREE = 12


def csqrt(z):
    """Principal square root with a signed-zero guard.

    ``-x - 0j`` and ``-x + 0j`` would otherwise land on opposite sides of the
    branch cut; adding ``0.0`` normalises ``-0.0`` to ``+0.0``.
    """
    z = complex(z)
    return cmath.sqrt(complex(z.real, z.imag + 0.0))


@dataclass(frozen=True)
class Poly2:
    """Polynomial ``c0 + c1 s + c2 s**2`` with complex coefficients."""

    c0: complex = 0.0
    c1: complex = 0.0
    c2: complex = 0.0

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @property
    def coeffs(self):
        return (self.c0, self.c1, self.c2)

    def __call__(self, s):
        return self.c0 + s * (self.c1 + s * self.c2)

    def __add__(self, other):
        return Poly2(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other):
        return Poly2(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def scale(self, factor):
        return Poly2(factor * self.c0, factor * self.c1, factor * self.c2)

    def deriv(self):
        return Poly2(self.c1, 2.0 * self.c2, 0.0)

    def degree(self, tol=DEGREE_TOL):
        """Highest index whose coefficient is not negligible; -1 for the zero polynomial."""
        mags = [abs(c) for c in self.coeffs]
        top = max(mags)
        if top == 0.0:
            return -1
        for i in (2, 1, 0):
            if mags[i] > tol * top:
                return i
        return 0

    def is_zero(self):
        return self.degree() < 0


@dataclass(frozen=True)
class NUProblem:
    sigma: Poly2
    sigma_tilde: Poly2
    tau_tilde: Poly2

    def __post_init__(self):
        if self.sigma.is_zero():
            raise ValueError("sigma must not vanish identically")
        if self.tau_tilde.degree() > 1:
            raise ValueError("tau_tilde must be at most linear")

    @property
    def half_gap(self):
        """(sigma' - tau_tilde) / 2, the rational part of pi(s)."""
        return (self.sigma.deriv() - self.tau_tilde).scale(0.5)

    def radicand(self, k):
        """The quadratic under the square root in pi(s) for a given k."""
        p = self.half_gap
        return Poly2(
            p.c0 * p.c0 - self.sigma_tilde.c0 + k * self.sigma.c0,
            2.0 * p.c0 * p.c1 - self.sigma_tilde.c1 + k * self.sigma.c1,
            p.c1 * p.c1 - self.sigma_tilde.c2 + k * self.sigma.c2,
        )


@dataclass(frozen=True)
class NUBranch:
    """A resolved (k, pi) choice together with the derived tau and lam.

    ``k_label`` is ``"+"`` or ``"-"`` (which root of the k-quadratic) and
    ``sign`` is the sign in front of the square root in pi(s).
    """

    k: complex
    pi: Poly2
    tau: Poly2
    lam: complex
    tau_slope_negative: bool
    k_label: str = "-"
    sign: str = "-"

    @property
    def tau_slope(self):
        return self.tau.c1


def solve_k(problem):
    """Both roots of the condition that pi's radicand be a perfect square.

    Returns ``(k_plus, k_minus)``; they coincide when the k-quadratic has a
    double root or degenerates to a linear equation.
    """
    p = problem.half_gap
    u = Poly2(
        p.c0 * p.c0 - problem.sigma_tilde.c0,
        2.0 * p.c0 * p.c1 - problem.sigma_tilde.c1,
        p.c1 * p.c1 - problem.sigma_tilde.c2,
    )
    v = problem.sigma
    u0, u1, u2 = u.coeffs
    v0, v1, v2 = v.coeffs
    # discriminant (in s) of u + k v, as a quadratic in k: A k^2 + B k + C
    a_k = v1 * v1 - 4.0 * v2 * v0
    b_k = 2.0 * u1 * v1 - 4.0 * u2 * v0 - 4.0 * v2 * u0
    c_k = u1 * u1 - 4.0 * u2 * u0
    scale = max(abs(x) for x in (*u.coeffs, *v.coeffs)) ** 2 or 1.0
    if abs(a_k) > DEGREE_TOL * scale:
        # B^2 - 4AC expanded so the u1^2 v1^2 terms cancel symbolically
        quarter = (
            (u2 * v0 - v2 * u0) ** 2
            + u2 * u0 * v1 * v1
            + v2 * v0 * u1 * u1
            - u1 * v1 * (u2 * v0 + v2 * u0)
        )
        root = 4.0 * csqrt(quarter)
        return ((-b_k + root) / (2.0 * a_k), (-b_k - root) / (2.0 * a_k))
    if abs(b_k) > DEGREE_TOL * scale:
        k = -c_k / b_k
        return (k, k)
    raise KUnsolvableError("radicand discriminant does not depend on k")


def _perfect_square_root(f):
    """Linear w with w**2 == f for a quadratic f of zero discriminant.

    The overall sign is fixed so that w(0) is the principal root of f(0)
    (or w has the principal root of the leading coefficient when f(0) = 0).
    """
    a0, a1, a2 = f.coeffs
    if abs(a2) >= abs(a0):
        c1 = csqrt(a2)
        c0 = a1 / (2.0 * c1) if c1 != 0 else 0.0
    else:
        c0 = csqrt(a0)
        c1 = a1 / (2.0 * c0)
    w = Poly2(c0, c1, 0.0)
    ref = csqrt(a0)
    if ref != 0:
        if (w.c0 * ref.conjugate()).real < 0:
            w = w.scale(-1.0)
    elif (w.c1 * csqrt(a2).conjugate()).real < 0:
        w = w.scale(-1.0)
    return w


def pi_candidates(problem, k):
    """``[pi_plus, pi_minus]`` for a given k (both signs of the square root)."""
    p = problem.half_gap
    w = _perfect_square_root(problem.radicand(k))
    return [p + w, p - w]


def make_branch(problem, k, pi, k_label="-", sign="-"):
    tau = problem.tau_tilde + pi.scale(2.0)
    return NUBranch(
        k=complex(k),
        pi=pi,
        tau=tau,
        lam=complex(k) + pi.c1,
        tau_slope_negative=tau.c1.real < 0,
        k_label=k_label,
        sign=sign,
    )


def enumerate_branches(problem):
    """All (k, sign) combinations in canonical order.

    ``sign`` refers to pi = (sigma' - tau_tilde)/2 +/- w with w(0) the
    principal root. The order is (k-, +), (k-, -), (k+, +), (k+, -); for the
    Woods-Saxon family the first entry has pi(0) = sqrt(eps) and
    tau' = -(2 + 2 sqrt(eps) + delta) q.
    """
    k_plus, k_minus = solve_k(problem)
    out = []
    for k, k_label in ((k_minus, "-"), (k_plus, "+")):
        pi_p, pi_m = pi_candidates(problem, k)
        out.append(make_branch(problem, k, pi_p, k_label, "+"))
        out.append(make_branch(problem, k, pi_m, k_label, "-"))
    return out


def select_branch(problem, candidates=None):
    """First candidate (canonical order) whose tau has negative real slope.

    ``candidates`` may be a list of ``(k, pi)`` pairs or of NUBranch; it
    defaults to all four combinations.
    """
    if candidates is None:
        branches = enumerate_branches(problem)
    else:
        branches = [
            c if isinstance(c, NUBranch) else make_branch(problem, c[0], c[1])
            for c in candidates
        ]
    for b in branches:
        if b.tau_slope_negative:
            return b
    raise NoAdmissibleBranchError(
        "no candidate gives tau with negative slope",
        slopes=[b.tau_slope for b in branches],
    )


def phi_exponents(branch, sigma):
    """Exponents (e1, e2) with phi ~ (s - s1)**e1 near s1 and (s2 - s)**e2 near s2.

    Both follow from phi'/phi = pi/sigma: e_i = pi(s_i) / sigma'(s_i).
    """
    ds = sigma.deriv()
    return tuple(complex(branch.pi(r) / ds(r)) for r in sigma_roots(sigma))


def branch_for_exponent(problem, nu, mu=None, rtol=1e-8):
    """Branch whose phi factor behaves as s**nu at s = 0.

    With ``mu`` the exponent at the other root of sigma must match too, which
    separates branches that differ only in the sign of the inner square root.
    Remaining ties go to the most negative real tau'; ``tau_slope_negative``
    is reported as computed, not enforced.
    """
    nu = complex(nu)
    branches = enumerate_branches(problem)
    tol = rtol * (1.0 + abs(nu))
    matching = [b for b in branches if abs(b.pi.c0 - nu) <= tol]
    if mu is not None:
        mu = complex(mu)
        matching = [
            b for b in matching
            if abs(phi_exponents(b, problem.sigma)[1] - mu) <= rtol * (1.0 + abs(mu))
        ]
    if not matching:
        raise NoAdmissibleBranchError(
            f"no branch has phi exponents ({nu}, {mu})",
            slopes=[b.tau_slope for b in branches],
        )
    return min(matching, key=lambda b: b.tau_slope.real)


def lambda_quantized(branch, n, sigma):
    """lam_n = -n tau' - n (n - 1) sigma'' / 2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return -n * branch.tau.c1 - 0.5 * n * (n - 1) * (2.0 * sigma.c2)


@dataclass(frozen=True)
class WeightExponents:
    """rho(s) = (s - roots[0])**p * (roots[1] - s)**r with (p, r) = exponents.

    For sigma = s (1 - q s) this is proportional to s**p (1 - q s)**r.
    """

    roots: tuple
    exponents: tuple

    def rho(self, s):
        s = np.asarray(s, dtype=complex)
        (s1, s2), (p, r) = self.roots, self.exponents
        return (s - s1) ** p * (s2 - s) ** r

    def log_derivative(self, s):
        s = np.asarray(s, dtype=complex)
        (s1, s2), (p, r) = self.roots, self.exponents
        return p / (s - s1) + r / (s - s2)


def sigma_roots(sigma):
    if sigma.degree() != 2:
        raise UnsupportedSigmaError("sigma must be a genuine quadratic with two distinct roots")
    a, b, c = sigma.c2, sigma.c1, sigma.c0
    disc = csqrt(b * b - 4.0 * a * c)
    if abs(disc) <= 1e-12 * max(abs(b), abs(csqrt(abs(a * c))), 1e-300):
        raise UnsupportedSigmaError("sigma has a double root")
    # numerically stable pair
    big = -(b + disc) / 2.0 if (b.conjugate() * disc).real >= 0 else -(b - disc) / 2.0
    r1 = big / a
    r2 = c / big if big != 0 else -b / a - r1
    return tuple(sorted((complex(r1), complex(r2)), key=abs))


def pearson_weight_exponents(branch, sigma):
    """Exponents of the weight solving (sigma rho)' = tau rho.

    rho'/rho = (tau - sigma') / sigma is split into partial fractions over
    the two roots of sigma.
    """
    s1, s2 = sigma_roots(sigma)
    ds = sigma.deriv()
    g = branch.tau - ds
    p = g(s1) / ds(s1)
    r = g(s2) / ds(s2)
    return WeightExponents(roots=(s1, s2), exponents=(complex(p), complex(r)))


def pearson_residual(branch, sigma, weights, s_grid):
    """Max over the grid of |(sigma rho)' - tau rho| relative to its largest term."""
    s = np.asarray(s_grid, dtype=complex)
    rho = weights.rho(s)
    t1 = sigma.deriv()(s) * rho
    t2 = sigma(s) * rho * weights.log_derivative(s)
    t3 = branch.tau(s) * rho
    top = np.maximum(np.maximum(abs(t1), abs(t2)), abs(t3))
    return float(np.max(abs(t1 + t2 - t3) / np.where(top > 0, top, 1.0)))


def _falling(x, k):
    out = 1.0 + 0j
    for j in range(k):
        out *= x - j
    return out


def rodrigues_polynomial(n, sigma, weights, b_n=None):
    """y_n = B_n / rho * d^n/ds^n [sigma^n rho] as ascending coefficients.

    Differentiation is done with the Leibniz rule on the factored form, so
    the result is exact up to rounding in the coefficients. ``b_n`` defaults
    to 1/n!, which makes the Woods-Saxon case coincide with
    P_n^{(p, r)}(1 - 2 q s).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_RODRIGUES_DEGREE:
        raise RodriguesDepthError(f"Rodrigues construction limited to n <= {MAX_RODRIGUES_DEGREE}")
    if b_n is None:
        b_n = 1.0 / factorial(n)
    (s1, s2), (p, r) = weights.roots, weights.exponents
    lead = sigma.c2**n * (-1) ** n
    total = np.zeros(n + 1, dtype=complex)
    left = np.array([-s1, 1.0], dtype=complex)  # s - s1
    right = np.array([s2, -1.0], dtype=complex)  # s2 - s
    for k in range(n + 1):
        coef = comb(n, k) * _falling(n + p, k) * _falling(n + r, n - k) * (-1) ** (n - k)
        term = npoly.polymul(npoly.polypow(left, n - k), npoly.polypow(right, k))
        total[: len(term)] += coef * term
    return b_n * lead * total
