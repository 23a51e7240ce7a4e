"""Jacobi-polynomial eigenfunctions, the ODE residual check and normalisation.

An eigenfunction has the shape

    R(s) = D * s**e * (1 - q_w s)**mu * P_n^{(a, b)}(1 - 2 q_arg s)

in the variable s = -exp(-alpha x). Two conventions are offered:

``residual_consistent`` (default)
    e = nu_n = -bracket_n, a = 2 e, b = eta - 1, mu = eta/2, q_w = q_arg = q.
    This is the combination that satisfies the radial equation.
``paper_faithful``
    The closed forms as usually quoted: e = +sqrt(eps_n) and argument 1 - 2s for the
    Hermitian case; for the PT-symmetric case the q -> 1 expression with
    E~_n = bracket at q = 1.

Powers use the principal branch in s. Evaluated as a function of x, the
factor s**e is taken as exp(i pi e) * exp(-e alpha x), which is continuous
in x.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate

from .errors import NoConsistentEigenfunctionError, NonNormalizableError, SingularGridError
from .jacobi import JacobiParams, jacobi_derivatives, jacobi_values
from .nu_core import csqrt
from .ws_model import HERMITIAN, NON_PT, PT_SYMMETRIC, dimensionless

RESIDUAL_CONSISTENT = "residual_consistent"
PAPER_FAITHFUL = "paper_faithful"
MODES = (RESIDUAL_CONSISTENT, PAPER_FAITHFUL)
SINGULAR_GAP = 1e-3


def default_s_grid(q, points=50):
    """Points u = q s spread over [0.05, 0.9], clear of both singular points."""
    return np.linspace(0.05, 0.9, points) / q


def _check_grid(s, q_values):
    s = np.asarray(s, dtype=complex)
    if np.any(abs(s) < SINGULAR_GAP):
        raise SingularGridError("grid comes within 1e-3 of s = 0")
    for q in q_values:
        if np.any(abs(s - 1.0 / q) < SINGULAR_GAP):
            raise SingularGridError(f"grid comes within 1e-3 of s = 1/q = {1.0 / q}")
    return s


def _profile(s, e, mu, q_w, q_arg, jp):
    """R, R', R'' of s**e (1 - q_w s)**mu P(1 - 2 q_arg s) in s."""
    s = np.asarray(s, dtype=complex)
    one = 1.0 - q_w * s
    f = s**e
    g = one**mu
    f1 = e * f / s
    f2 = e * (e - 1.0) * f / (s * s)
    g1 = -q_w * mu * g / one
    g2 = q_w * q_w * mu * (mu - 1.0) * g / (one * one)
    p0, p1, p2 = jacobi_derivatives(jp.n, jp.a_param, jp.b_param, 1.0 - 2.0 * q_arg * s)
    h1 = -2.0 * q_arg * p1
    h2 = 4.0 * q_arg * q_arg * p2
    r0 = f * g * p0
    r1 = f1 * g * p0 + f * g1 * p0 + f * g * h1
    r2 = f2 * g * p0 + f * g2 * p0 + f * g * h2 + 2.0 * (f1 * g1 * p0 + f1 * g * h1 + f * g1 * h1)
    return r0, r1, r2


def _residual_terms(s, r0, r1, r2, eps, beta, gamma, q):
    num = (-eps * q * q + beta * q - gamma) * s * s + (2.0 * eps * q - beta) * s - eps
    t1 = r2
    t2 = r1 / s
    t3 = num / (s * (1.0 - q * s)) ** 2 * r0
    return t1, t2, t3


def _relative(t1, t2, t3):
    top = np.maximum(np.maximum(abs(t1), abs(t2)), abs(t3))
    safe = np.where(top > 0, top, 1.0)
    return np.where(top > 0, abs(t1 + t2 + t3) / safe, 0.0), bool(np.all(top == 0))


def level_residual(n, nu, dims, q, s_grid):
    """Max relative residual of the radial equation for exponent ``nu``."""
    s = _check_grid(s_grid, (q,))
    jp = JacobiParams(n, 2.0 * nu, dims.eta - 1.0)
    r0, r1, r2 = _profile(s, nu, dims.mu, q, q, jp)
    with np.errstate(all="ignore"):
        rel, _ = _relative(*_residual_terms(s, r0, r1, r2, dims.eps, dims.beta, dims.gamma, q))
    value = float(np.max(rel))
    return value if np.isfinite(value) else float("inf")


@dataclass(frozen=True)
class Eigenfunction:
    level: object
    mode: str
    nu: complex
    eta_half: complex
    jacobi: JacobiParams
    q_weight: float
    q_arg: float
    normalization: complex | None = None

    @property
    def scale(self):
        return 1.0 if self.normalization is None else self.normalization

    def with_normalization(self, d):
        return replace(self, normalization=d)

    def __call__(self, s):
        r0, _, _ = _profile(s, self.nu, self.eta_half, self.q_weight, self.q_arg, self.jacobi)
        return self.scale * r0

    def derivatives(self, s):
        r0, r1, r2 = _profile(s, self.nu, self.eta_half, self.q_weight, self.q_arg, self.jacobi)
        return self.scale * r0, self.scale * r1, self.scale * r2

    def at_x(self, x):
        """Value at the physical coordinate x (x = r - R0 for the Hermitian case)."""
        x = np.asarray(x, dtype=float)
        alpha = self.level.params.alpha
        with np.errstate(over="ignore"):
            z = np.exp(-alpha * x)
            if isinstance(alpha, complex):
                log_w = np.log(1.0 + self.q_weight * z)
            else:
                # log(1 + q e^{-alpha x}) without overflowing for alpha x << 0
                t = -alpha * x
                log_w = np.where(t > 0, t + np.log(np.exp(-np.maximum(t, 0)) + self.q_weight),
                                 np.log1p(self.q_weight * np.exp(np.minimum(t, 0))))
            log_pw = 1j * np.pi * self.nu - self.nu * alpha * x + self.eta_half * log_w
            poly = jacobi_values(self.jacobi.n, self.jacobi.a_param, self.jacobi.b_param, 1.0 + 2.0 * self.q_arg * z)
            with np.errstate(divide="ignore"):
                return _exp_split(log_pw + np.log(poly.astype(complex)) + np.log(complex(self.scale)))


def _exp_split(w):
    """exp(w) that gives signed inf (not nan) when |exp(w)| overflows."""
    w = np.asarray(w, dtype=complex)
    mag = np.exp(w.real)
    c, s = np.cos(w.imag), np.sin(w.imag)
    out = np.empty(w.shape, dtype=complex)
    out.real = np.where(c == 0.0, 0.0, mag * c)
    out.imag = np.where(s == 0.0, 0.0, mag * s)
    return out


def _residual_consistent(lv):
    if not lv.admissible:
        raise NoConsistentEigenfunctionError(
            f"level n={lv.n} is not admissible: {', '.join(lv.admissibility_reasons)}"
        )
    d = lv.dims
    return Eigenfunction(
        level=lv, mode=RESIDUAL_CONSISTENT, nu=lv.nu, eta_half=d.mu,
        jacobi=JacobiParams(lv.n, 2.0 * lv.nu, d.eta - 1.0), q_weight=lv.q, q_arg=lv.q,
    )


def assemble_hermitian(lv, mode=RESIDUAL_CONSISTENT):
    if lv.variant != HERMITIAN:
        raise ValueError("assemble_hermitian needs a Hermitian level")
    if mode == RESIDUAL_CONSISTENT:
        return _residual_consistent(lv)
    if mode != PAPER_FAITHFUL:
        raise ValueError(f"unknown mode {mode!r}")
    root = csqrt(lv.eps)
    d = lv.dims
    return Eigenfunction(
        level=lv, mode=PAPER_FAITHFUL, nu=root, eta_half=d.mu,
        jacobi=JacobiParams(lv.n, 2.0 * root, d.eta - 1.0), q_weight=lv.q, q_arg=1.0,
    )


def pt_tilde_energy(lv):
    """E~_n of the PT eigenfunction as usually quoted: the bracket evaluated at q = 1."""
    from .spectrum import bracket_value

    p = replace(lv.params, q=1.0)
    d = dimensionless(p, 0.0)
    return complex(bracket_value(lv.n, d.beta, d.delta, 1.0)), d.delta


def assemble_pt(lv, mode=RESIDUAL_CONSISTENT):
    """Eigenfunction for the imaginary-alpha variants.

    The non-PT level is accepted in ``residual_consistent`` mode only, since
    no closed form is quoted for it.
    """
    if lv.variant not in (PT_SYMMETRIC, NON_PT):
        raise ValueError("assemble_pt needs a non-Hermitian level")
    if mode == RESIDUAL_CONSISTENT:
        return _residual_consistent(lv)
    if mode != PAPER_FAITHFUL:
        raise ValueError(f"unknown mode {mode!r}")
    if lv.variant != PT_SYMMETRIC:
        raise ValueError("paper_faithful mode exists only for the PT-symmetric variant")
    e_tilde, delta1 = pt_tilde_energy(lv)
    return Eigenfunction(
        level=lv, mode=PAPER_FAITHFUL, nu=e_tilde, eta_half=(1.0 + delta1) / 2.0,
        jacobi=JacobiParams(lv.n, 2.0 * e_tilde, delta1), q_weight=1.0, q_arg=1.0,
    )


def assemble(lv, mode=RESIDUAL_CONSISTENT):
    if lv.variant == HERMITIAN:
        return assemble_hermitian(lv, mode)
    return assemble_pt(lv, mode)


@dataclass(frozen=True)
class ResidualReport:
    max: float
    pointwise: np.ndarray
    trivial: bool


def ode_residual(f, s_grid, eps=None):
    """Residual of the radial equation in s for eigenfunction ``f``.

    Each point is scaled by the largest of the three terms R'', R'/s and
    V-term * R; ``eps`` overrides the level's eps (sensitivity checks).
    """
    lv = f.level
    q = lv.q
    s = _check_grid(s_grid, {q, f.q_weight, f.q_arg})
    d = lv.dims
    r0, r1, r2 = f.derivatives(s)
    e = d.eps if eps is None else eps
    with np.errstate(all="ignore"):
        rel, trivial = _relative(*_residual_terms(s, r0, r1, r2, e, d.beta, d.gamma, q))
    rel = np.where(np.isfinite(rel), rel, np.inf)
    return ResidualReport(max=float(np.max(rel)), pointwise=rel, trivial=trivial)


def _decay_diagnostics(func, lo, hi, samples=401, inset=0.01):
    xs = np.linspace(lo, hi, samples)
    mag = np.abs(func(xs))
    peak = float(np.max(mag)) if np.all(np.isfinite(mag)) else float("inf")
    width = hi - lo
    left, right = abs(func(np.array([lo])))[0], abs(func(np.array([hi])))[0]
    left_in = abs(func(np.array([lo + inset * width])))[0]
    right_in = abs(func(np.array([hi - inset * width])))[0]
    return {
        "peak": peak,
        "left": float(left),
        "right": float(right),
        "left_growth": float(left / left_in) if left_in > 0 else float("inf"),
        "right_growth": float(right / right_in) if right_in > 0 else float("inf"),
    }


def normalize_numeric(f, domain, epsrel=1e-10, decay_ratio=1e-4, limit=500):
    """Positive D with integral |D R(x)|^2 dx = 1 over ``domain``.

    ``f`` is an Eigenfunction (evaluated in x, its own normalisation ignored)
    or any callable of x. Both ends must be negligible, |R| <= decay_ratio *
    peak, and not growing outward; otherwise NonNormalizableError.
    """
    func = f.with_normalization(None).at_x if isinstance(f, Eigenfunction) else f
    lo, hi = map(float, domain)
    if not hi > lo:
        raise ValueError("domain must satisfy lo < hi")
    with np.errstate(all="ignore"):
        diag = _decay_diagnostics(func, lo, hi)
    peak = diag["peak"]
    ok = np.isfinite(peak) and peak > 0
    for side in ("left", "right"):
        ok = ok and diag[side] <= decay_ratio * peak and diag[f"{side}_growth"] <= 1.0
    if not ok:
        raise NonNormalizableError("function does not decay at both ends of the domain", diag)

    def density(x):
        return float(abs(func(np.array([x]))[0]) ** 2)

    value, err = integrate.quad(density, lo, hi, epsabs=0.0, epsrel=epsrel, limit=limit)
    if not (value > 0 and np.isfinite(value)) or err > 1e-8 * value:
        diag.update(integral=value, quad_error=err)
        raise NonNormalizableError("quadrature did not reach 1e-8 relative accuracy", diag)
    return 1.0 / np.sqrt(value)
