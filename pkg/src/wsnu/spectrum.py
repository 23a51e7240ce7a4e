"""Closed-form energy levels for the four potential variants.

All variants share one formula in dimensionless form,

    bracket_n = (1 + 2n)/2 - (n(n+1) - beta/q) / (1 + 2n + delta),
    eps_n = bracket_n**2,    E_n = -(hbar^2 alpha^2 / 2m) eps_n,

and differ only in what alpha**2 and beta are (see ``ws_model``). The
exponent of s in the eigenfunction that actually solves the equation is
nu_n = -bracket_n.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import ws_model
from .errors import ConfigError
from .nu_core import branch_for_exponent, csqrt, lambda_quantized
from .ws_model import HERMITIAN, NON_PT, PT_SYMMETRIC

RESIDUAL_TOL = 1e-9
MAX_LEVELS = 1000


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    l: int
    variant: str
    energy: complex
    eps: complex
    bracket: complex
    nu: complex
    admissible: bool
    admissibility_reasons: tuple
    dims: ws_model.DimensionlessParams
    params: ws_model.PotentialParams
    residual: float | None = None

    @property
    def q(self):
        return self.params.q


def bracket_value(n, beta, delta, q):
    return (1.0 + 2.0 * n) / 2.0 - (n * (n + 1) - beta / q) / (1.0 + 2.0 * n + delta)


def _raw_level(n, p, l):
    if n < 0:
        raise ValueError("n must be non-negative")
    d0 = ws_model.dimensionless(p, 0.0)
    b = complex(bracket_value(n, d0.beta, d0.delta, p.q))
    eps = b * b
    dims = replace(d0, eps=eps, threshold=False)
    energy = -p.energy_scale * eps
    return b, eps, dims, complex(energy)


def n_bound(p):
    """Upper bound on n for the imaginary-alpha variants (real part is used).

    n < sqrt((V1/q - V2/q^2) / (hbar^2 alpha_I^2 / 2m)) - (1 + delta)/2,
    with V1 -> i V1I for the non-PT case.
    """
    if p.variant == HERMITIAN:
        raise ValueError("the n-bound applies to the non-Hermitian variants")
    d0 = ws_model.dimensionless(p, 0.0)
    inner = (p.depth / p.q - p.V2 / (p.q * p.q)) / (p.hbar2_over_2m * p.alpha_I**2)
    return csqrt(inner) - (1.0 + d0.delta) / 2.0


def _check_variant(p, *allowed):
    if p.variant not in allowed:
        raise ConfigError(f"expected variant in {allowed}, got {p.variant!r}")


def _hermitian_level(n, p, l):
    from .wavefn import default_s_grid, level_residual

    b, eps, dims, energy = _raw_level(n, p, l)
    reasons = []
    if not (eps.imag == 0 and eps.real > 0):
        reasons.append("eps-nonpositive")
    if not (energy.imag == 0 and energy.real < 0):
        reasons.append("energy-nonnegative")
    nu = -b
    res = level_residual(n, nu, dims, p.q, default_s_grid(p.q))
    if not res <= RESIDUAL_TOL:
        reasons.append("residual-unverified")
    return EnergyLevel(
        n=n, l=l, variant=HERMITIAN, energy=energy, eps=eps, bracket=b, nu=nu,
        admissible=not reasons, admissibility_reasons=tuple(reasons),
        dims=dims, params=p, residual=res,
    )


def energy_hermitian_s(n, p):
    """s-wave level of the Hermitian potential (V2 kept as given)."""
    _check_variant(p, HERMITIAN)
    return _hermitian_level(n, p, 0)


def energy_hermitian_l(n, l, p):
    """Level for angular momentum l with the barrier surrogate replacing V2."""
    _check_variant(p, HERMITIAN)
    if l < 0:
        raise ValueError("l must be non-negative")
    return _hermitian_level(n, ws_model.effective_params(p, l), l)


def _complex_alpha_level(n, p):
    b, eps, dims, energy = _raw_level(n, p, 0)
    bound = n_bound(p)
    reasons = [] if n < bound.real else ["above-n-bound"]
    return EnergyLevel(
        n=n, l=0, variant=p.variant, energy=energy, eps=eps, bracket=b, nu=-b,
        admissible=not reasons, admissibility_reasons=tuple(reasons),
        dims=dims, params=p,
    )


def energy_pt(n, p):
    _check_variant(p, PT_SYMMETRIC)
    return _complex_alpha_level(n, p)


def energy_nonpt(n, p):
    _check_variant(p, NON_PT)
    return _complex_alpha_level(n, p)


def level(n, p, l=0):
    if p.variant == HERMITIAN:
        return energy_hermitian_s(n, p) if l == 0 else energy_hermitian_l(n, l, p)
    if l != 0:
        raise ConfigError("non-Hermitian variants are solved for l = 0 only")
    return energy_pt(n, p) if p.variant == PT_SYMMETRIC else energy_nonpt(n, p)


def enumerate_levels(p, l=0, n_max=10):
    """Levels n = 0..n_max in order; inadmissible ones are kept and flagged."""
    if not 0 <= n_max <= MAX_LEVELS:
        raise ConfigError(f"n_max must lie in [0, {MAX_LEVELS}]")
    return [level(n, p, l) for n in range(n_max + 1)]


@dataclass(frozen=True)
class ClosureCheck:
    lam: complex
    lam_n: complex
    rel_error: float
    tau_slope: complex


def lambda_closure(lv):
    """Compare lam = k + pi' with lam_n on the branch carrying s**nu_n (1 - q s)**mu."""
    problem = ws_model.ws_problem(lv.dims, lv.q)
    branch = branch_for_exponent(problem, lv.nu, lv.dims.mu)
    lam_n = lambda_quantized(branch, lv.n, problem.sigma)
    scale = max(abs(branch.k), abs(branch.pi.c1), abs(lam_n), np.finfo(float).tiny)
    return ClosureCheck(
        lam=branch.lam, lam_n=lam_n,
        rel_error=abs(branch.lam - lam_n) / scale,
        tau_slope=branch.tau_slope,
    )
