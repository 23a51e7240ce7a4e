"""Generalized Woods-Saxon potential family and its dimensionless reduction.

    V(r) = -V1 z / (1 + q z) + V2 z**2 / (1 + q z)**2,   z = exp(-(r - R0) / a)

with R0 = r0 * A**(1/3). Energies are in whatever unit ``hbar2_over_2m`` is
expressed in (e.g. MeV with lengths in fm), or Hartree-like atomic units
where hbar = m = 1 and ``hbar2_over_2m = 0.5``.

The non-Hermitian variants replace alpha = 1/a by i*alpha_I (PT-symmetric),
and additionally V1 by i*V1I (non-PT). Both are handled by carrying
``alpha**2`` as a signed real number.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, PotentialPoleError
from .nu_core import NUProblem, Poly2, csqrt

HERMITIAN = "hermitian"
PT_SYMMETRIC = "pt_symmetric"
NON_PT = "non_pt"
VARIANTS = (HERMITIAN, PT_SYMMETRIC, NON_PT)

ATOMIC_HBAR2_OVER_2M = 0.5
POLE_RTOL = 1e-12


@dataclass(frozen=True)
class PotentialParams:
    """Physical parameters of the potential plus the variant selector.

    ``barrier_l`` is set only on parameter sets produced by
    :func:`effective_params`; it records that V2 is the centrifugal surrogate
    l(l+1) hbar^2 alpha^2 / 2m, so the dimensionless barrier is exactly l(l+1).
    """

    V1: float = 50.0
    V2: float = 0.0
    q: float = 1.0
    a: float = 1.0
    r0: float = 1.0
    A: float = 1.0
    hbar2_over_2m: float = ATOMIC_HBAR2_OVER_2M
    variant: str = HERMITIAN
    alpha_I: float | None = None
    V1I: float | None = None
    barrier_l: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}")
        for name in ("V1", "V2", "q", "a", "r0", "A", "hbar2_over_2m"):
            val = getattr(self, name)
            if isinstance(val, bool) or not isinstance(val, numbers.Real) or not math.isfinite(val):
                raise ConfigError(f"{name} must be a finite real number, got {val!r}")
        if self.q < 1.0:
            raise ConfigError(f"deformation q must be >= 1, got {self.q}")
        if self.a <= 0.0:
            raise ConfigError(f"diffuseness a must be > 0, got {self.a}")
        if self.r0 <= 0.0 or self.A <= 0.0:
            raise ConfigError("r0 and A must be > 0")
        if self.hbar2_over_2m <= 0.0:
            raise ConfigError("hbar2_over_2m must be > 0")
        if self.V1 < 0.0 or self.V2 < 0.0:
            raise ConfigError("V1 and V2 must be >= 0")
        if self.variant != HERMITIAN:
            if self.alpha_I is None or not self.alpha_I > 0.0:
                raise ConfigError("non-Hermitian variants need alpha_I > 0")
        if self.variant == NON_PT and (self.V1I is None or not math.isfinite(self.V1I)):
            raise ConfigError("non-PT variant needs a finite V1I")
        if self.barrier_l is not None and self.barrier_l < 0:
            raise ConfigError("barrier_l must be >= 0")

    @classmethod
    def atomic(cls, **kwargs):
        return cls(hbar2_over_2m=ATOMIC_HBAR2_OVER_2M, **kwargs)

    @classmethod
    def from_dimensionless(cls, beta, gamma, q, *, a=1.0, hbar2_over_2m=ATOMIC_HBAR2_OVER_2M, **kwargs):
        """Hermitian parameters that reproduce the given (beta, gamma, q)."""
        scale = hbar2_over_2m / (a * a)
        return cls(V1=beta * scale, V2=gamma * scale, q=q, a=a, hbar2_over_2m=hbar2_over_2m, **kwargs)

    @property
    def R0(self):
        return self.r0 * self.A ** (1.0 / 3.0)

    @property
    def alpha(self):
        """1/a for the Hermitian variant, i*alpha_I otherwise."""
        if self.variant == HERMITIAN:
            return 1.0 / self.a
        return 1j * self.alpha_I

    @property
    def alpha_sq(self):
        if self.variant == HERMITIAN:
            return 1.0 / (self.a * self.a)
        return -self.alpha_I * self.alpha_I

    @property
    def energy_scale(self):
        """hbar^2 alpha^2 / 2m; negative for the imaginary-alpha variants."""
        return self.hbar2_over_2m * self.alpha_sq

    @property
    def depth(self):
        """Effective V1 entering beta (i*V1I for the non-PT variant)."""
        return 1j * self.V1I if self.variant == NON_PT else self.V1


def alpha_from_radius(q, R0):
    """Alternative inverse length (q + 1) / R0; not used by the solvers."""
    return (q + 1.0) / R0


@dataclass(frozen=True)
class DimensionlessParams:
    eps: complex
    beta: complex
    gamma: complex
    delta: complex
    eta: complex
    mu: complex
    threshold: bool = False


def dimensionless(p, E):
    """Map (parameters, energy) to eps, beta, gamma, delta = sqrt(1 + 4 gamma/q^2), eta, mu."""
    c = p.energy_scale
    eps = complex(-E / c)
    beta = complex(p.depth / c)
    if p.barrier_l is not None:
        gamma = complex(p.barrier_l * (p.barrier_l + 1))
    else:
        gamma = complex(p.V2 / c)
    delta = csqrt(1.0 + 4.0 * gamma / (p.q * p.q))
    eta = 1.0 + delta
    return DimensionlessParams(
        eps=eps, beta=beta, gamma=gamma, delta=delta, eta=eta, mu=eta / 2.0,
        threshold=(E == 0),
    )


def physical_from_dimensionless(d, p):
    """Inverse of :func:`dimensionless`: returns ``(E, V1_eff, V2)``."""
    c = p.energy_scale
    return -d.eps * c, d.beta * c, d.gamma * c


def ws_problem(d, q):
    """sigma, sigma_tilde, tau_tilde of the Woods-Saxon equation in s = -exp(-alpha x)."""
    eps, beta, gamma = d.eps, d.beta, d.gamma
    return NUProblem(
        sigma=Poly2(0.0, 1.0, -q),
        sigma_tilde=Poly2(-eps, 2.0 * eps * q - beta, -eps * q * q + beta * q - gamma),
        tau_tilde=Poly2(1.0, -q, 0.0),
    )


def effective_params(p, l):
    """Replace V2 by the centrifugal surrogate l(l+1) hbar^2 alpha^2 / 2m."""
    if l < 0:
        raise ValueError("l must be non-negative")
    return replace(p, V2=l * (l + 1) * p.energy_scale, barrier_l=int(l))


def _shape(r, p):
    x = np.asarray(r, dtype=float) - p.R0
    with np.errstate(over="ignore"):
        return 1.0 / (np.exp(x / p.a) + p.q)


def potential_real(r, p):
    """Hermitian potential at radius ``r`` (scalar or array)."""
    w = _shape(r, p)
    out = -p.V1 * w + p.V2 * w * w
    return float(out) if np.ndim(out) == 0 else out


def effective_potential_l(r, p, l):
    return potential_real(r, effective_params(p, l))


def _complex_shape(x, p):
    theta = p.alpha_I * np.asarray(x, dtype=float)
    den = 1.0 + p.q * p.q + 2.0 * p.q * np.cos(theta)
    if np.any(den <= POLE_RTOL * (1.0 + p.q * p.q)):
        raise PotentialPoleError("grid hits a pole: 1 + q^2 + 2 q cos(alpha_I x) = 0")
    return theta, den


def potential_pt(x, p):
    """PT-symmetric potential obtained with alpha -> i alpha_I."""
    if p.alpha_I is None:
        raise ConfigError("alpha_I is required")
    theta, den = _complex_shape(x, p)
    w = (p.q + np.cos(theta) - 1j * np.sin(theta)) / den
    out = -p.V1 * w + p.V2 * w * w
    return complex(out) if np.ndim(out) == 0 else out


def potential_nonpt(x, p):
    """Non-PT variant: additionally V1 -> i V1I."""
    if p.alpha_I is None or p.V1I is None:
        raise ConfigError("alpha_I and V1I are required")
    theta, den = _complex_shape(x, p)
    w = (p.q + np.cos(theta) - 1j * np.sin(theta)) / den
    first = (np.sin(theta) + 1j * (p.q + np.cos(theta))) / den
    out = -p.V1I * first + p.V2 * w * w
    return complex(out) if np.ndim(out) == 0 else out


def potential(x, p):
    """Dispatch on the variant; ``x`` is r for the Hermitian case, r - R0 otherwise."""
    if p.variant == HERMITIAN:
        return potential_real(x, p)
    if p.variant == PT_SYMMETRIC:
        return potential_pt(x, p)
    return potential_nonpt(x, p)
