"""Reference radial solver for the Hermitian potentials.

Solves -hbar^2/2m u'' + [V(r) + hbar^2 l(l+1) / (2m r^2)] u = E u with
Dirichlet conditions at both ends of a uniform grid, using the true
centrifugal term. Two independent discretisations are provided:

* second-order finite differences, eigenvalues of the tridiagonal matrix by
  Sturm-sequence bisection;
* Numerov shooting from both ends, matched through a discrete Wronskian.

Both report Richardson convergence data from successive grid halvings.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import kernels
from .errors import BracketMissError, ConfigError, EmptyComparisonError
from .ws_model import HERMITIAN, potential_real

FD2 = "fd2"
NUMEROV = "numerov"
MIN_STEPS = 100
CSV_HEADER = "n,E_nu,E_numeric,abs_gap,rel_gap,admissible,notes"


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid r_i = r_min + i h, i = 0..n_steps, Dirichlet at both ends."""

    r_min: float
    r_max: float
    n_steps: int

    def __post_init__(self):
        if not (self.r_min >= 0.0 and self.r_max > self.r_min):
            raise ConfigError("grid needs 0 <= r_min < r_max")
        if int(self.n_steps) != self.n_steps or self.n_steps < MIN_STEPS:
            raise ConfigError(f"grid needs an integer number of steps >= {MIN_STEPS}")

    @classmethod
    def from_step(cls, r_min, r_max, h, rtol=1e-9):
        steps = (r_max - r_min) / h
        n = int(round(steps))
        if abs(steps - n) > rtol * max(1.0, steps):
            raise ConfigError(f"(r_max - r_min) / h = {steps} is not an integer")
        return cls(r_min, r_max, n)

    @property
    def h(self):
        return (self.r_max - self.r_min) / self.n_steps

    @property
    def r(self):
        return self.r_min + self.h * np.arange(self.n_steps + 1)

    def halved(self):
        return RadialGrid(self.r_min, self.r_max, 2 * self.n_steps)


def default_grid(p):
    """r in [0, R0 + 40a] with h <= a/20 and at least 2000 steps."""
    r_max = p.R0 + 40.0 * p.a
    return RadialGrid(0.0, r_max, max(2000, math.ceil(r_max / (p.a / 20.0))))


@dataclass(frozen=True)
class NumericLevel:
    index: int
    energy: float
    nodes: int
    error_estimate: float
    ratio: float | None = None

    @property
    def order(self):
        if self.ratio is None or not self.ratio > 0:
            return None
        return math.log2(self.ratio)


@dataclass(frozen=True)
class NumericSpectrum:
    levels: tuple
    grid: RadialGrid
    method: str
    notes: tuple = field(default_factory=tuple)

    @property
    def energies(self):
        return np.array([lv.energy for lv in self.levels])


def _check_hermitian(p):
    if p.variant != HERMITIAN:
        raise ConfigError("the numerical oracle handles the Hermitian variant only")


def effective_potential(r, p, l):
    """V(r) plus the true centrifugal term; infinite at r = 0 when l > 0."""
    r = np.asarray(r, dtype=float)
    v = np.asarray(potential_real(r, p), dtype=float)
    if l == 0:
        return v
    with np.errstate(divide="ignore"):
        return v + p.hbar2_over_2m * l * (l + 1) / (r * r)


def _tridiagonal(p, l, grid):
    r = grid.r[1:-1]
    t = p.hbar2_over_2m / grid.h**2
    d = 2.0 * t + effective_potential(r, p, l)
    off = np.full(len(d) - 1, -t)
    return d, off


def _fd_eigenvalues(p, l, grid, k_levels, backend=None):
    d, off = _tridiagonal(p, l, grid)
    e2 = off * off
    radius = 2.0 * abs(off[0])
    lo, hi = float(d.min() - radius), float(d.max() + radius)
    return d, off, [kernels.bisect_eigenvalue(d, e2, k, lo, hi, backend=backend) for k in range(k_levels)]


def _node_count(d, off, k):
    _, vec = eigh_tridiagonal(d, off, select="i", select_range=(k, k))
    v = vec[:, 0]
    v = v[np.abs(v) > 1e-12 * np.max(np.abs(v))]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def _ratio(e0, e1, e2):
    den = e1 - e2
    return (e0 - e1) / den if den != 0 else None


def fd_spectrum(p, l=0, grid=None, k_levels=5, bound_only=True, backend=None):
    """Lowest ``k_levels`` finite-difference eigenvalues with convergence data.

    The energies are those of ``grid``; the same levels on h/2 and h/4 give
    the Richardson ratio (about 4 for a second-order scheme) and the error
    estimate 4/3 |E_h - E_{h/2}|. With ``bound_only`` the list stops at the
    first level that is not below zero and a ``continuum-reached`` note is
    added.
    """
    _check_hermitian(p)
    if k_levels < 1:
        raise ConfigError("k_levels must be >= 1")
    grid = grid or default_grid(p)
    d, off, e_h = _fd_eigenvalues(p, l, grid, k_levels, backend)
    notes = []
    if bound_only:
        keep = [e for e in e_h if e < 0.0]
        if len(keep) < k_levels:
            notes.append("continuum-reached")
        e_h = keep
    k = len(e_h)
    if k == 0:
        return NumericSpectrum((), grid, FD2, tuple(notes))
    _, _, e_h2 = _fd_eigenvalues(p, l, grid.halved(), k, backend)
    _, _, e_h4 = _fd_eigenvalues(p, l, grid.halved().halved(), k, backend)
    levels = tuple(
        NumericLevel(
            index=i, energy=e_h[i], nodes=_node_count(d, off, i),
            error_estimate=4.0 / 3.0 * abs(e_h[i] - e_h2[i]),
            ratio=_ratio(e_h[i], e_h2[i], e_h4[i]),
        )
        for i in range(k)
    )
    return NumericSpectrum(levels, grid, FD2, tuple(notes))


def _numerov_setup(p, l, grid):
    v = effective_potential(grid.r, p, l)
    v = np.where(np.isfinite(v), v, 0.0)  # only multiplies the Dirichlet zero
    return v / p.hbar2_over_2m


def _matching_index(v_scaled, e_scaled, n):
    allowed = np.nonzero(v_scaled[1:-1] < e_scaled)[0]
    m = int(allowed[-1]) + 1 if allowed.size else n // 2
    return min(max(m, 2), n - 3)


def _wronskian(v_scaled, e_scaled, h, m, n, backend):
    g = e_scaled - v_scaled
    a0, a1, n_out = kernels.numerov_march(g, h, 0, m + 1, backend=backend)
    b1, b0, n_in = kernels.numerov_march(g, h, n, m, backend=backend)
    w = a0 * b1 - a1 * b0
    overlap = 1 if (a0 < 0.0) != (a1 < 0.0) and a0 != 0.0 and a1 != 0.0 else 0
    return w, n_out + n_in - overlap


def _numerov_solve(p, l, grid, bracket, backend=None, maxiter=200):
    lo, hi = map(float, bracket)
    if not hi > lo:
        raise ConfigError("energy bracket must satisfy lo < hi")
    v = _numerov_setup(p, l, grid)
    n = grid.n_steps
    c = p.hbar2_over_2m
    m = _matching_index(v, 0.5 * (lo + hi) / c, n)

    def defect(e):
        return _wronskian(v, e / c, grid.h, m, n, backend)

    w_lo, _ = defect(lo)
    w_hi, _ = defect(hi)
    if w_lo == 0.0:
        return lo, defect(lo)[1]
    if w_hi == 0.0:
        return hi, defect(hi)[1]
    if (w_lo < 0.0) == (w_hi < 0.0):
        raise BracketMissError(f"matching defect has no sign change on [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        w_mid, _ = defect(mid)
        if w_mid == 0.0:
            lo = hi = mid
            break
        if (w_mid < 0.0) == (w_lo < 0.0):
            lo, w_lo = mid, w_mid
        else:
            hi = mid
    e = 0.5 * (lo + hi)
    return e, defect(e)[1]


@dataclass(frozen=True)
class NumerovResult:
    energy: float
    nodes: int
    error_estimate: float
    ratio: float | None

    @property
    def order(self):
        if self.ratio is None or not self.ratio > 0:
            return None
        return math.log2(self.ratio)


def numerov_eigenvalue(p, l=0, grid=None, E_bracket=None, backend=None, convergence=True):
    """Eigenvalue inside ``E_bracket`` by Numerov shooting and bisection.

    The matching point is the outer classical turning point at the bracket
    midpoint. With ``convergence`` the solve is repeated on h/2 and h/4 to
    give the Richardson ratio (about 16) and the estimate 16/15 |E_h - E_{h/2}|.
    A bracket without a sign change of the matching defect raises
    BracketMissError.
    """
    _check_hermitian(p)
    if E_bracket is None:
        raise ConfigError("an energy bracket is required")
    grid = grid or default_grid(p)
    e_h, nodes = _numerov_solve(p, l, grid, E_bracket, backend)
    if not convergence:
        return NumerovResult(e_h, nodes, float("nan"), None)
    e_h2, _ = _numerov_solve(p, l, grid.halved(), E_bracket, backend)
    e_h4, _ = _numerov_solve(p, l, grid.halved().halved(), E_bracket, backend)
    return NumerovResult(e_h, nodes, 16.0 / 15.0 * abs(e_h - e_h2), _ratio(e_h, e_h2, e_h4))


def numerov_spectrum(p, l, grid, reference):
    """Numerov levels bracketed around each level of an fd spectrum."""
    energies = reference.energies
    levels = []
    for i, e in enumerate(energies):
        gaps = [abs(e - energies[j]) for j in (i - 1, i + 1) if 0 <= j < len(energies)]
        half = 0.5 * (min(gaps) if gaps else 0.5 * max(abs(e), 1e-3))
        res = numerov_eigenvalue(p, l, grid, (e - half, e + half))
        levels.append(NumericLevel(i, res.energy, res.nodes, res.error_estimate, res.ratio))
    return NumericSpectrum(tuple(levels), grid, NUMEROV, reference.notes)


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    e_nu: float
    e_numeric: float | None
    abs_gap: float | None
    rel_gap: float | None
    admissible: bool
    notes: tuple


def compare_report(nu_levels, numeric):
    """Pair closed-form levels with numeric ones by quantum number n.

    Numeric level k is the one with k nodes, so it is the partner of n = k.
    Gaps are reported, never judged.
    """
    nu_levels = list(nu_levels)
    num = list(numeric.levels) if numeric is not None else []
    if not nu_levels or not num:
        raise EmptyComparisonError("empty-comparison: both sides need at least one level")
    by_index = {lv.index: lv for lv in num}
    rows = []
    for lv in nu_levels:
        e_nu = complex(lv.energy)
        notes = ["mode=residual_consistent"]
        if e_nu.imag != 0.0:
            notes.append("complex-energy")
        partner = by_index.get(lv.n)
        if partner is None:
            notes.append("no-numeric-partner")
            rows.append(ComparisonRow(lv.n, e_nu.real, None, None, None, lv.admissible, tuple(notes)))
            continue
        gap = abs(e_nu.real - partner.energy)
        scale = abs(partner.energy)
        rel = gap / scale if scale > 0 else (0.0 if gap == 0 else float("inf"))
        rows.append(ComparisonRow(lv.n, e_nu.real, partner.energy, gap, rel, lv.admissible, tuple(notes)))
    return rows


def _fmt(x):
    return "" if x is None else format(x, ".10g")


def report_csv(rows):
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        fields = [
            str(r.n), _fmt(r.e_nu), _fmt(r.e_numeric), _fmt(r.abs_gap), _fmt(r.rel_gap),
            "true" if r.admissible else "false", ";".join(r.notes),
        ]
        buf.write(",".join(fields) + "\n")
    return buf.getvalue()


@dataclass(frozen=True)
class SelfTest:
    method: str
    levels: tuple
    exact: tuple
    rel_errors: tuple
    orders: tuple


def square_well_params():
    """V = 0 in atomic units (hbar = m = 1)."""
    from .ws_model import PotentialParams

    return PotentialParams(V1=0.0, V2=0.0, hbar2_over_2m=0.5)


def square_well_selftest(length=math.pi, n_steps=2000, order_steps=100, levels=3, backend=None):
    """Infinite square well E_k = k^2 pi^2 / (2 L^2) with both methods.

    Accuracy is measured on ``n_steps``; convergence orders on the coarser
    ``order_steps`` family, where Numerov's error still sits well above
    rounding.
    """
    p = square_well_params()
    exact = tuple((k * math.pi / length) ** 2 / 2.0 for k in range(1, levels + 1))
    fine = RadialGrid(0.0, length, n_steps)
    coarse = RadialGrid(0.0, length, order_steps)

    fd = fd_spectrum(p, 0, fine, levels, bound_only=False, backend=backend)
    fd_coarse = fd_spectrum(p, 0, coarse, levels, bound_only=False, backend=backend)
    fd_res = SelfTest(
        FD2, tuple(fd.energies), exact,
        tuple(abs(e - x) / x for e, x in zip(fd.energies, exact)),
        tuple(lv.order for lv in fd_coarse.levels),
    )

    nv_e, nv_orders = [], []
    for x in exact:
        br = (0.8 * x, 1.2 * x)
        nv_e.append(numerov_eigenvalue(p, 0, fine, br, backend=backend, convergence=False).energy)
        nv_orders.append(numerov_eigenvalue(p, 0, coarse, br, backend=backend).order)
    nv_res = SelfTest(
        NUMEROV, tuple(nv_e), exact,
        tuple(abs(e - x) / x for e, x in zip(nv_e, exact)),
        tuple(nv_orders),
    )
    return fd_res, nv_res
