"""Data for four reference figures, as CSV text.

Figures 1 and 2 are potential curves for a medium-mass nucleus
(V1 = 50 MeV, r0 = 1.285 fm, A = 56, a = 0.65 fm). Figures 3 and 4 are level sequences E_n for n = 0..10 at
three diffuseness values, in atomic units (hbar = m = 1) with the same
numerical V1, V2 and a.
"""

from __future__ import annotations

import io

import numpy as np

from .errors import ConfigError
from .spectrum import enumerate_levels
from .ws_model import ATOMIC_HBAR2_OVER_2M, PotentialParams, potential_real

# figures 1-2 plot V(r) only, so hbar2_over_2m plays no role there
NUCLEAR_SET = dict(V1=50.0, V2=10.0, r0=1.285, A=56.0, a=0.65)
FIG_Q = (1.0, 3.0, 7.0)
FIG_V2 = (10.0, 50.0, 100.0)
FIG_A = (0.65, 0.85, 1.05)
FIG_NMAX = 10
CURVE_POINTS = 401
FIGURE_IDS = (1, 2, 3, 4)


def _fmt(x):
    return format(float(x), ".10g")


def _table(header, columns):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in zip(*columns):
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def radial_grid(p, points=CURVE_POINTS):
    """[0, R0 + 40a] on ``points`` nodes with R0 inserted exactly."""
    r = np.linspace(0.0, p.R0 + 40.0 * p.a, points)
    return np.unique(np.append(r, p.R0))


def _curves(label, values, make):
    base = make(values[0])
    r = radial_grid(base)
    cols = [r] + [potential_real(r, make(v)) for v in values]
    header = ["r"] + [f"V_{label}={v:g}" for v in values]
    return _table(header, cols)


def figure1(**overrides):
    """V(r) for q in {1, 3, 7}."""
    base = {**NUCLEAR_SET, **overrides}
    return _curves("q", FIG_Q, lambda q: PotentialParams(**{**base, "q": q}))


def figure2(**overrides):
    """V(r) for V2 in {10, 50, 100} at q = 1."""
    base = {**NUCLEAR_SET, "q": 1.0, **overrides}
    return _curves("V2", FIG_V2, lambda v2: PotentialParams(**{**base, "V2": v2}))


def _levels(v2, overrides):
    base = {**NUCLEAR_SET, "V2": v2, "q": 1.0, "hbar2_over_2m": ATOMIC_HBAR2_OVER_2M, **overrides}
    n_max = int(base.pop("n_max", FIG_NMAX))
    cols, header = [np.arange(n_max + 1)], ["n"]
    for a in FIG_A:
        levels = enumerate_levels(PotentialParams(**{**base, "a": a}), n_max=n_max)
        cols.append([lv.energy.real for lv in levels])
        header.append(f"E_a={a:g}")
    return _table(header, cols)


def figure3(**overrides):
    """E_n against n for three diffuseness values with V2 = 0."""
    return _levels(0.0, overrides)


def figure4(**overrides):
    """E_n against n for three diffuseness values with V2 = 10, q = 1."""
    return _levels(NUCLEAR_SET["V2"], overrides)


def figure_csv(fig_id, **overrides):
    makers = {1: figure1, 2: figure2, 3: figure3, 4: figure4}
    if fig_id not in makers:
        raise ConfigError(f"unknown figure id {fig_id!r}; expected one of {FIGURE_IDS}")
    return makers[fig_id](**overrides)
