import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsnu import ws_model as wm
from wsnu.errors import ConfigError, PotentialPoleError
from wsnu.ws_model import PotentialParams

NUCLEAR_SET = dict(V1=50.0, V2=10.0, r0=1.285, A=56.0, a=0.65)


class TestParams:
    def test_radius(self):
        p = PotentialParams(**NUCLEAR_SET)
        assert p.R0 == pytest.approx(1.285 * 56 ** (1 / 3))
        assert p.R0 == pytest.approx(4.916, abs=1e-3)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(q=0.5), dict(a=0.0), dict(a=-1.0), dict(r0=0.0), dict(A=-2.0), dict(hbar2_over_2m=0.0),
            dict(V1=-1.0), dict(V2=-0.1), dict(V1=float("nan")), dict(V1="50"), dict(q=True),
            dict(variant="pt_symmetric"), dict(variant="pt_symmetric", alpha_I=0.0),
            dict(variant="non_pt", alpha_I=1.0), dict(variant="other"),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            PotentialParams(**kwargs)

    def test_numpy_scalars_accepted(self):
        p = PotentialParams(V1=np.float64(3.0), q=np.int64(2))
        assert p.q == 2

    def test_alpha(self):
        assert PotentialParams(a=0.5).alpha == 2.0
        pt = PotentialParams(variant="pt_symmetric", alpha_I=3.0)
        assert pt.alpha == 3j
        assert pt.alpha_sq == -9.0

    def test_alternative_alpha(self):
        assert wm.alpha_from_radius(3.0, 2.0) == 2.0


class TestPotential:
    def test_surface_q1(self):
        p = PotentialParams(**NUCLEAR_SET, q=1.0)
        assert wm.potential_real(p.R0, p) == pytest.approx(-22.5, rel=1e-14)

    def test_surface_q3(self):
        p = PotentialParams(**NUCLEAR_SET, q=3.0)
        assert wm.potential_real(p.R0, p) == pytest.approx(-11.875, rel=1e-14)

    @pytest.mark.parametrize("q", [1.0, 3.0, 7.0])
    def test_tail(self, q):
        p = PotentialParams(**NUCLEAR_SET, q=q)
        assert abs(wm.potential_real(p.R0 + 40 * p.a, p)) < 1e-15 * p.V1

    def test_bounded_and_continuous(self):
        p = PotentialParams(**NUCLEAR_SET, q=1.0)
        r = np.linspace(0, 60, 20001)
        v = wm.potential_real(r, p)
        assert np.all(np.isfinite(v))
        assert np.max(abs(np.diff(v))) < 0.1
        assert wm.potential_real(1e4, p) == 0.0

    def test_effective_l0(self):
        p = PotentialParams(**NUCLEAR_SET)
        r = np.linspace(0, 30, 50)
        ref = wm.potential_real(r, PotentialParams(**{**NUCLEAR_SET, "V2": 0.0}))
        assert np.array_equal(wm.effective_potential_l(r, p, 0), ref)

    def test_effective_barrier(self):
        p = PotentialParams(V1=3.0, a=1.0)
        assert wm.effective_params(p, 1).V2 == pytest.approx(1.0)

    @pytest.mark.parametrize("l", range(11))
    def test_gamma_eff(self, l):
        p = wm.effective_params(PotentialParams(V1=3.0, a=0.7, hbar2_over_2m=20.7), l)
        assert wm.dimensionless(p, -1.0).gamma == l * (l + 1)

    def test_gamma_eff_l3(self):
        assert wm.dimensionless(wm.effective_params(PotentialParams(), 3), -1.0).gamma == 12


class TestDimensionless:
    def test_beta(self):
        assert wm.dimensionless(PotentialParams(V1=2.0), -1.0).beta == 4.0

    def test_eps(self):
        assert wm.dimensionless(PotentialParams(), -0.5).eps == 1.0

    def test_gamma0(self):
        d = wm.dimensionless(PotentialParams(V2=0.0), -0.5)
        assert (d.gamma, d.delta, d.eta, d.mu) == (0, 1, 2, 1)

    def test_threshold_flag(self):
        d = wm.dimensionless(PotentialParams(), 0.0)
        assert d.eps == 0 and d.threshold

    def test_hermitian_ranges(self):
        d = wm.dimensionless(PotentialParams(V1=4.0, V2=3.0, q=2.0), -1.5)
        assert d.eps.real > 0 and d.beta.real > 0 and d.gamma.real >= 0
        assert d.delta.real >= 1 and d.eta.real >= 2

    @settings(max_examples=80, deadline=None)
    @given(
        v1=st.floats(0.0, 100), v2=st.floats(0.0, 50), q=st.floats(1.0, 10), a=st.floats(0.1, 5),
        e=st.floats(-100, 100), h=st.floats(0.01, 50),
    )
    def test_round_trip(self, v1, v2, q, a, e, h):
        p = PotentialParams(V1=v1, V2=v2, q=q, a=a, hbar2_over_2m=h)
        d = wm.dimensionless(p, e)
        e2, v1b, v2b = wm.physical_from_dimensionless(d, p)
        for x, y in ((e, e2), (v1, v1b), (v2, v2b)):
            assert abs(x - y) <= 1e-14 * max(abs(x), 1e-300) + 1e-300


class TestComplexVariants:
    def pt(self, **kw):
        return PotentialParams(**{**dict(V1=3.0, V2=1.5, q=2.0, variant="pt_symmetric", alpha_I=1.3), **kw})

    def test_pt_origin(self):
        p = self.pt()
        v = wm.potential_pt(0.0, p)
        assert v == pytest.approx(-3.0 / 3.0 + 1.5 / 9.0, rel=1e-14)
        assert v.imag == 0

    def test_pt_symmetry(self):
        p = self.pt()
        x = np.linspace(-10, 10, 1000)
        v = wm.potential_pt(x, p)
        vr = wm.potential_pt(-x, p)
        assert np.max(abs(np.conj(vr) - v)) <= 1e-12 * np.max(abs(v))

    def test_pt_matches_complex_alpha(self):
        # direct evaluation with z = exp(-i alpha_I x)
        p = self.pt()
        x = np.linspace(-3, 3, 31)
        z = np.exp(-1j * p.alpha_I * x)
        ref = -p.V1 * z / (1 + p.q * z) + p.V2 * z**2 / (1 + p.q * z) ** 2
        assert np.max(abs(wm.potential_pt(x, p) - ref)) <= 1e-13

    def test_pole(self):
        p = self.pt(q=1.0, alpha_I=1.0)
        with pytest.raises(PotentialPoleError) as exc:
            wm.potential_pt(math.pi, p)
        assert exc.value.code == "potential-pole"
        with pytest.raises(PotentialPoleError):
            wm.potential_nonpt(math.pi, PotentialParams(variant="non_pt", alpha_I=1.0, V1I=1.0))

    def test_nonpt_origin(self):
        p = PotentialParams(V2=2.0, q=1.0, variant="non_pt", alpha_I=1.0, V1I=3.0)
        assert wm.potential_nonpt(0.0, p) == pytest.approx(2.0 / 4 - 1j * 3.0 / 2, rel=1e-14)

    def test_nonpt_matches_complex_alpha(self):
        p = PotentialParams(V2=0.7, q=2.0, variant="non_pt", alpha_I=0.8, V1I=1.7)
        x = np.linspace(-3, 3, 31)
        z = np.exp(-1j * p.alpha_I * x)
        ref = -1j * p.V1I * z / (1 + p.q * z) + p.V2 * z**2 / (1 + p.q * z) ** 2
        assert np.max(abs(wm.potential_nonpt(x, p) - ref)) <= 1e-13

    def test_nonpt_reduces_to_pt_form(self):
        base = dict(V2=0.7, q=2.0, alpha_I=0.8)
        x = np.linspace(-3, 3, 31)
        a = wm.potential_nonpt(x, PotentialParams(variant="non_pt", V1I=0.0, **base))
        b = wm.potential_pt(x, PotentialParams(variant="pt_symmetric", V1=0.0, **base))
        assert np.max(abs(a - b)) <= 1e-15

    def test_nonpt_breaks_symmetry(self):
        p = PotentialParams(V2=0.0, q=1.0, variant="non_pt", alpha_I=1.0, V1I=1.0)
        x = 1.0
        witness = abs(np.conj(wm.potential_nonpt(-x, p)) - wm.potential_nonpt(x, p))
        assert witness > 0.1

    def test_dispatch(self):
        p = self.pt()
        assert wm.potential(0.3, p) == wm.potential_pt(0.3, p)
        h = PotentialParams()
        assert wm.potential(2.0, h) == wm.potential_real(2.0, h)
