import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsnu import nu_core
from wsnu.errors import KUnsolvableError, NoAdmissibleBranchError, RodriguesDepthError, UnsupportedSigmaError
from wsnu.nu_core import NUProblem, Poly2
from wsnu.ws_model import DimensionlessParams, ws_problem


def ws(eps, beta, gamma, q):
    delta = math.sqrt(1 + 4 * gamma / q**2)
    d = DimensionlessParams(eps, beta, gamma, delta, 1 + delta, (1 + delta) / 2)
    return ws_problem(d, q), delta


EPS0 = (0.5 + 1 / (1 + math.sqrt(5))) ** 2  # ground state at beta = gamma = q = 1


class TestPoly2:
    def test_degree_tolerance(self):
        assert Poly2(1, 2, 3).degree() == 2
        assert Poly2(1, 2, 1e-17).degree() == 1
        assert Poly2(0, 0, 0).degree() == -1
        assert Poly2(5, 0, 0).degree() == 0

    def test_arithmetic(self):
        p = Poly2(1, 2, 3)
        assert (p + p).coeffs == (2, 4, 6)
        assert (p - p).is_zero()
        assert p.deriv().coeffs == (2, 6, 0)
        assert p(2.0) == 1 + 4 + 12

    def test_problem_validation(self):
        with pytest.raises(ValueError):
            NUProblem(Poly2(0, 0, 0), Poly2(1, 0, 0), Poly2(1, 0, 0))
        with pytest.raises(ValueError):
            NUProblem(Poly2(0, 1, -1), Poly2(1, 0, 0), Poly2(1, 0, 1))


class TestSolveK:
    def test_example_beta1_gamma0(self):
        prob, _ = ws(0.25, 1.0, 0.0, 1.0)
        assert sorted(np.real(nu_core.solve_k(prob))) == pytest.approx([-1.5, -0.5], abs=1e-13)

    @pytest.mark.parametrize("beta", [0.3, 1.0, 7.0])
    def test_threshold_double_root(self, beta):
        prob, _ = ws(0.0, beta, 0.5, 2.0)
        kp, km = nu_core.solve_k(prob)
        assert kp == pytest.approx(-beta, abs=1e-13)
        assert km == pytest.approx(-beta, abs=1e-13)

    def test_example_golden_ratio(self):
        prob, _ = ws(0.6545085, 1.0, 1.0, 1.0)
        kp, km = nu_core.solve_k(prob)
        assert kp.real == pytest.approx(-1 + math.sqrt(5 * 0.6545085), abs=1e-12)
        assert km.real == pytest.approx(-1 - math.sqrt(5 * 0.6545085), abs=1e-12)
        assert kp.real == pytest.approx(0.8090170, abs=1e-7)
        assert km.real == pytest.approx(-2.8090170, abs=1e-7)

    def test_unsolvable(self):
        # sigma constant and sigma_tilde linear: the radicand's discriminant ignores k
        prob = NUProblem(Poly2(1, 0, 0), Poly2(0, 1, 0), Poly2(0, 0, 0))
        with pytest.raises(KUnsolvableError) as exc:
            nu_core.solve_k(prob)
        assert exc.value.code == "k-unsolvable"

    @settings(max_examples=60, deadline=None)
    @given(
        eps=st.floats(0.01, 50), beta=st.floats(0.0, 80), gamma=st.floats(0.0, 20), q=st.floats(1.0, 6.0)
    )
    def test_discriminant_vanishes(self, eps, beta, gamma, q):
        prob, _ = ws(eps, beta, gamma, q)
        for k in nu_core.solve_k(prob):
            f = prob.radicand(k)
            scale = max(abs(c) for c in f.coeffs) ** 2
            assert abs(f.c1**2 - 4 * f.c2 * f.c0) <= 1e-11 * scale


class TestBranches:
    def test_pi_candidates_square_back(self):
        prob, _ = ws(0.6545085, 1.0, 1.0, 1.0)
        for k in nu_core.solve_k(prob):
            half = prob.half_gap
            for pi in nu_core.pi_candidates(prob, k):
                w = pi - half
                sq = Poly2(w.c0 * w.c0, 2 * w.c0 * w.c1, w.c1 * w.c1)
                r = prob.radicand(k)
                assert all(abs(a - b) <= 1e-12 * max(1, abs(b)) for a, b in zip(sq.coeffs, r.coeffs))

    def test_k_minus_branch_matches_closed_form(self):
        eps, q = 0.6545085, 1.0
        prob, delta = ws(eps, 1.0, 1.0, q)
        b = nu_core.enumerate_branches(prob)[0]
        root = math.sqrt(eps)
        # pi(s) = -q s / 2 - [(2 sqrt(eps) + delta) q s - 2 sqrt(eps)] / 2
        assert b.pi.c0 == pytest.approx(root, abs=1e-12)
        assert b.pi.c1 == pytest.approx(-q / 2 - (2 * root + delta) * q / 2, abs=1e-12)

    def test_k_plus_branches(self):
        eps, q = 0.6545085, 1.0
        prob, delta = ws(eps, 1.0, 1.0, q)
        root = math.sqrt(eps)
        slopes = sorted(b.pi.c1.real for b in nu_core.enumerate_branches(prob)[2:])
        expect = sorted([-q / 2 + s * ((2 * root - delta) * q) / 2 for s in (1, -1)])
        assert slopes == pytest.approx(expect, abs=1e-12)

    def test_zero_source(self):
        prob = NUProblem(Poly2(0, 1, 0), Poly2(0, 0, 0), Poly2(1, 0, 0))
        cands = nu_core.pi_candidates(prob, 0.0)
        assert all(c.is_zero() for c in cands)

    def test_select_branch_slope(self):
        eps, q = 0.6545085, 1.0
        prob, delta = ws(eps, 1.0, 1.0, q)
        b = nu_core.select_branch(prob)
        assert b.tau_slope_negative
        assert b.tau_slope.real == pytest.approx(-(2 + 2 * math.sqrt(eps) + delta) * q, abs=1e-12)

    def test_select_branch_none(self):
        prob, _ = ws(0.6545085, 1.0, 1.0, 1.0)
        rising = Poly2(0.0, 3.0, 0.0)
        with pytest.raises(NoAdmissibleBranchError) as exc:
            nu_core.select_branch(prob, [(0.0, rising), (1.0, rising.scale(2.0))])
        assert exc.value.code == "no-admissible-branch"
        assert [s.real for s in exc.value.slopes] == [5.0, 11.0]

    def test_branch_identities(self):
        prob, _ = ws(2.0, 3.0, 1.5, 2.0)
        for b in nu_core.enumerate_branches(prob):
            tau = prob.tau_tilde + b.pi.scale(2.0)
            assert tau.coeffs == b.tau.coeffs
            assert b.lam == b.k + b.pi.c1

    def test_pt_selected_branch_lambda(self):
        # complex eps from a PT level: the canonical branch has k = -beta - q delta sqrt(eps)
        # and lam = k + pi' with pi' = -q/2 - (2 sqrt(eps) + delta) q / 2
        from wsnu import spectrum
        from wsnu.ws_model import PotentialParams

        q = 1.0
        p = PotentialParams(V1=5.0, V2=0.5, q=q, variant="pt_symmetric", alpha_I=1.0)  # above threshold
        lv = spectrum.energy_pt(0, p)
        prob = ws_problem(lv.dims, q)
        b = nu_core.select_branch(prob)
        root = nu_core.csqrt(lv.eps)
        d = lv.dims
        assert abs(root.imag) > 0
        assert b.k == pytest.approx(-d.beta - q * d.delta * root, rel=1e-12)
        expect = -d.beta - q * d.delta * root - q / 2 - (2 * root + d.delta) * q / 2
        assert b.lam == pytest.approx(expect, rel=1e-12)


class TestQuantization:
    def test_lambda0(self):
        prob, _ = ws(EPS0, 1.0, 1.0, 1.0)
        b = nu_core.select_branch(prob)
        assert nu_core.lambda_quantized(b, 0, prob.sigma) == 0

    def test_lambda1_example(self):
        prob, delta = ws(0.6545085, 1.0, 1.0, 1.0)
        b = nu_core.enumerate_branches(prob)[0]
        lam1 = nu_core.lambda_quantized(b, 1, prob.sigma)
        assert lam1.real == pytest.approx(2 + 2 * math.sqrt(0.6545085) + delta, abs=1e-12)
        assert lam1.real == pytest.approx(5.8541020, abs=1e-6)

    def test_negative_n(self):
        prob, _ = ws(EPS0, 1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            nu_core.lambda_quantized(nu_core.select_branch(prob), -1, prob.sigma)


class TestWeights:
    def test_ws_exponents(self):
        eps, q = 0.6545085, 1.0
        prob, delta = ws(eps, 1.0, 1.0, q)
        b = nu_core.enumerate_branches(prob)[0]
        w = nu_core.pearson_weight_exponents(b, prob.sigma)
        assert w.exponents[0] == pytest.approx(2 * math.sqrt(eps), abs=1e-12)
        assert w.exponents[1] == pytest.approx(delta, abs=1e-12)  # eta - 1

    def test_gamma0_r_exponent(self):
        prob, _ = ws(0.7, 2.0, 0.0, 1.0)
        w = nu_core.pearson_weight_exponents(nu_core.enumerate_branches(prob)[0], prob.sigma)
        assert w.exponents[1] == pytest.approx(1.0, abs=1e-12)

    def test_pearson_residual_complex(self):
        eps = (0.3 + 1.1j) ** 2
        d = DimensionlessParams(eps, -4.0 + 0j, 0.5 + 0j, 1.2j, 1 + 1.2j, (1 + 1.2j) / 2)
        prob = ws_problem(d, 1.5)
        b = nu_core.enumerate_branches(prob)[0]
        w = nu_core.pearson_weight_exponents(b, prob.sigma)
        assert abs(w.exponents[0].imag) > 0
        grid = np.linspace(0.05, 0.9, 50) / 1.5
        assert nu_core.pearson_residual(b, prob.sigma, w, grid) <= 1e-10

    def test_double_root(self):
        with pytest.raises(UnsupportedSigmaError):
            nu_core.sigma_roots(Poly2(1.0, -2.0, 1.0))
        with pytest.raises(UnsupportedSigmaError):
            nu_core.sigma_roots(Poly2(0.0, 1.0, 0.0))


class TestRodrigues:
    sigma = Poly2(0.0, 1.0, -1.0)

    def w(self, p, r):
        return nu_core.WeightExponents(roots=(0.0, 1.0), exponents=(p, r))

    def test_n0(self):
        assert nu_core.rodrigues_polynomial(0, self.sigma, self.w(0.3, 2.0)) == pytest.approx([1.0])

    def test_n1_jacobi(self):
        a, b = 1.3, 2.2
        c = nu_core.rodrigues_polynomial(1, self.sigma, self.w(a, b))
        # P_1^{(a,b)}(1 - 2s) = (a + 1) - (a + b + 2) s
        assert c == pytest.approx([a + 1, -(a + b + 2)], abs=1e-13)

    def test_n2_shifted_legendre(self):
        c = nu_core.rodrigues_polynomial(2, self.sigma, self.w(0.0, 0.0))
        assert c == pytest.approx([1.0, -6.0, 6.0], abs=1e-13)

    def test_depth_limit(self):
        nu_core.rodrigues_polynomial(12, self.sigma, self.w(0.5, 0.5))
        with pytest.raises(RodriguesDepthError):
            nu_core.rodrigues_polynomial(13, self.sigma, self.w(0.5, 0.5))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_root_count(self, n):
        c = nu_core.rodrigues_polynomial(n, self.sigma, self.w(1.618, 1.0))
        assert abs(c[-1]) > 0
        roots = np.roots(c[::-1])
        assert len(roots) == n
        # classical parameters: all roots real, inside (0, 1)
        assert np.all(abs(roots.imag) < 1e-8)
        assert np.all((roots.real > 0) & (roots.real < 1))

    def test_general_q(self):
        q = 2.5
        sig = Poly2(0.0, 1.0, -q)
        roots = nu_core.sigma_roots(sig)
        w = nu_core.WeightExponents(roots=roots, exponents=(0.7, 1.4))
        c = nu_core.rodrigues_polynomial(3, sig, w)
        from wsnu.jacobi import jacobi_values

        s = np.linspace(0.02, 0.38, 9)
        got = np.polynomial.polynomial.polyval(s, c)
        ref = jacobi_values(3, 0.7, 1.4, 1 - 2 * q * s)
        assert np.max(abs(got - ref)) <= 1e-12 * np.max(abs(ref))


def test_branch_for_exponent_sign_pair():
    # above the PT threshold delta is imaginary; the second phi exponent picks the sign
    # gamma chosen so that delta = sqrt(1 + 4 gamma) = 1.5i
    d = DimensionlessParams((1.0 - 2.0j) ** 2, -6.0 + 0j, -0.8125 + 0j, 1.5j, 1 + 1.5j, (1 + 1.5j) / 2)
    prob = ws_problem(d, 1.0)
    nu = -(1.0 - 2.0j)
    picked = {nu_core.phi_exponents(b, prob.sigma)[1] for b in nu_core.enumerate_branches(prob) if abs(b.pi.c0 - nu) < 1e-9}
    assert len(picked) == 2
    b = nu_core.branch_for_exponent(prob, nu, d.mu)
    assert nu_core.phi_exponents(b, prob.sigma)[1] == pytest.approx(d.mu, abs=1e-12)
    with pytest.raises(NoAdmissibleBranchError):
        nu_core.branch_for_exponent(prob, 123.0)
