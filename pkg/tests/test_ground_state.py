import math

import numpy as np
import pytest

from kirchhoff_radial import (
    EmptyGridError,
    FunctionalTriple,
    GroundStateSpec,
    InvalidExponentError,
    InvalidInputError,
    InvalidLambdaError,
    NoBracketError,
    RadialProfile,
    compute_functionals,
    local_identity_report,
    rescale_profile,
    shot_outcome,
    solve_base_profile,
    solve_profile,
)
from kirchhoff_radial.verification import interpolation_rhs, sobolev_constant

from oracles import richardson_beta

# u(0) from the fixed-step RK4 multisection shooter (tests/oracles.py) with
# Richardson extrapolation over h = 2e-3 and 5e-4
RK4_BETA = {
    (3, 3.0): 4.191682954442852,
    (3, 4.0): 4.337387679977242,
    (4, 3.0): 8.671934299988484,
    (5, 2.2): 12.856370937582232,
    (6, 2.2): 22.76672831989341,
    (5, 2.5): 14.77219593002917,
}

PAIRS = [(3, 3.0), (3, 4.0), (4, 3.0), (5, 2.2), (6, 2.2)]


def _rel(x, y):
    return abs(x - y) / abs(y)


class TestSpecValidation:
    @pytest.mark.parametrize("N,p", [(3, 6.0), (3, 7.0), (4, 4.0), (5, 2.0), (3, 1.5)])
    def test_exponent_window(self, N, p):
        with pytest.raises(InvalidExponentError):
            GroundStateSpec(N=N, p=p)

    def test_dimension(self):
        with pytest.raises(InvalidInputError):
            GroundStateSpec(N=2, p=3.0)

    @pytest.mark.parametrize("lam", [0.0, -1.0])
    def test_lambda(self, lam):
        with pytest.raises(InvalidLambdaError):
            GroundStateSpec(N=3, p=3.0, lam=lam)

    def test_shoot_tol_cap(self):
        with pytest.raises(InvalidInputError):
            GroundStateSpec(N=3, p=3.0, shoot_tol=1e-6)

    def test_nonpositive_tolerance(self):
        with pytest.raises(InvalidInputError):
            GroundStateSpec(N=3, p=3.0, ode_rel_tol=0.0)

    def test_base_requires_unit_lambda(self):
        with pytest.raises(InvalidLambdaError):
            solve_base_profile(GroundStateSpec(N=3, p=3.0, lam=2.0))


class TestBaseProfile:
    @pytest.mark.parametrize("N,p", PAIRS)
    def test_profile_invariants(self, base, N, p):
        prof = base(N, p)
        assert prof.r[0] == 0.0 and prof.u[0] == prof.beta and prof.du[0] == 0.0
        assert np.all(np.diff(prof.r) > 0)
        assert np.all(prof.u > 0)
        assert np.all(np.diff(prof.u) < 0)
        assert np.all(prof.du <= 0)
        assert prof.beta > 1.0
        assert prof.u[-1] <= 1e-12

    @pytest.mark.parametrize("N,p", PAIRS)
    def test_local_identities(self, base, N, p):
        rep = local_identity_report(base(N, p))
        assert abs(rep.nehari) < 1e-6 and abs(rep.pohozaev) < 1e-6
        assert rep.passed

    def test_nehari_3_4(self, base):
        f = base(3, 4.0).functionals
        assert abs(f.A + f.C - f.B) / f.B < 1e-6

    def test_pohozaev_5_22(self, base):
        f = base(5, 2.2).functionals
        assert abs(3 / 10 * f.A + f.C / 2 - f.B / 2.2) / f.B < 1e-6

    @pytest.mark.parametrize("N,p", sorted(RK4_BETA))
    def test_beta_against_frozen_oracle(self, base, N, p):
        assert _rel(base(N, p).beta, RK4_BETA[(N, p)]) < 1e-8

    def test_beta_against_live_oracle(self, base):
        beta, _, _ = richardson_beta(3, 4.0, h=4e-3)
        assert _rel(base(3, 4.0).beta, beta) < 1e-8

    @pytest.mark.parametrize("N,p", PAIRS)
    def test_bracket_endpoints_shoot_apart(self, base, N, p):
        prof = base(N, p)
        spec = GroundStateSpec(N=N, p=p)
        lo, hi = prof.beta_bracket
        assert lo < prof.beta < hi
        assert (hi - lo) / hi < spec.shoot_tol
        assert shot_outcome(spec, hi) == "overshoot"
        assert shot_outcome(spec, lo) == "undershoot"
        assert shot_outcome(spec, prof.beta * 1.01) == "overshoot"
        assert shot_outcome(spec, prof.beta * 0.99) == "undershoot"

    def test_refinement_within_error_estimate(self, base):
        coarse = base(3, 4.0)
        fine = base(3, 4.0, 5e-11)
        for k in "ABC":
            change = _rel(getattr(coarse.functionals, k), getattr(fine.functionals, k))
            assert change < 10 * coarse.error_estimate

    def test_rk45_path(self):
        prof = solve_base_profile(GroundStateSpec(N=3, p=4.0, method="RK45"))
        assert _rel(prof.beta, RK4_BETA[(3, 4.0)]) < 1e-8
        assert local_identity_report(prof).passed

    def test_no_bracket(self):
        spec = GroundStateSpec(N=3, p=2.1, max_doublings=1)
        with pytest.raises(NoBracketError):
            solve_base_profile(spec)

    @pytest.mark.parametrize("N,p", PAIRS)
    def test_interpolation_inequality(self, base, N, p):
        f = base(N, p).functionals
        assert f.B <= interpolation_rhs(f, sobolev_constant(N).S_value)


class TestRescale:
    def test_identity(self, base):
        b = base(3, 4.0)
        assert rescale_profile(b, 1.0) is b

    def test_invalid(self, base):
        with pytest.raises(InvalidLambdaError):
            rescale_profile(base(3, 4.0), 0.0)

    def test_gradient_doubles_at_four(self, base):
        b = base(3, 4.0)
        r = rescale_profile(b, 4.0)
        assert _rel(r.functionals.A, 2 * b.functionals.A) < 1e-12
        assert _rel(r.functionals.B, 2 * b.functionals.B) < 1e-12
        assert _rel(r.functionals.C, 0.5 * b.functionals.C) < 1e-12
        assert r.beta == pytest.approx(2 * b.beta, rel=1e-15)

    def test_pointwise_law(self, base):
        b = base(5, 2.5)
        lam = 2.0
        r = rescale_profile(b, lam)
        x = np.linspace(0, 10, 37)
        np.testing.assert_allclose(r(x), lam ** (1 / 0.5) * b(math.sqrt(lam) * x), rtol=1e-13, atol=1e-300)

    def test_against_direct_shoot(self, base):
        b = base(5, 2.5)
        direct = solve_profile(GroundStateSpec(N=5, p=2.5, lam=2.0))
        r = rescale_profile(b, 2.0)
        for k in "ABC":
            assert _rel(getattr(r.functionals, k), getattr(direct.functionals, k)) < 1e-5
        assert _rel(r.beta, direct.beta) < 1e-8

    @pytest.mark.parametrize("lam", [0.25, 3.0, 10.0])
    def test_quadrature_commutes(self, base, lam):
        r = rescale_profile(base(4, 3.0), lam)
        q = compute_functionals(r)
        for k in "ABC":
            assert _rel(getattr(q, k), getattr(r.functionals, k)) < 1e-8


class TestFunctionals:
    def test_accumulated_vs_simpson(self, base):
        prof = base(4, 3.0)
        q = compute_functionals(prof)
        for k in "ABC":
            assert _rel(getattr(q, k), getattr(prof.functionals, k)) < 1e-8

    def test_accumulated_vs_subsampled_simpson(self, base):
        from scipy.integrate import simpson

        prof = base(4, 3.0)
        r, u, du = prof.r[::2], prof.u[::2], prof.du[::2]
        w = 2 * math.pi**2 * r**3
        A = simpson(w * du * du, x=r)
        B = simpson(w * u**3, x=r)
        C = simpson(w * u * u, x=r)
        f = prof.functionals
        assert _rel(A, f.A) < 1e-8 and _rel(B, f.B) < 1e-8 and _rel(C, f.C) < 1e-8

    def test_frozen_values_4_3(self, base):
        f = base(4, 3.0).functionals
        assert _rel(f.A, 817.7137733729908) < 1e-8

    def test_dilation_identity(self, base):
        prof = base(3, 4.0)
        assert prof.functionals.dilated(1.0) == prof.functionals

    def test_dilation_by_two(self, base):
        prof = base(3, 4.0)
        q0 = compute_functionals(prof)
        q2 = compute_functionals(prof.dilate(2.0))
        assert _rel(q2.A, q0.A / 2) < 1e-12
        assert _rel(q2.B, q0.B / 8) < 1e-12
        assert _rel(q2.C, q0.C / 8) < 1e-12
        d = prof.functionals.dilated(2.0)
        assert (d.A, d.B, d.C) == (prof.functionals.A / 2, prof.functionals.B / 8, prof.functionals.C / 8)

    def test_resampled_dilation(self, base):
        # u(2r) sampled on a fresh grid, not the divided one
        prof = base(3, 4.0)
        h = 1e-3
        r = np.arange(0, prof.r_max / 2 + h / 2, h)
        up = prof(2 * r)
        dup = np.gradient(up, h, edge_order=2)
        dup[0] = 0.0
        q = RadialProfile(3, 4.0, 1.0, prof.beta, r, up, dup).functionals
        assert _rel(q.B, prof.functionals.B / 8) < 1e-8
        assert _rel(q.C, prof.functionals.C / 8) < 1e-8
        assert _rel(q.A, prof.functionals.A / 2) < 1e-5

    def test_empty_grid(self):
        with pytest.raises(EmptyGridError):
            RadialProfile(3, 4.0, 1.0, 1.0, np.array([0.0]), np.array([1.0]), np.array([0.0]))

    def test_negative_triple_rejected(self):
        with pytest.raises(InvalidInputError):
            FunctionalTriple(-1.0, 1.0, 1.0, 3, 4.0)


class TestIdentityReport:
    def test_amplitude_perturbation(self, base):
        prof = base(3, 4.0).scale(1.01)
        rep = local_identity_report(prof)
        expected = (1.01**2 - 1.01**4) / 1.01**4
        assert rep.nehari == pytest.approx(expected, abs=1e-9)
        assert not rep.passed

    def test_truncation_grows_residuals(self, base):
        prof = base(3, 4.0)
        full = local_identity_report(prof, compute_functionals(prof))
        cut = local_identity_report(prof.truncate(prof.r_max / 2))
        assert abs(cut.nehari) > abs(full.nehari)
        assert abs(cut.pohozaev) > abs(full.pohozaev)
        cut4 = local_identity_report(prof.truncate(prof.r_max / 4))
        assert abs(cut4.nehari) > abs(cut.nehari)

    def test_tail_evaluation(self, base):
        prof = base(3, 4.0)
        x = prof.r_max + np.array([0.0, 1.0, 2.0])
        v = prof(x)
        assert v[0] == pytest.approx(prof.u[-1], rel=1e-12)
        assert v[1] == pytest.approx(prof.u[-1] * math.exp(-1.0), rel=1e-12)
