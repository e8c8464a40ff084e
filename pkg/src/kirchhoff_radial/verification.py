"""Independent checks on constructed solutions and on the fibering algebra.

The routines here deliberately avoid the code paths they certify: the PDE
residual uses finite differences of the sampled profile, the root counter is a
brute-force sign scan, and the derivative checks difference the fibering maps
numerically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DimensionTooLowError, GridTooCoarseError, NotInBMinusError
from .ground_state import FunctionalTriple, RadialProfile, critical_exponent, sphere_area
from .variational import (
    TANGENT_BAND,
    KirchhoffParams,
    B_of_u,
    classify_pohozaev,
    dilation_critical_points,
    energy_E,
    fibering_F,
    fibering_G,
    manifold_energy,
    nehari_residual,
    optimal_dilation,
    pohozaev_psi,
    trichotomy_threshold,
)

__all__ = [
    "Check",
    "IdentityReport",
    "SobolevConstant",
    "derivative_check",
    "identity_suite",
    "interpolation_rhs",
    "monotonicity_check",
    "ode_residual",
    "pohozaev_bounds",
    "root_count_oracle",
    "sobolev_constant",
]

# finite differences are taken at roughly this spacing in units of the solution's length scale
_FD_TARGET_POINTS = 4000


@dataclass(frozen=True)
class Check:
    value: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return {"value": self.value, "tolerance": self.tolerance, "pass": self.passed}


@dataclass
class IdentityReport:
    checks: dict[str, Check] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failing(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.passed]

    def as_dict(self) -> dict:
        return {k: c.as_dict() for k, c in self.checks.items()}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def _unpack(solution):
    """Accept a KirchhoffSolution or a bare RadialProfile."""
    if isinstance(solution, RadialProfile):
        return solution, solution.functionals
    return solution.profile, solution.functionals


def _uniform(profile: RadialProfile):
    if profile.is_uniform:
        return profile.r, profile.u
    r = np.linspace(0.0, profile.r_max, profile.r.size)
    return r, profile(r)


def ode_residual(solution, params: KirchhoffParams, functionals: FunctionalTriple | None = None) -> float:
    """Relative weighted L² norm of ``-(a + bA)Δu + λu - u^{p-1}`` on the grid.

    ``Δu`` comes from five-point central differences (the profile is even in
    ``r``, which supplies the two ghost points at the origin); ``A`` is taken
    from the solution's functional triple.
    """
    profile, fv = _unpack(solution)
    if functionals is not None:
        fv = functionals
    if profile.r.size < 100:
        raise GridTooCoarseError("ode_residual needs at least 100 grid points")
    r, u = _uniform(profile)
    stride = max(1, r.size // _FD_TARGET_POINTS)
    r, u = r[::stride], u[::stride]
    h = r[1] - r[0]
    N = params.N
    ext = np.concatenate([u[2:0:-1], u])  # u(-2h), u(-h), u(0), ...
    c = ext[2:-2]
    up1, up2 = ext[3:-1], ext[4:]
    um1, um2 = ext[1:-3], ext[:-4]
    d2 = (-up2 + 16 * up1 - 30 * c + 16 * um1 - um2) / (12 * h * h)
    d1 = (-up2 + 8 * up1 - 8 * um1 + um2) / (12 * h)
    rr = r[:-2]
    lap = np.empty_like(c)
    lap[0] = N * d2[0]
    lap[1:] = d2[1:] + (N - 1) / rr[1:] * d1[1:]
    res = -(params.a + params.b * fv.A) * lap + params.lam * c - np.abs(c) ** (params.p - 1) * np.sign(c)
    w = rr ** (N - 1)
    return float(math.sqrt(np.sum(w * res * res) / np.sum(w * (params.lam * c) ** 2)))


@dataclass(frozen=True)
class SobolevConstant:
    N: int
    S_value: float
    method: str = "aubin-talenti quadrature"
    refinement_delta: float = 0.0


def _sobolev_quotient(N: int, nodes: int, dilation: float) -> float:
    x, w = leggauss(nodes)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    d = dilation
    crit = critical_exponent(N)

    def grad(r):
        return ((N - 2) * d * d * r * (1 + (d * r) ** 2) ** (-N / 2)) ** 2 * r ** (N - 1)

    def power(r):
        return (1 + (d * r) ** 2) ** (-N) * r ** (N - 1)

    # [0, 1] directly, [1, ∞) through r = 1/x
    I_grad = np.sum(w * grad(x)) + np.sum(w * grad(1 / x) / x**2)
    I_pow = np.sum(w * power(x)) + np.sum(w * power(1 / x) / x**2)
    area = sphere_area(N)
    return float(area * I_grad / (area * I_pow) ** (2 / crit))


def sobolev_constant(N: int, nodes: int = 200, dilation: float = 1.0) -> SobolevConstant:
    """Sobolev quotient ``‖∇W‖²/‖W‖²_{2*}`` of ``W(r) = (1 + r²)^{-(N-2)/2}``.

    ``dilation`` evaluates the quotient of ``W(dilation·r)`` instead; the value
    must not depend on it.
    """
    if N < 3:
        raise DimensionTooLowError("N must be at least 3")
    coarse = _sobolev_quotient(N, nodes, dilation)
    fine = _sobolev_quotient(N, 2 * nodes, dilation)
    return SobolevConstant(N, fine, refinement_delta=abs(fine - coarse) / fine)


def pohozaev_bounds(params: KirchhoffParams, S: float) -> tuple[float, float]:
    """Two-sided bound on ``A`` valid on the whole Pohozaev manifold (N >= 5)."""
    N, p, a, b, lam = params.N, params.p, params.a, params.b, params.lam
    if N < 5:
        raise DimensionTooLowError("the gradient bounds need N >= 5")
    cs = critical_exponent(N)
    e = (cs - p) / (p - 2)
    lower = ((N - 2) * a * p / (2 * N) * (lam * p / 2) ** e * S ** (cs / 2)) ** (2 / (cs - 2))
    upper = (2 * N / ((N - 2) * b * p) * (2 / (lam * p)) ** e * S ** (-cs / 2)) ** (2 / (4 - cs))
    return lower, upper


def interpolation_rhs(fv: FunctionalTriple, S: float) -> float:
    """Upper bound for ``B`` from Hölder and Sobolev."""
    cs = critical_exponent(fv.N)
    p = fv.p
    k = cs * (p - 2) / (2 * (cs - 2))
    return S ** (-k) * fv.C ** ((cs - p) / (cs - 2)) * fv.A**k


def identity_suite(
    solution,
    params: KirchhoffParams,
    S: SobolevConstant | None = None,
    identity_tol: float = 1e-6,
    energy_tol: float = 1e-8,
    link_tol: float = 1e-13,
    ode_tol: float = 1e-5,
) -> IdentityReport:
    profile, fv = _unpack(solution)
    a, b, N = params.a, params.b, params.N
    rep = IdentityReport()

    def add(name, value, tol, passed=None):
        ok = abs(value) < tol if passed is None else passed
        rep.checks[name] = Check(float(value), float(tol), bool(ok))

    add("pohozaev", pohozaev_psi(fv, params) / (a * fv.A), identity_tol)
    add("nehari", nehari_residual(fv, params) / fv.B, identity_tol)
    E = energy_E(fv, params)
    H = manifold_energy(fv.A, params)
    add("on_manifold_energy", (E - H) / (a / N * fv.A + abs(4 - N) * b / (4 * N) * fv.A**2), energy_tol)
    psi = pohozaev_psi(fv, params)
    _, F1, _ = fibering_F(fv, params, 1.0)
    psi_scale = (N - 2) / (2 * N) * (a * fv.A + b * fv.A**2) + 0.5 * params.lam * fv.C + fv.B / params.p
    add("f_prime_psi_link", (F1 + N * psi) / (N * psi_scale), link_tol)
    add("ode_residual", ode_residual(profile, params, fv), ode_tol)
    S = S or sobolev_constant(N)
    if N >= 5:
        lo, hi = pohozaev_bounds(params, S.S_value)
        add("pohozaev_bound_lower", fv.A, lo, passed=lo <= fv.A)
        add("pohozaev_bound_upper", fv.A, hi, passed=fv.A <= hi)
        cls = classify_pohozaev(fv, params)
        add("trichotomy", fv.A / trichotomy_threshold(params), 1.0, passed=bool(cls.consistent))
    rhs = interpolation_rhs(fv, S.S_value)
    add("interpolation", fv.B / rhs, 1.0, passed=fv.B <= rhs)
    return rep


def root_count_oracle(
    a: float, b: float, A_grad: float, N: int, n: int = 1_000_000, lo: float = 1e-6, hi: float = 1e6, band: float = 1e-8
) -> int:
    """Count sign changes of ``aγ² + bAγ^{4-N} - 1`` on a log grid.

    A grid minimum within ``band`` of zero is a tangency and counts once.
    """
    g = np.geomspace(lo, hi, n)
    v = a * g * g + b * A_grad * g ** (4.0 - N) - 1.0
    if N >= 5 and abs(v.min()) <= band:
        return 1
    s = np.sign(v)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


@dataclass(frozen=True)
class DerivativeReport:
    map_kind: str
    t: float
    first_error: float
    second_error: float
    first_tol: float = 1e-6
    second_tol: float = 1e-4

    @property
    def passed(self) -> bool:
        return self.first_error < self.first_tol and self.second_error < self.second_tol


def _terms(fv, params, kind, t):
    """Absolute sizes of the individual terms of the map and its derivatives."""
    A, B, C = fv.A, fv.B, fv.C
    a, b, lam, p, N = params.a, params.b, params.lam, params.p, params.N
    if kind == "F":
        c = np.array([b * A * A / 4, a * A / 2, lam * C / 2, B / p])
        k = np.array([4 - 2 * N, 2 - N, -N, -N], dtype=float)
    else:
        c = np.array([b * A * A / 4, (a * A + lam * C) / 2, B / p])
        k = np.array([4.0, 2.0, p])
    d1 = np.sum(np.abs(c * k) * t ** (k - 1))
    d2 = np.sum(np.abs(c * k * (k - 1)) * t ** (k - 2))
    return d1, d2


def derivative_check(fv: FunctionalTriple, params: KirchhoffParams, map_kind: str, t: float, h_rel: float = 1e-5) -> DerivativeReport:
    """Central differences of ``F`` (``map_kind="F"``) or ``G`` against the analytic derivatives."""
    fn = {"F": fibering_F, "G": fibering_G}[map_kind]
    h = h_rel * t
    f0, d1, d2 = fn(fv, params, t)
    fp = fn(fv, params, t + h)[0]
    fm = fn(fv, params, t - h)[0]
    fd1 = (fp - fm) / (2 * h)
    fd2 = (fp - 2 * f0 + fm) / (h * h)
    s1, s2 = _terms(fv, params, map_kind, t)
    return DerivativeReport(map_kind, t, abs(fd1 - d1) / s1, abs(fd2 - d2) / s2)


@dataclass(frozen=True)
class MonotonicityReport:
    pattern: str
    holds: bool
    t_plus: float | None = None
    t_minus: float | None = None
    ratio: float | None = None


def _strict(values, sign):
    d = np.diff(values)
    return bool(np.all(d < 0) if sign < 0 else np.all(d > 0))


def monotonicity_check(fv: FunctionalTriple, params: KirchhoffParams, samples: int = 50) -> MonotonicityReport:
    """Sample ``F(t)`` and report its monotonicity pattern on ``(0, ∞)``.

    Outside ``C`` the map must decrease everywhere.  For ``B(u) < 1`` it
    decreases up to the smaller critical dilation, increases up to the larger
    one and decreases afterwards.  The tangent case is reported, not asserted.
    """
    if params.N < 5:
        raise DimensionTooLowError("monotonicity pattern is stated for N >= 5")

    def F(ts):
        return np.array([fibering_F(fv, params, t)[0] for t in ts])

    def interior(lo, hi):
        return np.geomspace(lo, hi, samples + 2)[1:-1]

    t0 = optimal_dilation(fv, params)
    if t0 is None:
        ts = np.geomspace(1e-3, 1e3, 3 * samples)
        return MonotonicityReport("decreasing", _strict(F(ts), -1))
    ratio = B_of_u(fv, params)
    rep = dilation_critical_points(fv, params)
    crit = sorted(t for t, _ in rep.critical_points)
    if abs(ratio - 1) <= TANGENT_BAND or len(crit) == 1:
        tc = crit[0]
        left, right = F(interior(tc * 1e-3, tc)), F(interior(tc, tc * 1e3))
        both = _strict(left, -1) and _strict(right, -1)
        return MonotonicityReport("degenerate", both, tc, tc, ratio)
    if ratio > 1:
        raise NotInBMinusError(f"B(u) = {ratio:g} > 1")
    tp, tm = crit
    holds = (
        _strict(F(interior(tp * 1e-3, tp)), -1)
        and _strict(F(interior(tp, tm)), +1)
        and _strict(F(interior(tm, tm * 1e3)), -1)
    )
    return MonotonicityReport("decreasing-increasing-decreasing", holds, tp, tm, ratio)
