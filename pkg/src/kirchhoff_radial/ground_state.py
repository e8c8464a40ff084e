"""Positive radial ground state of ``-Δu + λu = u^{p-1}`` in R^N.

The profile is obtained by overshoot/undershoot shooting on ``u(0) = β`` for the
radial ODE

    u'' + (N-1)/r u' = λu - u^{p-1},   u'(0) = 0,

with the three integrals of the profile (``‖∇u‖²``, ``‖u‖_p^p``, ``‖u‖²``)
carried along as extra state components.

A single bisection on β can only follow the decaying separatrix until the
unstable mode, seeded at the level of the bracket width, has grown to the size
of the solution itself.  The integration is therefore split into segments: once
the two bracket trajectories separate, the solver restarts from the common state
and bisects on the slope ``u'`` at the restart radius.  Segments are chained
until ``u`` falls below ``decay_floor``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import simpson, solve_ivp
from scipy.interpolate import CubicHermiteSpline
from scipy.special import gamma as gamma_fn

from .errors import (
    EmptyGridError,
    InvalidExponentError,
    InvalidInputError,
    InvalidLambdaError,
    NoBracketError,
    NonConvergenceError,
)

__all__ = [
    "FunctionalTriple",
    "GroundStateSpec",
    "IdentityResiduals",
    "RadialProfile",
    "compute_functionals",
    "critical_exponent",
    "local_identity_report",
    "rescale_profile",
    "shot_outcome",
    "solve_base_profile",
    "solve_profile",
    "sphere_area",
]

OVERSHOOT = 1
UNDERSHOOT = -1

# relative separation of the two bracket trajectories at which a segment is cut
_SEPARATION_TOL = 1e-8
_MAX_SEGMENTS = 200


def sphere_area(N: int) -> float:
    """Surface area ``2π^{N/2}/Γ(N/2)`` of the unit sphere in R^N."""
    return 2.0 * math.pi ** (N / 2) / gamma_fn(N / 2)


def critical_exponent(N: int) -> float:
    """Critical Sobolev exponent ``2N/(N-2)``."""
    return 2.0 * N / (N - 2)


def check_exponent(N: int, p: float) -> None:
    if int(N) != N or N < 3:
        raise InvalidInputError(f"dimension must be an integer >= 3, got {N}")
    if not (2.0 < p < critical_exponent(N)):
        raise InvalidExponentError(
            f"p={p} outside the subcritical window (2, {critical_exponent(N):g}) for N={N}"
        )


@dataclass(frozen=True)
class FunctionalTriple:
    """The integrals ``A = ‖∇u‖²``, ``B = ‖u‖_p^p`` and ``C = ‖u‖²`` of a profile."""

    A: float
    B: float
    C: float
    N: int
    p: float

    def __post_init__(self):
        if min(self.A, self.B, self.C) < 0:
            raise InvalidInputError("functional values must be nonnegative")

    def dilated(self, t: float) -> "FunctionalTriple":
        """Triple of ``u(t·)``."""
        N = self.N
        return replace(self, A=t ** (2 - N) * self.A, B=t ** (-N) * self.B, C=t ** (-N) * self.C)

    def amplified(self, s: float) -> "FunctionalTriple":
        """Triple of ``s·u``."""
        return replace(self, A=s * s * self.A, B=s**self.p * self.B, C=s * s * self.C)

    def as_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "C": self.C}


@dataclass(frozen=True)
class GroundStateSpec:
    """Configuration of a ground-state solve.

    ``grid_step`` is the output grid spacing in units of ``1/sqrt(lam)``.
    ``method`` is passed to :func:`scipy.integrate.solve_ivp`.
    """

    N: int
    p: float
    lam: float = 1.0
    shoot_tol: float = 1e-12
    ode_rel_tol: float = 1e-10
    decay_floor: float = 1e-12
    r_start: float = 1e-4
    grid_step: float = 2e-3
    method: str = "DOP853"
    max_doublings: int = 60
    max_bisections: int = 200

    def __post_init__(self):
        check_exponent(self.N, self.p)
        if not self.lam > 0:
            raise InvalidLambdaError(f"lambda must be positive, got {self.lam}")
        for name in ("shoot_tol", "ode_rel_tol", "decay_floor", "r_start", "grid_step"):
            if not getattr(self, name) > 0:
                raise InvalidInputError(f"{name} must be positive")
        if not self.shoot_tol < 1e-6:
            raise InvalidInputError("shoot_tol must be below 1e-6")

    @property
    def beta_floor(self) -> float:
        """Equilibrium level ``λ^{1/(p-2)}``; every ground state starts above it."""
        return self.lam ** (1.0 / (self.p - 2.0))


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """A positive radial function sampled on ``0 = r_0 < r_1 < ... < r_max``.

    ``functionals`` holds the integrals of the profile.  For solver output they
    are the values accumulated by the integrator; for derived profiles they are
    transformed with the exact scaling laws.  ``error_estimate`` is a relative
    bound on those integrals (integrator tolerance, segment joins, neglected
    tail).
    """

    N: int
    p: float
    lam: float
    beta: float
    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    functionals: FunctionalTriple | None = None
    error_estimate: float = 0.0
    tail_estimate: float = 0.0
    beta_bracket: tuple[float, float] | None = None
    segments: int = 1
    _spline: CubicHermiteSpline | None = field(default=None, repr=False)

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        u = np.asarray(self.u, dtype=float)
        du = np.asarray(self.du, dtype=float)
        if r.size < 2:
            raise EmptyGridError("profile grid needs at least two points")
        if not (r.shape == u.shape == du.shape):
            raise InvalidInputError("r, u and du must have the same length")
        if r[0] != 0.0 or np.any(np.diff(r) <= 0):
            raise InvalidInputError("grid must start at 0 and increase strictly")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "du", du)
        if self.functionals is None:
            object.__setattr__(self, "functionals", compute_functionals(self))

    @property
    def r_max(self) -> float:
        return float(self.r[-1])

    def __call__(self, x) -> np.ndarray:
        """Evaluate ``u`` at arbitrary radii.

        Inside the grid a cubic Hermite interpolant on ``(u, du)`` is used;
        beyond ``r_max`` the exponential tail ``u(r_max) e^{-√λ (x - r_max)}``.
        """
        x = np.abs(np.asarray(x, dtype=float))
        if self._spline is None:
            object.__setattr__(self, "_spline", CubicHermiteSpline(self.r, self.u, self.du))
        inside = x <= self.r_max
        out = np.empty_like(x)
        out[inside] = self._spline(x[inside])
        out[~inside] = self.u[-1] * np.exp(-math.sqrt(self.lam) * (x[~inside] - self.r_max))
        return out

    def dilate(self, t: float) -> "RadialProfile":
        """The profile ``r ↦ u(t r)`` on the grid ``r/t``."""
        if not t > 0:
            raise InvalidInputError("dilation factor must be positive")
        return replace(
            self,
            r=self.r / t,
            du=self.du * t,
            functionals=self.functionals.dilated(t),
            _spline=None,
        )

    def scale(self, s: float) -> "RadialProfile":
        """The profile ``s·u``; no longer a solution unless ``s == 1``."""
        return replace(
            self,
            beta=self.beta * s,
            u=self.u * s,
            du=self.du * s,
            functionals=self.functionals.amplified(s),
            _spline=None,
        )

    def truncate(self, r_max: float) -> "RadialProfile":
        """Restriction to ``[0, r_max]`` with integrals recomputed by quadrature."""
        keep = self.r <= r_max
        if keep.sum() < 3:
            raise EmptyGridError("truncation leaves fewer than three grid points")
        return replace(
            self,
            r=self.r[keep],
            u=self.u[keep],
            du=self.du[keep],
            functionals=None,
            _spline=None,
        )

    @property
    def is_uniform(self) -> bool:
        h = np.diff(self.r)
        return bool(np.allclose(h, h[0], rtol=1e-9, atol=0.0))


def compute_functionals(profile: RadialProfile) -> FunctionalTriple:
    """Composite Simpson quadrature of the three radial integrals."""
    r, u, du = profile.r, profile.u, profile.du
    if r.size < 3:
        raise EmptyGridError("need at least three grid points for quadrature")
    w = sphere_area(profile.N) * r ** (profile.N - 1)
    A = simpson(w * du * du, x=r)
    B = simpson(w * np.abs(u) ** profile.p, x=r)
    C = simpson(w * u * u, x=r)
    return FunctionalTriple(float(A), float(B), float(C), profile.N, profile.p)


# ----------------------------------------------------------------------------
# shooting


def _rhs_factory(N: int, p: float, lam: float):
    def rhs(r, y):
        u, du = y[0], y[1]
        au = abs(u)
        w = r ** (N - 1)
        return [
            du,
            -(N - 1) / r * du + lam * u - math.copysign(au ** (p - 1), u),
            w * du * du,
            w * au**p,
            w * u * u,
        ]

    return rhs


def _hits_zero(r, y):
    return y[0]


_hits_zero.terminal = True
_hits_zero.direction = -1


def _turns_up(r, y):
    return y[1]


_turns_up.terminal = True
_turns_up.direction = 1


def _series_state(spec: GroundStateSpec, beta: float) -> list[float]:
    """State at ``r_start`` from ``u ≈ β + k r²/2``, ``k = (λβ - β^{p-1})/N``."""
    N, p, lam, rs = spec.N, spec.p, spec.lam, spec.r_start
    k = (lam * beta - beta ** (p - 1)) / N
    area = rs**N / N
    return [
        beta + 0.5 * k * rs * rs,
        k * rs,
        k * k * rs ** (N + 2) / (N + 2),
        beta**p * area,
        beta * beta * area,
    ]


class _Shooter:
    def __init__(self, spec: GroundStateSpec):
        self.spec = spec
        self.rhs = _rhs_factory(spec.N, spec.p, spec.lam)
        # generous: the events always fire long before this radius
        self.r_limit = 2000.0 / math.sqrt(spec.lam)
        floor = spec.decay_floor
        self.atol = [floor * 1e-6, floor * 1e-6, 1e-300, 1e-300, 1e-300]

    def integrate(self, r0, y0, dense=False):
        sol = solve_ivp(
            self.rhs,
            (r0, self.r_limit),
            y0,
            method=self.spec.method,
            rtol=self.spec.ode_rel_tol,
            atol=self.atol,
            events=(_hits_zero, _turns_up),
            dense_output=dense,
        )
        if sol.t_events[0].size:
            outcome = OVERSHOOT
        elif sol.t_events[1].size:
            outcome = UNDERSHOOT
        else:
            outcome = 0
        return outcome, sol

    def outcome(self, r0, y0) -> int:
        return self.integrate(r0, y0)[0]

    def bisect(self, classify, lo, hi):
        """Shrink ``[lo, hi]`` (``lo`` undershoots, ``hi`` overshoots)."""
        tol = self.spec.shoot_tol
        for _ in range(self.spec.max_bisections):
            if abs(hi - lo) <= tol * max(abs(hi), abs(lo)):
                return lo, hi
            mid = 0.5 * (lo + hi)
            res = classify(mid)
            if res == OVERSHOOT:
                hi = mid
            elif res == UNDERSHOOT:
                lo = mid
            else:
                raise NonConvergenceError("trajectory neither overshot nor undershot")
        raise NonConvergenceError(
            f"bracket did not shrink below {tol:g} in {self.spec.max_bisections} bisections"
        )


def shot_outcome(spec: GroundStateSpec, beta: float) -> str:
    """``"overshoot"`` if the trajectory from ``u(0)=beta`` crosses zero, else ``"undershoot"``."""
    out = _Shooter(spec).outcome(spec.r_start, _series_state(spec, beta))
    return {OVERSHOOT: "overshoot", UNDERSHOOT: "undershoot"}.get(out, "undecided")


def _initial_bracket(sh: _Shooter) -> tuple[float, float]:
    spec = sh.spec
    lo = spec.beta_floor * (1 + 1e-6)
    if sh.outcome(spec.r_start, _series_state(spec, lo)) != UNDERSHOOT:
        raise NoBracketError("lower bracket end does not undershoot")
    hi = 2.0 * spec.beta_floor
    for _ in range(spec.max_doublings):
        res = sh.outcome(spec.r_start, _series_state(spec, hi))
        if res == OVERSHOOT:
            return lo, hi
        lo, hi = hi, 2.0 * hi
    raise NoBracketError(f"no overshooting beta found after {spec.max_doublings} doublings")


def _separation_cut(grid, r0, sol_lo, sol_hi):
    """Last grid radius at which the bracket trajectories still agree."""
    r_end = min(sol_lo.t[-1], sol_hi.t[-1])
    pts = grid[(grid > r0) & (grid <= r_end)]
    if pts.size < 2:
        raise NonConvergenceError("segment too short to make progress")
    ua = sol_lo.sol(pts)[0]
    ub = sol_hi.sol(pts)[0]
    bad = np.nonzero(np.abs(ua - ub) > _SEPARATION_TOL * np.abs(0.5 * (ua + ub)))[0]
    if bad.size == 0:
        return pts[-2]
    if bad[0] == 0:
        raise NonConvergenceError("bracket trajectories separate immediately")
    return pts[bad[0] - 1]


def _slope_bracket(sh: _Shooter, r0, state):
    """Bracket on ``|u'(r0)|``: small magnitudes undershoot, large ones overshoot."""
    s0 = abs(state[1])

    def classify(m):
        y = list(state)
        y[1] = -m
        return sh.outcome(r0, y)

    for delta in (1e-6, 1e-4, 1e-2, 1e-1, 0.5):
        lo, hi = s0 * (1 - delta), s0 * (1 + delta)
        if classify(lo) == UNDERSHOOT and classify(hi) == OVERSHOOT:
            return classify, lo, hi
    raise NoBracketError(f"cannot bracket the decaying slope at r={r0:g}")


def _tail_bound(N, r_max, u_max, kappa):
    """``∫_{r_max}^∞ u_max² e^{-κ(r-r_max)} r^{N-1} dr`` in closed form."""
    total = 0.0
    for k in range(N):
        total += math.comb(N - 1, k) * r_max ** (N - 1 - k) * math.factorial(k) / kappa ** (k + 1)
    return u_max * u_max * total


def solve_profile(spec: GroundStateSpec) -> RadialProfile:
    """Shoot the ground state for arbitrary ``λ`` (used for cross-validation).

    Raises
    ------
    NoBracketError
        The doubling search never produced an overshoot.
    NonConvergenceError
        A bisection stalled or a segment made no progress.
    """
    sh = _Shooter(spec)
    lam = spec.lam
    h = spec.grid_step / math.sqrt(lam)

    lo, hi = _initial_bracket(sh)
    lo, hi = sh.bisect(lambda b: sh.outcome(spec.r_start, _series_state(spec, b)), lo, hi)
    beta = 0.5 * (lo + hi)

    # grid is extended lazily as segments advance
    grid = np.arange(0, int(sh.r_limit / h)) * h

    r0 = spec.r_start
    y_lo, y_hi = _series_state(spec, lo), _series_state(spec, hi)
    pieces = []
    integrals = 0.5 * (np.array(y_lo[2:]) + np.array(y_hi[2:]))
    join_jump = 0.0
    for _ in range(_MAX_SEGMENTS):
        out_lo, sol_lo = sh.integrate(r0, y_lo, dense=True)
        out_hi, sol_hi = sh.integrate(r0, y_hi, dense=True)
        if out_lo != UNDERSHOOT or out_hi != OVERSHOOT:
            raise NonConvergenceError("bracket endpoints lost their shooting outcome")
        rc = _separation_cut(grid, r0, sol_lo, sol_hi)

        def mean_state(x):
            return 0.5 * (sol_lo.sol(x) + sol_hi.sol(x))

        pts = grid[(grid > r0) & (grid <= rc)]
        states = mean_state(pts)
        below = np.nonzero(states[0] <= spec.decay_floor)[0]
        if below.size:
            stop = below[0]
            pts, states = pts[: stop + 1], states[:, : stop + 1]
            pieces.append((pts, states))
            integrals = integrals + states[2:, -1] - mean_state(r0)[2:]
            break
        pieces.append((pts, states))
        end = mean_state(rc)
        integrals = integrals + end[2:] - mean_state(r0)[2:]

        classify, s_lo, s_hi = _slope_bracket(sh, rc, end)
        s_lo, s_hi = sh.bisect(classify, s_lo, s_hi)
        s_mid = 0.5 * (s_lo + s_hi)
        join_jump = max(join_jump, abs(abs(end[1]) - s_mid) / s_mid)
        y_lo = [end[0], -s_lo, *end[2:]]
        y_hi = [end[0], -s_hi, *end[2:]]
        r0 = rc
    else:
        raise NonConvergenceError(f"decay floor not reached after {_MAX_SEGMENTS} segments")

    # grid points inside [0, r_start] come from the Taylor expansion
    k = (lam * beta - beta ** (spec.p - 1)) / spec.N
    r_in = grid[grid < spec.r_start] if spec.r_start > 0 else grid[:1]
    if r_in.size == 0 or r_in[0] != 0.0:
        r_in = np.concatenate([[0.0], r_in])
    r_all = np.concatenate([r_in] + [pc[0] for pc in pieces])
    u_all = np.concatenate([beta + 0.5 * k * r_in**2] + [pc[1][0] for pc in pieces])
    du_all = np.concatenate([k * r_in] + [pc[1][1] for pc in pieces])

    area = sphere_area(spec.N)
    A, B, C = (area * integrals).tolist()
    r_max, u_max = float(r_all[-1]), float(u_all[-1])
    kappa = math.sqrt(lam)
    tail_c = area * _tail_bound(spec.N, r_max, u_max, 2 * kappa)
    tail = max(tail_c / C, lam * tail_c / A, area * _tail_bound(spec.N, r_max, u_max**(spec.p / 2), spec.p * kappa) / B)
    error = spec.ode_rel_tol + tail + _SEPARATION_TOL * join_jump
    return RadialProfile(
        N=spec.N,
        p=spec.p,
        lam=lam,
        beta=beta,
        r=r_all,
        u=u_all,
        du=du_all,
        functionals=FunctionalTriple(A, B, C, spec.N, spec.p),
        error_estimate=error,
        tail_estimate=tail,
        beta_bracket=(lo, hi),
        segments=len(pieces),
    )


def solve_base_profile(spec: GroundStateSpec) -> RadialProfile:
    """Ground state ``U_1`` at ``λ = 1``; other ``λ`` follow from :func:`rescale_profile`."""
    if spec.lam != 1.0:
        raise InvalidLambdaError("the base profile is solved at lambda = 1; use rescale_profile")
    return solve_profile(spec)


def rescale_profile(base: RadialProfile, lam: float) -> RadialProfile:
    """``U_λ(r) = λ^{1/(p-2)} U_1(√λ r)``, with the integrals transformed exactly."""
    if not lam > 0:
        raise InvalidLambdaError(f"lambda must be positive, got {lam}")
    if lam == base.lam:
        return base
    # relative to the base's own lambda, so any converged profile can be rescaled
    ratio = lam / base.lam
    amp = ratio ** (1.0 / (base.p - 2.0))
    root = math.sqrt(ratio)
    N, p = base.N, base.p
    f = base.functionals
    e = 2.0 / (p - 2.0)
    functionals = replace(
        f,
        A=ratio ** (e + 1 - N / 2) * f.A,
        B=ratio ** (p / (p - 2.0) - N / 2) * f.B,
        C=ratio ** (e - N / 2) * f.C,
    )
    lo_hi = None if base.beta_bracket is None else tuple(amp * b for b in base.beta_bracket)
    return replace(
        base,
        lam=lam,
        beta=amp * base.beta,
        r=base.r / root,
        u=amp * base.u,
        du=amp * root * base.du,
        functionals=functionals,
        beta_bracket=lo_hi,
        _spline=None,
    )


@dataclass(frozen=True)
class IdentityResiduals:
    """Relative residuals of the local Nehari and Pohozaev identities."""

    nehari: float
    pohozaev: float
    tolerance: float = 1e-6

    @property
    def passed(self) -> bool:
        return abs(self.nehari) < self.tolerance and abs(self.pohozaev) < self.tolerance


def local_identity_report(profile: RadialProfile, functionals: FunctionalTriple | None = None) -> IdentityResiduals:
    """Nehari ``A + λC - B`` and Pohozaev ``(N-2)/(2N) A + λC/2 - B/p``, both divided by ``B``."""
    f = functionals if functionals is not None else profile.functionals
    N, p, lam = profile.N, profile.p, profile.lam
    nehari = (f.A + lam * f.C - f.B) / f.B
    pohozaev = ((N - 2) / (2 * N) * f.A + 0.5 * lam * f.C - f.B / p) / f.B
    return IdentityResiduals(nehari=nehari, pohozaev=pohozaev)
