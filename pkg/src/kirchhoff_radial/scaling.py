"""Positive radial Kirchhoff solutions as dilations of the local ground state.

``u(x) = U_λ(γx)`` solves the Kirchhoff problem exactly when

    h(γ) = aγ² + b A_{U_λ} γ^{4-N} = 1,

with ``A_{U_λ} = ‖∇U_λ‖²``.  The number of roots is the number of positive
radial solutions: one for N = 3, one or none for N = 4 depending on
``bA < 1``, and two/one/none for N >= 5 depending on ``min h`` against 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .errors import InvalidInputError, InvalidSError, NoSolutionError
from .ground_state import FunctionalTriple, RadialProfile, rescale_profile
from .variational import (
    TANGENT_BAND,
    Classification,
    F_ab,
    KirchhoffParams,
    classify_pohozaev,
    energy_E,
)

__all__ = [
    "AmplitudeForm",
    "ExistenceReport",
    "GammaRoots",
    "KirchhoffSolution",
    "Regime",
    "SolutionSet",
    "amplitude_form",
    "build_solutions",
    "classify_existence",
    "critical_b",
    "h_gamma",
    "solve_gamma",
]


class Regime(str, enum.Enum):
    N3_UNIQUE = "N3_UNIQUE"
    N4_EXISTS = "N4_EXISTS"
    N4_NONE = "N4_NONE"
    N5_TWO = "N5_TWO"
    N5_TANGENT = "N5_TANGENT"
    N5_NONE = "N5_NONE"


@dataclass(frozen=True)
class GammaRoots:
    roots: tuple[float, ...]
    gamma_star: float | None = None
    h_min: float | None = None
    tangent: bool = False


@dataclass
class KirchhoffSolution:
    gamma: float
    profile: RadialProfile
    functionals: FunctionalTriple
    energy: float
    classification: Classification
    is_ground_state: bool = False


@dataclass
class ExistenceReport:
    N: int
    params: KirchhoffParams
    count: int
    regime: Regime
    threshold_value: float | None
    critical_b: float | None

    def as_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "count": self.count,
            "regime": self.regime.value,
            "threshold_value": self.threshold_value,
            "critical_b": self.critical_b,
        }


@dataclass
class SolutionSet:
    params: KirchhoffParams
    U_lambda: RadialProfile
    roots: GammaRoots
    existence: ExistenceReport
    solutions: list[KirchhoffSolution] = field(default_factory=list)

    @property
    def ground_state(self) -> KirchhoffSolution | None:
        for s in self.solutions:
            if s.is_ground_state:
                return s
        return None


_RTOL = 4 * 2.220446049250313e-16


def h_gamma(gamma: float, a: float, bA: float, N: int) -> float:
    return a * gamma * gamma + bA * gamma ** (4 - N)


def solve_gamma(a: float, b: float, A_grad: float, N: int, eps: float = TANGENT_BAND) -> GammaRoots:
    """Positive roots of ``aγ² + bAγ^{4-N} = 1``, in increasing order."""
    if not (a > 0 and b > 0 and A_grad > 0):
        raise InvalidInputError("a, b and A must be positive")
    if int(N) != N or N < 3:
        raise InvalidInputError("N must be an integer >= 3")
    bA = b * A_grad
    if N == 3:
        # 2/(bA + sqrt(...)) avoids cancellation for large bA
        return GammaRoots((2.0 / (bA + math.sqrt(bA * bA + 4 * a)),))
    if N == 4:
        if bA < 1 - eps:
            return GammaRoots((math.sqrt((1 - bA) / a),))
        return GammaRoots(())
    gamma_star = ((N - 4) * bA / (2 * a)) ** (1 / (N - 2))
    h_min = h_gamma(gamma_star, a, bA, N)
    if abs(h_min - 1) <= eps:
        return GammaRoots((gamma_star,), gamma_star, h_min, tangent=True)
    if h_min > 1:
        return GammaRoots((), gamma_star, h_min)

    def f(g):
        return h_gamma(g, a, bA, N) - 1.0

    left = brentq(f, gamma_star * 1e-8, gamma_star, xtol=1e-300, rtol=_RTOL, maxiter=500)
    hi = 2 * gamma_star
    while f(hi) < 0:
        hi *= 2
    right = brentq(f, gamma_star, hi, xtol=1e-300, rtol=_RTOL, maxiter=500)
    return GammaRoots((left, right), gamma_star, h_min)


def critical_b(a: float, A_grad: float, N: int) -> float | None:
    """Value of ``b`` at the existence boundary (None for N = 3)."""
    if N == 3:
        return None
    if N == 4:
        return 1.0 / A_grad
    k = (N - 4) / ((N - 2) * a ** ((N - 4) / (N - 2)))
    return 2.0 / ((N - 4) * A_grad) * k ** ((N - 2) / 2)


def classify_existence(params: KirchhoffParams, A_grad: float) -> ExistenceReport:
    N = params.N
    roots = solve_gamma(params.a, params.b, A_grad, N)
    count = len(roots.roots)
    threshold = None
    if N == 3:
        regime = Regime.N3_UNIQUE
    elif N == 4:
        threshold = params.b * A_grad
        regime = Regime.N4_EXISTS if count else Regime.N4_NONE
    else:
        threshold = F_ab(A_grad, params)
        if roots.tangent:
            regime = Regime.N5_TANGENT
        else:
            regime = Regime.N5_TWO if count == 2 else Regime.N5_NONE
    return ExistenceReport(N, params, count, regime, threshold, critical_b(params.a, A_grad, N))


def build_solutions(params: KirchhoffParams, base_U1: RadialProfile) -> SolutionSet:
    """Every positive radial solution ``U_λ(γ·)`` with its energy and Pohozaev label.

    The lowest-energy solution is flagged as the ground state; with two roots
    it is the smaller ``γ`` (larger gradient integral).
    """
    if (base_U1.N, base_U1.p) != (params.N, params.p):
        raise InvalidInputError("base profile was solved for a different (N, p)")
    U = rescale_profile(base_U1, params.lam)
    A_U = U.functionals.A
    roots = solve_gamma(params.a, params.b, A_U, params.N)
    existence = classify_existence(params, A_U)
    out = SolutionSet(params, U, roots, existence)
    for g in roots.roots:
        fv = U.functionals.dilated(g)
        out.solutions.append(
            KirchhoffSolution(
                gamma=g,
                profile=U.dilate(g),
                functionals=fv,
                energy=energy_E(fv, params),
                classification=classify_pohozaev(fv, params).classification,
            )
        )
    if out.solutions:
        min(out.solutions, key=lambda s: s.energy).is_ground_state = True
    return out


@dataclass(frozen=True)
class AmplitudeForm:
    alpha: float
    t: float
    residual: float


def amplitude_form(params: KirchhoffParams, s: float, base_U1: RadialProfile, gamma: float | None = None) -> AmplitudeForm:
    """Represent the solution as ``s·U_α(t·)`` and measure its distance to ``U_λ(γ·)``.

    ``α = λ/s^{p-2}`` and ``t = γ s^{(p-2)/2}``.  The residual is the maximum of
    ``|s U_α(t r) - U_λ(γ r)|`` over the grid of the dilated solution.
    """
    if not s > 0:
        raise InvalidSError(f"s must be positive, got {s}")
    U = rescale_profile(base_U1, params.lam)
    if gamma is None:
        roots = solve_gamma(params.a, params.b, U.functionals.A, params.N).roots
        if not roots:
            raise NoSolutionError("the dilation equation has no root for these parameters")
        gamma = roots[0]
    p = params.p
    alpha = params.lam / s ** (p - 2)
    t = gamma * s ** ((p - 2) / 2)
    U_alpha = rescale_profile(base_U1, alpha)
    target = U.dilate(gamma)
    values = s * U_alpha(t * target.r)
    return AmplitudeForm(alpha, t, float(max(abs(values - target.u))))
