"""Energies, manifold identities and fibering maps of the Kirchhoff functional.

Everything here is algebra on a :class:`FunctionalTriple`.  Dilations
``u ↦ u(t·)`` and amplitudes ``u ↦ t u`` act on the triple through exact power
laws, so no profile is ever resampled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    DimensionTooLowError,
    ExponentOutOfRangeError,
    InvalidInputError,
    InvalidLambdaError,
    NonpositiveTError,
    NotInCError,
    ZeroBError,
)
from .ground_state import FunctionalTriple, check_exponent, critical_exponent

__all__ = [
    "Classification",
    "FiberingReport",
    "KirchhoffParams",
    "B_of_u",
    "F_ab",
    "amplitude_critical_points",
    "classify_nehari",
    "classify_pohozaev",
    "dilation_critical_points",
    "energy_E",
    "energy_I",
    "fibering_F",
    "fibering_G",
    "manifold_energy",
    "nehari_residual",
    "optimal_dilation",
    "pohozaev_psi",
    "rayleigh_quotient",
    "trichotomy_threshold",
]

TANGENT_BAND = 1e-10
DEFAULT_TOL_CLASS = 1e-8
DEFAULT_PSI_TOL = 1e-6


class Classification(str, enum.Enum):
    M_MINUS = "M_MINUS"
    M_ZERO = "M_ZERO"
    M_PLUS = "M_PLUS"
    N_MINUS = "N_MINUS"
    N_ZERO = "N_ZERO"
    N_PLUS = "N_PLUS"
    OFF_MANIFOLD = "OFF_MANIFOLD"


@dataclass(frozen=True)
class KirchhoffParams:
    """Problem data ``(N, p, a, b, λ)`` with ``a, b, λ > 0`` and ``2 < p < 2*``."""

    N: int
    p: float
    a: float
    b: float
    lam: float

    def __post_init__(self):
        check_exponent(self.N, self.p)
        if not (self.a > 0 and self.b > 0):
            raise InvalidInputError(f"a and b must be positive, got a={self.a}, b={self.b}")
        if not self.lam > 0:
            raise InvalidLambdaError(f"lambda must be positive, got {self.lam}")

    def as_dict(self) -> dict:
        return {"N": self.N, "p": self.p, "a": self.a, "b": self.b, "lambda": self.lam}


@dataclass
class FiberingReport:
    """Critical points of a fibering map and the manifold label of ``u`` itself.

    ``critical_points`` lists ``(t, sign)`` pairs, ``sign`` being the sign of
    the second derivative of the fibering map of the rescaled function at 1
    (0 inside the dead-band).  ``labels`` carries the matching manifold part.
    """

    kind: str
    classification: Classification
    t_zero: float | None = None
    critical_points: list[tuple[float, int]] = field(default_factory=list)
    labels: list[Classification] = field(default_factory=list)
    tolerance_used: float = DEFAULT_TOL_CLASS
    ratio: float | None = None
    trichotomy: str | None = None
    consistent: bool | None = None


def _scale(fv: FunctionalTriple, params: KirchhoffParams) -> float:
    return params.b * fv.A**2 + params.a * fv.A + params.lam * fv.C + fv.B


def _sign(x: float, band: float) -> int:
    if abs(x) <= band:
        return 0
    return 1 if x > 0 else -1


def energy_E(fv: FunctionalTriple, params: KirchhoffParams) -> float:
    """Kirchhoff energy ``b/4 A² + a/2 A + λ/2 C - B/p``."""
    return 0.25 * params.b * fv.A**2 + 0.5 * params.a * fv.A + 0.5 * params.lam * fv.C - fv.B / params.p


def energy_I(fv: FunctionalTriple, lam: float, p: float) -> float:
    """Energy of the local problem, ``A/2 + λ/2 C - B/p``."""
    return 0.5 * fv.A + 0.5 * lam * fv.C - fv.B / p


def pohozaev_psi(fv: FunctionalTriple, params: KirchhoffParams) -> float:
    N = params.N
    return (N - 2) / (2 * N) * (params.a * fv.A + params.b * fv.A**2) + 0.5 * params.lam * fv.C - fv.B / params.p


def nehari_residual(fv: FunctionalTriple, params: KirchhoffParams) -> float:
    """``J'(u)u = bA² + aA + λC - B``."""
    return params.b * fv.A**2 + params.a * fv.A + params.lam * fv.C - fv.B


def manifold_energy(A: float, params: KirchhoffParams) -> float:
    """Energy of any function on the Pohozaev manifold as a function of its ``A`` alone."""
    N = params.N
    return params.a / N * A + (4 - N) * params.b / (4 * N) * A * A


def trichotomy_threshold(params: KirchhoffParams) -> float:
    """``2a/((N-4)b)``, separating the three Pohozaev parts by the value of ``A`` (N >= 5)."""
    if params.N < 5:
        raise DimensionTooLowError("the A-trichotomy needs N >= 5")
    return 2 * params.a / ((params.N - 4) * params.b)


def fibering_F(fv: FunctionalTriple, params: KirchhoffParams, t: float) -> tuple[float, float, float]:
    """``F(t) = E(u(t·))`` and its first two derivatives."""
    if not t > 0:
        raise NonpositiveTError(f"t must be positive, got {t}")
    N = params.N
    c1 = 0.25 * params.b * fv.A**2
    c2 = 0.5 * params.a * fv.A
    c3 = 0.5 * params.lam * fv.C - fv.B / params.p
    F = c1 * t ** (4 - 2 * N) + c2 * t ** (2 - N) + c3 * t ** (-N)
    F1 = c1 * (4 - 2 * N) * t ** (3 - 2 * N) + c2 * (2 - N) * t ** (1 - N) - N * c3 * t ** (-N - 1)
    F2 = (
        c1 * (4 - 2 * N) * (3 - 2 * N) * t ** (2 - 2 * N)
        + c2 * (2 - N) * (1 - N) * t ** (-N)
        + N * (N + 1) * c3 * t ** (-N - 2)
    )
    return F, F1, F2


def fibering_G(fv: FunctionalTriple, params: KirchhoffParams, t: float) -> tuple[float, float, float]:
    """``G(t) = E(t u)`` and its first two derivatives; ``G'(t) = t g(t)``."""
    if not t > 0:
        raise NonpositiveTError(f"t must be positive, got {t}")
    p = params.p
    q = params.b * fv.A**2
    m = params.a * fv.A + params.lam * fv.C
    G = 0.25 * q * t**4 + 0.5 * m * t * t - fv.B * t**p / p
    G1 = q * t**3 + m * t - fv.B * t ** (p - 1)
    G2 = 3 * q * t * t + m - (p - 1) * fv.B * t ** (p - 2)
    return G, G1, G2


def _g(fv, params, t):
    return params.b * fv.A**2 * t * t - fv.B * t ** (params.p - 2) + params.a * fv.A + params.lam * fv.C


def _trichotomy_side(fv, params, tol):
    thr = trichotomy_threshold(params)
    d = fv.A - thr
    if abs(d) <= tol * thr:
        return "="
    return "<" if d < 0 else ">"


def classify_pohozaev(
    fv: FunctionalTriple,
    params: KirchhoffParams,
    tol_class: float = DEFAULT_TOL_CLASS,
    psi_tol: float = DEFAULT_PSI_TOL,
) -> FiberingReport:
    """Place ``u`` in ``M^-``, ``M^0``, ``M^+`` or off the Pohozaev manifold.

    ``|Ψ| <= psi_tol * scale`` admits ``u`` to the manifold and
    ``|F''(1)| <= tol_class * scale`` counts as ``M^0``, where ``scale`` is
    ``bA² + aA + λC + B``.  For ``N >= 5`` the side of ``A`` relative to
    ``2a/((N-4)b)`` is reported as well, together with whether it agrees with
    the second-derivative label.
    """
    scale = _scale(fv, params)
    rep = FiberingReport(kind="pohozaev-dilation", classification=Classification.OFF_MANIFOLD, tolerance_used=tol_class)
    if params.N >= 5:
        rep.trichotomy = _trichotomy_side(fv, params, tol_class)
    if abs(pohozaev_psi(fv, params)) > psi_tol * scale:
        return rep
    _, _, F2 = fibering_F(fv, params, 1.0)
    sign = _sign(F2, tol_class * scale)
    rep.classification = {-1: Classification.M_MINUS, 0: Classification.M_ZERO, 1: Classification.M_PLUS}[sign]
    if rep.trichotomy is not None:
        expected = {"<": Classification.M_MINUS, "=": Classification.M_ZERO, ">": Classification.M_PLUS}
        rep.consistent = expected[rep.trichotomy] is rep.classification
    return rep


def classify_nehari(
    fv: FunctionalTriple,
    params: KirchhoffParams,
    tol_class: float = DEFAULT_TOL_CLASS,
    residual_tol: float = DEFAULT_PSI_TOL,
) -> FiberingReport:
    """Place ``u`` in ``N^-``, ``N^0``, ``N^+`` by the sign of ``G''(1)``."""
    scale = _scale(fv, params)
    rep = FiberingReport(kind="nehari-amplitude", classification=Classification.OFF_MANIFOLD, tolerance_used=tol_class)
    if abs(nehari_residual(fv, params)) > residual_tol * scale:
        return rep
    _, _, G2 = fibering_G(fv, params, 1.0)
    sign = _sign(G2, tol_class * scale)
    rep.classification = {-1: Classification.N_MINUS, 0: Classification.N_ZERO, 1: Classification.N_PLUS}[sign]
    return rep


def _bisect(f, lo, hi, rtol=1e-14, maxiter=400):
    """Plain bisection on a sign change of ``f`` over ``[lo, hi]``."""
    flo = f(lo)
    if flo == 0:
        return lo
    if flo * f(hi) > 0:
        raise InvalidInputError("bisection bracket does not straddle a root")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or (hi - lo) <= rtol * abs(mid):
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def F_ab(A_grad: float, params: KirchhoffParams) -> float:
    """``min_γ aγ² + bAγ^{4-N}`` in closed form (N >= 5)."""
    N = params.N
    if N < 5:
        raise DimensionTooLowError("F_ab is defined for N >= 5")
    if not A_grad > 0:
        raise InvalidInputError("A must be positive")
    a, b = params.a, params.b
    return ((N - 4) * b * A_grad / 2) ** (2 / (N - 2)) * (N - 2) * a ** ((N - 4) / (N - 2)) / (N - 4)


def _c_gap(fv, params):
    return fv.B / params.p - 0.5 * params.lam * fv.C


def B_of_u(fv: FunctionalTriple, params: KirchhoffParams) -> float:
    """Dilation-invariant ratio with ``B(u) = F_ab(A of u(t_0·))``.

    Requires ``B/p - λC/2 > 0`` and ``N >= 5``.
    """
    N = params.N
    if N < 5:
        raise DimensionTooLowError("B(u) is defined for N >= 5")
    gap = _c_gap(fv, params)
    if not gap > 0:
        raise NotInCError("B/p - lambda*C/2 must be positive")
    a, b = params.a, params.b
    num = (N - 2) ** 2 * a ** ((N - 4) / (N - 2)) * b ** (2 / (N - 2)) * fv.A ** (N / (N - 2))
    den = 2 ** (N / (N - 2)) * N * (N - 4) ** ((N - 4) / (N - 2)) * gap
    return num / den


def optimal_dilation(fv: FunctionalTriple, params: KirchhoffParams) -> float | None:
    """``t_0`` with ``u(t_0·)`` on the local Pohozaev manifold, or None when ``u`` is outside ``C``."""
    gap = _c_gap(fv, params)
    if not gap > 0:
        return None
    N = params.N
    return math.sqrt(gap / ((N - 2) / (2 * N) * fv.A))


def _f2_roots(a: float, bA: float, N: int) -> tuple[list[float], bool]:
    """Positive roots of ``1 - bA s^{4-N} - a s²``, and whether the double root occurred."""
    if N == 3:
        return [2.0 / (bA + math.sqrt(bA * bA + 4 * a))], False
    if N == 4:
        return ([math.sqrt((1 - bA) / a)] if bA < 1 - TANGENT_BAND else []), False
    s0 = ((N - 4) * bA / (2 * a)) ** (1 / (N - 2))
    mn = a * s0 * s0 * (N - 2) / (N - 4)

    def f2(s):
        return 1.0 - bA * s ** (4 - N) - a * s * s

    if abs(mn - 1.0) <= TANGENT_BAND:
        return [s0], True
    if mn > 1.0:
        return [], False
    left = _bisect(f2, s0 * 1e-8, s0)
    hi = 2 * s0
    while f2(hi) > 0:
        hi *= 2
    right = _bisect(f2, s0, hi)
    return [left, right], False


def dilation_critical_points(
    fv: FunctionalTriple, params: KirchhoffParams, tol_class: float = DEFAULT_TOL_CLASS
) -> FiberingReport:
    """All ``t > 0`` with ``u(t·)`` on the Pohozaev manifold.

    With ``t_0`` the optimal local dilation and ``A_0`` the gradient integral of
    ``u(t_0·)``, the critical dilations are ``t_0 s`` for the roots ``s`` of
    ``1 - bA_0 s^{4-N} - a s² = 0``.
    """
    rep = classify_pohozaev(fv, params, tol_class=tol_class)
    rep.tolerance_used = tol_class
    t0 = optimal_dilation(fv, params)
    if t0 is None:
        return rep
    rep.t_zero = t0
    A0 = fv.dilated(t0).A
    if params.N >= 5:
        rep.ratio = B_of_u(fv, params)
    roots, _ = _f2_roots(params.a, params.b * A0, params.N)
    for s in roots:
        t = t0 * s
        ft = fv.dilated(t)
        _, _, F2 = fibering_F(ft, params, 1.0)
        sign = _sign(F2, tol_class * _scale(ft, params))
        rep.critical_points.append((t, sign))
        rep.labels.append({-1: Classification.M_MINUS, 0: Classification.M_ZERO, 1: Classification.M_PLUS}[sign])
    return rep


def amplitude_critical_points(
    fv: FunctionalTriple, params: KirchhoffParams, tol_class: float = DEFAULT_TOL_CLASS
) -> FiberingReport:
    """All ``t > 0`` with ``t u`` on the Nehari manifold, for ``2 < p <= 4``.

    For ``p < 4`` the function ``g(t) = bA²t² - Bt^{p-2} + aA + λC`` falls
    until ``t* = ((p-2)B/(2bA²))^{1/(4-p)}`` and rises afterwards, so two roots
    exist when its minimum ``g(t*)`` is negative.  For ``p = 4`` the single root
    ``sqrt((aA+λC)/(B - bA²))`` exists when ``bA² < B``.
    """
    p = params.p
    if p > 4 or p >= critical_exponent(params.N):
        raise ExponentOutOfRangeError("amplitude fibering analysis needs 2 < p <= 4")
    if not fv.B > 0:
        raise ZeroBError("B must be positive")
    rep = classify_nehari(fv, params, tol_class=tol_class)
    q = params.b * fv.A**2
    m = params.a * fv.A + params.lam * fv.C
    roots: list[float] = []
    if p == 4:
        rep.ratio = q - fv.B
        if q < fv.B:
            roots = [math.sqrt(m / (fv.B - q))]
    else:
        t_star = ((p - 2) * fv.B / (2 * q)) ** (1 / (4 - p))
        rep.t_zero = t_star
        depth = m - (4 - p) / 2 * t_star ** (p - 2) * fv.B
        rep.ratio = depth
        scale = _scale(fv, params)
        if abs(depth) <= TANGENT_BAND * scale:
            roots = [t_star]
        elif depth < 0:

            def g(t):
                return _g(fv, params, t)

            lo = _bisect(g, t_star * 1e-12, t_star)
            hi = 2 * t_star
            while g(hi) < 0:
                hi *= 2
            roots = [lo, _bisect(g, t_star, hi)]
    for t in roots:
        ft = fv.amplified(t)
        _, _, G2 = fibering_G(ft, params, 1.0)
        sign = _sign(G2, tol_class * _scale(ft, params))
        rep.critical_points.append((t, sign))
        rep.labels.append({-1: Classification.N_MINUS, 0: Classification.N_ZERO, 1: Classification.N_PLUS}[sign])
    return rep


def rayleigh_quotient(fv: FunctionalTriple, a: float, lam: float, p: float) -> float:
    """``(aA + λC)/B^{2/p}``, invariant under ``u ↦ s u``."""
    if not fv.B > 0:
        raise ZeroBError("B must be positive")
    return (a * fv.A + lam * fv.C) / fv.B ** (2 / p)
