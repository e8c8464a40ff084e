"""Bifurcation tables in ``b`` at fixed ``(N, p, a, λ)``."""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError
from .ground_state import RadialProfile, rescale_profile
from .scaling import classify_existence, critical_b, solve_gamma
from .variational import KirchhoffParams, classify_pohozaev, energy_E

__all__ = ["b_grid", "sweep_row", "sweep_table"]


def b_grid(b_min: float, b_max: float, steps: int, log: bool = False) -> np.ndarray:
    """Increasing grid of ``b`` values; ``b_min == b_max`` gives a single row."""
    if not (b_min > 0 and b_max > 0):
        raise InvalidInputError("sweep range must be positive")
    if b_max < b_min:
        raise InvalidInputError("b_min must not exceed b_max")
    if b_min == b_max:
        return np.array([float(b_min)])
    if steps < 2:
        raise InvalidInputError("a nondegenerate sweep needs at least two steps")
    if log:
        out = np.geomspace(b_min, b_max, steps)
    else:
        out = np.linspace(b_min, b_max, steps)
    # pin the endpoints so that b_min / b_max land exactly on requested values
    out[0], out[-1] = b_min, b_max
    return out


def sweep_row(params: KirchhoffParams, A_U: float, fv_U) -> dict:
    """One table row; per-solution columns only for the roots that exist."""
    ex = classify_existence(params, A_U)
    roots = solve_gamma(params.a, params.b, A_U, params.N).roots
    row = {"b": params.b, "count": ex.count, "threshold": ex.threshold_value}
    for i, g in enumerate(roots, start=1):
        fv = fv_U.dilated(g)
        row[f"gamma_{i}"] = g
        row[f"A_{i}"] = fv.A
        row[f"E_{i}"] = energy_E(fv, params)
        row[f"class_{i}"] = classify_pohozaev(fv, params).classification.value
    return row


def sweep_table(
    N: int,
    p: float,
    a: float,
    lam: float,
    b_values,
    base_U1: RadialProfile,
) -> tuple[list[dict], dict]:
    """Rows for every ``b`` plus metadata (``critical_b`` among it).

    Only scalar algebra happens per row; the profile enters through its
    gradient integral.
    """
    U = rescale_profile(base_U1, lam)
    fv_U = U.functionals
    rows = [sweep_row(KirchhoffParams(N, p, a, float(b), lam), fv_U.A, fv_U) for b in b_values]
    meta = {
        "N": N,
        "p": p,
        "a": a,
        "lambda": lam,
        "A_U": fv_U.A,
        "critical_b": critical_b(a, fv_U.A, N),
    }
    return rows, meta
