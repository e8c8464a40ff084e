"""Plain-text formats: profile CSV, sweep tables and JSON reports.

Every float is written with 17 significant digits in the ``C`` locale style
(``.`` decimal separator), so a write/read cycle is lossless and identical
inputs give byte-identical files.
"""

from __future__ import annotations

import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import ProfileFormatError
from .ground_state import FunctionalTriple, RadialProfile

__all__ = [
    "dump_json",
    "fmt",
    "profile_to_csv",
    "read_profile",
    "sweep_to_csv",
    "sweep_to_json",
    "write_profile",
]

_REQUIRED = ("N", "p", "lambda", "beta", "r_max")
_OPTIONAL = ("A", "B", "C", "a", "b", "gamma")


def fmt(x) -> str:
    """17 significant digits, independent of locale."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x) + 0.0, ".17g")  # + 0.0 folds -0 into 0


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return float(format(x, ".17g"))
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dump_json(obj) -> str:
    """Stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def profile_to_csv(profile: RadialProfile, extra: dict | None = None) -> str:
    """Serialize a profile.

    The required header carries ``N``, ``p``, ``lambda``, ``beta`` and
    ``r_max``.  The functional triple follows as ``A``, ``B``, ``C`` so that a
    read-back profile keeps the integrator values; ``extra`` may add ``a``,
    ``b`` and ``gamma`` for Kirchhoff solutions.
    """
    f = profile.functionals
    head = {
        "N": profile.N,
        "p": profile.p,
        "lambda": profile.lam,
        "beta": profile.beta,
        "r_max": profile.r_max,
        "A": f.A,
        "B": f.B,
        "C": f.C,
    }
    for k, v in (extra or {}).items():
        if k not in _OPTIONAL:
            raise ValueError(f"unknown header key {k!r}")
        head[k] = v
    buf = io.StringIO()
    for k, v in head.items():
        buf.write(f"# {k}={fmt(v)}\n")
    buf.write("r,u,du\n")
    for r, u, du in zip(profile.r, profile.u, profile.du):
        buf.write(f"{fmt(r)},{fmt(u)},{fmt(du)}\n")
    return buf.getvalue()


def write_profile(profile: RadialProfile, path, extra: dict | None = None) -> None:
    Path(path).write_text(profile_to_csv(profile, extra), encoding="ascii")


def _parse_float(text, what):
    try:
        return float(text)
    except ValueError as exc:
        raise ProfileFormatError(f"cannot parse {what}: {text!r}") from exc


def read_profile(path, use_header_functionals: bool = True) -> tuple[RadialProfile, dict]:
    """Read a profile CSV.

    Returns the profile and the header as a dict of floats (``N`` as int).  The
    integrals come from the ``A``/``B``/``C`` header when present and
    ``use_header_functionals`` is set; otherwise they are recomputed by
    quadrature from the data rows, which is what a verifier wants.
    """
    try:
        lines = Path(path).read_text(encoding="ascii").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise ProfileFormatError(f"cannot read profile file {path}: {exc}") from exc
    header: dict = {}
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        body = lines[i][1:].strip()
        if "=" not in body:
            raise ProfileFormatError(f"malformed header line {i + 1}: {lines[i]!r}")
        key, val = (s.strip() for s in body.split("=", 1))
        header[key] = _parse_float(val, f"header {key}")
        i += 1
    missing = [k for k in _REQUIRED if k not in header]
    if missing:
        raise ProfileFormatError(f"missing header fields: {', '.join(missing)}")
    if i >= len(lines) or lines[i].strip().replace(" ", "") != "r,u,du":
        raise ProfileFormatError("expected column header 'r,u,du'")
    rows = [ln for ln in lines[i + 1 :] if ln.strip()]
    data = np.empty((len(rows), 3))
    for k, ln in enumerate(rows):
        parts = ln.split(",")
        if len(parts) != 3:
            raise ProfileFormatError(f"row {k + 1} has {len(parts)} columns, expected 3")
        data[k] = [_parse_float(s, f"row {k + 1}") for s in parts]
    if not np.all(np.isfinite(data)):
        raise ProfileFormatError("non-finite values in data rows")
    N = header["N"]
    if N != int(N):
        raise ProfileFormatError(f"N must be an integer, got {N}")
    header["N"] = int(N)
    if data.shape[0] < 3:
        raise ProfileFormatError("profile needs at least three rows")
    if abs(data[-1, 0] - header["r_max"]) > 1e-12 * max(1.0, header["r_max"]):
        raise ProfileFormatError("r_max header does not match the last grid radius")
    functionals = None
    if use_header_functionals and all(k in header for k in ("A", "B", "C")):
        functionals = FunctionalTriple(header["A"], header["B"], header["C"], header["N"], header["p"])
    try:
        profile = RadialProfile(
            N=header["N"],
            p=header["p"],
            lam=header["lambda"],
            beta=header["beta"],
            r=data[:, 0],
            u=data[:, 1],
            du=data[:, 2],
            functionals=functionals,
        )
    except ValueError as exc:
        raise ProfileFormatError(f"invalid profile data: {exc}") from exc
    return profile, header


_SWEEP_COLUMNS = (
    "b",
    "count",
    "threshold",
    "gamma_1",
    "gamma_2",
    "A_1",
    "A_2",
    "E_1",
    "E_2",
    "class_1",
    "class_2",
)


def sweep_to_csv(rows: list[dict], meta: dict) -> str:
    """Sweep table with ``# key=value`` metadata lines (including ``critical_b``).

    Columns that a row's root count does not warrant are left empty.
    """
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={fmt(v) if not isinstance(v, str) else v}\n")
    buf.write(",".join(_SWEEP_COLUMNS) + "\n")
    for row in rows:
        cells = []
        for c in _SWEEP_COLUMNS:
            v = row.get(c)
            cells.append(v if isinstance(v, str) else fmt(v))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def sweep_to_json(rows: list[dict], meta: dict) -> str:
    return dump_json({"meta": meta, "rows": rows})
