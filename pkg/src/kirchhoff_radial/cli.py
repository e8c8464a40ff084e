"""Command-line front end.

Subcommands: ``ground-state``, ``solve``, ``classify``, ``sweep``, ``verify``.

Exit status: 0 success, 2 invalid input or unreadable file, 3 solver failure,
4 verification failure.  Errors go to stderr as a one-line JSON object.
"""

from __future__ import annotations

import argparse
import functools
import json
import sys
from pathlib import Path

from . import __version__
from .errors import InvalidInputError, KirchhoffError, ProfileFormatError, SolverError
from .ground_state import GroundStateSpec, local_identity_report, rescale_profile, solve_base_profile
from .io import dump_json, read_profile, sweep_to_csv, sweep_to_json, write_profile
from .scaling import KirchhoffSolution, build_solutions, classify_existence, critical_b, solve_gamma
from .sweep import b_grid, sweep_table
from .variational import KirchhoffParams, classify_pohozaev, energy_E
from .verification import identity_suite

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3
EXIT_VERIFY = 4


@functools.lru_cache(maxsize=None)
def cached_base(N: int, p: float, ode_rel_tol: float = 1e-10):
    """``U_1`` for ``(N, p)``, solved once per process."""
    return solve_base_profile(GroundStateSpec(N=N, p=p, lam=1.0, ode_rel_tol=ode_rel_tol))


def _tol(args) -> float:
    return args.tol if args.tol is not None else 1e-10


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def _resolve_b(args, A_U: float) -> float:
    if (args.b is None) == (args.bA is None):
        raise InvalidInputError("give exactly one of --b and --bA")
    return args.b if args.b is not None else args.bA / A_U


def _params(args, base) -> KirchhoffParams:
    A_U = rescale_profile(base, args.lam).functionals.A
    return KirchhoffParams(args.N, args.p, args.a, _resolve_b(args, A_U), args.lam)


def cmd_ground_state(args) -> int:
    base = cached_base(args.N, args.p, _tol(args))
    prof = rescale_profile(base, args.lam)
    res = local_identity_report(prof)
    if args.out:
        write_profile(prof, args.out)
    summary = {
        "N": prof.N,
        "p": prof.p,
        "lambda": prof.lam,
        "beta": prof.beta,
        "r_max": prof.r_max,
        "functionals": prof.functionals.as_dict(),
        "residuals": {"nehari": res.nehari, "pohozaev": res.pohozaev},
        "error_estimate": prof.error_estimate,
        "segments": prof.segments,
    }
    sys.stdout.write(dump_json(summary))
    return EXIT_OK if res.passed else EXIT_VERIFY


def _profile_paths(template: str, n: int) -> list[Path]:
    if n <= 1:
        return [Path(template.format(i=1))]
    if "{i}" in template:
        return [Path(template.format(i=i)) for i in range(1, n + 1)]
    p = Path(template)
    return [p.with_name(f"{p.stem}_{i}{p.suffix}") for i in range(1, n + 1)]


def _solution_extra(params: KirchhoffParams, sol: KirchhoffSolution) -> dict:
    return {"a": params.a, "b": params.b, "gamma": sol.gamma}


def cmd_solve(args) -> int:
    base = cached_base(args.N, args.p, _tol(args))
    params = _params(args, base)
    ss = build_solutions(params, base)
    sols = []
    for sol in ss.solutions:
        rep = identity_suite(sol, params)
        sols.append(
            {
                "gamma": sol.gamma,
                "A": sol.functionals.A,
                "B": sol.functionals.B,
                "C": sol.functionals.C,
                "E": sol.energy,
                "classification": sol.classification.value,
                "is_ground_state": sol.is_ground_state,
                "residuals": rep.as_dict(),
                "passed": rep.passed,
            }
        )
    if args.profile_out and ss.solutions:
        for path, sol in zip(_profile_paths(args.profile_out, len(ss.solutions)), ss.solutions):
            write_profile(sol.profile, path, _solution_extra(params, sol))
    report = {
        "params": params.as_dict(),
        "A_U": ss.U_lambda.functionals.A,
        "regime": ss.existence.regime.value,
        "count": ss.existence.count,
        "threshold_value": ss.existence.threshold_value,
        "critical_b": ss.existence.critical_b,
        "gamma_roots": list(ss.roots.roots),
        "solutions": sols,
    }
    _emit(dump_json(report), args.out)
    return EXIT_OK if all(s["passed"] for s in sols) else EXIT_VERIFY


def cmd_classify(args) -> int:
    base = cached_base(args.N, args.p, _tol(args))
    params = _params(args, base)
    A_U = rescale_profile(base, params.lam).functionals.A
    ex = classify_existence(params, A_U)
    roots = solve_gamma(params.a, params.b, A_U, params.N)
    out = ex.as_dict()
    out.update({"A_U": A_U, "gamma_roots": list(roots.roots), "gamma_star": roots.gamma_star, "h_min": roots.h_min})
    _emit(dump_json(out), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    base = cached_base(args.N, args.p, _tol(args))
    bs = b_grid(args.b_min, args.b_max, args.steps, args.log)
    if args.relative:
        A_U = rescale_profile(base, args.lam).functionals.A
        bc = critical_b(args.a, A_U, args.N)
        if bc is None:
            raise InvalidInputError("--relative needs N >= 4 (no existence boundary for N = 3)")
        # a multiple of exactly 1 lands on critical_b exactly
        bs = bs * bc
    rows, meta = sweep_table(args.N, args.p, args.a, args.lam, bs, base)
    text = sweep_to_json(rows, meta) if args.format == "json" else sweep_to_csv(rows, meta)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    profile, header = read_profile(args.profile, use_header_functionals=False)
    for flag, key in (("N", "N"), ("p", "p")):
        given = getattr(args, flag)
        if given is not None and float(given) != float(header[key]):
            raise InvalidInputError(f"--{flag} {given} does not match the profile header ({header[key]})")

    def pick(value, key):
        if value is not None:
            return value
        if key in header:
            return header[key]
        raise InvalidInputError(f"--{key} is required (not in the profile header)")

    params = KirchhoffParams(
        profile.N,
        profile.p,
        pick(args.a, "a"),
        pick(args.b, "b"),
        pick(args.lam, "lambda"),
    )
    fv = profile.functionals
    sol = KirchhoffSolution(
        gamma=header.get("gamma", float("nan")),
        profile=profile,
        functionals=fv,
        energy=energy_E(fv, params),
        classification=classify_pohozaev(fv, params).classification,
    )
    rep = identity_suite(sol, params)
    _emit(dump_json(rep.as_dict()), args.out)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def _add_problem(sp, need_ab=True):
    sp.add_argument("--N", type=int, required=True, help="dimension (>= 3)")
    sp.add_argument("--p", type=float, required=True, help="exponent in (2, 2N/(N-2))")
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0, help="potential constant (default 1)")
    sp.add_argument("--tol", type=float, default=None, help="integrator relative tolerance (default 1e-10)")
    if need_ab:
        sp.add_argument("--a", type=float, default=1.0, help="local coefficient (default 1)")


def _add_b(sp):
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--b", type=float, help="nonlocal coefficient")
    g.add_argument("--bA", type=float, help="give b through the product b*A_U")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kirchhoff-radial",
        description="Positive radial solutions of the autonomous Kirchhoff equation.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ground-state", help="solve the local ground state U_lambda")
    _add_problem(sp, need_ab=False)
    sp.add_argument("--out", help="write the profile CSV here")
    sp.set_defaults(func=cmd_ground_state)

    sp = sub.add_parser("solve", help="construct every positive radial solution")
    _add_problem(sp)
    _add_b(sp)
    sp.add_argument("--out", help="write the JSON report here instead of stdout")
    sp.add_argument("--profile-out", help="write solution profiles (CSV); '{i}' or _i suffix numbers them")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("classify", help="existence regime and root count")
    _add_problem(sp)
    _add_b(sp)
    sp.add_argument("--out", help="write the JSON report here instead of stdout")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("sweep", help="tabulate solutions over a range of b")
    _add_problem(sp)
    sp.add_argument("--b-min", type=float, required=True)
    sp.add_argument("--b-max", type=float, required=True)
    sp.add_argument("--steps", type=int, default=11)
    sp.add_argument("--log", action="store_true", help="geometric spacing")
    sp.add_argument("--relative", action="store_true", help="b-min/b-max are multiples of critical_b")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", help="write the table here instead of stdout")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the identity suite on a profile file")
    sp.add_argument("profile", help="profile CSV")
    sp.add_argument("--N", type=int, default=None, help="must match the header if given")
    sp.add_argument("--p", type=float, default=None, help="must match the header if given")
    sp.add_argument("--a", type=float, default=None, help="default: header value")
    sp.add_argument("--b", type=float, default=None, help="default: header value")
    sp.add_argument("--lambda", dest="lam", type=float, default=None, help="default: header value")
    sp.add_argument("--out", help="write the JSON report here instead of stdout")
    sp.set_defaults(func=cmd_verify)
    return ap


def _fail(exc: Exception, code: int) -> int:
    name = type(exc).__name__
    if name.endswith("Error"):
        name = name[: -len("Error")]
    sys.stderr.write(json.dumps({"error": name, "message": str(exc)}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError, ProfileFormatError) as exc:
        return _fail(exc, EXIT_INVALID)
    except SolverError as exc:
        return _fail(exc, EXIT_SOLVER)
    except KirchhoffError as exc:
        return _fail(exc, EXIT_INVALID)
    except OSError as exc:
        return _fail(exc, EXIT_INVALID)


if __name__ == "__main__":
    sys.exit(main())
