"""Build both N=5 solutions and run the full identity suite on each.

A 0.1% amplitude bump is enough to break the Pohozaev and Nehari checks,
which is a quick sanity test that the suite is not vacuous.

Run with ``python3 demos/verify_solutions.py``.
"""

from kirchhoff_radial import (
    GroundStateSpec,
    KirchhoffParams,
    build_solutions,
    identity_suite,
    sobolev_constant,
    solve_profile,
)


def main():
    U1 = solve_profile(GroundStateSpec(N=5, p=2.2))
    par = KirchhoffParams(5, 2.2, 2.0, 0.25 / U1.functionals.A, 1.0)
    S = sobolev_constant(5)
    print(f"Sobolev constant S(5) = {S.S_value:.12f}")
    for sol in build_solutions(par, U1).solutions:
        rep = identity_suite(sol, par, S)
        tag = "ground state" if sol.is_ground_state else "excited"
        print(f"\ngamma={sol.gamma:.12f}  {sol.classification.value}  {tag}  E={sol.energy:.6g}")
        for name, c in sorted(rep.checks.items()):
            print(f"   {name:22s} {c.value: .3e}  {'ok' if c.passed else 'FAIL'}")
        bumped = identity_suite(sol.profile.scale(1.001), par, S)
        print(f"   after 0.1% bump, failing: {', '.join(bumped.failing())}")


if __name__ == "__main__":
    main()
