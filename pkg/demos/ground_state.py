"""Solve the local ground state for a few (N, p) and show the rescaling law.

Run with ``python3 demos/ground_state.py``.
"""

from kirchhoff_radial import GroundStateSpec, local_identity_report, rescale_profile, solve_profile


def main():
    print(f"{'N':>2} {'p':>5} {'beta':>14} {'A':>14} {'B':>14} {'C':>14}  max local residual")
    for N, p in [(3, 3.0), (3, 4.0), (4, 3.0), (5, 2.2), (6, 2.2)]:
        U = solve_profile(GroundStateSpec(N=N, p=p))
        f = U.functionals
        rep = local_identity_report(U)
        worst = max(abs(rep.nehari), abs(rep.pohozaev))
        print(f"{N:>2} {p:>5} {U.beta:14.10f} {f.A:14.6f} {f.B:14.6f} {f.C:14.6f}  {worst:.1e}")

    # U_lam(r) = lam^{1/(p-2)} U_1(sqrt(lam) r), so for N=3, p=4 the gradient norm doubles at lam=4
    U1 = solve_profile(GroundStateSpec(N=3, p=4.0))
    U4 = rescale_profile(U1, 4.0)
    direct = solve_profile(GroundStateSpec(N=3, p=4.0, lam=4.0))
    print()
    print(f"A(lam=4) / A(lam=1) = {U4.functionals.A / U1.functionals.A:.12f}")
    print(f"rescaled vs direct shot, relative A gap = {abs(U4.functionals.A / direct.functionals.A - 1):.1e}")


if __name__ == "__main__":
    main()
