"""Count Kirchhoff solutions as b crosses the critical value in each dimension.

N=3 keeps one solution for every b, N=4 loses it at b*A = 1, and for
N >= 5 two solutions merge at critical_b and then disappear.

Run with ``python3 demos/bifurcation_sweep.py``.
"""

from kirchhoff_radial import GroundStateSpec, critical_b, solve_profile, sweep_table
from kirchhoff_radial.sweep import b_grid


def show(N, p, a, lo, hi):
    U1 = solve_profile(GroundStateSpec(N=N, p=p))
    # N=3 has no threshold, so measure b in units of 1/A there
    scale = critical_b(a, U1.functionals.A, N) if N >= 4 else 1 / U1.functionals.A
    rows, meta = sweep_table(N, p, a, 1.0, list(b_grid(lo * scale, hi * scale, 7, False)), U1)
    print(f"N={N} p={p} a={a}  A_U={meta['A_U']:.6g}  critical_b={meta['critical_b']}")
    for row in rows:
        kinds = ", ".join(s for s in (row.get("class_1"), row.get("class_2")) if s)
        print(f"   b/scale={row['b'] / scale:6.3f}  count={row['count']}  {kinds}")
    print()


def main():
    show(3, 4.0, 1.0, 0.5, 20.0)
    show(4, 3.0, 1.0, 0.5, 1.5)
    show(5, 2.2, 2.0, 0.5, 1.5)
    show(6, 2.2, 2.0, 0.5, 1.5)


if __name__ == "__main__":
    main()
