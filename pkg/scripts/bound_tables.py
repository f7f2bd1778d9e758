"""Print the closed-form bound tables for quick reference.

Usage: python scripts/bound_tables.py [--d-max 7] [--p-max 8]
"""

import argparse

from fihom import chain_cube_min, cohomology_bounds, conf_bounds


def conf_table(d_max, p_max):
    print("configuration spaces: t0 bounds (stated / body variant)")
    header = "  p\\d " + "".join("%9d" % d for d in range(3, d_max + 1))
    print(header)
    for p in range(2, p_max + 1):
        cells = []
        for d in range(3, d_max + 1):
            s = conf_bounds(p, d, variant="stated").t0_bound
            b = conf_bounds(p, d, variant="body").t0_bound
            cells.append("%9s" % ("%d / %d" % (s, b)))
        print("  %3d " % p + "".join(cells))


def cohomology_table(d_max, p_max, u):
    print("cohomology of chain cubes at u = %d: t0 bounds" % u)
    print("  p\\d " + "".join("%5d" % d for d in range(3, d_max + 1)))
    for p in range(0, p_max + 1):
        row = [cohomology_bounds(p, d, u).t0_bound for d in range(3, d_max + 1)]
        print("  %3d " % p + "".join("%5d" % v for v in row))


def cube_table(d_max, n_max, u):
    print("chain cube partition minima at u = %d" % u)
    print("  n\\d " + "".join("%5d" % d for d in range(3, d_max + 1)))
    for n in range(1, n_max + 1):
        row = []
        for d in range(3, d_max + 1):
            if n >= 2 and u + 1 > d - 1:
                row.append("    -")
            else:
                row.append("%5d" % chain_cube_min(n, d, u))
        print("  %3d " % n + "".join(row))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=7)
    ap.add_argument("--p-max", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--u", type=int, default=0)
    args = ap.parse_args()
    conf_table(args.d_max, args.p_max)
    print()
    cohomology_table(args.d_max, args.p_max, args.u)
    print()
    cube_table(args.d_max, args.n_max, args.u)


if __name__ == "__main__":
    main()
