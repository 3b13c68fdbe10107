"""Desk-scale sweep over cluster-size skew (p) and clusterer reliability (kappa).

Each cell simulates 300 bootstrap rounds of a fictitious two-class
clusterer: with probability driven by kappa it identifies a case's true
class; otherwise it guesses at the marginal rate.  Only in-bag cases
vote, rounds whose table would collapse to one class are redrawn, and
the per-cell uncertainty H of the final membership matrix is reported.

The question: does estimated uncertainty depend only on reliability (as
it should), or does size skew leak in through the matcher?
"""

import numpy as np

import truematch as tm

P_GRID = [0.5, 0.7, 0.9]
KAPPA_GRID = [0.0, 0.5, 1.0]


def sweep(matcher, fixed):
    base = tm.SimulationConfig(p=0.5, kappa=0.0, rounds=300, fixed=fixed,
                               matcher=matcher, seed=31)
    cells = tm.grid_sweep(P_GRID, KAPPA_GRID, base)
    return {(c.p, c.kappa): c for c in cells}


for fixed in (False, True):
    mode = "fixed sizes" if fixed else "free sizes"
    print("=" * 64)
    print(f"uncertainty H by cell ({mode}); '*' marks a degenerate cell")
    print("=" * 64)
    for matcher in ("truematch", "tracemax"):
        grid = sweep(matcher, fixed)
        print(f"\n{matcher}:")
        header = "  p \\ kappa " + "".join(f"{k:>8.1f}" for k in KAPPA_GRID)
        print(header)
        for p in P_GRID:
            row = "".join(
                f"{grid[(p, k)].uncertainty:7.3f}{'*' if grid[(p, k)].degenerate else ' '}"
                for k in KAPPA_GRID
            )
            print(f"  {p:>9.1f} {row}")
    print()

print("""
Reading the kappa=0 column: with the residual matcher, H stays ~1 bit for
every skew -- uncertainty depends on reliability alone.  Under tracemax,
H collapses as p grows (and the p=0.9 cell typically degenerates to a
single used cluster): size skew masquerades as certainty.  At kappa=1
every variant is crisp, as it should be.
""")
