"""Why raw-count trace maximization misleads, and what residual matching does.

Story: a clustering procedure labels 100 cases as 99 'normal' plus one
'outlier', but the outlier is actually picked at random.  Two independent
runs rarely pick the same case, so their crosstable usually looks like
[[98, 1], [1, 0]].  Classic matching keeps the big cell on the diagonal
and reports 98% agreement for pure noise; matching on signed chi-squared
residuals instead pairs the two genuinely-above-chance cells and leaves
the diagonal weak.
"""

import numpy as np

import truematch as tm

rng = np.random.default_rng(1)

print("=" * 72)
print("Two random 99:1 labelings of the same 100 cases")
print("=" * 72)

normal = np.ones(100, dtype=int)
solution_a = normal.copy()
solution_a[17] = 2  # run 1 calls case 17 the outlier
solution_b = normal.copy()
solution_b[58] = 2  # run 2 picks a different case

table = tm.crosstab(solution_a, solution_b, 2)
print("\ncrosstable (rows: run 1, columns: run 2):")
print(table.counts)

res = tm.residuals(table)
print("\nexpected counts under independence:")
print(res.expected)
print("\nsigned chi-squared residuals (positive = above chance):")
print(res.signed)
print(f"\nchi-squared statistic: {res.chi2:.4f}")
print("""
Note the structure: the 98-cell sits *below* its expectation (98 < 98.01),
while the two 1-cells are above chance.  The only strongly negative cell
is the (outlier, outlier) zero.
""")

print("=" * 72)
print("Matching the table three ways")
print("=" * 72)
for method in ("tracemax", "truematch", "truematch-heuristic"):
    result = tm.MATCHERS[method](table, rng)
    print(f"\n{method}: column relabeling {result.perm.tolist()}")
    print(result.matched_table.counts)
    print(f"diagonal fraction after matching: {tm.diagonal_fraction(result.matched_table):.2f}")

print("""
tracemax keeps 98% of cases on the diagonal -- apparent (but spurious)
agreement.  The residual-based matchers pair each run's outlier with the
other's normal cluster, showing the agreement for what it is (2%).  The
residual matchers randomize which of the two matched pairs is presented
first, so over many runs neither orientation dominates.
""")

print("=" * 72)
print("Expected matched tables over 4000 repetitions (fractions in %)")
print("=" * 72)
for method in ("tracemax", "truematch"):
    out = tm.outlier_scenario(4000, method, np.random.default_rng(7))
    print(f"\n{method} (random-match rate {out.random_match_rate:.1%}):")
    print((out.table_share * 100).round(2))
    print(f"expected diagonal: {out.diagonal:.3f}")

print("""
The tracemax expectation piles ~98% onto the diagonal; the residual
matcher's expectation is symmetric and nearly diagonal-free.  Only truly
matched runs (both picking the same case, ~1%) contribute agreement.
""")
