"""Agreement indices between two labelings, computed from their count table.

``diagonal_fraction`` and ``cohen_kappa`` depend on how labels are aligned
(they read the diagonal), while ``rand_index`` and ``adjusted_rand`` are
invariant under any relabeling of either side.  Binomial terms are carried
in exact integer arithmetic and converted to float only in the final ratio,
so tables with totals up to 10^6 lose no precision.
"""

from __future__ import annotations

from .crosstab import MatchingTable

__all__ = ["diagonal_fraction", "cohen_kappa", "rand_index", "adjusted_rand"]


def _pairs2(x: int) -> int:
    return x * (x - 1) // 2


def diagonal_fraction(table: MatchingTable) -> float:
    """Fraction of observations on the main diagonal.

    Not chance-corrected: its value depends entirely on how the second
    labeling's clusters were matched to the first's.
    """
    if table.total < 1:
        raise ValueError("table must contain at least one observation")
    return float(table.counts.trace() / table.total)


def cohen_kappa(table: MatchingTable) -> float:
    """Chance-corrected diagonal agreement (p_o - p_e) / (1 - p_e).

    p_o is the observed diagonal fraction and p_e the diagonal expected
    from the marginals alone.  Exact perfect agreement with p_e = 1
    returns 1.0.  (p_e = 1 with p_o < 1 cannot arise from a genuine
    count table; it is reported as NaN as a defensive signal.)
    """
    n = table.total
    if n < 1:
        raise ValueError("table must contain at least one observation")
    p_obs = float(table.counts.trace()) / n
    p_exp = float((table.row_sums * table.col_sums).sum()) / (n * n)
    if p_exp == 1.0:
        return 1.0 if p_obs == 1.0 else float("nan")
    return (p_obs - p_exp) / (1.0 - p_exp)


def rand_index(table: MatchingTable) -> float:
    """Pair-counting agreement in [0, 1].

    The fraction of case pairs treated consistently by both labelings
    (together in both or separated in both).  Invariant under label
    permutations of either side.
    """
    n = table.total
    if n < 2:
        raise ValueError("rand index needs at least two observations")
    together_both = sum(_pairs2(int(x)) for x in table.counts.flat)
    together_rows = sum(_pairs2(int(x)) for x in table.row_sums)
    together_cols = sum(_pairs2(int(x)) for x in table.col_sums)
    all_pairs = _pairs2(n)
    return float(all_pairs + 2 * together_both - together_rows - together_cols) / all_pairs


def adjusted_rand(table: MatchingTable) -> float:
    """Chance-corrected pair-counting agreement (Hubert-Arabie form).

    Zero-centered for independent labelings, 1 for identical ones.
    A zero denominator (both sides a single cluster, or both all
    singletons) returns 0.0 so Monte-Carlo sweeps never abort on
    degenerate draws.
    """
    n = table.total
    if n < 2:
        raise ValueError("adjusted rand needs at least two observations")
    together_both = sum(_pairs2(int(x)) for x in table.counts.flat)
    together_rows = sum(_pairs2(int(x)) for x in table.row_sums)
    together_cols = sum(_pairs2(int(x)) for x in table.col_sums)
    all_pairs = _pairs2(n)
    expected = together_rows * together_cols / all_pairs
    denom = 0.5 * (together_rows + together_cols) - expected
    if denom == 0.0:
        return 0.0
    return (together_both - expected) / denom
