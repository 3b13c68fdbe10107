"""Exact solvers for the square linear sum assignment problem.

``solve_assignment`` is an O(K^3) successive-shortest-augmenting-path
implementation of the Hungarian method with row/column potentials.
``brute_force_assignment`` enumerates all K! permutations and serves as
the testing oracle for small K.

Both solvers are deterministic; randomized tie handling between
co-optimal permutations belongs to callers (the matching layer shuffles
its input before solving).
"""

from __future__ import annotations

import itertools

import numpy as np

__all__ = [
    "solve_assignment",
    "brute_force_assignment",
    "assignment_value",
    "identity_permutation",
    "inverse_permutation",
    "is_permutation",
]

_SENSES = ("minimize", "maximize")
_BRUTE_FORCE_MAX_K = 8


def _as_square_matrix(score) -> np.ndarray:
    score = np.asarray(score, dtype=float)
    if score.ndim != 2 or score.shape[0] != score.shape[1] or score.shape[0] == 0:
        raise ValueError(f"score must be a non-empty square matrix, got shape {score.shape}")
    if not np.all(np.isfinite(score)):
        raise ValueError("score matrix contains non-finite entries")
    return score


def _check_sense(sense: str) -> None:
    if sense not in _SENSES:
        raise ValueError(f"sense must be one of {_SENSES}, got {sense!r}")


def solve_assignment(score, sense: str = "minimize") -> np.ndarray:
    """Permutation optimizing sum(score[k, perm[k]]) in the given sense.

    Returns a 1-based int array: row k is matched to column perm[k-1].
    The achieved objective equals the exhaustive optimum; when several
    permutations tie, which one is returned depends only on the input
    (no internal randomness).
    """
    score = _as_square_matrix(score)
    _check_sense(sense)
    cost = score if sense == "minimize" else -score
    return _shortest_path_assignment(cost) + 1


def _shortest_path_assignment(cost: np.ndarray) -> np.ndarray:
    """Min-cost perfect matching via successive shortest augmenting paths.

    Dual potentials (u, v) keep reduced costs non-negative, so each of
    the K augmentations is a single Dijkstra pass: O(K^3) overall.
    Column index K acts as the virtual root of each alternating tree.
    """
    n = cost.shape[0]
    u = np.zeros(n)
    v = np.zeros(n)
    col_row = np.full(n + 1, -1, dtype=np.int64)  # row matched to each column; n = virtual root
    for row in range(n):
        col_row[n] = row
        j0 = n
        min_reduced = np.full(n, np.inf)
        prev_col = np.full(n, n, dtype=np.int64)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            active_row = col_row[j0]
            free = ~used[:n]
            free_idx = np.flatnonzero(free)
            reduced = cost[active_row, free_idx] - u[active_row] - v[free_idx]
            better = reduced < min_reduced[free_idx]
            min_reduced[free_idx[better]] = reduced[better]
            prev_col[free_idx[better]] = j0
            j1 = free_idx[np.argmin(min_reduced[free_idx])]
            delta = min_reduced[j1]
            in_tree = used[:n]
            u[col_row[:n][in_tree]] += delta
            u[row] += delta
            v[in_tree] -= delta
            min_reduced[~in_tree] -= delta
            j0 = j1
            if col_row[j0] == -1:
                break
        while j0 != n:  # augment along the recorded alternating path
            j_prev = prev_col[j0]
            col_row[j0] = col_row[j_prev]
            j0 = j_prev
    perm = np.empty(n, dtype=np.int64)
    perm[col_row[:n]] = np.arange(n)
    return perm


def brute_force_assignment(score, sense: str = "minimize") -> np.ndarray:
    """Exhaustive assignment oracle for K <= 8.

    Ties break deterministically: permutations are enumerated in
    lexicographic order and the first optimum wins.
    """
    score = _as_square_matrix(score)
    _check_sense(sense)
    k = score.shape[0]
    if k > _BRUTE_FORCE_MAX_K:
        raise ValueError(f"brute force is limited to K <= {_BRUTE_FORCE_MAX_K}, got K={k}")
    perms = np.array(list(itertools.permutations(range(k))), dtype=np.int64)
    values = score[np.arange(k), perms].sum(axis=1)
    best = values.min() if sense == "minimize" else values.max()
    first = int(np.flatnonzero(values == best)[0])
    return perms[first] + 1


def assignment_value(score, perm) -> float:
    """Objective sum(score[k, perm[k]]) for a 1-based permutation."""
    score = np.asarray(score, dtype=float)
    perm = np.asarray(perm, dtype=np.int64)
    return float(score[np.arange(score.shape[0]), perm - 1].sum())


def identity_permutation(k: int) -> np.ndarray:
    return np.arange(1, k + 1, dtype=np.int64)


def inverse_permutation(perm) -> np.ndarray:
    """Inverse of a 1-based permutation array."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm - 1] = np.arange(1, perm.size + 1, dtype=np.int64)
    return inv


def is_permutation(perm) -> bool:
    perm = np.asarray(perm)
    return perm.ndim == 1 and np.array_equal(np.sort(perm), np.arange(1, perm.size + 1))
