"""Multiple-match cluster counting: resample, align, vote, aggregate.

Each round draws a bootstrap resample, fits a base cluster model to it,
predicts a complete label vector for all cases, aligns that vector to
the running majority estimate with a label matcher, and adds one vote
per case to the aligned column of an N x K vote matrix.  Row-normalizing
the votes yields estimated membership probabilities, whose entropy
statistics summarize how well a K-cluster model is supported: justified
structure stays crisp, unjustified splits fuzz out under a chance-neutral
matcher instead of freezing onto arbitrary columns.

Base cluster algorithms are plugged in behaviorally: any object with

    fit(data, resample_indices, k, rng) -> model
    predict(model, data) -> labels in 1..k for every case

works.  All randomness a model needs must be consumed inside ``fit``
(``predict`` is deterministic given the model).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .crosstab import crosstab
from .labels import LabelVector, _label_array
from .matching import resolve_matcher

__all__ = [
    "VoteMatrix",
    "ProbMatrix",
    "CicStats",
    "majority_labels",
    "mmcc_run",
    "cic_stats",
    "LloydClusterer",
    "lloyd_base_clusterer",
]


@dataclass(frozen=True)
class VoteMatrix:
    """N x K accumulator of per-case cluster votes."""

    votes: np.ndarray
    rounds: int

    def __post_init__(self):
        votes = np.asarray(self.votes, dtype=np.int64)
        if votes.ndim != 2 or votes.size == 0:
            raise ValueError(f"votes must be a non-empty 2-D matrix, got shape {votes.shape}")
        if (votes < 0).any():
            raise ValueError("votes must be non-negative")
        object.__setattr__(self, "votes", votes)


@dataclass(frozen=True)
class ProbMatrix:
    """Row-stochastic N x K matrix of estimated membership probabilities."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 2 or probs.size == 0:
            raise ValueError(f"probs must be a non-empty 2-D matrix, got shape {probs.shape}")
        if (probs < 0).any() or (probs > 1).any():
            raise ValueError("probabilities must lie in [0, 1]")
        if np.abs(probs.sum(axis=1) - 1.0).max() > 1e-9:
            raise ValueError("every probability row must sum to 1")
        object.__setattr__(self, "probs", probs)


@dataclass(frozen=True)
class CicStats:
    """Entropy summary of a probability matrix (all entropies in bits).

    uncertainty   mean per-case entropy of the membership rows
    complexity    relative model complexity, (2**entropy(column means) - 1) / N
    information   entropy(column means) minus uncertainty
    cic           information minus uncertainty
    """

    uncertainty: float
    complexity: float
    information: float
    cic: float


def _entropy_bits(p: np.ndarray, axis: int = -1) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return -terms.sum(axis=axis)


def majority_labels(votes, rng: np.random.Generator) -> LabelVector:
    """Row-wise majority vote, breaking ties uniformly at random.

    Every row must hold at least one vote.
    """
    v = votes.votes if isinstance(votes, VoteMatrix) else np.asarray(votes, dtype=np.int64)
    if v.ndim != 2 or v.size == 0:
        raise ValueError("votes must be a non-empty 2-D matrix")
    if (v.sum(axis=1) == 0).any():
        raise ValueError("majority undefined: some rows hold no votes")
    top = v == v.max(axis=1, keepdims=True)
    draw = rng.uniform(size=v.shape)
    labels = np.where(top, draw, -1.0).argmax(axis=1) + 1
    return LabelVector(labels.astype(np.int64), v.shape[1])


def mmcc_run(
    data,
    k: int,
    base,
    matcher,
    rounds: int,
    rng: np.random.Generator,
    early_stop_window: int | None = None,
    early_stop_tol: float = 1e-3,
) -> tuple[VoteMatrix, ProbMatrix]:
    """Aggregate cluster votes over bootstrap resamples.

    Round 1 votes the first predicted vector as-is (it seeds the label
    space).  Every later round estimates current memberships by row
    majority, aligns the fresh prediction to them via ``matcher`` on
    their crosstab, and votes the aligned labels.  Stops after
    ``rounds`` rounds, or earlier when ``early_stop_window`` is set and
    the membership matrix moved less than ``early_stop_tol`` in max norm
    over that many rounds.

    Returns the vote matrix and its row-normalized probability matrix.
    """
    if rounds < 2:
        raise ValueError(f"rounds must be >= 2, got {rounds}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = len(data)
    if n < k:
        raise ValueError(f"need at least k={k} cases, got {n}")
    match_fn = resolve_matcher(matcher)

    votes = np.zeros((n, k), dtype=np.int64)
    history: list[np.ndarray] = []
    done = 0
    for round_idx in range(rounds):
        picks = rng.integers(0, n, size=n)
        model = base.fit(data, picks, k, rng)
        predicted = _label_array(base.predict(model, data))
        if predicted.shape != (n,) or predicted.min() < 1 or predicted.max() > k:
            raise ValueError("base clusterer must predict labels in 1..k for every case")
        if round_idx == 0:
            aligned = predicted
        else:
            reference = majority_labels(votes, rng)
            table = crosstab(reference.labels, predicted, k=k)
            aligned = match_fn(table, rng).perm[predicted - 1]
        votes[np.arange(n), aligned - 1] += 1
        done += 1
        if early_stop_window is not None:
            probs_now = votes / votes.sum(axis=1, keepdims=True)
            history.append(probs_now)
            if len(history) > early_stop_window:
                moved = np.abs(history[-1] - history[-1 - early_stop_window]).max()
                if moved < early_stop_tol:
                    break

    probs = votes / votes.sum(axis=1, keepdims=True)
    return VoteMatrix(votes, done), ProbMatrix(probs)


def cic_stats(probs: ProbMatrix) -> CicStats:
    """Entropy statistics of a membership-probability matrix.

    ``uncertainty`` is the mean row entropy in bits, bounded by log2(K)
    and zero exactly when every row is one-hot.  ``complexity`` and
    ``information`` derive from the entropy of the column means (the
    average cluster shares); ``cic`` is information minus uncertainty.
    """
    p = probs.probs
    n = p.shape[0]
    uncertainty = float(_entropy_bits(p, axis=1).mean())
    share_entropy = float(_entropy_bits(p.mean(axis=0)))
    complexity = (2.0**share_entropy - 1.0) / n
    information = share_entropy - uncertainty
    return CicStats(
        uncertainty=uncertainty,
        complexity=complexity,
        information=information,
        cic=information - uncertainty,
    )


class LloydClusterer:
    """Minimal k-means base clusterer for the vote-aggregation loop.

    ``fit`` runs Lloyd iterations on the resampled rows, starting from k
    distinct points drawn from the resample; ``predict`` assigns every
    case to its nearest centroid.
    """

    def __init__(self, iterations: int = 25):
        if iterations < 1:
            raise ValueError("iterations must be >= 1")
        self.iterations = iterations

    @staticmethod
    def _as_points(data) -> np.ndarray:
        pts = np.asarray(data, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("data must be an (N, d) array of numeric features")
        return pts

    def fit(self, data, resample_indices, k: int, rng: np.random.Generator) -> np.ndarray:
        pts = self._as_points(data)
        sample = pts[np.asarray(resample_indices, dtype=np.int64)]
        distinct = np.unique(sample, axis=0)
        if distinct.shape[0] < k:
            raise ValueError(
                f"resample holds only {distinct.shape[0]} distinct points, need k={k}"
            )
        centroids = distinct[rng.choice(distinct.shape[0], size=k, replace=False)]
        for _ in range(self.iterations):
            dist = ((sample[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
            owner = dist.argmin(axis=1)
            updated = centroids.copy()
            for j in range(k):
                members = owner == j
                if members.any():
                    updated[j] = sample[members].mean(axis=0)
            if np.allclose(updated, centroids):
                break
            centroids = updated
        return centroids

    def predict(self, model: np.ndarray, data) -> LabelVector:
        pts = self._as_points(data)
        dist = ((pts[:, None, :] - model[None, :, :]) ** 2).sum(axis=2)
        return LabelVector(dist.argmin(axis=1).astype(np.int64) + 1, model.shape[0])


def lloyd_base_clusterer(iterations: int = 25) -> LloydClusterer:
    """Factory for the bundled Lloyd base clusterer."""
    return LloydClusterer(iterations=iterations)
