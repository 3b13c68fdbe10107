import numpy as np
import pytest

from truematch import (
    FictitiousClusterer,
    LabelVector,
    ProbMatrix,
    VoteMatrix,
    build_truth,
    cic_stats,
    lloyd_base_clusterer,
    majority_labels,
    mmcc_run,
    random_clusterer,
    true_class_clusterer,
)


class TestMajorityLabels:
    def test_strict_majority(self):
        labels = majority_labels(np.array([[7, 3]]), np.random.default_rng(0))
        assert labels.labels.tolist() == [1]

    def test_symmetric_tie_uniform(self):
        rng = np.random.default_rng(1)
        picks = [majority_labels(np.array([[5, 5]]), rng).labels[0] for _ in range(2000)]
        rate = np.mean(np.array(picks) == 1)
        assert abs(rate - 0.5) <= 0.05

    def test_matches_constant_clusterer(self):
        labels = np.array([1, 1, 2, 2, 1])
        clusterer = true_class_clusterer(labels, np.eye(2), shuffle_labels=False)
        votes, _ = mmcc_run(np.zeros(5), 2, clusterer, "truematch", 20, np.random.default_rng(2))
        majority = majority_labels(votes, np.random.default_rng(3))
        assert majority.labels.tolist() == labels.tolist()

    def test_zero_row_rejected(self):
        with pytest.raises(ValueError):
            majority_labels(np.array([[0, 0], [1, 0]]), np.random.default_rng(0))


class TestCicStats:
    def test_single_column_crisp(self):
        stats = cic_stats(ProbMatrix(np.ones((100, 1))))
        assert (stats.uncertainty, stats.complexity, stats.information, stats.cic) == (0, 0, 0, 0)

    def test_two_crisp_halves(self):
        probs = np.zeros((100, 2))
        probs[:50, 0] = 1.0
        probs[50:, 1] = 1.0
        stats = cic_stats(ProbMatrix(probs))
        assert stats.uncertainty == 0.0
        assert stats.complexity == pytest.approx(0.010, abs=1e-12)
        assert stats.cic == pytest.approx(1.0, abs=1e-12)

    def test_half_crisp_half_split(self):
        # 50 rows one-hot, 50 rows spread over two columns: column means
        # (0.5, 0.25, 0.25) carry 1.5 bits, rows average 0.5 bits
        probs = np.zeros((100, 3))
        probs[:50, 0] = 1.0
        probs[50:, 1] = 0.5
        probs[50:, 2] = 0.5
        stats = cic_stats(ProbMatrix(probs))
        assert stats.uncertainty == pytest.approx(0.5, abs=1e-12)
        assert stats.complexity == pytest.approx((2**1.5 - 1) / 100, abs=1e-12)
        assert stats.information == pytest.approx(1.0, abs=1e-12)
        assert stats.cic == pytest.approx(0.5, abs=1e-12)

    def test_column_permutation_invariance(self):
        rng = np.random.default_rng(4)
        raw = rng.dirichlet(np.ones(4), size=50)
        base = cic_stats(ProbMatrix(raw))
        shuffled = cic_stats(ProbMatrix(raw[:, rng.permutation(4)]))
        assert base == shuffled

    def test_bounds(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            k = int(rng.integers(1, 6))
            n = int(rng.integers(2, 40))
            probs = rng.dirichlet(np.ones(k), size=n)
            stats = cic_stats(ProbMatrix(probs))
            assert 0.0 <= stats.uncertainty <= np.log2(k) + 1e-12
            assert 0.0 <= stats.complexity <= (k - 1) / n + 1e-12


class TestMmccRun:
    def test_constant_clusterer_crisp(self):
        truth = build_truth(40, 0.5)
        clusterer = true_class_clusterer(truth, np.eye(2), shuffle_labels=False)
        _, probs = mmcc_run(np.zeros(40), 2, clusterer, "truematch", 50, np.random.default_rng(6))
        assert cic_stats(probs).uncertainty == 0.0

    def test_vote_conservation_and_row_stochastic(self):
        clusterer = random_clusterer([0.6, 0.4])
        votes, probs = mmcc_run(np.zeros(30), 2, clusterer, "truematch", 25, np.random.default_rng(7))
        assert votes.votes.sum() == 30 * 25
        assert np.all(votes.votes.sum(axis=1) == 25)
        np.testing.assert_allclose(probs.probs.sum(axis=1), 1.0, atol=1e-12)

    def test_rejects_small_rounds(self):
        with pytest.raises(ValueError):
            mmcc_run(np.zeros(10), 2, random_clusterer([0.5, 0.5]), "truematch", 1,
                     np.random.default_rng(0))

    def test_rejects_bad_labels(self):
        class Broken:
            def fit(self, data, idx, k, rng):
                return None

            def predict(self, model, data):
                return LabelVector(np.full(len(data), 3), 3)

        with pytest.raises(ValueError):
            mmcc_run(np.zeros(10), 2, Broken(), "truematch", 5, np.random.default_rng(0))

    def test_column_means_symmetrize_under_truematch(self):
        # purely random base clusterer: the matcher must spread votes so the
        # columns converge toward uniform shares even for a skewed clusterer
        clusterer = random_clusterer([0.99, 0.01])
        _, probs = mmcc_run(np.zeros(100), 2, clusterer, "truematch", 1000,
                            np.random.default_rng(8))
        shares = probs.probs.mean(axis=0)
        assert np.all(np.abs(shares - 0.5) <= 0.05)

    def test_k1_runs(self):
        _, probs = mmcc_run(np.zeros(20), 1, random_clusterer([1.0]), "truematch", 10,
                            np.random.default_rng(9))
        stats = cic_stats(probs)
        assert stats.uncertainty == 0.0 and stats.cic == 0.0

    def test_early_stop_window(self):
        truth = build_truth(30, 0.5)
        clusterer = true_class_clusterer(truth, np.eye(2), shuffle_labels=False)
        votes, _ = mmcc_run(np.zeros(30), 2, clusterer, "truematch", 500,
                            np.random.default_rng(10), early_stop_window=20)
        assert votes.rounds < 500


class TestLloydClusterer:
    def test_separated_blobs_consistent_partition(self):
        rng = np.random.default_rng(11)
        data = np.r_[rng.normal(0.0, 0.3, 40), rng.normal(10.0, 0.3, 40)]
        clusterer = lloyd_base_clusterer()
        split = data < 5.0
        for seed in range(5):
            fit_rng = np.random.default_rng(seed)
            idx = fit_rng.integers(0, 80, 80)
            model = clusterer.fit(data, idx, 2, fit_rng)
            labels = clusterer.predict(model, data).labels
            assert len(np.unique(labels[split])) == 1
            assert len(np.unique(labels[~split])) == 1
            assert labels[0] != labels[-1]

    def test_exact_convergence_on_two_points(self):
        data = np.array([0.0, 0.0, 10.0, 10.0])
        clusterer = lloyd_base_clusterer()
        model = clusterer.fit(data, np.arange(4), 2, np.random.default_rng(12))
        assert sorted(model.ravel().tolist()) == [0.0, 10.0]

    def test_too_few_distinct_points_rejected(self):
        clusterer = lloyd_base_clusterer()
        with pytest.raises(ValueError):
            clusterer.fit(np.array([1.0, 1.0, 1.0]), np.arange(3), 2, np.random.default_rng(0))

    def test_uniform_data_fuzzifies(self):
        # structureless data must leave visible uncertainty (the boundary
        # cases flip sides across resamples), unlike the separable case's
        # exact zero; pilot runs put the band at roughly 0.03-0.17 bits
        rng = np.random.default_rng(13)
        data = rng.uniform(0.0, 1.0, 100)
        _, probs = mmcc_run(data, 2, lloyd_base_clusterer(), "truematch", 150,
                            np.random.default_rng(14))
        assert cic_stats(probs).uncertainty > 0.02


class TestFictitiousClusterer:
    def test_probability_rows_validated(self):
        with pytest.raises(ValueError):
            FictitiousClusterer(2, [[0.7, 0.7]])

    def test_proportions_respected(self):
        clusterer = random_clusterer([0.8, 0.2], shuffle_labels=False)
        rng = np.random.default_rng(15)
        labels = clusterer.fit(np.zeros(4000), None, 2, rng)
        assert abs(np.mean(labels == 1) - 0.8) <= 0.02

    def test_votes_structures_validated(self):
        with pytest.raises(ValueError):
            VoteMatrix(np.array([[1, -1]]), 1)
        with pytest.raises(ValueError):
            ProbMatrix(np.array([[0.5, 0.6]]))
