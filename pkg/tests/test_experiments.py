import math

import numpy as np
import pytest

from centra.centrality import CentralityVector, Measure, Orientation
from centra.datasets import twin_hub_pair
from centra.exceptions import SizeTooSmallError, UniverseMismatchError, ZeroDistanceError
from centra.experiments import (
    FIVE_MEASURES,
    ExperimentConfig,
    IndicatorReport,
    connected_random_network,
    cross_measure_matrix,
    random_network,
    run_perturbation_experiment,
    stability_bound,
    stability_ratio,
    verify_stability_bounds,
)
from centra.graph import GraphPair, convert_weights
from centra.ranking import Ranking, centrality_ranking, rank_displacement, top_k_retained
from centra.validation import is_weakly_connected


class TestRandomNetwork:
    def test_size_ten_is_complete(self):
        net = random_network(10, 0)
        assert net.dissimilarity.n_edges == 90
        assert len(net.dissimilarity.undirected_edges()) == 45

    def test_too_small(self):
        with pytest.raises(SizeTooSmallError):
            random_network(9)

    def test_mean_edge_count_at_hundred(self):
        counts = np.array([len(random_network(100, (5, i)).dissimilarity.undirected_edges()) for i in range(1000)])
        m = 100 * 99 / 2
        mean, sd = m * 0.1, math.sqrt(m * 0.1 * 0.9)
        # standard error of the sample mean
        assert abs(counts.mean() - mean) <= 3 * sd / math.sqrt(len(counts))

    def test_weights_and_twin(self):
        for t in range(20):
            net = random_network(40, t)
            d, s = net.dissimilarity, net.similarity
            assert d.is_symmetric and s.is_symmetric
            assert d.edge_set() == s.edge_set()
            for w in (d.weights, s.weights):
                assert ((w >= 0.5) & (w <= 1.5)).all()
            np.testing.assert_array_equal(s.weights, 2.0 - d.weights)
            assert net.view(Measure.BETWEENNESS) is d and net.view("eigenvector") is s

    def test_connected_and_deterministic(self):
        a = connected_random_network(20, (1, 2))
        assert is_weakly_connected(a.dissimilarity)
        assert a.dissimilarity == connected_random_network(20, (1, 2)).dissimilarity


class TestRanking:
    def cv(self, values, measure=Measure.DEGREE):
        o = Orientation.LOWER_IS_CENTRAL if measure is Measure.CLOSENESS_DECENTRALITY else Orientation.HIGHER_IS_CENTRAL
        return CentralityVector(measure, values, o)

    def test_examples(self):
        assert centrality_ranking(self.cv([3.0, 1.0, 2.0])).order.tolist() == [0, 2, 1]
        assert centrality_ranking(self.cv([1.0] * 4)).order.tolist() == [0, 1, 2, 3]
        r = centrality_ranking(self.cv([3.0, 1.0, 2.0], Measure.CLOSENESS_DECENTRALITY))
        assert r.order.tolist() == [1, 2, 0]
        assert r.rank_of.tolist() == [3, 1, 2]

    def test_infinite_decentrality_ranks_last(self):
        r = centrality_ranking(self.cv([math.inf, 1.0, 2.0], Measure.CLOSENESS_DECENTRALITY))
        assert r.order.tolist() == [1, 2, 0]

    def test_not_a_permutation(self):
        with pytest.raises(ValueError):
            Ranking([0, 0, 1])

    def test_displacement(self):
        a = Ranking([0, 1, 2])
        d = rank_displacement(a, a)
        assert d.max == 0 and d.mean == 0.0
        d = rank_displacement(a, Ranking([2, 1, 0]))
        assert d.per_node.tolist() == [2, 0, 2]
        assert d.max == 2 and d.mean == pytest.approx(4 / 3)
        assert rank_displacement(Ranking([0, 1, 2, 3]), Ranking([0, 2, 1, 3])).max == 1
        with pytest.raises(UniverseMismatchError):
            rank_displacement(a, Ranking([0, 1]))

    def test_top_k(self):
        a = Ranking([0, 1, 2, 3])
        assert top_k_retained(a, a, 4)
        assert top_k_retained(a, Ranking([0, 1, 3, 2]), 2)
        assert not top_k_retained(a, Ranking([1, 0, 2, 3]), 2)
        with pytest.raises(ValueError):
            top_k_retained(a, a, 5)


class TestStabilityRatio:
    def test_betweenness_counterexample(self):
        assert stability_ratio(Measure.BETWEENNESS, twin_hub_pair(0.01)) == pytest.approx(225.0, rel=1e-9)
        assert stability_ratio(Measure.BETWEENNESS, twin_hub_pair(0.005)) == pytest.approx(450.0, rel=1e-9)

    def test_degree_on_random_pairs(self):
        from centra.perturbation import TYPE2, perturb

        for t in range(10):
            net = connected_random_network(20, t)
            h = convert_weights(perturb(net.dissimilarity, TYPE2.with_seed(t)), "affine_two_minus")
            pair = GraphPair(net.similarity, h)
            if pair.distance > 0:
                assert stability_ratio("degree", pair) <= 1.0 + 1e-12

    def test_callable_measure(self):
        from centra.centrality import betweenness

        assert stability_ratio(betweenness, twin_hub_pair(0.01)) == pytest.approx(225.0, rel=1e-9)

    def test_zero_distance(self):
        p = twin_hub_pair(0.0)
        with pytest.raises(ZeroDistanceError):
            stability_ratio(Measure.DEGREE, p)

    def test_bounds(self):
        g = twin_hub_pair(0.1).g
        assert stability_bound("degree", g) == 1.0
        assert stability_bound("closeness_decentrality", g) == 8.0
        assert stability_bound("stable_betweenness", g) == 128.0
        assert stability_bound("betweenness", g) == math.inf
        assert 0 < stability_bound("eigenvector", g) < math.inf


class TestExperimentConfig:
    def test_defaults(self):
        c = ExperimentConfig()
        assert c.sizes == (20, 40, 60, 80, 100)
        assert c.trials == 20 and c.thresholds == (3, 5, 10) and c.top_k == 5
        assert c.measures == FIVE_MEASURES

    @pytest.mark.parametrize(
        "kwargs", [dict(sizes=(5,)), dict(trials=0), dict(delta=0.4), dict(top_k=30, sizes=(20,)), dict(p=2.0)]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            ExperimentConfig(**kwargs)

    def test_noise_streams_differ_per_trial(self):
        c = ExperimentConfig(seed=4)
        assert c.noise(20, 0).seed != c.noise(20, 1).seed


class TestIndicatorReport:
    def test_aggregates(self):
        r = IndicatorReport()
        for mx, mean, kept in [(0, 0.0, True), (4, 1.5, False), (4, 0.5, True), (11, 3.0, False)]:
            r.add(mx, mean, kept)
        assert r.trials == 4
        assert r.mean_max == 4.75
        assert r.mean_average == 1.25
        assert r.exceedance(3) == 0.75 and r.exceedance(4) == 0.25 and r.exceedance(11) == 0.0
        assert r.top_k_rate == 0.5
        assert r.histogram == {0: 1, 4: 2, 11: 1}


class TestRunExperiment:
    def test_zero_noise_gives_zero_indicators(self):
        c = ExperimentConfig(sizes=(20,), trials=3, delta=0.0)
        for rep in run_perturbation_experiment(c).values():
            assert rep.mean_max == 0.0 and rep.mean_average == 0.0
            assert rep.top_k_rate == 1.0

    def test_small_run_accounting_and_monotone_exceedance(self):
        c = ExperimentConfig(sizes=(20, 30), trials=4, seed=2, measures=("degree", "betweenness"))
        reports = run_perturbation_experiment(c)
        assert set(reports) == {(n, m) for n in (20, 30) for m in c.measures}
        for rep in reports.values():
            assert sum(rep.histogram.values()) == 4
            assert all(a <= b for a, b in zip(rep.mean_displacement, rep.max_displacement))
            ex = [rep.exceedance(t) for t in range(0, 20)]
            assert all(x >= y for x, y in zip(ex, ex[1:]))

    def test_jobs_do_not_change_results(self):
        c = ExperimentConfig(sizes=(20,), trials=3, seed=8, measures=("degree", "stable_betweenness"))
        a = run_perturbation_experiment(c, jobs=1)
        b = run_perturbation_experiment(c, jobs=2)
        assert {k: v.max_displacement for k, v in a.items()} == {k: v.max_displacement for k, v in b.items()}
        assert {k: v.mean_displacement for k, v in a.items()} == {k: v.mean_displacement for k, v in b.items()}


class TestCrossMeasure:
    def test_diagonal_and_layout(self):
        nets = [connected_random_network(20, (0, t)) for t in range(3)]
        res = cross_measure_matrix(nets, FIVE_MEASURES)
        assert (np.diag(res.average) == 0).all() and (np.diag(res.maximum) == 0).all()
        np.testing.assert_array_equal(res.average, res.average.T)
        t = res.table()
        assert t[0, 2] == res.average[0, 2] and t[2, 0] == res.maximum[2, 0]
        assert res.entry("betweenness", "degree") == (res.average[2, 0], res.maximum[2, 0])

    def test_identical_measures_agree(self):
        nets = [connected_random_network(20, (0, t)) for t in range(2)]
        res = cross_measure_matrix(nets, ["degree", "out_degree"])
        assert res.entry("degree", "out_degree") == (0.0, 0.0)

    def test_needs_a_network(self):
        with pytest.raises(ValueError):
            cross_measure_matrix([], FIVE_MEASURES)


def test_small_bound_verification():
    checks = verify_stability_bounds(sizes=(10, 15), trials=2, seed=3)
    for c in checks.values():
        assert c.pairs > 0
        assert c.violations == 0
        assert c.worst_fraction <= 1.0 + 1e-12
