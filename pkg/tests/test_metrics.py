import numpy as np
import pytest

from pvgraph import (BaselineConfig, Disconnected, InsufficientSupport,
                     InvalidParams, PvgParams, avg_path_length,
                     clustering_coefficient, compute_all, erdos_renyi_gnm,
                     power_law_exponent, pvg_adjacency, small_worldness)

from conftest import random_normalized


def path_graph(n):
    adj = np.zeros((n, n), dtype=np.int8)
    idx = np.arange(n - 1)
    adj[idx, idx + 1] = 1
    adj[idx + 1, idx] = 1
    return adj


def complete_graph(n):
    return (1 - np.eye(n, dtype=np.int8)).astype(np.int8)


def star_graph(n):
    adj = np.zeros((n, n), dtype=np.int8)
    adj[0, 1:] = 1
    adj[1:, 0] = 1
    return adj


def triangle_graph():
    return complete_graph(3)


def ring_lattice(n, k, rewire_frac=0.0, seed=0):
    """Each node linked to its k nearest neighbours; optional rewiring."""
    adj = np.zeros((n, n), dtype=np.int8)
    for d in range(1, k // 2 + 1):
        for i in range(n):
            j = (i + d) % n
            adj[i, j] = adj[j, i] = 1
    if rewire_frac > 0:
        rng = np.random.default_rng(seed)
        edges = np.argwhere(np.triu(adj, 1))
        n_rewire = int(round(rewire_frac * len(edges)))
        for idx in rng.choice(len(edges), size=n_rewire, replace=False):
            i, j = edges[idx]
            for _ in range(100):
                a, b = rng.integers(0, n, size=2)
                if a != b and not adj[a, b]:
                    adj[i, j] = adj[j, i] = 0
                    adj[a, b] = adj[b, a] = 1
                    break
    return adj


def floyd_warshall(adj):
    """Independent all-pairs oracle."""
    n = adj.shape[0]
    d = np.where(adj > 0, 1.0, np.inf)
    np.fill_diagonal(d, 0.0)
    for k in range(n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return d


class TestAvgPathLength:
    def test_path_three_nodes(self):
        assert avg_path_length(path_graph(3)) == pytest.approx(4 / 3)

    def test_complete_is_one(self):
        for n in (3, 5, 17):
            assert avg_path_length(complete_graph(n)) == 1.0

    def test_disconnected_raises(self):
        adj = np.zeros((4, 4), dtype=np.int8)
        adj[0, 1] = adj[1, 0] = 1
        adj[2, 3] = adj[3, 2] = 1
        with pytest.raises(Disconnected) as exc:
            avg_path_length(adj)
        assert exc.value.n_components == 2

    def test_matches_floyd_warshall_on_pvg(self):
        s = random_normalized(50, 21)
        adj = pvg_adjacency(s, PvgParams(rho=20.0, p0=0.5))
        d = floyd_warshall(adj)
        expected = d.sum() / (50 * 49)
        assert avg_path_length(adj) == expected

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_floyd_warshall_random(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(10, 200))
        adj = (rng.random((n, n)) < rng.uniform(0.05, 0.6)).astype(np.int8)
        adj = np.triu(adj, 1)
        adj = adj + adj.T
        idx = np.arange(n - 1)
        adj[idx, idx + 1] = 1  # force connectivity
        adj[idx + 1, idx] = 1
        d = floyd_warshall(adj)
        assert avg_path_length(adj) == d.sum() / (n * (n - 1))

    def test_long_path_large_diameter(self):
        n = 60
        adj = path_graph(n)
        d = floyd_warshall(adj)
        assert avg_path_length(adj) == d.sum() / (n * (n - 1))


class TestClustering:
    def test_triangle(self):
        assert clustering_coefficient(triangle_graph()) == 1.0

    def test_path_has_none(self):
        assert clustering_coefficient(path_graph(5)) == 0.0

    def test_star_leaves_contribute_zero(self):
        assert clustering_coefficient(star_graph(5)) == 0.0

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_triangle_counting_oracle(self, seed):
        rng = np.random.default_rng(100 + seed)
        n = 40
        adj = (rng.random((n, n)) < 0.2).astype(np.int8)
        adj = np.triu(adj, 1)
        adj = adj + adj.T
        per_node = []
        for i in range(n):
            nbrs = np.nonzero(adj[i])[0]
            k = len(nbrs)
            if k < 2:
                per_node.append(0.0)
                continue
            links = sum(adj[a, b] for ai, a in enumerate(nbrs)
                        for b in nbrs[ai + 1:])
            per_node.append(2 * links / (k * (k - 1)))
        assert clustering_coefficient(adj) == pytest.approx(
            np.mean(per_node), abs=1e-12)


class TestSmallWorldness:
    def test_complete_graph_sigma_one(self):
        sigma, c_rand, l_rand = small_worldness(
            complete_graph(12), BaselineConfig(n_realizations=4, rng_seed=1))
        assert sigma == 1.0
        assert c_rand == 1.0 and l_rand == 1.0

    def test_er_input_near_one(self):
        rng = np.random.default_rng(5)
        adj = erdos_renyi_gnm(80, 400, rng)
        sigma, _, _ = small_worldness(adj, BaselineConfig(n_realizations=10,
                                                          rng_seed=3))
        assert 0.7 <= sigma <= 1.3

    def test_rewired_lattice_is_small_world(self):
        adj = ring_lattice(100, 4, rewire_frac=0.05, seed=2)
        sigma, _, _ = small_worldness(adj, BaselineConfig(n_realizations=10,
                                                          rng_seed=4))
        assert sigma > 1.0

    def test_seed_determinism(self):
        adj = ring_lattice(60, 4, rewire_frac=0.1, seed=9)
        cfg = BaselineConfig(n_realizations=8, rng_seed=77)
        assert small_worldness(adj, cfg) == small_worldness(adj, cfg)

    def test_permutation_invariant(self):
        adj = ring_lattice(40, 4, rewire_frac=0.1, seed=3)
        rng = np.random.default_rng(0)
        perm = rng.permutation(40)
        cfg = BaselineConfig(n_realizations=6, rng_seed=5)
        a = small_worldness(adj, cfg)[0]
        b = small_worldness(adj[np.ix_(perm, perm)], cfg)[0]
        assert a == pytest.approx(b)


class TestErdosRenyi:
    def test_exact_edge_count(self):
        adj = erdos_renyi_gnm(30, 100, np.random.default_rng(0))
        assert np.triu(adj, 1).sum() == 100
        assert np.array_equal(adj, adj.T)
        assert np.all(np.diag(adj) == 0)

    def test_too_many_edges(self):
        with pytest.raises(InvalidParams):
            erdos_renyi_gnm(4, 7, np.random.default_rng(0))


def synthetic_power_law_degrees(a, kmax, scale=1_000_000):
    """Degree multiset with counts proportional to k^-a, rounded."""
    ks = np.arange(1, kmax + 1)
    weights = ks.astype(float) ** (-a)
    counts = np.maximum(1, np.round(scale * weights / weights.sum())).astype(int)
    return np.repeat(ks, counts)


class TestPowerLawExponent:
    @pytest.mark.parametrize("a", [1.5, 2.0, 3.0])
    def test_exact_distribution_recovered(self, a):
        # noiseless P(k) = k^-a / Z: log-log points exactly collinear
        from pvgraph import power_law_fit
        ks = np.arange(1, 101)
        pk = ks.astype(float) ** (-a)
        pk /= pk.sum()
        gamma_exact, r2_exact = power_law_fit(ks, pk)
        assert gamma_exact == pytest.approx(a, abs=1e-9)
        assert r2_exact == pytest.approx(1.0, abs=1e-12)
        # package path with integer counts approximating the distribution
        gamma, r2 = power_law_exponent(synthetic_power_law_degrees(a, 100))
        assert gamma == pytest.approx(a, abs=0.05)
        assert r2 > 0.99

    def test_k_cubed(self):
        gamma, r2 = power_law_exponent(synthetic_power_law_degrees(3.0, 50))
        assert gamma == pytest.approx(3.0, abs=0.05)
        assert r2 > 0.99

    def test_single_degree_rejected(self):
        with pytest.raises(InsufficientSupport):
            power_law_exponent([4] * 50)

    def test_zero_degrees_ignored(self):
        degs = np.concatenate([synthetic_power_law_degrees(2.0, 40),
                               np.zeros(10, dtype=int)])
        gamma, _ = power_law_exponent(degs)
        assert gamma == pytest.approx(2.0, abs=0.05)


class TestComputeAll:
    def test_path_graph(self):
        gm = compute_all(path_graph(3))
        assert gm.density == pytest.approx(2 / 3)
        assert gm.k_max == 2
        assert gm.avg_path_length == pytest.approx(4 / 3)
        assert gm.clustering == 0.0
        assert gm.sigma is None

    def test_complete_graph(self):
        gm = compute_all(complete_graph(5),
                         BaselineConfig(n_realizations=3, rng_seed=1))
        assert gm.density == 1.0
        assert gm.avg_path_length == 1.0
        assert gm.clustering == 1.0
        assert gm.k_max == 4
        assert gm.sigma == 1.0

    def test_disconnected_degrades(self):
        adj = np.zeros((6, 6), dtype=np.int8)
        adj[0, 1] = adj[1, 0] = 1
        gm = compute_all(adj)
        assert gm.avg_path_length is None
        assert gm.sigma is None

    def test_json_fields(self):
        gm = compute_all(path_graph(4))
        d = gm.to_dict()
        assert set(d) == {"n_nodes", "n_edges", "density", "mean_degree",
                          "k_max", "L", "C", "sigma", "C_rand", "L_rand",
                          "gamma", "gamma_r2"}
        assert d["sigma"] is None

    def test_pvg_metric_trends_in_rho(self):
        s = random_normalized(120, 55, dt=0.05)
        results = []
        for rho in [0.5, 5.0, 50.0, 500.0]:
            adj = pvg_adjacency(s, PvgParams(rho=rho, p0=0.5))
            results.append(compute_all(adj))
        ls = [r.avg_path_length for r in results]
        cs = [r.clustering for r in results]
        kmaxs = [r.k_max for r in results]
        assert all(b >= a for a, b in zip(ls, ls[1:]))
        assert all(b <= a for a, b in zip(cs, cs[1:]))
        assert all(b <= a for a, b in zip(kmaxs, kmaxs[1:]))
