import itertools
import math
import mock
import networkx as nx
import pytest
import bench
import core_model
import helpers
import pathfind
import settings


def _permutation_paths(n, src, dst):
    """ Every simple src-dst path of the complete graph K_n, by permuting intermediate servers """
    others = [node for node in range(n) if node not in (src, dst)]
    paths = set()
    for length in range(len(others) + 1):
        for middle in itertools.permutations(others, length):
            paths.add((src,) + middle + (dst,))
    return paths


def test_single_link():
    net = helpers.make_network([1.0, 1.0], [(0, 1, 1.0)])
    paths = pathfind.enumerate_simple_paths(net, 0, 1)
    assert [p.nodes for p in paths] == [(0, 1)]
    assert paths[0].link_ids == (0,)


def test_triangle_paths_in_canonical_order():
    net = helpers.complete_network(3)
    assert [p.nodes for p in pathfind.enumerate_simple_paths(net, 0, 2)] == [(0, 2), (0, 1, 2)]


def test_same_pair_is_rejected():
    with pytest.raises(pathfind.SamePair):
        pathfind.enumerate_simple_paths(helpers.complete_network(3), 1, 1)


@pytest.mark.parametrize('src, dst', [(0, 7), (-1, 1)])
def test_unknown_server_is_rejected(src, dst):
    with pytest.raises(core_model.UnknownReference):
        pathfind.enumerate_simple_paths(helpers.complete_network(2), src, dst)


def test_star_leaf_to_leaf():
    net = helpers.make_network([1.0] * 4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])
    assert [p.nodes for p in pathfind.enumerate_simple_paths(net, 1, 3)] == [(1, 0, 3)]


@pytest.mark.parametrize('links, coefficient', [
    ([2.0, 4.0], 0.75),
    ([10.0], 0.1),
    ([1.0, 1.0, 1.0], 3.0),
])
def test_path_coefficient(links, coefficient):
    n = len(links) + 1
    net = helpers.make_network([1.0] * n, [(i, i + 1, b) for (i, b) in enumerate(links)])
    path = pathfind.enumerate_simple_paths(net, 0, n - 1)[0]
    assert pathfind.path_coefficient(path, net) == pytest.approx(coefficient, rel=1e-15)


@pytest.mark.slow
@pytest.mark.parametrize('n, expected', [(2, 1), (3, 2), (4, 5), (5, 16), (6, 65), (7, 326)])
def test_complete_graph_counts_and_recursion_budget(n, expected):
    net = helpers.complete_network(n)
    catalog = pathfind.build_catalog(net)
    assert pathfind.complete_graph_path_count(n) == expected
    for (src, dst) in catalog.pairs():
        paths = catalog.get_paths(src, dst)
        assert len(paths) == expected
        assert set(p.nodes for p in paths) == _permutation_paths(n, src, dst)
        assert catalog.recursion_calls[(src, dst)] == pathfind.rpf_call_bound(n)
        assert catalog.recursion_calls[(src, dst)] <= 6 * math.factorial(n - 2)


def test_recursion_bound_series():
    assert [pathfind.rpf_call_bound(n) for n in range(2, 8)] == [2, 4, 10, 32, 130, 652]


def test_k5_catalog_totals():
    catalog = pathfind.build_catalog(helpers.complete_network(5))
    assert pathfind.total_path_count(catalog) == 20 * 16
    assert len(catalog.pairs()) == 20


def test_path_cap_raises_path_explosion():
    with pytest.raises(pathfind.PathExplosion) as err:
        pathfind.build_catalog(helpers.complete_network(10), path_cap=10 ** 3)
    assert err.value.cap == 10 ** 3


def test_path_cap_with_workers():
    with pytest.raises(pathfind.PathExplosion):
        pathfind.build_catalog(helpers.complete_network(10), path_cap=10 ** 3, workers=4)


def test_path_cap_comes_from_settings():
    with mock.patch.object(settings, 'PATH_CAP', 10):
        with pytest.raises(pathfind.PathExplosion):
            pathfind.build_catalog(helpers.complete_network(4))


def test_parallel_catalog_matches_sequential():
    net = bench.generate_network(bench.WorkloadSpec(seed=3, n_servers=6, connectivity=0.6))
    sequential = pathfind.build_catalog(net)
    parallel = pathfind.build_catalog(net, workers=4)
    assert parallel.paths == sequential.paths
    assert parallel.coefficients == sequential.coefficients


@pytest.mark.parametrize('seed', range(5))
def test_random_graph_paths(seed):
    net = bench.generate_network(bench.WorkloadSpec(seed=seed, n_servers=6, connectivity=0.5))
    catalog = pathfind.build_catalog(net)
    graph = net.to_graph()
    for (src, dst) in catalog.pairs():
        paths = catalog.get_paths(src, dst)
        for path in paths:
            assert len(set(path.nodes)) == len(path.nodes)
            for (k, link_id) in enumerate(path.link_ids):
                assert net.links[link_id].endpoints == frozenset(path.nodes[k:k + 2])
        assert paths == tuple(pathfind.canonical_order(paths))
        assert set(p.nodes for p in paths) == set(
            tuple(p) for p in nx.all_simple_paths(graph, src, dst))
        reverse = catalog.get_paths(dst, src)
        assert set(p.reversed().nodes for p in paths) == set(p.nodes for p in reverse)
        for (path, coefficient) in zip(paths, catalog.get_coefficients(src, dst)):
            assert coefficient == pathfind.path_coefficient(path, net)
