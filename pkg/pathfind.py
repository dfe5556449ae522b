"""
Simple-path enumeration between edge servers and the path catalog used by the embedders.

Paths are found by depth-first recursion with a visited set (push on entry, pop on return)
and stored in canonical order: shortest first, then by node sequence. Every path gets a
cost coefficient in s/bit, the sum over its links of 1/b.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
import attr
import core_model
import settings


log = logging.getLogger(__name__)


class SamePair(core_model.ValidationError):
    pass


class PathExplosion(core_model.EmbeddingError):
    """ Raised when the catalog would store more paths than the configured cap """

    def __init__(self, message, cap=None):
        super(PathExplosion, self).__init__(message)
        self.cap = cap


@attr.s(frozen=True)
class SimplePath(object):
    nodes = attr.ib(converter=tuple)
    link_ids = attr.ib(converter=tuple)

    @property
    def src(self):
        return self.nodes[0]

    @property
    def dst(self):
        return self.nodes[-1]

    def reversed(self):
        return SimplePath(nodes=self.nodes[::-1], link_ids=self.link_ids[::-1])

    def __str__(self):
        return '-'.join(str(node) for node in self.nodes)


@attr.s(frozen=True)
class PathCatalog(object):
    """
    Paths and coefficients for every ordered pair of distinct servers. coefficients[pair][k]
    belongs to paths[pair][k]. recursion_calls counts the recursive calls spent per pair.
    """
    paths = attr.ib()
    coefficients = attr.ib()
    recursion_calls = attr.ib()
    n_servers = attr.ib()

    def get_paths(self, src, dst):
        if src == dst:
            raise SamePair('Server pair (%s, %s) has no routing paths' % (src, dst))
        return self.paths[(src, dst)]

    def get_coefficients(self, src, dst):
        if src == dst:
            raise SamePair('Server pair (%s, %s) has no routing paths' % (src, dst))
        return self.coefficients[(src, dst)]

    def pairs(self):
        return sorted(self.paths)


def canonical_order(paths):
    """ Returns paths sorted by (number of nodes, node sequence) """
    return sorted(paths, key=lambda path: (len(path.nodes), path.nodes))


def _find_paths(net, src, dst, limit=None):
    """
    Depth-first recursive path finding. Returns (paths, calls) where calls counts every
    invocation of the recursion, the initial one included. Raises PathExplosion as soon
    as more than `limit` paths have been found.
    """
    found = []
    node_stack = [src]
    link_stack = []
    visited = {src}
    calls = [0]

    def recurse(current):
        calls[0] += 1
        if current == dst:
            found.append(SimplePath(nodes=node_stack, link_ids=link_stack))
            if limit is not None and len(found) > limit:
                raise PathExplosion(
                    'More than %s simple paths between servers %s and %s' % (limit, src, dst),
                    cap=limit)
            return
        for (neighbor, link_id) in net.neighbors(current):
            if neighbor in visited:
                continue
            node_stack.append(neighbor)
            link_stack.append(link_id)
            visited.add(neighbor)
            recurse(neighbor)
            visited.discard(neighbor)
            link_stack.pop()
            node_stack.pop()

    recurse(src)
    return canonical_order(found), calls[0]


def enumerate_simple_paths(net, src, dst, limit=None):
    """ Returns every simple path from src to dst exactly once, in canonical order """
    if src == dst:
        raise SamePair('Cannot enumerate paths from server %s to itself' % src)
    for server_id in (src, dst):
        if server_id not in net.server_ids():
            raise core_model.UnknownReference('Unknown server %s' % server_id)
    paths, _ = _find_paths(net, src, dst, limit=limit)
    return paths


def path_coefficient(path, net):
    """ Returns the sum of 1/b over the links of path, accumulated left to right """
    coefficient = 0.0
    for link_id in path.link_ids:
        coefficient += 1.0 / net.links[link_id].throughput
    return coefficient


def build_catalog(net, path_cap=None, workers=1):
    """
    Enumerate the simple paths of every ordered server pair and precompute their
    coefficients. Raises PathExplosion once the total number of stored paths exceeds
    path_cap (settings.PATH_CAP by default).
    """
    if path_cap is None:
        path_cap = settings.PATH_CAP
    pairs = [(src, dst) for src in net.server_ids() for dst in net.server_ids() if src != dst]
    results = {}
    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [(pair, executor.submit(_find_paths, net, pair[0], pair[1], path_cap))
                       for pair in pairs]
            for (pair, future) in futures:
                results[pair] = future.result()
    else:
        total = 0
        for pair in pairs:
            try:
                results[pair] = _find_paths(net, pair[0], pair[1], limit=path_cap - total)
            except PathExplosion:
                raise PathExplosion(
                    'Path catalog exceeds the cap of %s paths while enumerating servers %s -> %s'
                    % (path_cap, pair[0], pair[1]), cap=path_cap)
            total += len(results[pair][0])

    total_paths = sum(len(paths) for (paths, _) in results.values())
    if total_paths > path_cap:
        raise PathExplosion('Path catalog holds %s paths, above the cap of %s' % (
            total_paths, path_cap), cap=path_cap)

    paths = {}
    coefficients = {}
    recursion_calls = {}
    for pair in pairs:
        pair_paths, calls = results[pair]
        paths[pair] = tuple(pair_paths)
        coefficients[pair] = tuple(path_coefficient(path, net) for path in pair_paths)
        recursion_calls[pair] = calls
    log.info('Path catalog built: %s servers, %s ordered pairs, %s paths',
             net.n_servers, len(pairs), total_paths)
    return PathCatalog(paths=paths, coefficients=coefficients,
                       recursion_calls=recursion_calls, n_servers=net.n_servers)


def total_path_count(catalog):
    """ Returns the number of stored paths summed over all ordered pairs """
    return sum(len(paths) for paths in catalog.paths.values())


def complete_graph_path_count(n):
    """ Returns the number of simple paths between two servers of a complete graph on n servers """
    if n < 2:
        return 0
    return sum(math.factorial(n - 2) // math.factorial(n - 2 - k) for k in range(n - 1))


def rpf_call_bound(n):
    """
    Returns the worst-case number of recursive calls (initial call included) spent on one
    server pair of a complete graph with n servers:
        1 + k(1),  k(i) = (n - i) + (n - i - 1) * k(i + 1),  k(n - 1) = 1
    """
    if n < 2:
        return 0
    calls = 1
    for i in range(n - 2, 0, -1):
        calls = (n - i) + (n - i - 1) * calls
    return 1 + calls
