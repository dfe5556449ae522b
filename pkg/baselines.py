"""
Comparison schedulers for the embedding benchmark.

Both baselines route every stream passively: the whole stream follows the single
minimum-coefficient simple path between the two servers, with no splitting.
  - heft_schedule: list scheduling by upward rank with insertion-based earliest finish time
  - placement_only_embed: the same dynamic program as DPE, but with passive routing
"""
import logging
import attr
import core_model
import embedder
import settings


log = logging.getLogger(__name__)


@attr.s(frozen=True)
class PassiveRoute(object):
    """ Minimum-coefficient single path per ordered server pair """
    paths = attr.ib()
    coefficients = attr.ib()
    n_servers = attr.ib()

    def path(self, src, dst):
        return self.paths[(src, dst)]

    def coefficient(self, src, dst):
        if src == dst:
            return 0.0
        return self.coefficients[(src, dst)]

    def mean_coefficient(self):
        """ Returns the mean coefficient over all ordered server pairs, same-server pairs as 0 """
        if not self.n_servers:
            return 0.0
        return sum(self.coefficients.values()) / float(self.n_servers ** 2)


@attr.s(frozen=True)
class RankTable(object):
    upward_rank = attr.ib()
    avg_exec = attr.ib()
    avg_comm = attr.ib()


class PassiveStreamMapper(object):
    """ Sends each stream in full over the passive route of the server pair """

    def __init__(self, routes):
        self.routes = routes

    def map_stream(self, src_server, dst_server, size):
        if src_server == dst_server:
            return embedder.StreamMapping(src_server=src_server, dst_server=dst_server)
        return embedder.StreamMapping(
            src_server=src_server, dst_server=dst_server,
            paths=(self.routes.path(src_server, dst_server),), allocations=(size,),
            transit=size * self.routes.coefficient(src_server, dst_server))


def passive_routes(catalog):
    """ Per server pair, keep the smallest-coefficient path (canonical-first on ties) """
    paths = {}
    coefficients = {}
    for pair in catalog.pairs():
        pair_coefficients = catalog.coefficients[pair]
        best = min(range(len(pair_coefficients)), key=lambda k: (pair_coefficients[k], k))
        paths[pair] = catalog.paths[pair][best]
        coefficients[pair] = pair_coefficients[best]
    return PassiveRoute(paths=paths, coefficients=coefficients, n_servers=catalog.n_servers)


def rank_table(dag, net, routes):
    """
    Returns upward ranks over the augmented DAG: average execution time over all servers,
    average communication time as stream size times the mean pairwise passive coefficient
    """
    graph = dag.dag
    mean_coefficient = routes.mean_coefficient()
    avg_exec = {}
    for function in graph.functions:
        times = [core_model.processing_time(function, server) for server in net.servers]
        avg_exec[function.id] = sum(times) / len(times)
    avg_comm = {edge.key: edge.size * mean_coefficient for edge in graph.edges}
    upward_rank = {}
    for function in reversed(graph.functions):
        tail = [avg_comm[edge.key] + upward_rank[edge.dst]
                for edge in graph.successors(function.id)]
        upward_rank[function.id] = avg_exec[function.id] + (max(tail) if tail else 0.0)
    return RankTable(upward_rank=upward_rank, avg_exec=avg_exec, avg_comm=avg_comm)


def _earliest_slot(intervals, earliest_start, duration):
    """ Returns the earliest start >= earliest_start where duration fits between busy intervals """
    begin = earliest_start
    for (busy_start, busy_finish) in intervals:
        if begin + duration <= busy_start:
            return begin
        begin = max(begin, busy_finish)
    return begin


def heft_schedule(dag, net, routes, ready=None):
    """
    Schedule an AugmentedDag with HEFT. Functions are taken in decreasing upward rank (stored
    order on ties) and each goes to the server with the earliest finish time, using
    insertion into idle gaps between already scheduled functions. A server with a ready time
    is busy until then.
    """
    graph = dag.dag
    ranks = rank_table(dag, net, routes)
    mapper = PassiveStreamMapper(routes)
    ready = ready or {}
    order = sorted(graph.functions, key=lambda f: (-ranks.upward_rank[f.id], graph.position(f.id)))
    busy = {server.id: [] for server in net.servers}
    placements = {}
    start_times = {}
    finish_times = {}
    edge_mappings = {}
    for function in order:
        best = None
        for server in net.servers:
            mappings = {}
            earliest_start = ready.get(server.id, 0.0)
            for edge in graph.predecessors(function.id):
                mapping = mapper.map_stream(placements[edge.src], server.id, edge.size)
                mappings[edge.key] = mapping
                earliest_start = max(earliest_start, finish_times[edge.src] + mapping.transit)
            duration = core_model.processing_time(function, server)
            begin = _earliest_slot(busy[server.id], earliest_start, duration)
            if best is None or begin + duration < best[2]:
                best = (server.id, begin, begin + duration, mappings)
        server_id, begin, finish, mappings = best
        placements[function.id] = server_id
        start_times[function.id] = begin
        finish_times[function.id] = finish
        edge_mappings.update(mappings)
        if finish > begin:
            busy[server_id].append((begin, finish))
            busy[server_id].sort()
    log.debug('HEFT order: %s', [f.id for f in order])
    ordered = [f.id for f in graph.functions]
    return embedder.EmbeddingResult(
        algorithm=settings.ALGO_HEFT, dummy_id=dag.dummy_id,
        placements={fid: placements[fid] for fid in ordered},
        edge_mappings={e.key: edge_mappings[e.key] for e in graph.edges},
        start_times={fid: start_times[fid] for fid in ordered},
        finish_times={fid: finish_times[fid] for fid in ordered},
        makespan=finish_times[dag.dummy_id])


def placement_only_embed(dag, net, catalog, routes=None, ready=None):
    """ Run the DPE dynamic program with passive single-path routing instead of splitting """
    if routes is None:
        routes = passive_routes(catalog)
    return embedder.embed_with_mapper(
        dag, net, PassiveStreamMapper(routes), ready=ready,
        algorithm=settings.ALGO_PLACEMENT_ONLY)


def check_precedence(dag, net, result, tolerance=settings.TOLERANCE):
    """
    Returns the list of edges whose destination starts before the source finish time plus
    the stream transit time; empty when every precedence constraint holds
    """
    graph = embedder.graph_of(dag)
    violations = []
    for edge in graph.edges:
        arrival = result.finish_times[edge.src] + embedder.mapping_transit(
            result.edge_mappings[edge.key], net)
        if result.start_times[edge.dst] < arrival - tolerance * max(1.0, abs(arrival)):
            violations.append(edge.key)
    return violations
