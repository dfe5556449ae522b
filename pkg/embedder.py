"""
Dynamic-programming function embedding over a workload DAG's topological order.

For every function f_j and every candidate server n, the best finish time is
    T*(f_j, n) = max over in-edges (f_i, f_j) of
                 min over source servers m of  T*(f_i, m) + transit(m -> n) + c_j / psi_n
where the transit of a stream between two distinct servers comes from a stream mapper
(optimal multi-path split for DPE, a single passive route for the placement-only
baseline) and is zero on the same server. Entry functions start at their server's ready
time. A predecessor with several successors gets its placement committed the first time
one of its successors is resolved; after that only the committed server is evaluated.
The winning placement of the dummy tail is back-traced to recover the whole embedding.

brute_force_embed enumerates every placement vector and is the optimality oracle for
small instances.
"""
import itertools
import logging
import attr
import core_model
import pathfind
import settings
import splitter


log = logging.getLogger(__name__)


class NotEntry(core_model.ValidationError):
    pass


class UnpopulatedPredecessor(core_model.ValidationError):
    pass


class TooLarge(core_model.ValidationError):
    pass


@attr.s(frozen=True)
class StreamMapping(object):
    """ How one stream travels between two servers: paths, bits per path and transit time """
    src_server = attr.ib()
    dst_server = attr.ib()
    paths = attr.ib(converter=tuple, default=())
    allocations = attr.ib(converter=tuple, default=())
    transit = attr.ib(default=0.0)

    @property
    def is_local(self):
        return self.src_server == self.dst_server


class OptimalStreamMapper(object):
    """ Splits each stream optimally over every simple path of the server pair """

    def __init__(self, catalog):
        self.catalog = catalog
        self._cache = {}

    def map_stream(self, src_server, dst_server, size):
        if src_server == dst_server:
            return StreamMapping(src_server=src_server, dst_server=dst_server)
        key = (src_server, dst_server, size)
        if key not in self._cache:
            solution = splitter.optimal_split(splitter.SplitProblem(
                coefficients=self.catalog.get_coefficients(src_server, dst_server),
                stream_size=size))
            self._cache[key] = StreamMapping(
                src_server=src_server, dst_server=dst_server,
                paths=self.catalog.get_paths(src_server, dst_server),
                allocations=solution.allocations, transit=solution.bottleneck_time)
        return self._cache[key]


@attr.s
class ScheduleState(object):
    """
    Mutable DP state: best finish time per (function, server), committed placements,
    server ready times and the per-(function, server) backpointers.
    """
    server_ready = attr.ib(factory=dict)
    best_finish = attr.ib(factory=dict)
    decided_placement = attr.ib(factory=dict)
    backpointers = attr.ib(factory=dict)

    @classmethod
    def idle(cls, net, ready=None):
        server_ready = {server_id: 0.0 for server_id in net.server_ids()}
        if ready:
            server_ready.update(ready)
        return cls(server_ready=server_ready)

    def commit(self, function_id, server_id):
        current = self.decided_placement.get(function_id)
        if current is not None and current != server_id:
            raise core_model.EmbeddingError('Function %s is already committed to server %s' % (
                function_id, current))
        self.decided_placement[function_id] = server_id

    def best_server(self, function_id, server_ids):
        """ Returns the server with the smallest best finish time, ties to the smallest id """
        return min(server_ids, key=lambda server_id: (
            self.best_finish[(function_id, server_id)], server_id))


@attr.s(frozen=True)
class SubproblemResult(object):
    phi = attr.ib()
    src_server = attr.ib()
    mapping = attr.ib()

    @property
    def transit(self):
        return self.mapping.transit

    @property
    def paths(self):
        return self.mapping.paths


@attr.s(frozen=True)
class EmbeddingResult(object):
    algorithm = attr.ib()
    dummy_id = attr.ib()
    placements = attr.ib()
    edge_mappings = attr.ib()
    start_times = attr.ib()
    finish_times = attr.ib()
    makespan = attr.ib()


def graph_of(dag):
    if isinstance(dag, core_model.AugmentedDag):
        return dag.dag
    return dag


def _find_edge(graph, edge):
    for stream in graph.predecessors(edge[1]):
        if stream.src == edge[0]:
            return stream
    raise core_model.UnknownReference('DAG has no edge %s->%s' % tuple(edge))


def entry_finish_times(dag, net, state, function_id):
    """ Set best_finish[f, n] = c_f / psi_n + server_ready[n] for every server n """
    graph = graph_of(dag)
    if graph.predecessors(function_id):
        raise NotEntry('Function %s has predecessors and is not an entry function' % function_id)
    function = graph.function(function_id)
    for server in net.servers:
        state.best_finish[(function_id, server.id)] = (
            core_model.processing_time(function, server) + state.server_ready.get(server.id, 0.0))


def solve_subproblem(dag, net, catalog, state, edge, fixed_dst, mapper=None, executor=None):
    """
    Returns the SubproblemResult minimizing T*(f_i, m) + transit(m -> fixed_dst) + t(f_j)
    over the candidate source servers m of edge (f_i, f_j). A committed f_i has its
    committed server as the only candidate.
    """
    graph = graph_of(dag)
    stream = _find_edge(graph, edge)
    if mapper is None:
        mapper = OptimalStreamMapper(catalog)
    if stream.src in state.decided_placement:
        candidates = [state.decided_placement[stream.src]]
    else:
        candidates = list(net.server_ids())
    for server_id in candidates:
        if (stream.src, server_id) not in state.best_finish:
            raise UnpopulatedPredecessor('Function %s has no finish time on server %s yet' % (
                stream.src, server_id))
    processing = core_model.processing_time(
        graph.function(stream.dst), net.servers[fixed_dst])

    def evaluate(server_id):
        mapping = mapper.map_stream(server_id, fixed_dst, stream.size)
        phi = state.best_finish[(stream.src, server_id)] + mapping.transit + processing
        return SubproblemResult(phi=phi, src_server=server_id, mapping=mapping)

    if executor is not None:
        results = list(executor.map(evaluate, candidates))
    else:
        results = [evaluate(server_id) for server_id in candidates]
    best = results[0]
    for result in results[1:]:
        if result.phi < best.phi:
            best = result
    return best


def embed_with_mapper(dag, net, mapper, ready=None, algorithm=settings.ALGO_DPE, executor=None):
    """
    Run the dynamic program over an AugmentedDag using the given stream mapper and return
    the back-traced EmbeddingResult
    """
    graph = dag.dag
    core_model.check_entry_prefix(graph)
    state = ScheduleState.idle(net, ready)
    server_ids = list(net.server_ids())
    shared = set(f.id for f in graph.functions if graph.out_degree(f.id) > 1)
    for function in graph.functions:
        if not graph.predecessors(function.id):
            entry_finish_times(dag, net, state, function.id)
            continue
        in_edges = graph.predecessors(function.id)
        for stream in in_edges:
            if stream.src in shared and stream.src not in state.decided_placement:
                state.commit(stream.src, state.best_server(stream.src, server_ids))
        for server_id in server_ids:
            row = tuple((stream.src, solve_subproblem(
                dag, net, None, state, stream.key, server_id, mapper=mapper, executor=executor))
                        for stream in in_edges)
            state.best_finish[(function.id, server_id)] = max(result.phi for (_, result) in row)
            state.backpointers[(function.id, server_id)] = row
        log.debug('%s: function %s resolved on %s servers', algorithm, function.id, len(server_ids))
    final_server = state.best_server(dag.dummy_id, server_ids)
    return _back_trace(dag, net, state, final_server, algorithm)


def _back_trace(dag, net, state, final_server, algorithm):
    graph = dag.dag
    placements = {dag.dummy_id: final_server}
    edge_mappings = {}
    for function in reversed(graph.functions):
        server_id = placements[function.id]
        for (src_id, result) in state.backpointers.get((function.id, server_id), ()):
            previous = placements.setdefault(src_id, result.src_server)
            if previous != result.src_server:
                raise core_model.EmbeddingError(
                    'Function %s traced to servers %s and %s' % (
                        src_id, previous, result.src_server))
            edge_mappings[(src_id, function.id)] = result.mapping
    start_times = {}
    finish_times = {}
    for function in graph.functions:
        server_id = placements[function.id]
        in_edges = graph.predecessors(function.id)
        if in_edges:
            start_times[function.id] = max(
                finish_times[e.src] + edge_mappings[e.key].transit for e in in_edges)
        else:
            start_times[function.id] = state.server_ready.get(server_id, 0.0)
        finish_times[function.id] = state.best_finish[(function.id, server_id)]
    ordered = [f.id for f in graph.functions]
    return EmbeddingResult(
        algorithm=algorithm, dummy_id=dag.dummy_id,
        placements={fid: placements[fid] for fid in ordered},
        edge_mappings={e.key: edge_mappings[e.key] for e in graph.edges},
        start_times=start_times, finish_times=finish_times,
        makespan=finish_times[dag.dummy_id])


def dpe_embed(dag, net, catalog, ready=None, executor=None):
    """ Embed an AugmentedDag with optimal multi-path stream splitting """
    return embed_with_mapper(dag, net, OptimalStreamMapper(catalog), ready=ready,
                             algorithm=settings.ALGO_DPE, executor=executor)


def forward_schedule(dag, net, placements, transit_of, ready=None):
    """
    Returns (start_times, finish_times) of the finish-time recurrence for fixed placements.
    transit_of(edge) gives the transit time of each stream edge.
    """
    graph = graph_of(dag)
    ready = ready or {}
    start_times = {}
    finish_times = {}
    for function in graph.functions:
        server_id = placements[function.id]
        in_edges = graph.predecessors(function.id)
        if in_edges:
            begin = max(finish_times[e.src] + transit_of(e) for e in in_edges)
        else:
            begin = ready.get(server_id, 0.0)
        start_times[function.id] = begin
        finish_times[function.id] = begin + core_model.processing_time(
            function, net.servers[server_id])
    return start_times, finish_times


def brute_force_embed(dag, net, catalog, ready=None, mapper=None):
    """
    Try every placement vector over all functions (dummy tail included), map each stream
    with the optimal split and keep the smallest makespan. Ties keep the lexicographically
    first placement vector.
    """
    graph = dag.dag
    n_vectors = net.n_servers ** len(graph.functions)
    if n_vectors > settings.BRUTE_FORCE_LIMIT:
        raise TooLarge('%s placement vectors exceed the exhaustive-search limit of %s' % (
            n_vectors, settings.BRUTE_FORCE_LIMIT))
    if mapper is None:
        mapper = OptimalStreamMapper(catalog)
    function_ids = [f.id for f in graph.functions]
    best = None
    for vector in itertools.product(range(net.n_servers), repeat=len(function_ids)):
        placements = dict(zip(function_ids, vector))
        mappings = {e.key: mapper.map_stream(placements[e.src], placements[e.dst], e.size)
                    for e in graph.edges}
        start_times, finish_times = forward_schedule(
            dag, net, placements, lambda e: mappings[e.key].transit, ready=ready)
        makespan = finish_times[dag.dummy_id]
        if best is None or makespan < best.makespan:
            best = EmbeddingResult(
                algorithm=settings.ALGO_BRUTE, dummy_id=dag.dummy_id, placements=placements,
                edge_mappings=mappings, start_times=start_times, finish_times=finish_times,
                makespan=makespan)
    log.debug('Exhaustive search over %s placement vectors: makespan %s', n_vectors, best.makespan)
    return best


def mapping_transit(mapping, net):
    """ Recompute a mapping's transit time from its paths and allocations """
    if mapping.is_local:
        return splitter.routing_time(splitter.SAME_SERVER)
    return splitter.routing_time(
        [(pathfind.path_coefficient(path, net), z)
         for (path, z) in zip(mapping.paths, mapping.allocations)])


def replay_embedding(dag, net, result, ready=None):
    """
    Independently re-simulate an embedding from its placements and per-path allocations.
    Returns (finish_times, makespan).
    """
    graph = graph_of(dag)
    for edge in graph.edges:
        mapping = result.edge_mappings.get(edge.key)
        if mapping is None:
            raise core_model.ValidationError('Embedding has no mapping for edge %s->%s' % edge.key)
        if (mapping.src_server, mapping.dst_server) != (
                result.placements[edge.src], result.placements[edge.dst]):
            raise core_model.ValidationError(
                'Mapping of edge %s->%s does not join the placed servers' % edge.key)
        for path in mapping.paths:
            if (path.src, path.dst) != (mapping.src_server, mapping.dst_server):
                raise core_model.ValidationError(
                    'Path %s of edge %s->%s has the wrong endpoints' % ((path,) + edge.key))
    _, finish_times = forward_schedule(
        dag, net, result.placements,
        lambda e: mapping_transit(result.edge_mappings[e.key], net), ready=ready)
    return finish_times, finish_times[result.dummy_id]


def advance_ready_times(ready, result):
    """
    Returns the ready-time map after an embedding: each server becomes ready when the last
    function placed on it finishes
    """
    updated = dict(ready)
    for (function_id, server_id) in result.placements.items():
        if function_id == result.dummy_id:
            continue
        updated[server_id] = max(updated.get(server_id, 0.0), result.finish_times[function_id])
    return updated


def result_to_doc(result):
    """ Returns the JSON document for an EmbeddingResult """
    return {
        "algorithm": result.algorithm,
        "placements": {str(fid): server for (fid, server) in sorted(result.placements.items())},
        "edges": [{
            "src": src,
            "dst": dst,
            "servers": [mapping.src_server, mapping.dst_server],
            "paths": [list(path.nodes) for path in mapping.paths],
            "z": list(mapping.allocations),
            "transit": mapping.transit,
        } for ((src, dst), mapping) in sorted(result.edge_mappings.items())],
        "finish_times": {str(fid): t for (fid, t) in sorted(result.finish_times.items())},
        "makespan": result.makespan,
    }
