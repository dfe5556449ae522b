"""
Edge network and workload DAG model shared by the embedding scripts.

The edge is an undirected connected graph of servers (processing power psi, flop/s) and
links (throughput b, bit/s). A workload is a DAG of functions (flops) and data streams
(bits) listed in topological order. Before embedding, every DAG gets a dummy tail
function that all destination functions point to, so a single finish time defines
the makespan.

JSON documents handled here:
  network: {"servers": [{"id": 0, "psi": 2.0e10}, ...],
            "links": [{"id": 0, "u": 0, "v": 1, "b": 3.0e7}, ...]}
  dag:     {"functions": [{"id": 0, "flops": 1.0e9}, ...],
            "edges": [{"src": 0, "dst": 1, "bits": 5.0e6}, ...],
            "dst_out": {"3": 5.0e6}}
"""
import hashlib
import json
import math
import attr
import jsonschema
import networkx as nx


# JSON schemas for input documents
NETWORK_SCHEMA = {
    "type": "object",
    "required": ["servers", "links"],
    "properties": {
        "servers": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "psi"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "psi": {"type": "number"},
                },
            },
        },
        "links": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "u", "v", "b"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "u": {"type": "integer", "minimum": 0},
                    "v": {"type": "integer", "minimum": 0},
                    "b": {"type": "number"},
                },
            },
        },
    },
}
DAG_SCHEMA = {
    "type": "object",
    "required": ["functions", "edges", "dst_out"],
    "properties": {
        "functions": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "flops"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "flops": {"type": "number"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst", "bits"],
                "properties": {
                    "src": {"type": "integer", "minimum": 0},
                    "dst": {"type": "integer", "minimum": 0},
                    "bits": {"type": "number"},
                },
            },
        },
        "dst_out": {
            "type": "object",
            "patternProperties": {"^[0-9]+$": {"type": "number"}},
            "additionalProperties": False,
        },
    },
}
READY_SCHEMA = {
    "type": "object",
    "patternProperties": {"^[0-9]+$": {"type": "number", "minimum": 0}},
    "additionalProperties": False,
}


class EmbeddingError(Exception):
    """ Root of every error raised by the embedding engine """


class ValidationError(EmbeddingError):
    """ Invalid input: network, DAG, workload file or call precondition """


class Disconnected(ValidationError):
    pass


class NonPositiveParameter(ValidationError):
    pass


class DuplicateLink(ValidationError):
    pass


class SelfLoop(ValidationError):
    pass


class UnknownReference(ValidationError):
    pass


class CycleDetected(ValidationError):
    pass


class OrderViolation(ValidationError):
    pass


class NonPositiveStream(ValidationError):
    pass


class DuplicateStream(ValidationError):
    pass


class MissingOutputSize(ValidationError):
    pass


class AlreadyAugmented(ValidationError):
    pass


class EntryOrderViolation(ValidationError):
    pass


class SchemaError(ValidationError):
    """ Input document does not match its JSON schema; index is the record number """

    def __init__(self, message, index=None):
        super(SchemaError, self).__init__(message)
        self.index = index


@attr.s(frozen=True)
class Server(object):
    id = attr.ib()
    psi = attr.ib()


@attr.s(frozen=True)
class Link(object):
    id = attr.ib()
    u = attr.ib()
    v = attr.ib()
    throughput = attr.ib()

    @property
    def endpoints(self):
        return frozenset((self.u, self.v))

    def other_end(self, server_id):
        """ Returns the endpoint opposite to server_id """
        return self.v if server_id == self.u else self.u


@attr.s(frozen=True)
class EdgeNetwork(object):
    """
    Undirected graph of servers and links. Servers and links are stored in id order;
    adjacency maps a server id to its (neighbor id, link id) pairs sorted by neighbor.
    """
    servers = attr.ib(converter=tuple)
    links = attr.ib(converter=tuple)
    adjacency = attr.ib(init=False, repr=False, eq=False, hash=False)

    @adjacency.default
    def _build_adjacency(self):
        adjacency = {server.id: [] for server in self.servers}
        for link in self.links:
            adjacency.setdefault(link.u, []).append((link.v, link.id))
            if link.v != link.u:
                adjacency.setdefault(link.v, []).append((link.u, link.id))
        return {server_id: tuple(sorted(pairs)) for (server_id, pairs) in adjacency.items()}

    @property
    def n_servers(self):
        return len(self.servers)

    def server_ids(self):
        return range(len(self.servers))

    def neighbors(self, server_id):
        return self.adjacency.get(server_id, ())

    def to_graph(self):
        """ Returns the network as a networkx Graph with psi/b attributes """
        graph = nx.Graph()
        for server in self.servers:
            graph.add_node(server.id, psi=server.psi)
        for link in self.links:
            graph.add_edge(link.u, link.v, id=link.id, b=link.throughput)
        return graph


@attr.s(frozen=True)
class FunctionNode(object):
    id = attr.ib()
    flops = attr.ib()
    is_dummy = attr.ib(default=False)


@attr.s(frozen=True)
class StreamEdge(object):
    src = attr.ib()
    dst = attr.ib()
    size = attr.ib()

    @property
    def key(self):
        return (self.src, self.dst)


@attr.s(frozen=True)
class WorkloadDag(object):
    """
    Functions in stored (topological) order plus the stream edges between them.
    Lookup tables are derived once at construction.
    """
    functions = attr.ib(converter=tuple)
    edges = attr.ib(converter=tuple)
    _by_id = attr.ib(init=False, repr=False, eq=False, hash=False)
    _position = attr.ib(init=False, repr=False, eq=False, hash=False)
    _in_edges = attr.ib(init=False, repr=False, eq=False, hash=False)
    _out_edges = attr.ib(init=False, repr=False, eq=False, hash=False)

    @_by_id.default
    def _build_by_id(self):
        return {function.id: function for function in self.functions}

    @_position.default
    def _build_position(self):
        return {function.id: index for (index, function) in enumerate(self.functions)}

    @_in_edges.default
    def _build_in_edges(self):
        in_edges = {function.id: [] for function in self.functions}
        for edge in self.edges:
            in_edges.setdefault(edge.dst, []).append(edge)
        return {key: tuple(value) for (key, value) in in_edges.items()}

    @_out_edges.default
    def _build_out_edges(self):
        out_edges = {function.id: [] for function in self.functions}
        for edge in self.edges:
            out_edges.setdefault(edge.src, []).append(edge)
        return {key: tuple(value) for (key, value) in out_edges.items()}

    def __len__(self):
        return len(self.functions)

    def function(self, function_id):
        return self._by_id[function_id]

    def position(self, function_id):
        return self._position[function_id]

    def has_function(self, function_id):
        return function_id in self._by_id

    def predecessors(self, function_id):
        """ Returns the in-edges of function_id in edge-list order """
        return self._in_edges.get(function_id, ())

    def successors(self, function_id):
        """ Returns the out-edges of function_id in edge-list order """
        return self._out_edges.get(function_id, ())

    def out_degree(self, function_id):
        return len(self._out_edges.get(function_id, ()))

    def entry_ids(self):
        return [f.id for f in self.functions if not self._in_edges.get(f.id)]

    def destination_ids(self):
        return [f.id for f in self.functions if not self._out_edges.get(f.id)]

    def to_graph(self):
        graph = nx.DiGraph()
        for function in self.functions:
            graph.add_node(function.id, flops=function.flops)
        for edge in self.edges:
            graph.add_edge(edge.src, edge.dst, size=edge.size)
        return graph


@attr.s(frozen=True)
class AugmentedDag(object):
    """
    A WorkloadDag with the dummy tail appended. `dag` is the combined (F', E') graph
    the embedding algorithms walk; `base` is the original workload.
    """
    base = attr.ib()
    dummy_id = attr.ib()
    dummy_edges = attr.ib(converter=tuple)
    dag = attr.ib(init=False, repr=False, eq=False, hash=False)

    @dag.default
    def _build_dag(self):
        dummy = FunctionNode(id=self.dummy_id, flops=0.0, is_dummy=True)
        return WorkloadDag(
            functions=self.base.functions + (dummy,), edges=self.base.edges + self.dummy_edges)

    @property
    def functions(self):
        return self.dag.functions

    @property
    def edges(self):
        return self.dag.edges


@attr.s(frozen=True)
class Workload(object):
    """ A workload DAG together with the output sizes of its destination functions """
    dag = attr.ib()
    dst_out_sizes = attr.ib(converter=lambda sizes: dict(sorted(sizes.items())))
    name = attr.ib(default='')


def validate_network(net):
    """
    Raise a ValidationError if the network is not a valid undirected connected graph with
    positive processing powers and throughputs; otherwise return the network unchanged.
    """
    if not net.servers:
        raise Disconnected('Network has no servers')
    for (index, server) in enumerate(net.servers):
        if server.id != index:
            raise UnknownReference('Server ids must be dense and ordered: position %s has id %s' % (
                index, server.id))
        if not (server.psi > 0 and math.isfinite(server.psi)):
            raise NonPositiveParameter('Server %s has non-positive psi: %s' % (
                server.id, server.psi))
    seen_pairs = {}
    for (index, link) in enumerate(net.links):
        if link.id != index:
            raise UnknownReference('Link ids must be dense and ordered: position %s has id %s' % (
                index, link.id))
        for endpoint in (link.u, link.v):
            if not 0 <= endpoint < len(net.servers):
                raise UnknownReference('Link %s references unknown server %s' % (link.id, endpoint))
        if link.u == link.v:
            raise SelfLoop('Link %s is a self-loop on server %s' % (link.id, link.u))
        if not (link.throughput > 0 and math.isfinite(link.throughput)):
            raise NonPositiveParameter('Link %s has non-positive throughput: %s' % (
                link.id, link.throughput))
        if link.endpoints in seen_pairs:
            raise DuplicateLink('Links %s and %s both join servers %s and %s' % (
                seen_pairs[link.endpoints], link.id, link.u, link.v))
        seen_pairs[link.endpoints] = link.id
    reachable = nx.node_connected_component(net.to_graph(), 0)
    for server in net.servers:
        if server.id not in reachable:
            raise Disconnected('Server %s is not reachable from server 0' % server.id)
    return net


def validate_dag(dag):
    """
    Raise a ValidationError unless the DAG is acyclic, its stored order is topological and
    all flops/stream sizes are valid; otherwise return the DAG unchanged.
    """
    if not dag.functions:
        raise ValidationError('DAG has no functions')
    ids = [function.id for function in dag.functions]
    if sorted(ids) != list(range(len(ids))):
        raise UnknownReference('Function ids must be dense 0-based integers: %s' % ids)
    seen_edges = set()
    for edge in dag.edges:
        for function_id in (edge.src, edge.dst):
            if not dag.has_function(function_id):
                raise UnknownReference('Edge %s->%s references unknown function %s' % (
                    edge.src, edge.dst, function_id))
        if edge.src == edge.dst:
            raise CycleDetected('Cycle detected: %s -> %s' % (edge.src, edge.dst))
        if edge.key in seen_edges:
            raise DuplicateStream('Edge %s->%s is listed more than once' % edge.key)
        seen_edges.add(edge.key)
    try:
        cycle = nx.find_cycle(dag.to_graph())
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        witness = [u for (u, _) in cycle] + [cycle[0][0]]
        raise CycleDetected('Cycle detected: %s' % ' -> '.join(str(node) for node in witness))
    for edge in dag.edges:
        if dag.position(edge.src) > dag.position(edge.dst):
            raise OrderViolation('Edge %s->%s: source follows destination in the stored order' % (
                edge.src, edge.dst))
        if not (edge.size > 0 and math.isfinite(edge.size)):
            raise NonPositiveStream('Edge %s->%s has non-positive size: %s' % (
                edge.src, edge.dst, edge.size))
    for function in dag.functions:
        if not (function.flops >= 0 and math.isfinite(function.flops)):
            raise NonPositiveParameter('Function %s has invalid flops: %s' % (
                function.id, function.flops))
        if function.is_dummy and function.flops != 0:
            raise NonPositiveParameter('Dummy function %s must have zero flops' % function.id)
    return dag


def check_output_sizes(dag, dst_out_sizes):
    """
    Raise MissingOutputSize unless dst_out_sizes covers exactly the destination functions of
    dag with positive finite sizes; returns the destination ids
    """
    destinations = dag.destination_ids()
    for function_id in destinations:
        if function_id not in dst_out_sizes:
            raise MissingOutputSize('Destination function %s has no output size' % function_id)
        size = dst_out_sizes[function_id]
        if not (size > 0 and math.isfinite(size)):
            raise NonPositiveStream('Destination function %s has non-positive output size: %s' % (
                function_id, size))
    extra = sorted(set(dst_out_sizes) - set(destinations))
    if extra:
        raise MissingOutputSize('Output sizes given for non-destination functions: %s' % extra)
    return destinations


def augment_dummy_tail(dag, dst_out_sizes):
    """
    Return an AugmentedDag with a zero-cost tail function appended after every other function
    and one edge from each destination function to it, weighted by dst_out_sizes.
    """
    if isinstance(dag, AugmentedDag) or any(f.is_dummy for f in dag.functions):
        raise AlreadyAugmented('DAG already has a dummy tail function')
    validate_dag(dag)
    destinations = check_output_sizes(dag, dst_out_sizes)
    dummy_id = len(dag.functions)
    dummy_edges = [StreamEdge(src=function_id, dst=dummy_id, size=dst_out_sizes[function_id])
                   for function_id in destinations]
    return AugmentedDag(base=dag, dummy_id=dummy_id, dummy_edges=dummy_edges)


def processing_time(function, server):
    """ Returns c_f / psi_n in seconds; the dummy tail takes no time anywhere """
    if function.is_dummy:
        return 0.0
    return function.flops / server.psi


def check_entry_prefix(dag):
    """ Raise EntryOrderViolation unless all entry functions come first in the stored order """
    entry_ids = set(dag.entry_ids())
    for (index, function) in enumerate(dag.functions):
        if index < len(entry_ids) and function.id not in entry_ids:
            raise EntryOrderViolation(
                'Function %s at position %s is not an entry function, but %s entry functions '
                'must occupy the first positions' % (function.id, index, len(entry_ids)))
    return dag


def hoist_entry_functions(dag):
    """
    Return a DAG whose stored order lists the entry functions first. The relative order of
    the remaining functions is kept, so a topological order stays topological.
    """
    entry_ids = set(dag.entry_ids())
    entries = [f for f in dag.functions if f.id in entry_ids]
    others = [f for f in dag.functions if f.id not in entry_ids]
    return WorkloadDag(functions=entries + others, edges=dag.edges)


def scale_network(net, psi_factor=1.0, b_factor=1.0):
    """ Returns a copy of net with every psi and every b multiplied by the given factors """
    return EdgeNetwork(
        servers=[attr.evolve(server, psi=server.psi * psi_factor) for server in net.servers],
        links=[attr.evolve(link, throughput=link.throughput * b_factor) for link in net.links])


def _validate_schema(doc, schema, label, index=None):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as err:
        where = '%s record %s' % (label, index) if index is not None else label
        raise SchemaError('Invalid %s: %s' % (where, err.message), index=index)


def _load_json(doc_or_path):
    if isinstance(doc_or_path, (dict, list)):
        return doc_or_path
    with open(doc_or_path) as input_file:
        try:
            return json.load(input_file)
        except ValueError as err:
            raise SchemaError('Invalid JSON in %s: %s' % (doc_or_path, err))


def network_from_doc(doc):
    """ Build and validate an EdgeNetwork from a network document """
    _validate_schema(doc, NETWORK_SCHEMA, 'network')
    servers = sorted((Server(id=raw['id'], psi=float(raw['psi'])) for raw in doc['servers']),
                     key=lambda server: server.id)
    links = sorted((Link(id=raw['id'], u=raw['u'], v=raw['v'], throughput=float(raw['b']))
                    for raw in doc['links']), key=lambda link: link.id)
    return validate_network(EdgeNetwork(servers=servers, links=links))


def load_network(doc_or_path):
    """ Load a network from a JSON file path or an already-parsed document """
    return network_from_doc(_load_json(doc_or_path))


def dump_network(net):
    """ Returns the JSON document for net """
    return {
        "servers": [{"id": server.id, "psi": server.psi} for server in net.servers],
        "links": [{"id": link.id, "u": link.u, "v": link.v, "b": link.throughput}
                  for link in net.links],
    }


def workload_from_doc(doc, index=None):
    """
    Build and validate a Workload from a dag document. The functions array order is the
    stored topological order; entry functions are hoisted to the front.
    """
    _validate_schema(doc, DAG_SCHEMA, 'dag', index=index)
    functions = [FunctionNode(id=raw['id'], flops=float(raw['flops'])) for raw in doc['functions']]
    edges = [StreamEdge(src=raw['src'], dst=raw['dst'], size=float(raw['bits']))
             for raw in doc['edges']]
    dag = validate_dag(WorkloadDag(functions=functions, edges=edges))
    dst_out_sizes = {int(key): float(value) for (key, value) in doc['dst_out'].items()}
    check_output_sizes(dag, dst_out_sizes)
    return Workload(dag=hoist_entry_functions(dag), dst_out_sizes=dst_out_sizes,
                    name=doc.get('name', ''))


def load_dag(doc_or_path):
    """ Load a single dag document; returns (WorkloadDag, dst_out_sizes) """
    workload = workload_from_doc(_load_json(doc_or_path))
    return workload.dag, workload.dst_out_sizes


def dump_dag(dag, dst_out_sizes, name=''):
    """ Returns the JSON document for a DAG and the output sizes of its destinations """
    doc = {
        "functions": [{"id": f.id, "flops": f.flops} for f in dag.functions if not f.is_dummy],
        "edges": [{"src": e.src, "dst": e.dst, "bits": e.size} for e in dag.edges],
        "dst_out": {str(key): value for (key, value) in sorted(dst_out_sizes.items())},
    }
    if name:
        doc['name'] = name
    return doc


def load_ready_times(doc_or_path, net):
    """ Load a server ready-time map ({"0": 1.5, ...}); servers not listed are ready at 0 """
    doc = _load_json(doc_or_path)
    _validate_schema(doc, READY_SCHEMA, 'ready-time map')
    ready = {server_id: 0.0 for server_id in net.server_ids()}
    for (key, value) in doc.items():
        if int(key) not in ready:
            raise UnknownReference('Ready time given for unknown server %s' % key)
        if not math.isfinite(value):
            raise NonPositiveParameter('Ready time of server %s is not finite: %s' % (key, value))
        ready[int(key)] = float(value)
    return ready


def network_fingerprint(net):
    """ Returns a sha1 hex digest of the canonical network document """
    canonical = json.dumps(dump_network(net), sort_keys=True, separators=(',', ':'))
    return hashlib.sha1(canonical.encode('utf-8')).hexdigest()
