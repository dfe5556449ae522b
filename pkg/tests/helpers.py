"""
Builders for small hand-made networks and DAGs used across the test modules
"""
import core_model


def make_network(psis, links):
    """ links is a list of (u, v, b) tuples; link ids follow list order """
    return core_model.validate_network(core_model.EdgeNetwork(
        servers=[core_model.Server(id=i, psi=float(psi)) for (i, psi) in enumerate(psis)],
        links=[core_model.Link(id=k, u=u, v=v, throughput=float(b))
               for (k, (u, v, b)) in enumerate(links)]))


def complete_network(n, psi=1.0, b=1.0):
    links = [(u, v, b) for u in range(n) for v in range(u + 1, n)]
    return make_network([psi] * n, links)


def make_dag(flops, edges):
    """ edges is a list of (src, dst, bits); functions are stored in id order """
    return core_model.validate_dag(core_model.WorkloadDag(
        functions=[core_model.FunctionNode(id=i, flops=float(c)) for (i, c) in enumerate(flops)],
        edges=[core_model.StreamEdge(src=s, dst=d, size=float(bits)) for (s, d, bits) in edges]))


def make_augmented(flops, edges, dst_out=None, default_out=1.0):
    dag = make_dag(flops, edges)
    if dst_out is None:
        dst_out = {fid: default_out for fid in dag.destination_ids()}
    return core_model.augment_dummy_tail(dag, dst_out)


def chain(flops, bits=1.0):
    """ Augmented chain f0 -> f1 -> ... with equal stream sizes """
    edges = [(i, i + 1, bits) for i in range(len(flops) - 1)]
    return make_augmented(flops, edges, default_out=bits)
