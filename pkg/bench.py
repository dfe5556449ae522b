"""
Workload generation, benchmark orchestration and report emission.

Random generation is seeded through numpy: one SeedSequence per WorkloadSpec seed, spawned
into three PCG64 substreams ("network", "dag_sizes", "weights") so that changing one
artifact never shifts the random draws of another. Servers appended by grow_network draw
from their own SeedSequence([seed, server_id]), which keeps grown networks nested.

Report files written by emit_report (see output/README.md):
  summary.json, trials.csv, cdf_<algo>.csv, runtime.json
"""
import datetime
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
import attr
import networkx as nx
import numpy as np
import unicodecsv as csv
import baselines
import core_model
import embedder
import pathfind
import settings


log = logging.getLogger(__name__)

# Random substreams spawned from each seed, in spawn order
RNG_STREAMS = ['network', 'dag_sizes', 'weights']

# Report columns
TRIALS_HEADER = ['dag_id', 'algo', 'makespan_s', 'runtime_s', 'dag_size']
CDF_HEADER = ['makespan_s', 'fraction']
SWEEP_HEADER = ['value', 'algo', 'mean_makespan_s', 'total_paths', 'runtime_s']
ORACLE_GAPS_HEADER = ['instance', 'n_servers', 'n_functions', 'single_successor',
                      'dpe_makespan_s', 'oracle_makespan_s', 'gap_s']

# Sensitivity sweep parameters
SWEEP_PARAMETER_PSI = 'psi'
SWEEP_PARAMETER_B = 'b'

# Scale of the small random instances checked against the exhaustive oracle
ORACLE_VALUE_RANGE = (1.0, 4.0)
ORACLE_CONNECTIVITY = 0.6
ORACLE_SUCCESSOR_PROBABILITY = 0.8
ORACLE_READY_SPREAD = 3.0


class ConnectivityUnreachable(core_model.ValidationError):
    pass


def _check_range(instance, attribute, value):
    if len(value) != 2 or not 0 < value[0] <= value[1]:
        raise core_model.NonPositiveParameter('Invalid %s: %s' % (attribute.name, value))


def _check_count(instance, attribute, value):
    if value < 1:
        raise core_model.NonPositiveParameter('Invalid %s: %s' % (attribute.name, value))


def _check_connectivity(instance, attribute, value):
    if not 0 < value <= 1:
        raise core_model.NonPositiveParameter('Connectivity must be in (0, 1]: %s' % value)


@attr.s(frozen=True)
class WorkloadSpec(object):
    seed = attr.ib(default=settings.DEFAULT_SEED)
    n_servers = attr.ib(default=settings.DEFAULT_N_SERVERS, validator=_check_count)
    connectivity = attr.ib(default=settings.DEFAULT_CONNECTIVITY, validator=_check_connectivity)
    psi_range = attr.ib(default=settings.DEFAULT_PSI_RANGE, converter=tuple,
                        validator=_check_range)
    bandwidth_range = attr.ib(default=settings.DEFAULT_BANDWIDTH_RANGE, converter=tuple,
                              validator=_check_range)
    n_dags = attr.ib(default=settings.DEFAULT_N_DAGS, validator=_check_count)
    dag_size_range = attr.ib(default=settings.DEFAULT_DAG_SIZE_RANGE, converter=tuple,
                             validator=_check_range)
    flops_range = attr.ib(default=settings.DEFAULT_FLOPS_RANGE, converter=tuple,
                          validator=_check_range)
    stream_range = attr.ib(default=settings.DEFAULT_STREAM_RANGE, converter=tuple,
                           validator=_check_range)
    max_predecessors = attr.ib(default=settings.DEFAULT_MAX_PREDECESSORS, validator=_check_count)


@attr.s(frozen=True)
class TrialRecord(object):
    dag_id = attr.ib()
    algorithm = attr.ib()
    makespan = attr.ib()
    runtime = attr.ib()
    dag_size = attr.ib()
    fingerprint = attr.ib()


@attr.s(frozen=True)
class ReportBundle(object):
    """
    Aggregated benchmark results. reductions['dpe_vs_heft'] is the fraction by which the
    mean makespan of dpe is below that of heft.
    """
    algorithms = attr.ib(converter=tuple)
    trials = attr.ib(converter=tuple)
    network_fingerprint = attr.ib()
    total_paths = attr.ib()
    mean_makespan = attr.ib()
    batch_means = attr.ib()
    cdf = attr.ib()
    reductions = attr.ib()
    runtime_totals = attr.ib()

    def makespans(self, algorithm):
        """ Returns {dag_id: makespan} for one algorithm """
        return {t.dag_id: t.makespan for t in self.trials if t.algorithm == algorithm}


@attr.s(frozen=True)
class OracleGap(object):
    instance = attr.ib()
    n_servers = attr.ib()
    n_functions = attr.ib()
    single_successor = attr.ib()
    dpe_makespan = attr.ib()
    oracle_makespan = attr.ib()

    @property
    def gap(self):
        return self.dpe_makespan - self.oracle_makespan


def random_streams(seed):
    """ Returns {name: numpy Generator} for the named substreams of seed """
    children = np.random.SeedSequence(seed).spawn(len(RNG_STREAMS))
    return {name: np.random.Generator(np.random.PCG64(child))
            for (name, child) in zip(RNG_STREAMS, children)}


def generate_network(spec):
    """
    Returns a random connected EdgeNetwork: psi and b uniform in their ranges, each server
    pair linked with probability spec.connectivity, resampled until connected
    """
    rng = random_streams(spec.seed)['network']
    psi = rng.uniform(spec.psi_range[0], spec.psi_range[1], size=spec.n_servers)
    pairs = [(u, v) for u in range(spec.n_servers) for v in range(u + 1, spec.n_servers)]
    chosen = None
    for attempt in range(settings.CONNECT_RETRIES):
        draws = rng.random(len(pairs))
        candidate = [pair for (pair, draw) in zip(pairs, draws) if draw < spec.connectivity]
        graph = nx.Graph()
        graph.add_nodes_from(range(spec.n_servers))
        graph.add_edges_from(candidate)
        if nx.is_connected(graph):
            chosen = candidate
            log.debug('Connected network drawn after %s attempts', attempt + 1)
            break
    if chosen is None:
        raise ConnectivityUnreachable(
            'No connected network with %s servers at connectivity %s after %s attempts' % (
                spec.n_servers, spec.connectivity, settings.CONNECT_RETRIES))
    throughputs = rng.uniform(spec.bandwidth_range[0], spec.bandwidth_range[1], size=len(chosen))
    servers = [core_model.Server(id=i, psi=float(psi[i])) for i in range(spec.n_servers)]
    links = [core_model.Link(id=k, u=u, v=v, throughput=float(throughputs[k]))
             for (k, (u, v)) in enumerate(chosen)]
    return core_model.validate_network(core_model.EdgeNetwork(servers=servers, links=links))


def grow_network(net, spec, n_servers):
    """
    Returns net extended to n_servers servers. Each new server links to every existing one
    with probability spec.connectivity, or to one random existing server if none was drawn,
    so the original network stays an induced sub-network.
    """
    if n_servers < net.n_servers:
        raise core_model.ValidationError('Cannot grow a %s-server network down to %s servers' % (
            net.n_servers, n_servers))
    servers = list(net.servers)
    links = list(net.links)
    for server_id in range(net.n_servers, n_servers):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([spec.seed, server_id])))
        psi = rng.uniform(spec.psi_range[0], spec.psi_range[1])
        draws = rng.random(server_id)
        neighbors = [i for i in range(server_id) if draws[i] < spec.connectivity]
        if not neighbors:
            neighbors = [int(rng.integers(server_id))]
        for neighbor in neighbors:
            links.append(core_model.Link(
                id=len(links), u=neighbor, v=server_id,
                throughput=float(rng.uniform(spec.bandwidth_range[0], spec.bandwidth_range[1]))))
        servers.append(core_model.Server(id=server_id, psi=float(psi)))
    return core_model.validate_network(core_model.EdgeNetwork(servers=servers, links=links))


def generate_dag_batch(spec):
    """
    Returns spec.n_dags layered random Workloads. Function 0 is the only entry; every later
    function draws 1 to max_predecessors distinct predecessors among the earlier ones.
    """
    streams = random_streams(spec.seed)
    sizes = streams['dag_sizes'].integers(
        spec.dag_size_range[0], spec.dag_size_range[1], endpoint=True, size=spec.n_dags)
    rng = streams['weights']
    workloads = []
    for (index, size) in enumerate(sizes):
        size = int(size)
        flops = rng.uniform(spec.flops_range[0], spec.flops_range[1], size=size)
        functions = [core_model.FunctionNode(id=i, flops=float(flops[i])) for i in range(size)]
        edges = []
        for dst in range(1, size):
            n_predecessors = int(rng.integers(1, min(spec.max_predecessors, dst), endpoint=True))
            for src in sorted(int(p) for p in rng.choice(dst, size=n_predecessors, replace=False)):
                edges.append(core_model.StreamEdge(
                    src=src, dst=dst,
                    size=float(rng.uniform(spec.stream_range[0], spec.stream_range[1]))))
        dag = core_model.validate_dag(core_model.WorkloadDag(functions=functions, edges=edges))
        dst_out_sizes = {
            function_id: float(rng.uniform(spec.stream_range[0], spec.stream_range[1]))
            for function_id in dag.destination_ids()}
        workloads.append(core_model.Workload(
            dag=dag, dst_out_sizes=dst_out_sizes, name='dag-%04d' % index))
    return workloads


def write_json(doc, filename):
    with open(filename, 'w') as output_file:
        json.dump(doc, output_file, sort_keys=True, indent=2)
        output_file.write('\n')


def write_workloads(workloads, filename):
    """ Save workloads as a JSON array of dag documents """
    write_json([core_model.dump_dag(w.dag, w.dst_out_sizes, name=w.name) for w in workloads],
               filename)


def import_dags(filename):
    """
    Load a JSON array of dag documents. Any invalid record raises SchemaError carrying the
    record index.
    """
    with open(filename) as input_file:
        try:
            doc = json.load(input_file)
        except ValueError as err:
            raise core_model.SchemaError('Invalid JSON in %s: %s' % (filename, err))
    if not isinstance(doc, list):
        raise core_model.SchemaError('%s must hold a JSON array of dag documents' % filename)
    workloads = []
    for (index, record) in enumerate(doc):
        try:
            workload = core_model.workload_from_doc(record, index=index)
        except core_model.SchemaError:
            raise
        except core_model.ValidationError as err:
            raise core_model.SchemaError('Invalid dag record %s: %s' % (index, err), index=index)
        if not workload.name:
            workload = attr.evolve(workload, name='dag-%04d' % index)
        workloads.append(workload)
    return workloads


def embed_dag(algorithm, dag, net, catalog, routes=None, ready=None):
    """ Embed an AugmentedDag with the named algorithm and return its EmbeddingResult """
    if algorithm == settings.ALGO_DPE:
        return embedder.dpe_embed(dag, net, catalog, ready=ready)
    if routes is None and algorithm in (settings.ALGO_HEFT, settings.ALGO_PLACEMENT_ONLY):
        routes = baselines.passive_routes(catalog)
    if algorithm == settings.ALGO_HEFT:
        return baselines.heft_schedule(dag, net, routes, ready=ready)
    if algorithm == settings.ALGO_PLACEMENT_ONLY:
        return baselines.placement_only_embed(dag, net, catalog, routes=routes, ready=ready)
    if algorithm == settings.ALGO_BRUTE:
        return embedder.brute_force_embed(dag, net, catalog, ready=ready)
    raise core_model.ValidationError('Unknown algorithm: %s' % algorithm)


def build_catalog_for_bench(net, path_cap=None, workers=1):
    """ Build the path catalog, adding sizing guidance to a PathExplosion """
    try:
        return pathfind.build_catalog(net, path_cap=path_cap, workers=workers)
    except pathfind.PathExplosion as err:
        raise pathfind.PathExplosion(
            '%s. Lower the connectivity or the number of servers, or raise the cap with %s' % (
                err, settings.PATH_CAP_ENV_VAR), cap=err.cap)


def run_benchmark(net, workloads, algorithms=None, workers=1, path_cap=None):
    """
    Embed every workload with every algorithm on the same idle network and return the
    ReportBundle. Trials run in a thread pool when workers > 1; records are merged in
    (dag_id, algorithm) order.
    """
    algorithms = list(settings.DEFAULT_BENCH_ALGORITHMS if algorithms is None else algorithms)
    if not algorithms:
        raise core_model.ValidationError('At least one algorithm is required')
    for algorithm in algorithms:
        if algorithm not in settings.ALGORITHMS:
            raise core_model.ValidationError('Unknown algorithm: %s' % algorithm)
    catalog = build_catalog_for_bench(net, path_cap=path_cap, workers=workers)
    routes = baselines.passive_routes(catalog)
    fingerprint = core_model.network_fingerprint(net)

    def run_trials(item):
        dag_id, workload = item
        dag = core_model.augment_dummy_tail(workload.dag, workload.dst_out_sizes)
        records = []
        for algorithm in algorithms:
            started = time.perf_counter()
            result = embed_dag(algorithm, dag, net, catalog, routes=routes)
            records.append(TrialRecord(
                dag_id=dag_id, algorithm=algorithm, makespan=result.makespan,
                runtime=time.perf_counter() - started, dag_size=len(workload.dag),
                fingerprint=fingerprint))
        return records

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            batches = list(executor.map(run_trials, enumerate(workloads)))
    else:
        batches = [run_trials(item) for item in enumerate(workloads)]
    trials = sorted((record for batch in batches for record in batch),
                    key=lambda record: (record.dag_id, record.algorithm))
    log.info('Benchmark finished: %s DAGs x %s algorithms on network %s',
             len(workloads), len(algorithms), fingerprint[:12])
    return build_report(trials, algorithms, fingerprint, pathfind.total_path_count(catalog))


def batch_label(dag_size, width=None):
    """ Returns the size-batch label of a DAG, eg 7 -> "5-9" for width 5 """
    width = width or settings.REPORT_BATCH_WIDTH
    low = (dag_size // width) * width
    return '%s-%s' % (low, low + width - 1)


def cdf_points(makespans):
    """ Returns [(makespan, cumulative fraction)] over the sorted makespans """
    ordered = sorted(makespans)
    return [(value, (index + 1) / float(len(ordered))) for (index, value) in enumerate(ordered)]


def build_report(trials, algorithms, fingerprint, total_paths):
    """ Aggregate trial records into a ReportBundle """
    mean_makespan = {}
    batch_means = {}
    cdf = {}
    runtime_totals = {}
    for algorithm in algorithms:
        records = [t for t in trials if t.algorithm == algorithm]
        makespans = [t.makespan for t in records]
        mean_makespan[algorithm] = float(np.mean(makespans)) if makespans else 0.0
        cdf[algorithm] = cdf_points(makespans)
        runtime_totals[algorithm] = sum(t.runtime for t in records)
        batches = {}
        for record in records:
            batches.setdefault(record.dag_size // settings.REPORT_BATCH_WIDTH, []).append(
                record.makespan)
        batch_means[algorithm] = [
            (batch_label(key * settings.REPORT_BATCH_WIDTH), float(np.mean(batches[key])))
            for key in sorted(batches)]
    reductions = {}
    for algorithm in algorithms:
        for other in algorithms:
            if algorithm != other and mean_makespan[other] > 0:
                reductions['%s_vs_%s' % (algorithm, other)] = (
                    mean_makespan[other] - mean_makespan[algorithm]) / mean_makespan[other]
    return ReportBundle(
        algorithms=algorithms, trials=trials, network_fingerprint=fingerprint,
        total_paths=total_paths, mean_makespan=mean_makespan, batch_means=batch_means, cdf=cdf,
        reductions=reductions, runtime_totals=runtime_totals)


def summary_doc(bundle, include_timings=False):
    """ Returns the summary.json document; timings only when include_timings is set """
    doc = {
        "algorithms": list(bundle.algorithms),
        "n_dags": len(set(t.dag_id for t in bundle.trials)),
        "network_fingerprint": bundle.network_fingerprint,
        "total_paths": bundle.total_paths,
        "mean_makespan_s": bundle.mean_makespan,
        "batch_mean_makespan_s": {
            algorithm: {label: mean for (label, mean) in batches}
            for (algorithm, batches) in bundle.batch_means.items()},
        "reductions": bundle.reductions,
    }
    if include_timings:
        doc['runtime_s'] = bundle.runtime_totals
    return doc


def _write_rows(filename, header, rows):
    with open(filename, 'wb') as output_file:
        writer = csv.writer(output_file, delimiter=',', quotechar='"', lineterminator='\n',
                            encoding='utf-8')
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(value)) if isinstance(value, float) else value
                             for value in row])


def emit_report(bundle, output_dir, include_timings=False):
    """
    Write summary.json, trials.csv, one cdf_<algo>.csv per algorithm and runtime.json to
    output_dir and return the written filenames. Wall-clock values only go into runtime.json
    unless include_timings is set, so the other files are byte-identical across runs.
    """
    if not os.path.isdir(output_dir):
        os.makedirs(output_dir)
    filenames = []

    filename = os.path.join(output_dir, settings.FILENAME_SUMMARY)
    write_json(summary_doc(bundle, include_timings=include_timings), filename)
    filenames.append(filename)

    filename = os.path.join(output_dir, settings.FILENAME_TRIALS)
    _write_rows(filename, TRIALS_HEADER, [
        [t.dag_id, t.algorithm, t.makespan, t.runtime if include_timings else '', t.dag_size]
        for t in bundle.trials])
    filenames.append(filename)

    for algorithm in bundle.algorithms:
        filename = os.path.join(output_dir, settings.FILENAME_CDF % algorithm)
        _write_rows(filename, CDF_HEADER, bundle.cdf[algorithm])
        filenames.append(filename)

    filename = os.path.join(output_dir, settings.FILENAME_RUNTIME)
    write_json({"runtime_s": bundle.runtime_totals,
                "generated": datetime.datetime.now().isoformat()}, filename)
    filenames.append(filename)
    return filenames


def run_server_sweep(workloads, spec, counts, algorithms=None, workers=1, growth_spec=None):
    """
    Benchmark the workloads on nested networks: the smallest count is generated from spec,
    larger ones are grown from it with growth_spec (spec by default).
    Returns {n_servers: ReportBundle}.
    """
    counts = sorted(set(counts))
    base = generate_network(attr.evolve(spec, n_servers=counts[0]))
    bundles = {}
    for count in counts:
        net = grow_network(base, growth_spec or spec, count)
        bundles[count] = run_benchmark(net, workloads, algorithms=algorithms, workers=workers)
    return bundles


def run_sparsity_sweep(workloads, spec, connectivities, algorithms=None, workers=1):
    """ Returns {connectivity: ReportBundle}, one freshly generated network per connectivity """
    bundles = {}
    for connectivity in sorted(set(connectivities)):
        net = generate_network(attr.evolve(spec, connectivity=connectivity))
        bundles[connectivity] = run_benchmark(
            net, workloads, algorithms=algorithms, workers=workers)
    return bundles


def run_sensitivity_sweep(workloads, net, factors, parameter=SWEEP_PARAMETER_PSI,
                          algorithms=None, workers=1):
    """ Returns {factor: ReportBundle} with every psi (or every b) of net scaled by factor """
    if parameter not in (SWEEP_PARAMETER_PSI, SWEEP_PARAMETER_B):
        raise core_model.ValidationError('Unknown sensitivity parameter: %s' % parameter)
    bundles = {}
    for factor in sorted(set(factors)):
        if parameter == SWEEP_PARAMETER_PSI:
            scaled = core_model.scale_network(net, psi_factor=factor)
        else:
            scaled = core_model.scale_network(net, b_factor=factor)
        bundles[factor] = run_benchmark(scaled, workloads, algorithms=algorithms, workers=workers)
    return bundles


def sweep_rows(bundles, include_timings=False):
    """ Returns one row per (sweep value, algorithm), in SWEEP_HEADER order """
    rows = []
    for value in sorted(bundles):
        bundle = bundles[value]
        for algorithm in bundle.algorithms:
            rows.append([value, algorithm, bundle.mean_makespan[algorithm], bundle.total_paths,
                         bundle.runtime_totals[algorithm] if include_timings else ''])
    return rows


def emit_sweep(bundles, output_dir, kind, include_timings=False):
    if not os.path.isdir(output_dir):
        os.makedirs(output_dir)
    filename = os.path.join(output_dir, settings.FILENAME_SWEEP % kind)
    _write_rows(filename, SWEEP_HEADER, sweep_rows(bundles, include_timings=include_timings))
    return filename


def _single_successor_workload(rng, n_functions):
    """ Random in-forest: every function has at most one successor """
    low, high = ORACLE_VALUE_RANGE
    functions = [core_model.FunctionNode(id=i, flops=float(rng.uniform(low, high)))
                 for i in range(n_functions)]
    edges = []
    for src in range(n_functions - 1):
        if rng.random() < ORACLE_SUCCESSOR_PROBABILITY:
            edges.append(core_model.StreamEdge(
                src=src, dst=int(rng.integers(src + 1, n_functions)),
                size=float(rng.uniform(low, high))))
    dag = core_model.validate_dag(core_model.WorkloadDag(functions=functions, edges=edges))
    dst_out_sizes = {fid: float(rng.uniform(low, high)) for fid in dag.destination_ids()}
    return core_model.Workload(
        dag=core_model.hoist_entry_functions(dag), dst_out_sizes=dst_out_sizes)


def oracle_instance(seed, single_successor=True, max_functions=5, max_servers=4):
    """
    Returns (net, workload, ready) for one small random instance: at most max_servers servers
    and max_functions functions, values of order 1 so that routing and processing compete
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    n_servers = int(rng.integers(1, max_servers, endpoint=True))
    n_functions = int(rng.integers(1, max_functions, endpoint=True))
    spec = WorkloadSpec(
        seed=int(rng.integers(2 ** 31)), n_servers=n_servers, connectivity=ORACLE_CONNECTIVITY,
        psi_range=ORACLE_VALUE_RANGE, bandwidth_range=ORACLE_VALUE_RANGE, n_dags=1,
        dag_size_range=(n_functions, n_functions), flops_range=ORACLE_VALUE_RANGE,
        stream_range=ORACLE_VALUE_RANGE)
    net = generate_network(spec)
    if single_successor:
        workload = _single_successor_workload(rng, n_functions)
    else:
        workload = generate_dag_batch(spec)[0]
    ready = {server_id: float(rng.uniform(0.0, ORACLE_READY_SPREAD))
             for server_id in net.server_ids()}
    return net, workload, ready


def run_oracle_check(n_instances, seed=settings.DEFAULT_SEED, single_successor=True,
                     max_functions=5, max_servers=4):
    """
    Compare DPE against the exhaustive oracle on n_instances small random instances.
    Returns one OracleGap per instance.
    """
    gaps = []
    for (index, child) in enumerate(np.random.SeedSequence(seed).spawn(n_instances)):
        net, workload, ready = oracle_instance(
            child, single_successor=single_successor, max_functions=max_functions,
            max_servers=max_servers)
        dag = core_model.augment_dummy_tail(workload.dag, workload.dst_out_sizes)
        catalog = pathfind.build_catalog(net)
        dpe = embedder.dpe_embed(dag, net, catalog, ready=ready)
        oracle = embedder.brute_force_embed(dag, net, catalog, ready=ready)
        gaps.append(OracleGap(
            instance=index, n_servers=net.n_servers, n_functions=len(workload.dag),
            single_successor=single_successor, dpe_makespan=dpe.makespan,
            oracle_makespan=oracle.makespan))
    log.info('Oracle check: %s instances, largest gap %s', len(gaps),
             max(gap.gap for gap in gaps) if gaps else 0.0)
    return gaps


def emit_oracle_gaps(gaps, output_dir):
    if not os.path.isdir(output_dir):
        os.makedirs(output_dir)
    filename = os.path.join(output_dir, settings.FILENAME_ORACLE_GAPS)
    _write_rows(filename, ORACLE_GAPS_HEADER, [
        [g.instance, g.n_servers, g.n_functions, int(g.single_successor), g.dpe_makespan,
         g.oracle_makespan, g.gap] for g in gaps])
    return filename


def display_report_summary(bundle, verbosity=1):
    """ Print a summary of a ReportBundle """
    if verbosity < 1:
        return
    n_dags = len(set(t.dag_id for t in bundle.trials))
    print('Embedding Benchmark Summary %s\n' % datetime.datetime.now().strftime("%Y-%m-%d"))
    print('  Network: %s (%s stored paths)' % (bundle.network_fingerprint[:12], bundle.total_paths))
    print('  DAGs: %s' % n_dags)
    print('  Mean makespan:')
    for algorithm in bundle.algorithms:
        print('    %s: %.6f s' % (algorithm, bundle.mean_makespan[algorithm]))
    if verbosity >= 2:
        print('  Mean makespan by DAG size:')
        for algorithm in bundle.algorithms:
            print('    %s:' % algorithm)
            for (label, mean) in bundle.batch_means[algorithm]:
                print('      %s: %.6f s' % (label, mean))
        print('  Mean reductions:')
        for (key, reduction) in sorted(bundle.reductions.items()):
            print('    %s: %.2f%%' % (key, 100.0 * reduction))
    if verbosity >= 3:
        print('  Runtime totals:')
        for algorithm in bundle.algorithms:
            print('    %s: %.3f s' % (algorithm, bundle.runtime_totals[algorithm]))
    if verbosity >= 4:
        print('  Trials:')
        for trial in bundle.trials:
            print('    dag %s [%s functions] %s: %.6f s' % (
                trial.dag_id, trial.dag_size, trial.algorithm, trial.makespan))
