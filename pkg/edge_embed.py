"""
Command-line entry point for the edge function embedding tools.

  gen     generate a random network and DAG batch (net.json, dags.json)
  bench   embed every DAG with each algorithm and write the reports
  sweep   repeat the benchmark over server counts, connectivities or scaled psi/b
  oracle  compare DPE with exhaustive search on small random instances
  embed   embed one DAG and print the embedding as JSON
  paths   list the simple paths between two servers
  split   solve one optimal split

Exit codes: 0 success, 2 invalid input, 3 path catalog above the cap.
"""
import argparse
import json
import logging
import os
import sys
import baselines
import bench
import core_model
import embedder
import pathfind
import settings
import splitter


log = logging.getLogger('edge_embed')

LOG_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO}


def _csv_list(value, cast=str):
    return [cast(item.strip()) for item in value.split(',') if item.strip()]


def _spec_from_args(args):
    overrides = {}
    for field_name in ('seed', 'n_servers', 'connectivity', 'n_dags'):
        value = getattr(args, field_name, None)
        if value is not None:
            overrides[field_name] = value
    if getattr(args, 'min_size', None) is not None or getattr(args, 'max_size', None) is not None:
        low, high = settings.DEFAULT_DAG_SIZE_RANGE
        overrides['dag_size_range'] = (args.min_size or low, args.max_size or high)
    return bench.WorkloadSpec(**overrides)


def _load_inputs(args, spec, use_network_file=True):
    """ Returns (net, workloads) from --network/--dags files, generating whatever is missing """
    if use_network_file and args.network:
        net = core_model.load_network(args.network)
    else:
        net = bench.generate_network(spec)
    if args.dag_file:
        workloads = bench.import_dags(args.dag_file)
    else:
        workloads = bench.generate_dag_batch(spec)
    return net, workloads


def command_gen(args):
    spec = _spec_from_args(args)
    if not os.path.isdir(args.out):
        os.makedirs(args.out)
    net = bench.generate_network(spec)
    workloads = bench.generate_dag_batch(spec)
    bench.write_json(core_model.dump_network(net),
                     os.path.join(args.out, settings.FILENAME_NETWORK))
    bench.write_workloads(workloads, os.path.join(args.out, settings.FILENAME_DAGS))
    if args.verbosity:
        print('Generated %s servers, %s links and %s DAGs in %s' % (
            net.n_servers, len(net.links), len(workloads), args.out))


def command_bench(args):
    spec = _spec_from_args(args)
    net, workloads = _load_inputs(args, spec)
    bundle = bench.run_benchmark(net, workloads, algorithms=_csv_list(args.algos),
                                 workers=args.workers)
    filenames = bench.emit_report(bundle, args.out, include_timings=args.timings)
    bench.display_report_summary(bundle, verbosity=args.verbosity)
    if args.verbosity:
        print('\nReports saved to: %s' % ', '.join(filenames))


def command_sweep(args):
    spec = _spec_from_args(args)
    algorithms = _csv_list(args.algos)
    if args.kind == 'servers':
        _, workloads = _load_inputs(args, spec, use_network_file=False)
        values = _csv_list(args.values or '4,6,8', int)
        bundles = bench.run_server_sweep(workloads, spec, values, algorithms=algorithms,
                                         workers=args.workers)
    elif args.kind == 'sparsity':
        _, workloads = _load_inputs(args, spec, use_network_file=False)
        values = _csv_list(args.values or '0.3,0.5,0.7,1.0', float)
        bundles = bench.run_sparsity_sweep(workloads, spec, values, algorithms=algorithms,
                                           workers=args.workers)
    else:
        net, workloads = _load_inputs(args, spec)
        values = _csv_list(args.values or '0.5,1.0,2.0', float)
        bundles = bench.run_sensitivity_sweep(workloads, net, values, parameter=args.kind,
                                              algorithms=algorithms, workers=args.workers)
    filename = bench.emit_sweep(bundles, args.out, args.kind, include_timings=args.timings)
    if args.verbosity:
        for row in bench.sweep_rows(bundles):
            print('  %s=%s %s: %.6f s (%s paths)' % (args.kind, row[0], row[1], row[2], row[3]))
        print('\nSweep saved to: %s' % filename)


def command_oracle(args):
    gaps = bench.run_oracle_check(args.instances, seed=args.seed,
                                  single_successor=not args.general)
    filename = bench.emit_oracle_gaps(gaps, args.out)
    if args.verbosity:
        matched = len([g for g in gaps if abs(g.gap) <= settings.TOLERANCE * g.oracle_makespan])
        print('%s of %s instances match the exhaustive optimum; largest gap %r s' % (
            matched, len(gaps), max(g.gap for g in gaps) if gaps else 0.0))
        print('Gaps saved to: %s' % filename)


def command_embed(args):
    net = core_model.load_network(args.network)
    dag, dst_out_sizes = core_model.load_dag(args.dag)
    ready = core_model.load_ready_times(args.ready, net) if args.ready else None
    catalog = bench.build_catalog_for_bench(net)
    result = bench.embed_dag(args.algo, core_model.augment_dummy_tail(dag, dst_out_sizes),
                             net, catalog, routes=baselines.passive_routes(catalog), ready=ready)
    print(json.dumps(embedder.result_to_doc(result), sort_keys=True, indent=2))


def command_paths(args):
    net = core_model.load_network(args.network)
    paths = pathfind.enumerate_simple_paths(net, args.src, args.dst, limit=settings.PATH_CAP)
    for path in paths:
        print('%s coeff=%r' % (path, pathfind.path_coefficient(path, net)))
    print('%s simple paths between servers %s and %s' % (len(paths), args.src, args.dst))


def command_split(args):
    problem = splitter.SplitProblem(coefficients=_csv_list(args.coeffs, float),
                                    stream_size=args.size)
    solution = splitter.optimal_split(problem)
    doc = {"tau": solution.bottleneck_time, "z": list(solution.allocations)}
    if args.verify:
        doc['oracle_tau'] = splitter.bisection_oracle(
            problem, tol=settings.TOLERANCE * solution.bottleneck_time)
    print(json.dumps(doc, sort_keys=True))


def build_parser():
    parser = argparse.ArgumentParser(description='Edge function embedding: DPE and baselines')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='raise verbosity (repeatable)')
    parser.add_argument('-q', '--quiet', action='store_true', help='print nothing but errors')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    def add_workload_arguments(subparser, dag_count_flag):
        subparser.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)
        subparser.add_argument('--servers', dest='n_servers', type=int,
                               default=settings.DEFAULT_N_SERVERS)
        subparser.add_argument('--connectivity', type=float,
                               default=settings.DEFAULT_CONNECTIVITY)
        subparser.add_argument(dag_count_flag, dest='n_dags', type=int,
                               default=settings.DEFAULT_N_DAGS, help='number of generated DAGs')
        subparser.add_argument('--min-size', type=int, help='smallest generated DAG')
        subparser.add_argument('--max-size', type=int, help='largest generated DAG')

    gen = subparsers.add_parser('gen', help='generate net.json and dags.json')
    add_workload_arguments(gen, '--dags')
    gen.add_argument('--out', default=settings.OUTPUT_DIR)
    gen.set_defaults(handler=command_gen)

    for name in ('bench', 'sweep'):
        subparser = subparsers.add_parser(name, help='%s the algorithms' % name)
        add_workload_arguments(subparser, '--dag-count')
        subparser.add_argument('--network', help='network JSON file (generated when omitted)')
        subparser.add_argument('--dags', dest='dag_file', help='JSON array of dag documents')
        subparser.add_argument('--algos', default=','.join(settings.DEFAULT_BENCH_ALGORITHMS))
        subparser.add_argument('--out', default=settings.OUTPUT_DIR)
        subparser.add_argument('--workers', type=int, default=1)
        subparser.add_argument('--timings', action='store_true',
                               help='include wall-clock runtimes in summary.json and trials.csv')
        if name == 'sweep':
            subparser.add_argument('--kind', required=True,
                                   choices=['servers', 'sparsity', bench.SWEEP_PARAMETER_PSI,
                                            bench.SWEEP_PARAMETER_B])
            subparser.add_argument('--values', help='comma-separated sweep values')
            subparser.set_defaults(handler=command_sweep)
        else:
            subparser.set_defaults(handler=command_bench)

    oracle = subparsers.add_parser('oracle', help='compare DPE with exhaustive search')
    oracle.add_argument('--instances', type=int, default=100)
    oracle.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)
    oracle.add_argument('--general', action='store_true',
                        help='general DAGs instead of single-successor DAGs')
    oracle.add_argument('--out', default=settings.OUTPUT_DIR)
    oracle.set_defaults(handler=command_oracle)

    embed = subparsers.add_parser('embed', help='embed one DAG and print it as JSON')
    embed.add_argument('--network', required=True)
    embed.add_argument('--dag', required=True)
    embed.add_argument('--algo', default=settings.ALGO_DPE, choices=settings.ALGORITHMS)
    embed.add_argument('--ready', help='JSON map of server id to ready time')
    embed.set_defaults(handler=command_embed)

    paths = subparsers.add_parser('paths', help='list the simple paths between two servers')
    paths.add_argument('--network', required=True)
    paths.add_argument('--src', type=int, required=True)
    paths.add_argument('--dst', type=int, required=True)
    paths.set_defaults(handler=command_paths)

    split = subparsers.add_parser('split', help='solve one optimal split')
    split.add_argument('--coeffs', required=True, help='comma-separated path coefficients')
    split.add_argument('--size', type=float, required=True)
    split.add_argument('--verify', action='store_true', help='cross-check with bisection')
    split.set_defaults(handler=command_split)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.verbosity = 0 if args.quiet else settings.VERBOSITY + args.verbose
    logging.basicConfig(level=LOG_LEVELS.get(args.verbosity, logging.DEBUG),
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    try:
        args.handler(args)
    except pathfind.PathExplosion as err:
        log.error('%s', err)
        return settings.EXIT_PATH_EXPLOSION
    except core_model.ValidationError as err:
        log.error('%s: %s', err.__class__.__name__, err)
        return settings.EXIT_VALIDATION_ERROR
    return settings.EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
