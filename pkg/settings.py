"""
Settings for the edge_embed repository
"""
import os


# VERBOSITY: Set verbosity level during processing:
#   0 - Silent
#   1 - Summary information only
#   2 - Display detailed report
#   3 - Display debug info
#   4 - Display all info
VERBOSITY = 1

# Path catalog cap: total simple paths stored across all server pairs before the
# catalog build fails with PathExplosion. EDGE_EMBED_PATH_CAP overrides it.
PATH_CAP_ENV_VAR = 'EDGE_EMBED_PATH_CAP'
DEFAULT_PATH_CAP = 10 ** 6
PATH_CAP = int(os.environ.get(PATH_CAP_ENV_VAR, DEFAULT_PATH_CAP))

# Numerical tolerances (relative) and exhaustive-search guard
TOLERANCE = 1e-9
BRUTE_FORCE_LIMIT = 10 ** 6
BISECTION_MAX_ITERATIONS = 200

# Algorithm registry names, as accepted by `edge_embed.py embed --algo` and `bench --algos`
ALGO_DPE = 'dpe'
ALGO_HEFT = 'heft'
ALGO_PLACEMENT_ONLY = 'placement-only'
ALGO_BRUTE = 'brute'
ALGORITHMS = [ALGO_DPE, ALGO_HEFT, ALGO_PLACEMENT_ONLY, ALGO_BRUTE]
DEFAULT_BENCH_ALGORITHMS = [ALGO_DPE, ALGO_HEFT, ALGO_PLACEMENT_ONLY]

# Workload defaults: desk-scale version of the evaluation setup
DEFAULT_SEED = 0
DEFAULT_N_SERVERS = 6
DEFAULT_CONNECTIVITY = 0.5
DEFAULT_PSI_RANGE = (2.0e10, 4.0e10)  # flop/s
DEFAULT_BANDWIDTH_RANGE = (3.0e7, 8.0e7)  # bit/s
DEFAULT_N_DAGS = 200
DEFAULT_DAG_SIZE_RANGE = (2, 20)  # functions
DEFAULT_FLOPS_RANGE = (1.0e9, 1.0e10)  # flop
DEFAULT_STREAM_RANGE = (5.0e6, 1.5e7)  # bits
DEFAULT_MAX_PREDECESSORS = 3
CONNECT_RETRIES = 1000

# Report batches group DAGs by function count, eg 3 -> batch "0-4", 7 -> batch "5-9"
REPORT_BATCH_WIDTH = 5

# Output filenames: "%s" is replaced with the algorithm or sweep name
OUTPUT_DIR = 'output'
FILENAME_NETWORK = 'net.json'
FILENAME_DAGS = 'dags.json'
FILENAME_SUMMARY = 'summary.json'
FILENAME_TRIALS = 'trials.csv'
FILENAME_CDF = 'cdf_%s.csv'
FILENAME_RUNTIME = 'runtime.json'
FILENAME_ORACLE_GAPS = 'oracle_gaps.csv'
FILENAME_SWEEP = 'sweep_%s.csv'

# CLI exit codes
EXIT_OK = 0
EXIT_VALIDATION_ERROR = 2
EXIT_PATH_EXPLOSION = 3
