import json
import os
import mock
import pytest
import bench
import core_model
import edge_embed
import embedder
import helpers
import pathfind
import settings


@pytest.fixture
def network_file(triangle, tmp_path):
    filename = str(tmp_path / 'net.json')
    bench.write_json(core_model.dump_network(triangle), filename)
    return filename


@pytest.fixture
def dag_file(tmp_path):
    filename = str(tmp_path / 'dag.json')
    bench.write_json({
        "functions": [{"id": 0, "flops": 2.0}, {"id": 1, "flops": 4.0}],
        "edges": [{"src": 0, "dst": 1, "bits": 3.0}],
        "dst_out": {"1": 1.0},
    }, filename)
    return filename


def test_split(capsys):
    assert edge_embed.main(['split', '--coeffs', '0.5,0.25', '--size', '6', '--verify']) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['tau'] == pytest.approx(1.0, rel=1e-12)
    assert doc['z'] == pytest.approx([2.0, 4.0], rel=1e-12)
    assert doc['oracle_tau'] == pytest.approx(1.0, rel=1e-6)


def test_split_rejects_zero_coefficient():
    assert edge_embed.main(['-q', 'split', '--coeffs', '0.5,0', '--size', '1']) == \
        settings.EXIT_VALIDATION_ERROR


def test_paths(network_file, capsys):
    assert edge_embed.main(['paths', '--network', network_file, '--src', '0', '--dst', '2']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == '0-2 coeff=0.25'
    assert lines[1].startswith('0-1-2 coeff=')
    assert lines[-1] == '2 simple paths between servers 0 and 2'


def test_paths_same_server(network_file):
    assert edge_embed.main(['-q', 'paths', '--network', network_file, '--src', '1',
                            '--dst', '1']) == settings.EXIT_VALIDATION_ERROR


def test_embed_prints_dpe_result(network_file, dag_file, triangle, capsys):
    assert edge_embed.main(['embed', '--network', network_file, '--dag', dag_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    dag, dst_out = core_model.load_dag(dag_file)
    expected = embedder.dpe_embed(core_model.augment_dummy_tail(dag, dst_out), triangle,
                                  pathfind.build_catalog(triangle))
    assert doc['algorithm'] == settings.ALGO_DPE
    assert doc['makespan'] == pytest.approx(expected.makespan, rel=1e-12)


def test_embed_with_ready_times(network_file, dag_file, tmp_path, capsys):
    ready_file = str(tmp_path / 'ready.json')
    bench.write_json({"2": 100.0}, ready_file)
    assert edge_embed.main(['embed', '--network', network_file, '--dag', dag_file,
                            '--algo', 'heft', '--ready', ready_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['algorithm'] == settings.ALGO_HEFT
    assert 2 not in doc['placements'].values()


def test_gen_then_bench(tmp_path):
    data_dir = str(tmp_path / 'data')
    out_dir = str(tmp_path / 'out')
    assert edge_embed.main(['-q', 'gen', '--dags', '4', '--servers', '4', '--out', data_dir]) == 0
    assert sorted(os.listdir(data_dir)) == ['dags.json', 'net.json']
    assert edge_embed.main([
        '-q', 'bench', '--network', os.path.join(data_dir, 'net.json'),
        '--dags', os.path.join(data_dir, 'dags.json'), '--out', out_dir]) == 0
    assert sorted(os.listdir(out_dir)) == [
        'cdf_dpe.csv', 'cdf_heft.csv', 'cdf_placement-only.csv', 'runtime.json',
        'summary.json', 'trials.csv']
    with open(os.path.join(out_dir, 'summary.json')) as input_file:
        assert json.load(input_file)['n_dags'] == 4


def test_bench_prints_summary(tmp_path, capsys):
    assert edge_embed.main(['bench', '--dag-count', '3', '--servers', '4', '--algos', 'dpe',
                            '--out', str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert 'Embedding Benchmark Summary' in out
    assert 'Reports saved to' in out


def test_invalid_network_exits_with_validation_error(tmp_path):
    filename = str(tmp_path / 'net.json')
    bench.write_json(core_model.dump_network(helpers.make_network([1.0, 1.0], [(0, 1, 1.0)])),
                     filename)
    with open(filename) as input_file:
        doc = json.load(input_file)
    doc['servers'].append({"id": 2, "psi": 1.0})
    bench.write_json(doc, filename)
    assert edge_embed.main(['-q', 'bench', '--network', filename, '--dag-count', '2',
                            '--out', str(tmp_path / 'out')]) == settings.EXIT_VALIDATION_ERROR


def test_unknown_algorithm_exits_with_validation_error(tmp_path):
    assert edge_embed.main(['-q', 'bench', '--dag-count', '2', '--algos', 'dpe,magic',
                            '--out', str(tmp_path)]) == settings.EXIT_VALIDATION_ERROR


def test_path_explosion_exit_code(tmp_path):
    with mock.patch.object(settings, 'PATH_CAP', 5):
        assert edge_embed.main([
            '-q', 'bench', '--servers', '5', '--connectivity', '1.0', '--dag-count', '2',
            '--out', str(tmp_path)]) == settings.EXIT_PATH_EXPLOSION


def test_sweep(tmp_path):
    assert edge_embed.main([
        '-q', 'sweep', '--kind', 'psi', '--values', '1,2', '--dag-count', '3', '--servers', '4',
        '--algos', 'dpe', '--out', str(tmp_path)]) == 0
    with open(os.path.join(str(tmp_path), 'sweep_psi.csv')) as input_file:
        assert len(input_file.read().splitlines()) == 3


def test_oracle(tmp_path, capsys):
    assert edge_embed.main(['oracle', '--instances', '4', '--seed', '3',
                            '--out', str(tmp_path)]) == 0
    assert '4 of 4 instances match' in capsys.readouterr().out
    assert os.path.exists(os.path.join(str(tmp_path), 'oracle_gaps.csv'))


def test_bench_on_example_inputs(tmp_path):
    data_dir = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')
    assert edge_embed.main([
        '-q', 'bench', '--network', os.path.join(data_dir, 'example_network.json'),
        '--dags', os.path.join(data_dir, 'example_dags.json'), '--algos', 'dpe,heft,brute',
        '--out', str(tmp_path)]) == 0
    with open(os.path.join(str(tmp_path), 'trials.csv')) as input_file:
        assert len(input_file.read().splitlines()) == 1 + 2 * 3


def test_malformed_input_file_exits_with_validation_error(network_file, dag_file, tmp_path):
    broken = str(tmp_path / 'broken.json')
    with open(broken, 'w') as output_file:
        output_file.write('{"servers": [')
    assert edge_embed.main(['-q', 'paths', '--network', broken, '--src', '0',
                            '--dst', '1']) == settings.EXIT_VALIDATION_ERROR
    assert edge_embed.main(['-q', 'embed', '--network', network_file, '--dag', broken]) == \
        settings.EXIT_VALIDATION_ERROR
    assert edge_embed.main(['-q', 'embed', '--network', network_file, '--dag', dag_file,
                            '--ready', broken]) == settings.EXIT_VALIDATION_ERROR


def test_paths_unknown_server(network_file):
    assert edge_embed.main(['-q', 'paths', '--network', network_file, '--src', '0',
                            '--dst', '7']) == settings.EXIT_VALIDATION_ERROR
