import numpy as np
import pytest
import core_model
import splitter


def _problem(coefficients, size):
    return splitter.SplitProblem(coefficients=coefficients, stream_size=size)


def test_two_path_split():
    solution = splitter.optimal_split(_problem([0.5, 0.25], 6.0))
    assert solution.bottleneck_time == pytest.approx(1.0, rel=1e-12)
    assert solution.allocations == pytest.approx((2.0, 4.0), rel=1e-12)


def test_single_path_carries_everything():
    solution = splitter.optimal_split(_problem([0.75], 4.0))
    assert solution.bottleneck_time == pytest.approx(3.0, rel=1e-12)
    assert solution.allocations == pytest.approx((4.0,), rel=1e-12)


def test_single_path_time_is_exact():
    rng = np.random.Generator(np.random.PCG64(11))
    for _ in range(2000):
        coefficient = float(rng.uniform(1e-9, 10.0))
        size = float(rng.uniform(1.0, 1e8))
        solution = splitter.optimal_split(_problem([coefficient], size))
        assert solution.bottleneck_time == coefficient * size
        assert solution.allocations == (size,)


def test_split_never_exceeds_best_single_path():
    rng = np.random.Generator(np.random.PCG64(12))
    for _ in range(2000):
        coefficients = list(rng.uniform(1e-9, 10.0, size=int(rng.integers(1, 6))))
        size = float(rng.uniform(1.0, 1e8))
        solution = splitter.optimal_split(_problem(coefficients, size))
        assert solution.bottleneck_time <= min(coefficients) * size


def test_equal_paths_split_evenly():
    solution = splitter.optimal_split(_problem([0.3, 0.3], 10.0))
    assert solution.allocations == pytest.approx((5.0, 5.0), rel=1e-12)


@pytest.mark.parametrize('coefficients, size, expected', [
    ([0.5, 0.25], 6.0, 1.0),
    ([1.0], 1.0, 1.0),
    ([1.0, 1.0, 1.0, 1.0], 8.0, 2.0),
])
def test_bisection_oracle(coefficients, size, expected):
    assert splitter.bisection_oracle(_problem(coefficients, size), tol=1e-12) == pytest.approx(
        expected, abs=1e-12)


def test_bisection_rejects_bad_tolerance():
    with pytest.raises(core_model.NonPositiveParameter):
        splitter.bisection_oracle(_problem([1.0], 1.0), tol=0.0)


@pytest.mark.parametrize('coefficients, size', [
    ([], 1.0),
    ([0.5, 0.0], 1.0),
    ([0.5], -1.0),
])
def test_invalid_problems(coefficients, size):
    with pytest.raises(core_model.ValidationError):
        _problem(coefficients, size)


def test_routing_time():
    assert splitter.routing_time([(1.5, 2.0), (0.5, 5.0)]) == 3.0
    assert splitter.routing_time(splitter.SAME_SERVER) == 0.0
    solution = splitter.optimal_split(_problem([0.5, 0.25], 6.0))
    assert splitter.routing_time(zip((0.5, 0.25), solution.allocations)) == pytest.approx(
        solution.bottleneck_time, rel=1e-12)


def test_branch_times():
    assert splitter.branch_times([1.5, 0.5], [2.0, 5.0]) == [3.0, 2.5]


@pytest.mark.slow
def test_closed_form_matches_bisection_on_random_problems():
    rng = np.random.Generator(np.random.PCG64(2024))
    for _ in range(1000):
        n_paths = int(rng.integers(1, 50, endpoint=True))
        coefficients = rng.uniform(1e-9, 10.0, size=n_paths)
        size = float(rng.uniform(1.0, 1e8))
        problem = _problem(coefficients, size)
        solution = splitter.optimal_split(problem)
        tau = solution.bottleneck_time
        oracle = splitter.bisection_oracle(problem, tol=1e-12 * size * float(np.min(coefficients)))
        assert abs(tau - oracle) <= 1e-9 * tau
        assert sum(solution.allocations) == pytest.approx(size, rel=1e-9)
        assert all(z > 0 for z in solution.allocations)
        times = splitter.branch_times(problem.coefficients, solution.allocations)
        assert max(times) - min(times) <= 1e-9 * tau
        best_single = min(problem.coefficients) * size
        assert tau <= best_single
        if n_paths >= 2:
            assert tau < best_single


def test_extra_path_strictly_reduces_bottleneck():
    rng = np.random.Generator(np.random.PCG64(5))
    for _ in range(200):
        coefficients = list(rng.uniform(1e-9, 10.0, size=int(rng.integers(1, 20))))
        size = float(rng.uniform(1.0, 1e8))
        before = splitter.optimal_split(_problem(coefficients, size)).bottleneck_time
        extra = float(rng.uniform(1e-9, 10.0))
        after = splitter.optimal_split(_problem(coefficients + [extra], size)).bottleneck_time
        assert after < before


def test_split_scales_with_stream_size():
    base = splitter.optimal_split(_problem([0.5, 0.25, 2.0], 6.0))
    scaled = splitter.optimal_split(_problem([0.5, 0.25, 2.0], 6.0 * 3.5))
    assert scaled.bottleneck_time == pytest.approx(3.5 * base.bottleneck_time, rel=1e-12)
    assert scaled.allocations == pytest.approx([3.5 * z for z in base.allocations], rel=1e-12)
