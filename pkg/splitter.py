"""
Optimal splitting of one data stream over several simple paths.

With per-path coefficients A_k (s/bit) and stream size s (bits), the slowest branch
A_k * z_k is minimized by equalizing all branch times:
    tau = s / sum_k(1 / A_k),  z_k = tau / A_k
bisection_oracle solves the same min-max problem by searching tau directly and is used
to cross-check the closed form.
"""
import attr
import numpy as np
import core_model
import settings


# Marker passed to routing_time when both functions share a server
SAME_SERVER = 'same-server'


def _check_coefficients(instance, attribute, value):
    if not value:
        raise core_model.ValidationError('Split problem needs at least one path')
    for coefficient in value:
        if not coefficient > 0:
            raise core_model.NonPositiveParameter(
                'Path coefficient must be positive: %s' % coefficient)


def _check_stream_size(instance, attribute, value):
    if not value > 0:
        raise core_model.NonPositiveStream('Stream size must be positive: %s' % value)


@attr.s(frozen=True)
class SplitProblem(object):
    coefficients = attr.ib(converter=lambda values: tuple(float(v) for v in values),
                           validator=_check_coefficients)
    stream_size = attr.ib(converter=float, validator=_check_stream_size)


@attr.s(frozen=True)
class SplitSolution(object):
    allocations = attr.ib(converter=tuple)
    bottleneck_time = attr.ib()


def optimal_split(problem):
    """ Returns the SplitSolution that equalizes every branch time """
    if len(problem.coefficients) == 1:
        return SplitSolution(allocations=(problem.stream_size,),
                             bottleneck_time=problem.coefficients[0] * problem.stream_size)
    coefficients = np.asarray(problem.coefficients, dtype=float)
    bottleneck_time = problem.stream_size / np.sum(1.0 / coefficients)
    # never slower than the best single path, also in floating point
    bottleneck_time = min(bottleneck_time, float(np.min(coefficients)) * problem.stream_size)
    allocations = bottleneck_time / coefficients
    return SplitSolution(
        allocations=tuple(float(z) for z in allocations), bottleneck_time=float(bottleneck_time))


def bisection_oracle(problem, tol):
    """
    Returns the smallest tau for which sum_k(tau / A_k) >= s, located by bisection on
    [0, s * min_k(A_k)] until the bracket is narrower than tol
    """
    if not tol > 0:
        raise core_model.NonPositiveParameter('Bisection tolerance must be positive: %s' % tol)
    coefficients = np.asarray(problem.coefficients, dtype=float)
    size = problem.stream_size
    low, high = 0.0, size * float(np.min(coefficients))
    iterations = 0
    while high - low > tol and iterations < settings.BISECTION_MAX_ITERATIONS:
        middle = 0.5 * (low + high)
        if np.sum(middle / coefficients) >= size:
            high = middle
        else:
            low = middle
        iterations += 1
    return 0.5 * (low + high)


def branch_times(coefficients, allocations):
    """ Returns the per-branch transfer times A_k * z_k """
    return [coefficient * allocation
            for (coefficient, allocation) in zip(coefficients, allocations)]


def routing_time(branches):
    """
    Returns the transit time of a mapped stream: 0 for SAME_SERVER, otherwise the slowest
    branch over the given (coefficient, allocation) pairs
    """
    if isinstance(branches, str) and branches == SAME_SERVER:
        return 0.0
    branches = list(branches)
    if not branches:
        raise core_model.ValidationError('A routed stream needs at least one branch')
    return max(branch_times([c for (c, _) in branches], [z for (_, z) in branches]))
