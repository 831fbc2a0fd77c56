"""
Oracles for the density of codes with minimum distance >= d.

- exact: count S-cliques of the "distance >= d" graph on the ambient space
- Monte Carlo: sample uniform codes from seeded random streams and attach a
  Clopper-Pearson interval

Random streams are derived per block of consecutive trials:
block b uses PCG64(SeedSequence(base_seed, spawn_key=(b,))). Block
boundaries depend only on the block size, so the successes count for a
given (base_seed, trials) is the same for any number of workers.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Tuple

import numpy as np
from scipy.stats import beta

from src.bounds.density_bounds import HammingParams, SubspaceParams
from src.core.config import (
    DEFAULT_CONFIDENCE_LEVEL, DEFAULT_ENUMERATION_LIMIT, DEFAULT_MC_BLOCK_SIZE,
    DEFAULT_WORK_LIMIT,
)
from src.core.errors import ParameterError, WorkLimitExceeded
from src.core.logging_controller import debug, info
from src.counting.combinat import binom
from src.estimation.worker_pool import sum_over_tasks
from src.geometry.codespace import count_cliques
from src.metrics import BaseMetric, get_metric

SEED_BOUND = 2 ** 64
CI_DENOMINATOR_LIMIT = 10 ** 15


@dataclass(frozen=True)
class EstimateResult:
    """Monte Carlo estimate with a Clopper-Pearson interval."""
    point_estimate: Fraction
    ci_low: Fraction
    ci_high: Fraction
    trials: int
    successes: int
    base_seed: int
    confidence_level: Fraction


# ---------------------------------------------------------------------------
# Exact enumeration
# ---------------------------------------------------------------------------

def _check_exact_budget(metric: BaseMetric, params, work_limit: int) -> int:
    """Work is the larger of the candidate-code count and the pair evaluations for the graph."""
    M = metric.ambient_size(params)
    total = binom(M, params.S)
    required = max(total, M * (M - 1) // 2)
    if required > work_limit:
        raise WorkLimitExceeded(
            f"exact enumeration over {metric.describe(params)} with S={params.S}",
            required, work_limit,
        )
    return total


def _count_clique_chunk(neighbors: List[int], size: int, first_vertices: Tuple[int, ...]) -> int:
    return count_cliques(neighbors, size, first_vertices)


def exact_good_count(metric: BaseMetric, params,
                     work_limit: int = DEFAULT_WORK_LIMIT,
                     enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
                     workers: int = 1) -> int:
    """Number of S-codes with minimum distance >= d, by pruned clique search."""
    total = _check_exact_budget(metric, params, work_limit)
    if params.d == 1:
        return total
    points = metric.enumerate_points(params, enumeration_limit)
    neighbors = metric.compatibility_graph(points, params.d)
    workers = max(1, int(workers))
    chunks = [
        (neighbors, params.S, tuple(range(w, len(points), workers)))
        for w in range(workers)
    ]
    count = sum_over_tasks(_count_clique_chunk, chunks, workers)
    debug(f"{metric.describe(params)}: {count} of {total} codes have d >= {params.d}")
    return count


def naive_exact_count(metric: BaseMetric, params,
                      work_limit: int = DEFAULT_WORK_LIMIT,
                      enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> int:
    """Same count as exact_good_count, checking every S-subset without pruning."""
    _check_exact_budget(metric, params, work_limit)
    points = metric.enumerate_points(params, enumeration_limit)
    distances = metric.distance_rows(points)
    count = 0
    for subset in combinations(range(len(points)), params.S):
        if all(distances[i, j] >= params.d for i, j in combinations(subset, 2)):
            count += 1
    return count


def exact_density(metric: BaseMetric, params,
                  work_limit: int = DEFAULT_WORK_LIMIT,
                  enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
                  workers: int = 1) -> Fraction:
    total = binom(metric.ambient_size(params), params.S)
    good = exact_good_count(metric, params, work_limit, enumeration_limit, workers)
    return Fraction(good, total)


def exact_density_hamming(p: HammingParams, work_limit: int = DEFAULT_WORK_LIMIT,
                          enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
                          workers: int = 1) -> Fraction:
    """Exact density of S-codes in F_q^n with minimum distance >= d."""
    return exact_density(get_metric('hamming'), p, work_limit, enumeration_limit, workers)


def exact_density_injection(p: SubspaceParams, work_limit: int = DEFAULT_WORK_LIMIT,
                            enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
                            workers: int = 1) -> Fraction:
    """Exact density of S-subspace codes in G_q(k,n) with minimum distance >= d."""
    return exact_density(get_metric('injection'), p, work_limit, enumeration_limit, workers)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def block_rng(base_seed: int, block: int) -> np.random.Generator:
    """Random stream for one block of trials."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(base_seed, spawn_key=(block,))))


def _check_seed(base_seed: int) -> None:
    if not 0 <= base_seed < SEED_BOUND:
        raise ParameterError(f"seed must lie in [0, 2^64), got {base_seed}")


def _count_block(metric_name: str, params, base_seed: int, block: int, count: int) -> int:
    metric = get_metric(metric_name)
    rng = block_rng(base_seed, block)
    return sum(
        1 for _ in range(count)
        if metric.sample_is_good(params, rng)
    )


def clopper_pearson(successes: int, trials: int,
                    confidence_level: Fraction = DEFAULT_CONFIDENCE_LEVEL) -> Tuple[Fraction, Fraction]:
    """
    Exact binomial interval for successes / trials.

    Two-sided at the given level, except one-sided when successes is 0 or
    trials (the interval then touches 0 or 1).
    """
    if trials < 1 or not 0 <= successes <= trials:
        raise ParameterError(f"need 0 <= successes <= trials and trials >= 1, got {successes}/{trials}")
    alpha = 1 - float(confidence_level)
    point = Fraction(successes, trials)

    if successes == 0:
        low, high = 0.0, beta.ppf(1 - alpha, 1, trials)
    elif successes == trials:
        low, high = beta.ppf(alpha, trials, 1), 1.0
    else:
        low = beta.ppf(alpha / 2, successes, trials - successes + 1)
        high = beta.ppf(1 - alpha / 2, successes + 1, trials - successes)

    ci_low = Fraction(float(low)).limit_denominator(CI_DENOMINATOR_LIMIT)
    ci_high = Fraction(float(high)).limit_denominator(CI_DENOMINATOR_LIMIT)
    ci_low = max(Fraction(0), min(ci_low, point))
    ci_high = min(Fraction(1), max(ci_high, point))
    return ci_low, ci_high


def mc_density(metric: BaseMetric, params, trials: int, base_seed: int,
               workers: int = 1,
               block_size: int = DEFAULT_MC_BLOCK_SIZE,
               confidence_level: Fraction = DEFAULT_CONFIDENCE_LEVEL) -> EstimateResult:
    """
    Monte Carlo estimate of the density.

    Args:
        metric: hamming or injection
        params: validated params for the metric
        trials: number of sampled codes, at least 1
        base_seed: 64-bit seed
        workers: processes; never changes the result
        block_size: trials per random stream
        confidence_level: level of the Clopper-Pearson interval
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if block_size < 1:
        raise ParameterError(f"block size must be >= 1, got {block_size}")
    _check_seed(base_seed)

    if params.d == 1:
        successes = trials
    else:
        tasks = [
            (metric.name, params, base_seed, block, min(block_size, trials - start))
            for block, start in enumerate(range(0, trials, block_size))
        ]
        successes = sum_over_tasks(_count_block, tasks, workers)

    ci_low, ci_high = clopper_pearson(successes, trials, confidence_level)
    info(f"{metric.describe(params)} d={params.d} S={params.S}: "
         f"{successes}/{trials} sampled codes qualify")
    return EstimateResult(
        point_estimate=Fraction(successes, trials),
        ci_low=ci_low,
        ci_high=ci_high,
        trials=trials,
        successes=successes,
        base_seed=base_seed,
        confidence_level=Fraction(confidence_level),
    )


def mc_density_hamming(p: HammingParams, trials: int, base_seed: int, **kwargs) -> EstimateResult:
    return mc_density(get_metric('hamming'), p, trials, base_seed, **kwargs)


def mc_density_injection(p: SubspaceParams, trials: int, base_seed: int, **kwargs) -> EstimateResult:
    return mc_density(get_metric('injection'), p, trials, base_seed, **kwargs)


def first_trial_code(metric: BaseMetric, params, base_seed: int):
    """The code drawn by trial 0 of mc_density for the same seed."""
    _check_seed(base_seed)
    return metric.sample_code(params, block_rng(base_seed, 0))
