"""
Brute-force verification of the counting identities behind the bounds.

Each check materializes a small instance, counts directly and compares with
the closed form. Mismatches are reported, never raised.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Union

import numpy as np

from src.bounds.density_bounds import left_degree
from src.core.config import DEFAULT_ENUMERATION_LIMIT, DEFAULT_WORK_LIMIT
from src.core.errors import ParameterError, WorkLimitExceeded
from src.core.grid_config_loader import SUITE_NAMES, get_grid_config_loader
from src.core.logging_controller import debug, info
from src.counting.assoc_engine import bound_pair
from src.counting.combinat import binom
from src.estimation.estimator import exact_good_count
from src.metrics import BaseMetric, get_metric

Count = Union[int, Fraction]

RELATIONS = {
    '==': lambda brute, formula: brute == formula,
    '<=': lambda brute, formula: brute <= formula,
    '>=': lambda brute, formula: brute >= formula,
}


@dataclass(frozen=True)
class VerificationReport:
    """
    One closed-form value checked against a direct count.

    relation reads "brute_force <relation> formula".
    """
    quantity: str
    formula: Count
    brute_force: Count
    match: bool
    relation: str = '=='

    def describe(self) -> str:
        status = "ok" if self.match else "MISMATCH"
        return (f"[{status}] {self.quantity}: brute force {self.brute_force} "
                f"{self.relation} formula {self.formula}")


def make_report(quantity: str, formula: Count, brute_force: Count,
                relation: str = '==') -> VerificationReport:
    return VerificationReport(
        quantity=quantity,
        formula=formula,
        brute_force=brute_force,
        match=RELATIONS[relation](brute_force, formula),
        relation=relation,
    )


# ---------------------------------------------------------------------------
# Pair classes (Claim A and its injection analogue)
# ---------------------------------------------------------------------------

def _close_pairs(metric: BaseMetric, params, enumeration_limit: int):
    points = metric.enumerate_points(params, enumeration_limit)
    return points, np.array(metric.close_pairs(points, params.d), dtype=np.int64).reshape(-1, 2)


def _association_matrix(pairs: np.ndarray) -> np.ndarray:
    """alpha(X, Y) = |X cap Y| for every ordered pair of left vertices."""
    first, second = pairs[:, 0], pairs[:, 1]
    return (
        (first[:, None] == first[None, :]).astype(np.int8)
        + (first[:, None] == second[None, :])
        + (second[:, None] == first[None, :])
        + (second[:, None] == second[None, :])
    )


def _verify_pair_classes(metric: BaseMetric, params, label: str,
                         work_limit: int, enumeration_limit: int) -> List[VerificationReport]:
    profile = metric.profile(params)
    required = profile.v_size * profile.v_size
    if required > work_limit:
        raise WorkLimitExceeded(f"{label} pair-class count", required, work_limit)

    _, pairs = _close_pairs(metric, params, enumeration_limit)
    counts = np.bincount(_association_matrix(pairs).ravel(), minlength=3)

    reports = [make_report(f"{label} |V|", profile.v_size, len(pairs))]
    for l in range(3):
        reports.append(make_report(
            f"{label} |alpha^-1({l})|", profile.class_sizes[l], int(counts[l])
        ))
    return reports


def verify_claim_a(q: int, n: int, d: int,
                   work_limit: int = DEFAULT_WORK_LIMIT,
                   enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[VerificationReport]:
    """Class sizes of the Hamming pair graph: [|V|(|V|-2b+3), 2|V|(b-2), |V|]."""
    metric = get_metric('hamming')
    params = metric.make_params(q, n, d, 2)
    if d < 2:
        raise ParameterError("claim A needs d >= 2")
    return _verify_pair_classes(metric, params, f"hamming({q},{n},{d})",
                                work_limit, enumeration_limit)


def verify_injection_claims(q: int, n: int, k: int, d: int,
                            work_limit: int = DEFAULT_WORK_LIMIT,
                            enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[VerificationReport]:
    """Same class-size identities on G_q(k,n) with the injection distance."""
    metric = get_metric('injection')
    params = metric.make_params(q, n, d, 2, k)
    if d < 2:
        raise ParameterError("the pair-class identities need d >= 2")
    return _verify_pair_classes(metric, params, f"injection({q},{n},{k},{d})",
                                work_limit, enumeration_limit)


def verify_w_formula(q: int, n: int, d: int, S: int,
                     work_limit: int = DEFAULT_WORK_LIMIT,
                     enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[VerificationReport]:
    """
    W_l = binom(q^n-4+l, S-4+l) against a direct count of S-codes containing
    the union of one representative pair-of-pairs per class.
    """
    metric = get_metric('hamming')
    params = metric.make_params(q, n, d, S)
    if d < 2:
        raise ParameterError("the W formula needs d >= 2")
    M = metric.ambient_size(params)
    total = binom(M, S)
    if total > work_limit:
        raise WorkLimitExceeded(f"W-formula check over {metric.describe(params)}", total, work_limit)
    profile = metric.profile(params)

    _, pairs = _close_pairs(metric, params, enumeration_limit)
    unions: Dict[int, frozenset] = {}
    for x in range(len(pairs)):
        for y in range(x, len(pairs)):
            union = frozenset(pairs[x].tolist()) | frozenset(pairs[y].tolist())
            unions.setdefault(4 - len(union), union)
        if len(unions) == 3:
            break

    direct = {l: 0 for l in unions}
    for code in combinations(range(M), S):
        members = set(code)
        for l, union in unions.items():
            if union <= members:
                direct[l] += 1

    label = f"hamming({q},{n},{d},S={S})"
    reports = []
    for l in range(3):
        if l not in direct:
            debug(f"{label}: class {l} is empty, W_{l} not checked")
            continue
        reports.append(make_report(f"{label} W_{l}", profile.w_values[l], direct[l]))
    return reports


# ---------------------------------------------------------------------------
# Ball sizes
# ---------------------------------------------------------------------------

def verify_ball_sizes_for(metric: BaseMetric, params, centers: int,
                          rng: np.random.Generator,
                          enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[VerificationReport]:
    """Ball sizes of every radius around `centers` random centers."""
    points = metric.enumerate_points(params, enumeration_limit)
    max_radius = metric.max_distance(params)
    reports = []
    chosen = rng.choice(len(points), size=min(centers, len(points)), replace=False)
    for center_index in sorted(int(i) for i in chosen):
        center = points[center_index]
        distances = np.array([metric.distance(center, point) for point in points])
        for r in range(max_radius + 1):
            reports.append(make_report(
                f"{metric.name} ball {metric.describe(params)} r={r} center #{center_index}",
                metric.ball_size(params, r),
                int(np.count_nonzero(distances <= r)),
            ))
    return reports


def verify_ball_sizes(grid: Optional[Dict[str, Any]] = None,
                      enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[VerificationReport]:
    if grid is None:
        grid = get_grid_config_loader().get_grid('ball-sizes')
    centers = int(grid.get('centers', 3))
    rng = np.random.default_rng(int(grid.get('seed', 0)))
    reports = []
    for entry in grid.get('hamming', []):
        metric = get_metric('hamming')
        params = metric.make_params(entry['q'], entry['n'], 1, 2)
        reports.extend(verify_ball_sizes_for(metric, params, centers, rng, enumeration_limit))
    for entry in grid.get('injection', []):
        metric = get_metric('injection')
        params = metric.make_params(entry['q'], entry['n'], 1, 2, entry['k'])
        reports.extend(verify_ball_sizes_for(metric, params, centers, rng, enumeration_limit))
    return reports


# ---------------------------------------------------------------------------
# Pair/code graph and the engine bounds
# ---------------------------------------------------------------------------

@dataclass
class PairCodeGraph:
    """
    Materialized bipartite graph: left vertices are close pairs, right
    vertices are S-codes, edges are containment.
    """
    pairs: List[tuple]
    right_count: int
    degrees: List[int]
    non_isolated_count: int

    def is_left_regular(self) -> bool:
        return len(set(self.degrees)) <= 1


def build_pair_code_graph(metric: BaseMetric, params,
                          work_limit: int = DEFAULT_WORK_LIMIT,
                          enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> PairCodeGraph:
    M = metric.ambient_size(params)
    right_count = binom(M, params.S)
    required = right_count * binom(params.S, 2)
    if required > work_limit:
        raise WorkLimitExceeded(f"pair/code graph over {metric.describe(params)}", required, work_limit)

    points = metric.enumerate_points(params, enumeration_limit)
    pairs = [tuple(p) for p in metric.close_pairs(points, params.d)]
    pair_index = {pair: i for i, pair in enumerate(pairs)}
    degrees = [0] * len(pairs)
    non_isolated = 0
    for code in combinations(range(M), params.S):
        contained = [pair_index[p] for p in combinations(code, 2) if p in pair_index]
        for i in contained:
            degrees[i] += 1
        if contained:
            non_isolated += 1
    return PairCodeGraph(pairs, right_count, degrees, non_isolated)


def verify_lemmas(metric: BaseMetric, params,
                  work_limit: int = DEFAULT_WORK_LIMIT,
                  enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[VerificationReport]:
    """Engine bounds against the non-isolated count of the materialized graph."""
    graph = build_pair_code_graph(metric, params, work_limit, enumeration_limit)
    M = metric.ambient_size(params)
    bounds = bound_pair(metric.profile(params))
    label = f"{metric.name} {metric.describe(params)} d={params.d} S={params.S}"

    expected_degree = left_degree(M, params.S)
    deviating = next((deg for deg in graph.degrees if deg != expected_degree), expected_degree)
    good = exact_good_count(metric, params, work_limit, enumeration_limit)

    return [
        make_report(f"{label} left degree", expected_degree, deviating),
        make_report(f"{label} non-isolated codes", graph.right_count - good,
                    graph.non_isolated_count),
        make_report(f"{label} upper bound", bounds.upper, graph.non_isolated_count, '<='),
        make_report(f"{label} lower bound", bounds.lower, graph.non_isolated_count, '>='),
    ]


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def run_suite(name: str, work_limit: int = DEFAULT_WORK_LIMIT,
              enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[VerificationReport]:
    """
    Run one built-in suite (or 'all') over the configured grids.

    Args:
        name: one of SUITE_NAMES or 'all'
    """
    if name == 'all':
        reports = []
        for suite in SUITE_NAMES:
            reports.extend(run_suite(suite, work_limit, enumeration_limit))
        return reports
    if name not in SUITE_NAMES:
        raise ParameterError(f"unknown suite {name!r}, expected one of {SUITE_NAMES + ('all',)}")

    loader = get_grid_config_loader()
    limits = dict(work_limit=work_limit, enumeration_limit=enumeration_limit)
    reports: List[VerificationReport] = []
    if name == 'claim-a':
        for e in loader.entries(name):
            reports.extend(verify_claim_a(e['q'], e['n'], e['d'], **limits))
    elif name == 'w-formula':
        for e in loader.entries(name):
            reports.extend(verify_w_formula(e['q'], e['n'], e['d'], e['S'], **limits))
    elif name == 'injection-claims':
        for e in loader.entries(name):
            reports.extend(verify_injection_claims(e['q'], e['n'], e['k'], e['d'], **limits))
    elif name == 'ball-sizes':
        reports.extend(verify_ball_sizes(loader.get_grid(name), enumeration_limit))
    elif name == 'lemmas':
        for e in loader.entries(name):
            metric = get_metric(e['metric'])
            params = metric.make_params(e['q'], e['n'], e['d'], e['S'], e.get('k'))
            reports.extend(verify_lemmas(metric, params, **limits))

    failed = sum(1 for r in reports if not r.match)
    info(f"verify {name}: {len(reports) - failed}/{len(reports)} checks passed")
    return reports
