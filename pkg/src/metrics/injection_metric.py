"""
Injection metric on the Grassmannian G_q(k, n).
"""

from itertools import combinations
from typing import List

import numpy as np

from src.bounds.density_bounds import (
    SubspaceParams, bad_code_count_bounds_injection, density_bounds_injection,
    gamma_injection, injection_profile,
)
from src.core.errors import ParameterError
from src.core.logging_controller import debug
from src.counting.combinat import injection_ball_size
from src.geometry.codespace import (
    Subspace, draw_rref_rows, enumerate_grassmannian, injection_distance,
    sample_subspace_code_uniform, subspace_code_min_distance,
)
from src.geometry.finite_field import get_field
from src.metrics.base_metric import BaseMetric


class InjectionMetric(BaseMetric):
    """Subspace codes in G_q(k, n) with the injection distance."""

    def __init__(self):
        super().__init__("injection")

    def make_params(self, q, n, d, S, k=None) -> SubspaceParams:
        if k is None:
            raise ParameterError("the injection metric needs -k")
        params = SubspaceParams(q, n, k, d, S)
        if params.original_k != params.k:
            debug(f"k={params.original_k} replaced by its dual k={params.k}")
        return params

    def params_dict(self, params: SubspaceParams) -> dict:
        return {'q': params.q, 'n': params.n, 'k': params.original_k,
                'd': params.d, 'S': params.S}

    def ambient_size(self, params) -> int:
        return params.ambient_size

    def ball_size(self, params, radius: int) -> int:
        return injection_ball_size(params.q, params.n, params.k, radius)

    def density_bounds(self, params):
        return density_bounds_injection(params)

    def bad_code_count_bounds(self, params):
        return bad_code_count_bounds_injection(params)

    def profile(self, params):
        return injection_profile(params)

    def gamma(self, params):
        if params.d < 2:
            return None
        return gamma_injection(params.q, params.n, params.k, params.d)

    def enumerate_points(self, params, limit) -> List[Subspace]:
        return list(enumerate_grassmannian(params.q, params.k, params.n, limit))

    def distance(self, a: Subspace, b: Subspace) -> int:
        return injection_distance(a, b)

    def max_distance(self, params) -> int:
        return params.k

    def sample_code(self, params, rng: np.random.Generator):
        return sample_subspace_code_uniform(params.q, params.k, params.n, params.S, rng)

    def sample_is_good(self, params, rng: np.random.Generator) -> bool:
        # same draws as sample_subspace_code_uniform, on bare RREF rows
        chosen = set()
        while len(chosen) < params.S:
            chosen.add(draw_rref_rows(params.q, params.k, params.n, rng))
        field = get_field(params.q)
        return all(
            field.rank(a + b, params.n) - params.k >= params.d
            for a, b in combinations(chosen, 2)
        )

    def min_distance(self, code) -> int:
        return subspace_code_min_distance(code)

    def describe(self, params) -> str:
        return f"G_{params.q}({params.k},{params.n})"
