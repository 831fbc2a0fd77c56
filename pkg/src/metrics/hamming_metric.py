"""
Hamming metric on F_q^n.
"""

from itertools import combinations
from typing import List, Sequence

import numpy as np

from src.bounds.density_bounds import (
    HammingParams, bad_code_count_bounds_hamming, density_bounds_hamming,
    gamma_hamming, hamming_profile,
)
from src.core.errors import ParameterError
from src.counting.combinat import hamming_ball_size
from src.geometry.codespace import (
    NUMPY_INDEX_LIMIT, Vector, code_min_distance, enumerate_vectors,
    hamming_distance, sample_code_uniform,
)
from src.geometry.finite_field import digit_matrix
from src.metrics.base_metric import BaseMetric


class HammingMetric(BaseMetric):
    """Block codes in F_q^n with the Hamming distance."""

    def __init__(self):
        super().__init__("hamming")

    def make_params(self, q, n, d, S, k=None) -> HammingParams:
        if k is not None:
            raise ParameterError("-k is only meaningful for the injection metric")
        return HammingParams(q, n, d, S)

    def ambient_size(self, params: HammingParams) -> int:
        return params.ambient_size

    def ball_size(self, params: HammingParams, radius: int) -> int:
        return hamming_ball_size(params.q, params.n, radius)

    def density_bounds(self, params):
        return density_bounds_hamming(params)

    def bad_code_count_bounds(self, params):
        return bad_code_count_bounds_hamming(params)

    def profile(self, params):
        return hamming_profile(params)

    def gamma(self, params):
        if params.d < 2:
            return None
        return gamma_hamming(params.q, params.n, params.d)

    def enumerate_points(self, params, limit) -> List[Vector]:
        return list(enumerate_vectors(params.q, params.n, limit))

    def distance(self, a: Vector, b: Vector) -> int:
        return hamming_distance(a, b)

    def max_distance(self, params) -> int:
        return params.n

    def sample_code(self, params, rng: np.random.Generator):
        return sample_code_uniform(params.q, params.n, params.S, rng)

    def sample_is_good(self, params, rng: np.random.Generator) -> bool:
        # same draw as sample_code_uniform, without building Vector objects
        if params.ambient_size >= NUMPY_INDEX_LIMIT:
            return super().sample_is_good(params, rng)
        indices = [int(i) for i in rng.choice(params.ambient_size, size=params.S, replace=False)]
        if params.q == 2:
            return all((a ^ b).bit_count() >= params.d for a, b in combinations(indices, 2))
        digits = digit_matrix(indices, params.q, params.n)
        distances = np.count_nonzero(digits[:, None, :] != digits[None, :, :], axis=2)
        upper = np.triu_indices(params.S, k=1)
        return bool(distances[upper].min() >= params.d)

    def min_distance(self, code) -> int:
        return code_min_distance(code)

    def describe(self, params) -> str:
        return f"F_{params.q}^{params.n}"

    def distance_rows(self, points: Sequence[Vector]) -> np.ndarray:
        if not points:
            return np.zeros((0, 0), dtype=np.int64)
        return np.stack(list(self._iter_distance_rows(points)))

    def compatibility_graph(self, points: Sequence[Vector], d: int) -> List[int]:
        # row at a time; the full matrix is never held
        neighbors = []
        for row in self._iter_distance_rows(points):
            packed = np.packbits(row >= d, bitorder='little').tobytes()
            neighbors.append(int.from_bytes(packed, 'little'))
        return neighbors

    def _iter_distance_rows(self, points: Sequence[Vector]):
        if not points:
            return
        q, n = points[0].q, points[0].n
        digits = digit_matrix([x.index for x in points], q, n)
        for i in range(len(points)):
            yield np.count_nonzero(digits != digits[i], axis=1)
