"""
Abstract base class for code metrics.

A metric bundles everything the estimators and the CLI need to treat block
codes and subspace codes uniformly: parameter validation, the closed-form
bounds, enumeration of the ambient space, distances and sampling.
"""

from abc import ABC, abstractmethod
from itertools import combinations
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from src.bounds.density_bounds import DensityInterval
from src.bounds.exact_power import ExactPower
from src.counting.assoc_engine import AssociationProfile, BoundPair


class BaseMetric(ABC):
    """
    Abstract base class that all metrics must inherit from.

    Points of the ambient space are the codespace objects (Vector or
    Subspace); codes are Code or SubspaceCode.
    """

    def __init__(self, name: str):
        """
        Initialize the metric.

        Args:
            name: identifier used on the command line ("hamming", "injection")
        """
        self.name = name

    @abstractmethod
    def make_params(self, q: int, n: int, d: int, S: int, k: Optional[int] = None):
        """
        Validate a parameter tuple and return the params object.

        Raises:
            ParameterError: naming the violated constraint
        """
        pass

    @abstractmethod
    def ambient_size(self, params) -> int:
        pass

    @abstractmethod
    def ball_size(self, params, radius: int) -> int:
        pass

    @abstractmethod
    def density_bounds(self, params) -> DensityInterval:
        pass

    @abstractmethod
    def bad_code_count_bounds(self, params) -> BoundPair:
        pass

    @abstractmethod
    def profile(self, params) -> AssociationProfile:
        pass

    @abstractmethod
    def gamma(self, params) -> Optional[ExactPower]:
        """Threshold cardinality, None where undefined (d = 1)."""
        pass

    @abstractmethod
    def enumerate_points(self, params, limit: int) -> List[Any]:
        pass

    @abstractmethod
    def distance(self, a, b) -> int:
        pass

    @abstractmethod
    def max_distance(self, params) -> int:
        """Largest possible distance in the ambient space."""
        pass

    @abstractmethod
    def sample_code(self, params, rng: np.random.Generator):
        pass

    @abstractmethod
    def min_distance(self, code) -> int:
        pass

    @abstractmethod
    def describe(self, params) -> str:
        """Short human-readable ambient description for log lines."""
        pass

    def has_min_distance(self, code, d: int) -> bool:
        """True iff every pair of distinct code elements is at distance >= d."""
        if d <= 1:
            return True
        return all(
            self.distance(a, b) >= d
            for a, b in combinations(code.sorted_elements(), 2)
        )

    def sample_is_good(self, params, rng: np.random.Generator) -> bool:
        """Draw one uniform code and test it; consumes rng exactly like sample_code."""
        return self.has_min_distance(self.sample_code(params, rng), params.d)

    def params_dict(self, params) -> dict:
        """Input parameters in output order."""
        return {'q': params.q, 'n': params.n, 'k': None, 'd': params.d, 'S': params.S}

    def distance_rows(self, points: Sequence[Any]) -> np.ndarray:
        """Full symmetric distance matrix of `points`."""
        size = len(points)
        matrix = np.zeros((size, size), dtype=np.int64)
        for i, j in combinations(range(size), 2):
            matrix[i, j] = matrix[j, i] = self.distance(points[i], points[j])
        return matrix

    def compatibility_graph(self, points: Sequence[Any], d: int) -> List[int]:
        """Adjacency bitsets of the graph joining points at distance >= d."""
        distances = self.distance_rows(points)
        neighbors = []
        for row in distances >= d:
            packed = np.packbits(row, bitorder='little').tobytes()
            neighbors.append(int.from_bytes(packed, 'little'))
        return neighbors

    def close_pairs(self, points: Sequence[Any], d: int) -> List[Tuple[int, int]]:
        """Unordered index pairs i < j at distance <= d-1."""
        distances = self.distance_rows(points)
        rows, cols = np.nonzero(np.triu(distances <= d - 1, k=1))
        return list(zip(rows.tolist(), cols.tolist()))

    def __repr__(self):
        return f"{type(self).__name__}(name={self.name!r})"
