"""
Row reduction over F_q on packed rows.

A row of length n is stored as one Python int holding its coordinates as
base-q digits, most significant digit first. For q = 2 this is a bitmask and
elimination is plain XOR; other prime powers go through galois lookup-table
arithmetic.
"""

from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Sequence, Tuple

import galois
import numpy as np

from src.counting.combinat import require_prime_power


def pack_digits(digits: Sequence[int], q: int) -> int:
    """Big-endian base-q digits to an int."""
    value = 0
    for digit in digits:
        value = value * q + int(digit)
    return value


def unpack_digits(value: int, q: int, n: int) -> Tuple[int, ...]:
    """Inverse of pack_digits for a length-n row."""
    digits = [0] * n
    for position in range(n - 1, -1, -1):
        value, digits[position] = divmod(value, q)
    return tuple(digits)


def digit_matrix(values: Sequence[int], q: int, n: int) -> np.ndarray:
    """Rows of digits, one per packed value, as an int64 array of shape (len(values), n)."""
    matrix = np.zeros((len(values), n), dtype=np.int64)
    for i, value in enumerate(values):
        matrix[i] = unpack_digits(value, q, n)
    return matrix


class BaseField(ABC):
    """Elimination over one finite field."""

    def __init__(self, q: int):
        self.q = q

    @abstractmethod
    def rref(self, rows: Sequence[int], n: int) -> Tuple[int, ...]:
        """
        Canonical reduced row echelon form of the span of `rows`.

        Args:
            rows: packed rows of length n
            n: row length

        Returns:
            Non-zero RREF rows, leftmost pivot first
        """
        pass

    def rank(self, rows: Sequence[int], n: int) -> int:
        return len(self.rref(rows, n))


class BinaryField(BaseField):
    """F_2 with rows as bitmasks."""

    def __init__(self):
        super().__init__(2)

    def rref(self, rows: Sequence[int], n: int) -> Tuple[int, ...]:
        basis = {}  # pivot bit -> row
        for row in rows:
            row = int(row)
            for pivot, pivot_row in basis.items():
                if row >> pivot & 1:
                    row ^= pivot_row
            if not row:
                continue
            lead = row.bit_length() - 1
            for pivot in basis:
                if basis[pivot] >> lead & 1:
                    basis[pivot] ^= row
            basis[lead] = row
        return tuple(basis[p] for p in sorted(basis, reverse=True))


class GaloisField(BaseField):
    """F_q for any prime power q, backed by a galois field class."""

    def __init__(self, q: int):
        super().__init__(q)
        self.GF = galois.GF(q)

    def to_array(self, rows: Sequence[int], n: int):
        return self.GF(digit_matrix(rows, self.q, n))

    def rref(self, rows: Sequence[int], n: int) -> Tuple[int, ...]:
        if not len(rows):
            return ()
        reduced = self.to_array(rows, n).row_reduce()
        packed = []
        for row in np.asarray(reduced, dtype=np.int64):
            value = pack_digits(row, self.q)
            if value:
                packed.append(value)
        return tuple(packed)

    def rank(self, rows: Sequence[int], n: int) -> int:
        if not len(rows):
            return 0
        return int(np.linalg.matrix_rank(self.to_array(rows, n)))


@lru_cache(maxsize=None)
def get_field(q: int) -> BaseField:
    """Shared field instance for q (must be a prime power)."""
    require_prime_power(q)
    if q == 2:
        return BinaryField()
    return GaloisField(q)
