"""
Finite-geometry objects: vectors of F_q^n, k-subspaces in canonical RREF,
block codes and subspace codes, with distances, enumeration, uniform
sampling and the canonical text formats used by `estimate --dump`.

Vectors and RREF rows are packed ints (base-q digits, first coordinate most
significant), so numeric order on packed values is lexicographic order on
coordinates.
"""

import string
from dataclasses import dataclass
from itertools import combinations, product
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.core.config import DEFAULT_ENUMERATION_LIMIT
from src.core.errors import ParameterError, WorkLimitExceeded
from src.counting.combinat import q_binom, require_prime_power
from src.geometry.finite_field import get_field, pack_digits, unpack_digits

DIGITS = string.digits + string.ascii_lowercase
NUMPY_INDEX_LIMIT = 2 ** 62


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Vector:
    """A vector of F_q^n, stored as its packed index in [0, q^n)."""
    q: int
    n: int
    index: int

    def __post_init__(self):
        if self.q < 2 or self.n < 1:
            raise ParameterError(f"invalid ambient q={self.q}, n={self.n}")
        if not 0 <= self.index < self.q ** self.n:
            raise ParameterError(f"vector index {self.index} outside F_{self.q}^{self.n}")

    @classmethod
    def from_coordinates(cls, q: int, coordinates: Sequence[int]) -> 'Vector':
        if any(not 0 <= int(c) < q for c in coordinates):
            raise ParameterError(f"coordinates must lie in 0..{q - 1}: {list(coordinates)}")
        return cls(q, len(coordinates), pack_digits(coordinates, q))

    @property
    def coordinates(self) -> Tuple[int, ...]:
        return unpack_digits(self.index, self.q, self.n)


def _is_rref(rows: Sequence[int], q: int, n: int) -> bool:
    matrix = [unpack_digits(row, q, n) for row in rows]
    pivots = []
    for digits in matrix:
        lead = next((j for j, value in enumerate(digits) if value), None)
        if lead is None or digits[lead] != 1:
            return False
        if pivots and lead <= pivots[-1]:
            return False
        pivots.append(lead)
    for i, column in enumerate(pivots):
        if any(matrix[other][column] for other in range(len(matrix)) if other != i):
            return False
    return True


@dataclass(frozen=True, order=True)
class Subspace:
    """
    A k-subspace of F_q^n held by its canonical RREF basis.

    rows are packed RREF rows, leftmost pivot first; equality of Subspace
    objects is equality of subspaces.
    """
    q: int
    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if not self.rows:
            raise ParameterError("a subspace needs at least one basis row")
        if not _is_rref(self.rows, self.q, self.n):
            raise ParameterError(
                f"rows {self.rows} are not a canonical RREF basis; use subspace_from_rows"
            )

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(unpack_digits(row, self.q, self.n) for row in self.rows)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.basis)


@dataclass(frozen=True)
class Code:
    """A block code: at least two distinct vectors of one F_q^n."""
    q: int
    n: int
    elements: FrozenSet[Vector]

    def __post_init__(self):
        if len(self.elements) < 2:
            raise ParameterError(f"a code needs at least 2 elements, got {len(self.elements)}")
        if any((x.q, x.n) != (self.q, self.n) for x in self.elements):
            raise ParameterError("all code elements must share the ambient space")

    @classmethod
    def of(cls, elements: Iterable[Vector]) -> 'Code':
        members = frozenset(elements)
        if not members:
            raise ParameterError("a code needs at least 2 elements, got 0")
        first = next(iter(members))
        return cls(first.q, first.n, members)

    def __len__(self):
        return len(self.elements)

    def sorted_elements(self) -> List[Vector]:
        return sorted(self.elements)


@dataclass(frozen=True)
class SubspaceCode:
    """At least two distinct k-subspaces of one F_q^n."""
    q: int
    n: int
    k: int
    elements: FrozenSet[Subspace]

    def __post_init__(self):
        if len(self.elements) < 2:
            raise ParameterError(
                f"a subspace code needs at least 2 elements, got {len(self.elements)}"
            )
        if any((X.q, X.n, X.k) != (self.q, self.n, self.k) for X in self.elements):
            raise ParameterError("all subspaces must share (q, k, n)")

    @classmethod
    def of(cls, elements: Iterable[Subspace]) -> 'SubspaceCode':
        members = frozenset(elements)
        if not members:
            raise ParameterError("a subspace code needs at least 2 elements, got 0")
        first = next(iter(members))
        return cls(first.q, first.n, first.k, members)

    def __len__(self):
        return len(self.elements)

    def sorted_elements(self) -> List[Subspace]:
        return sorted(self.elements)


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

def rref(q: int, matrix: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Non-zero rows of the reduced row echelon form of `matrix` over F_q."""
    if not matrix:
        return []
    n = len(matrix[0])
    field = get_field(q)
    packed = [pack_digits(row, q) for row in matrix]
    return [unpack_digits(row, q, n) for row in field.rref(packed, n)]


def subspace_from_rows(q: int, matrix: Sequence[Sequence[int]]) -> Subspace:
    """Row space of a full-rank generating matrix, canonicalised."""
    if not matrix:
        raise ParameterError("a subspace needs at least one generating row")
    n = len(matrix[0])
    if any(len(row) != n for row in matrix):
        raise ParameterError("generating rows must have equal length")
    if any(not 0 <= int(v) < q for row in matrix for v in row):
        raise ParameterError(f"matrix entries must lie in 0..{q - 1}")
    field = get_field(q)
    rows = field.rref([pack_digits(row, q) for row in matrix], n)
    if len(rows) != len(matrix):
        raise ParameterError(
            f"generating matrix has rank {len(rows)}, expected {len(matrix)}"
        )
    return Subspace(q, n, rows)


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------

def hamming_distance(x: Vector, y: Vector) -> int:
    if (x.q, x.n) != (y.q, y.n):
        raise ParameterError(
            f"ambient mismatch: F_{x.q}^{x.n} vs F_{y.q}^{y.n}"
        )
    if x.q == 2:
        return (x.index ^ y.index).bit_count()
    return sum(a != b for a, b in zip(x.coordinates, y.coordinates))


def code_min_distance(C: Code) -> int:
    if len(C.elements) < 2:
        raise ParameterError("minimum distance needs at least 2 elements")
    return min(hamming_distance(x, y) for x, y in combinations(C.elements, 2))


def injection_distance(X: Subspace, Y: Subspace) -> int:
    """dim(X + Y) - k, i.e. k - dim(X cap Y)."""
    if (X.q, X.n, X.k) != (Y.q, Y.n, Y.k):
        raise ParameterError(
            f"ambient mismatch: G_{X.q}({X.k},{X.n}) vs G_{Y.q}({Y.k},{Y.n})"
        )
    if X.rows == Y.rows:
        return 0
    return get_field(X.q).rank(X.rows + Y.rows, X.n) - X.k


def subspace_code_min_distance(C: SubspaceCode) -> int:
    if len(C.elements) < 2:
        raise ParameterError("minimum distance needs at least 2 elements")
    return min(injection_distance(X, Y) for X, Y in combinations(C.elements, 2))


def is_partial_spread(C: SubspaceCode) -> bool:
    return subspace_code_min_distance(C) == C.k


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def enumerate_vectors(q: int, n: int,
                      limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[Vector]:
    """All q^n vectors in lexicographic order."""
    if q < 2 or n < 1:
        raise ParameterError(f"invalid ambient q={q}, n={n}")
    total = q ** n
    if total > limit:
        raise WorkLimitExceeded(f"enumerating F_{q}^{n}", total, limit)
    return (Vector(q, n, index) for index in range(total))


def _grassmannian_rows(q: int, k: int, n: int) -> Iterator[Tuple[int, ...]]:
    weights = [q ** (n - 1 - j) for j in range(n)]
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i, column in enumerate(pivots)
            for j in range(column + 1, n)
            if j not in pivot_set
        ]
        base = [weights[column] for column in pivots]
        for entries in product(range(q), repeat=len(free)):
            rows = list(base)
            for (i, j), value in zip(free, entries):
                rows[i] += value * weights[j]
            yield tuple(rows)


def enumerate_grassmannian(q: int, k: int, n: int,
                           limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[Subspace]:
    """
    All k-subspaces of F_q^n in canonical form.

    Ordered by pivot-column pattern (lexicographic), then by free entries.
    """
    require_prime_power(q)
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    total = q_binom(n, k, q)
    if total > limit:
        raise WorkLimitExceeded(f"enumerating G_{q}({k},{n})", total, limit)
    return (Subspace(q, n, rows) for rows in _grassmannian_rows(q, k, n))


# ---------------------------------------------------------------------------
# Uniform sampling
# ---------------------------------------------------------------------------

def sample_code_uniform(q: int, n: int, S: int, rng: np.random.Generator) -> Code:
    """Uniform S-subset of F_q^n."""
    if q < 2 or n < 1:
        raise ParameterError(f"invalid ambient q={q}, n={n}")
    total = q ** n
    if not 2 <= S <= total:
        raise ParameterError(f"need 2 <= S <= q^n = {total}, got S={S}")
    if total < NUMPY_INDEX_LIMIT:
        indices = rng.choice(total, size=S, replace=False)
        return Code(q, n, frozenset(Vector(q, n, int(i)) for i in indices))
    chosen = set()
    while len(chosen) < S:
        chosen.add(pack_digits(rng.integers(0, q, size=n), q))
    return Code(q, n, frozenset(Vector(q, n, i) for i in chosen))


def draw_rref_rows(q: int, k: int, n: int, rng: np.random.Generator) -> Tuple[int, ...]:
    """RREF rows of a uniform k-subspace; draws k x n matrices until one has rank k."""
    field = get_field(q)
    while True:
        matrix = rng.integers(0, q, size=(k, n))
        rows = field.rref([pack_digits(row, q) for row in matrix], n)
        if len(rows) == k:
            return rows


def sample_subspace_uniform(q: int, k: int, n: int, rng: np.random.Generator) -> Subspace:
    """Uniform element of G_q(k,n)."""
    require_prime_power(q)
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    return Subspace(q, n, draw_rref_rows(q, k, n, rng))


def sample_subspace_code_uniform(q: int, k: int, n: int, S: int,
                                 rng: np.random.Generator) -> SubspaceCode:
    """Uniform S-subset of G_q(k,n), drawn one subspace at a time with duplicates rejected."""
    require_prime_power(q)
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    total = q_binom(n, k, q)
    if not 2 <= S <= total:
        raise ParameterError(f"need 2 <= S <= |G_q(k,n)| = {total}, got S={S}")
    chosen = set()
    while len(chosen) < S:
        chosen.add(sample_subspace_uniform(q, k, n, rng))
    return SubspaceCode(q, n, k, frozenset(chosen))


# ---------------------------------------------------------------------------
# Clique counting over compatibility graphs
# ---------------------------------------------------------------------------

def count_cliques(neighbors: Sequence[int], size: int,
                  first_vertices: Optional[Iterable[int]] = None) -> int:
    """
    Number of `size`-cliques in a graph given as adjacency bitsets.

    Cliques are counted once, by increasing vertex order. A partial clique is
    abandoned as soon as too few common neighbours remain.

    Args:
        neighbors: neighbors[v] has bit u set iff u and v are adjacent
        size: clique size, at least 1
        first_vertices: restrict to cliques whose smallest vertex is listed
    """
    if size < 1:
        raise ParameterError(f"clique size must be positive, got {size}")
    forward = [(mask >> (v + 1)) << (v + 1) for v, mask in enumerate(neighbors)]
    if first_vertices is None:
        first_vertices = range(len(neighbors))

    def extend(candidates: int, remaining: int) -> int:
        if remaining == 1:
            return candidates.bit_count()
        total = 0
        while candidates.bit_count() >= remaining:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            total += extend(candidates & forward[v], remaining - 1)
        return total

    if size == 1:
        return sum(1 for _ in first_vertices)
    return sum(extend(forward[v], size - 1) for v in first_vertices)


def count_partial_spreads(q: int, k: int, n: int, size: int,
                          limit: int = DEFAULT_ENUMERATION_LIMIT) -> int:
    """Number of `size`-element partial spreads of G_q(k,n)."""
    if k < 1 or 2 * k > n:
        raise ParameterError(f"partial spreads need 1 <= k <= n-k, got k={k}, n={n}")
    subspaces = list(enumerate_grassmannian(q, k, n, limit))
    neighbors = [0] * len(subspaces)
    for i, j in combinations(range(len(subspaces)), 2):
        if injection_distance(subspaces[i], subspaces[j]) == k:
            neighbors[i] |= 1 << j
            neighbors[j] |= 1 << i
    return count_cliques(neighbors, size)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

def _format_digits(digits: Sequence[int], q: int) -> str:
    if q <= len(DIGITS):
        return ''.join(DIGITS[d] for d in digits)
    return '.'.join(str(d) for d in digits)


def _parse_digits(text: str, q: int) -> List[int]:
    text = text.strip()
    if not text:
        raise ParameterError("empty coordinate string")
    try:
        if q > len(DIGITS) or '.' in text:
            digits = [int(part) for part in text.split('.')]
        else:
            digits = [int(ch, 36) for ch in text]
    except ValueError:
        raise ParameterError(f"cannot parse coordinates {text!r}")
    if any(not 0 <= d < q for d in digits):
        raise ParameterError(f"coordinates of {text!r} must lie in 0..{q - 1}")
    return digits


def format_vector(x: Vector) -> str:
    """Digit string, e.g. '0110'; '.'-separated digits when q > 36."""
    return _format_digits(x.coordinates, x.q)


def parse_vector(text: str, q: int) -> Vector:
    return Vector.from_coordinates(q, _parse_digits(text, q))


def format_subspace(X: Subspace) -> str:
    """RREF rows joined by ';'."""
    return ';'.join(_format_digits(row, X.q) for row in X.basis)


def parse_subspace(text: str, q: int) -> Subspace:
    return subspace_from_rows(q, [_parse_digits(row, q) for row in text.split(';')])


def format_code(C) -> str:
    """One element per line, in sorted order."""
    if isinstance(C, SubspaceCode):
        return '\n'.join(format_subspace(X) for X in C.sorted_elements())
    return '\n'.join(format_vector(x) for x in C.sorted_elements())


def parse_code(text: str, q: int) -> Code:
    return Code.of(parse_vector(line, q) for line in text.splitlines() if line.strip())


def parse_subspace_code(text: str, q: int) -> SubspaceCode:
    return SubspaceCode.of(parse_subspace(line, q) for line in text.splitlines() if line.strip())
