"""
Exact counting primitives: binomials, q-binomials, ball sizes,
Singleton-type maxima and leading-order asymptotic descriptors.

Every value is a Python int (arbitrary precision); nothing here touches floats.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint

from src.core.errors import NotPrimePowerError, ParameterError


@dataclass(frozen=True)
class AsymptoticForm:
    """f(q) ~ coefficient * q**exponent as q -> infinity"""
    coefficient: int
    exponent: int

    def evaluate(self, q: int) -> int:
        """Leading term at a concrete q."""
        return self.coefficient * q ** self.exponent


def binom(m: int, l: int) -> int:
    """Binomial coefficient, 0 when l < 0 or l > m."""
    if m < 0:
        raise ParameterError(f"binom needs m >= 0, got m={m}")
    if l < 0 or l > m:
        return 0
    return math.comb(m, l)


@lru_cache(maxsize=None)
def prime_power_decomposition(q: int):
    """
    Return (p, e) with q = p**e, or None if q is not a prime power.

    Args:
        q: candidate field size
    """
    if q < 2:
        return None
    factors = factorint(q)
    if len(factors) != 1:
        return None
    (p, e), = factors.items()
    return int(p), int(e)


def is_prime_power(q: int) -> bool:
    return prime_power_decomposition(q) is not None


def require_prime_power(q: int) -> None:
    """Raise NotPrimePowerError unless q is a prime power."""
    if q < 2:
        raise ParameterError(f"q must be >= 2, got q={q}")
    if not is_prime_power(q):
        raise NotPrimePowerError(q)


def _require_alphabet(q: int) -> None:
    if q < 2:
        raise ParameterError(f"alphabet size q must be >= 2, got q={q}")


@lru_cache(maxsize=4096)
def q_binom(m: int, l: int, q: int) -> int:
    """
    Gaussian binomial coefficient [m choose l]_q via the product formula.

    Counts l-dimensional subspaces of an m-dimensional space over F_q.
    """
    if q < 2:
        raise ParameterError(f"q_binom needs q >= 2, got q={q}")
    if m < 0:
        raise ParameterError(f"q_binom needs m >= 0, got m={m}")
    if l < 0 or l > m:
        return 0
    l = min(l, m - l)
    num = 1
    den = 1
    for i in range(l):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def hamming_ball_size(q: int, n: int, r: int) -> int:
    """Number of vectors of F_q^n within Hamming distance r of a fixed center."""
    _require_alphabet(q)
    if n < 1:
        raise ParameterError(f"n must be positive, got n={n}")
    if not 0 <= r <= n:
        raise ParameterError(f"radius must satisfy 0 <= r <= n, got r={r}, n={n}")
    return sum(binom(n, i) * (q - 1) ** i for i in range(r + 1))


def _require_grassmannian(q: int, n: int, k: int) -> None:
    require_prime_power(q)
    if not 1 <= k <= n - k:
        raise ParameterError(f"need 1 <= k <= n-k, got n={n}, k={k}")


def injection_ball_size(q: int, n: int, k: int, r: int) -> int:
    """
    Size of the injection-distance ball of radius r in G_q(k, n).

    Independent of the center; requires k <= n-k (dualize first otherwise).
    """
    _require_grassmannian(q, n, k)
    if not 0 <= r <= k:
        raise ParameterError(f"radius must satisfy 0 <= r <= k, got r={r}, k={k}")
    return sum(
        q ** (i * i) * q_binom(k, i, q) * q_binom(n - k, i, q)
        for i in range(r + 1)
    )


def hamming_singleton_max(q: int, n: int, d: int) -> int:
    """Largest cardinality allowed by the Singleton bound, q^(n-d+1)."""
    _require_alphabet(q)
    if not 1 <= d <= n:
        raise ParameterError(f"need 1 <= d <= n, got d={d}, n={n}")
    return q ** (n - d + 1)


def subspace_singleton_max(q: int, n: int, k: int, d: int) -> int:
    """Singleton-type maximum for subspace codes in G_q(k, n)."""
    _require_grassmannian(q, n, k)
    if not 1 <= d <= k:
        raise ParameterError(f"need 1 <= d <= k, got d={d}, k={k}")
    return q_binom(n - d + 1, n - k, q)


def hamming_ball_asymptotic(n: int, d: int) -> AsymptoticForm:
    """b^H_q(d-1) ~ binom(n, d-1) q^(d-1)"""
    if not 2 <= d <= n:
        raise ParameterError(f"need 2 <= d <= n, got d={d}, n={n}")
    return AsymptoticForm(coefficient=binom(n, d - 1), exponent=d - 1)


def injection_ball_asymptotic(n: int, k: int, d: int) -> AsymptoticForm:
    """b^I_q(d-1) ~ q^((d-1)(n-d+1)); the constant factor is not tracked."""
    if not 2 <= d <= k <= n - k:
        raise ParameterError(f"need 2 <= d <= k <= n-k, got n={n}, k={k}, d={d}")
    return AsymptoticForm(coefficient=1, exponent=(d - 1) * (n - d + 1))
