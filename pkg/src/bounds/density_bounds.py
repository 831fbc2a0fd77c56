"""
Density bounds for block codes (Hamming metric) and subspace codes
(injection metric), obtained by instantiating the association engine
on the pair/code incidence graph.

For a metric with ambient size M (q^n or the Grassmannian size) and ball
size b of radius d-1, a uniformly random S-subset has minimum distance
>= d with probability delta, and

    1 - (b-1)S(S-1) / (2(M-1))  <=  delta  <=  1 - (b-1)S(S-1) / (2 Omega (M-1)).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from src.bounds.exact_power import ExactPower, GVEstimate
from src.core.errors import DegenerateAmbientError, ParameterError
from src.counting.assoc_engine import (
    AssociationProfile, BoundPair, bound_pair, make_profile,
)
from src.counting.combinat import (
    binom, hamming_ball_size, injection_ball_size, q_binom, require_prime_power,
)


@dataclass(frozen=True)
class HammingParams:
    """Codes of cardinality S in F_q^n, target minimum distance d."""
    q: int
    n: int
    d: int
    S: int

    def __post_init__(self):
        if self.q < 2:
            raise ParameterError(f"q must be >= 2, got q={self.q}")
        if self.n < 1:
            raise ParameterError(f"n must be positive, got n={self.n}")
        if not 1 <= self.d <= self.n:
            raise ParameterError(f"need 1 <= d <= n, got d={self.d}, n={self.n}")
        if not 2 <= self.S <= self.ambient_size:
            raise ParameterError(
                f"need 2 <= S <= q^n = {self.ambient_size}, got S={self.S}"
            )

    @property
    def ambient_size(self) -> int:
        return self.q ** self.n

    @property
    def ball_size(self) -> int:
        """Hamming ball of radius d-1."""
        return hamming_ball_size(self.q, self.n, self.d - 1)


@dataclass(frozen=True)
class SubspaceParams:
    """
    Subspace codes of cardinality S in G_q(k, n), target injection distance d.

    k > n-k is replaced by n-k on construction (taking orthogonal complements
    preserves injection distances); original_k keeps what was asked for.
    """
    q: int
    n: int
    k: int
    d: int
    S: int
    original_k: int = field(init=False, compare=False)

    def __post_init__(self):
        require_prime_power(self.q)
        if not 1 <= self.k <= self.n - 1:
            raise ParameterError(f"need 1 <= k <= n-1, got n={self.n}, k={self.k}")
        object.__setattr__(self, 'original_k', self.k)
        if self.k > self.n - self.k:
            object.__setattr__(self, 'k', self.n - self.k)
        if not 1 <= self.d <= self.k:
            raise ParameterError(
                f"need 1 <= d <= min(k, n-k) = {self.k}, got d={self.d}"
            )
        if not 2 <= self.S <= self.ambient_size:
            raise ParameterError(
                f"need 2 <= S <= |G_q(k,n)| = {self.ambient_size}, got S={self.S}"
            )

    @property
    def ambient_size(self) -> int:
        return q_binom(self.n, self.k, self.q)

    @property
    def ball_size(self) -> int:
        """Injection ball of radius d-1."""
        return injection_ball_size(self.q, self.n, self.k, self.d - 1)


@dataclass(frozen=True)
class DensityInterval:
    """Raw formula values plus the same values clamped to [0, 1]."""
    lower_raw: Fraction
    upper_raw: Fraction
    lower: Fraction
    upper: Fraction

    @classmethod
    def from_raw(cls, lower_raw: Fraction, upper_raw: Fraction) -> 'DensityInterval':
        return cls(
            lower_raw=Fraction(lower_raw),
            upper_raw=Fraction(upper_raw),
            lower=max(Fraction(lower_raw), Fraction(0)),
            upper=min(Fraction(upper_raw), Fraction(1)),
        )

    @classmethod
    def certain(cls) -> 'DensityInterval':
        """Every code qualifies (d = 1)."""
        return cls.from_raw(Fraction(1), Fraction(1))

    def contains(self, value: Fraction) -> bool:
        return self.lower_raw <= value <= self.upper_raw


def left_degree(ambient_size: int, S: int) -> int:
    """Number of S-codes containing a fixed pair: binom(M-2, S-2)."""
    return binom(ambient_size - 2, S - 2)


def _codes_containing(ambient_size: int, S: int, points: int) -> int:
    """Number of S-subsets of an M-set that contain a fixed set of `points` elements."""
    if ambient_size < points:
        return 0
    return binom(ambient_size - points, S - points)


def omega(ambient_size: int, ball: int, S: int) -> Fraction:
    """Omega = 1 + beta(1)(S-2)/(M-2) + beta(0)(S-2)(S-3)/((M-2)(M-3))."""
    if S == 2:
        return Fraction(1)
    M = ambient_size
    if M <= 3:
        raise DegenerateAmbientError(M, S)
    beta1 = 2 * ball - 4
    beta0 = M * (ball - 1) // 2 - 2 * ball + 3
    return (
        1
        + Fraction(beta1 * (S - 2), M - 2)
        + Fraction(beta0 * (S - 2) * (S - 3), (M - 2) * (M - 3))
    )


def _density_interval(ambient_size: int, ball: int, S: int) -> DensityInterval:
    M = ambient_size
    collision_mass = Fraction((ball - 1) * S * (S - 1), 2 * (M - 1))
    return DensityInterval.from_raw(
        1 - collision_mass,
        1 - collision_mass / omega(M, ball, S),
    )


def _pair_profile(ambient_size: int, ball: int, S: int) -> AssociationProfile:
    """Profile of the pair/code graph with alpha({x,y},{t,z}) = 4 - |{x,y,t,z}|."""
    M = ambient_size
    v_size = M * (ball - 1) // 2
    class_sizes = (
        v_size * (v_size - 2 * ball + 3),
        2 * v_size * (ball - 2),
        v_size,
    )
    w_values = tuple(_codes_containing(M, S, 4 - l) for l in range(3))
    return make_profile(2, v_size, class_sizes, w_values)


def hamming_profile(p: HammingParams) -> AssociationProfile:
    if p.d < 2:
        raise ParameterError("the pair graph is empty for d = 1")
    return _pair_profile(p.ambient_size, p.ball_size, p.S)


def injection_profile(p: SubspaceParams) -> AssociationProfile:
    if p.d < 2:
        raise ParameterError("the pair graph is empty for d = 1")
    return _pair_profile(p.ambient_size, p.ball_size, p.S)


def density_bounds_hamming(p: HammingParams) -> DensityInterval:
    if p.d == 1:
        return DensityInterval.certain()
    return _density_interval(p.ambient_size, p.ball_size, p.S)


def density_bounds_injection(p: SubspaceParams) -> DensityInterval:
    if p.d == 1:
        return DensityInterval.certain()
    return _density_interval(p.ambient_size, p.ball_size, p.S)


def bad_code_count_bounds_hamming(p: HammingParams) -> BoundPair:
    """Bounds on the number of S-codes with minimum distance at most d-1."""
    if p.d == 1:
        return BoundPair(lower=Fraction(0), upper=0)
    return bound_pair(hamming_profile(p))


def bad_code_count_bounds_injection(p: SubspaceParams) -> BoundPair:
    """Bounds on the number of S-subspace codes with minimum distance at most d-1."""
    if p.d == 1:
        return BoundPair(lower=Fraction(0), upper=0)
    return bound_pair(injection_profile(p))


def gamma_hamming(q: int, n: int, d: int) -> ExactPower:
    """Threshold sqrt(q^(n-d+1))."""
    if q < 2:
        raise ParameterError(f"q must be >= 2, got q={q}")
    if not 2 <= d <= n:
        raise ParameterError(f"need 2 <= d <= n, got d={d}, n={n}")
    return ExactPower(q, n - d + 1, 2)


def gamma_injection(q: int, n: int, k: int, d: int) -> ExactPower:
    """Threshold sqrt(q^(k(n-k) - (d-1)(n-d+1)))."""
    if q < 2:
        raise ParameterError(f"q must be >= 2, got q={q}")
    if not 2 <= d <= k <= n - k:
        raise ParameterError(f"need 2 <= d <= k <= n-k, got n={n}, k={k}, d={d}")
    return ExactPower(q, k * (n - k) - (d - 1) * (n - d + 1), 2)


def gv_cardinality_estimate(q: int, n: int, d: int) -> GVEstimate:
    """Gilbert-Varshamov cardinality ~ q^(n-d+1) / binom(n, d-1)."""
    if q < 2:
        raise ParameterError(f"q must be >= 2, got q={q}")
    if not 2 <= d <= n:
        raise ParameterError(f"need 2 <= d <= n, got d={d}, n={n}")
    return GVEstimate(exponent=n - d + 1, divisor=binom(n, d - 1))


def spread_bounds(q: int, n: int, k: int, S: int) -> DensityInterval:
    """Density bounds for partial spreads: subspace codes with d = k."""
    if k < 1 or 2 * k > n:
        raise ParameterError(f"partial spreads need 1 <= k <= n-k, got n={n}, k={k}")
    return density_bounds_injection(SubspaceParams(q, n, k, k, S))


def spread_size(q: int, n: int, k: int) -> int:
    """(q^n - 1) / (q^k - 1), the size of a spread when k divides n."""
    require_prime_power(q)
    if not 1 <= k <= n or n % k:
        raise ParameterError(f"spreads need k | n, got n={n}, k={k}")
    return (q ** n - 1) // (q ** k - 1)


def spread_threshold(q: int, n: int, k: int) -> ExactPower:
    """Decisive partial-spread cardinality sqrt(q^(n-2k+1))."""
    if q < 2:
        raise ParameterError(f"q must be >= 2, got q={q}")
    if k < 1 or 2 * k > n:
        raise ParameterError(f"need 1 <= k <= n-k, got n={n}, k={k}")
    return ExactPower(q, n - 2 * k + 1, 2)
