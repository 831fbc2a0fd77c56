"""
Bounds on the number of non-isolated right vertices of a bipartite graph.

The graph is never materialized. A left-regular graph is described by
|V| and its left degree; an association-regular graph by an
AssociationProfile (class sizes and co-neighborhood counts per class).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from src.core.errors import InvalidProfileError, ParameterError

VIOLATION_LENGTH = "array length"
VIOLATION_NEGATIVE = "negative count"
VIOLATION_CLASS_SUM = "class-size sum"
VIOLATION_SELF_CLASS = "self-association class"
FLAG_LOWER_INAPPLICABLE = "lower bound inapplicable"


@dataclass(frozen=True)
class AssociationProfile:
    """
    Abstract description of an association-regular bipartite graph.

    class_sizes[l] is |alpha^-1(l)| and w_values[l] is W_l(alpha),
    the number of common right neighbours of a left pair in class l.
    """
    magnitude: int
    v_size: int
    class_sizes: Tuple[int, ...]
    w_values: Tuple[int, ...]

    @property
    def degree(self) -> int:
        """Left degree; an alpha-regular graph has degree W_r(alpha)."""
        return self.w_values[self.magnitude]


@dataclass(frozen=True)
class BoundPair:
    """Lower (exact rational) and upper (integer) bound on a count."""
    lower: Fraction
    upper: int


@dataclass
class ProfileReport:
    """Outcome of validate_profile."""
    violations: List[str] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    @property
    def lower_bound_applicable(self) -> bool:
        return self.is_valid and FLAG_LOWER_INAPPLICABLE not in self.flags


def make_profile(magnitude: int, v_size: int,
                 class_sizes: Sequence[int], w_values: Sequence[int]) -> AssociationProfile:
    """Build a profile from arbitrary sequences."""
    return AssociationProfile(
        magnitude=int(magnitude),
        v_size=int(v_size),
        class_sizes=tuple(int(c) for c in class_sizes),
        w_values=tuple(int(w) for w in w_values),
    )


def validate_profile(p: AssociationProfile) -> ProfileReport:
    """
    Check the structural identities an association profile must satisfy.

    Never raises; returns the list of violated invariants plus flags.
    """
    report = ProfileReport()
    r = p.magnitude

    if r < 0 or len(p.class_sizes) != r + 1 or len(p.w_values) != r + 1:
        report.violations.append(VIOLATION_LENGTH)
        return report

    if p.v_size < 0 or any(c < 0 for c in p.class_sizes) or any(w < 0 for w in p.w_values):
        report.violations.append(VIOLATION_NEGATIVE)

    # alpha partitions V x V
    if sum(p.class_sizes) != p.v_size * p.v_size:
        report.violations.append(VIOLATION_CLASS_SUM)

    # alpha(X, X) = r for every X
    if p.class_sizes[r] < p.v_size:
        report.violations.append(VIOLATION_SELF_CLASS)

    if p.w_values[r] == 0:
        report.flags.append(FLAG_LOWER_INAPPLICABLE)

    return report


def upper_bound_nonisolated(v_size: int, degree: int) -> int:
    """
    Upper bound |F| <= |V| * degree for a left-regular graph.

    Args:
        v_size: number of left vertices
        degree: left degree, must be positive
    """
    if degree <= 0:
        raise ParameterError(f"left degree must be positive, got {degree}")
    if v_size < 0:
        raise ParameterError(f"|V| must be non-negative, got {v_size}")
    return v_size * degree


def lower_bound_nonisolated(p: AssociationProfile) -> Fraction:
    """
    Lower bound W_r^2 |V|^2 / sum_l W_l |alpha^-1(l)| for an alpha-regular graph.

    Returned exactly; callers take ceilings when they need a cardinality.
    """
    report = validate_profile(p)
    if not report.is_valid:
        raise InvalidProfileError(report.violations)
    if not report.lower_bound_applicable:
        raise ParameterError(f"{FLAG_LOWER_INAPPLICABLE}: W_r(alpha) = 0")

    if p.v_size == 0:
        return Fraction(0)
    w_r = p.w_values[p.magnitude]
    denominator = sum(w * c for w, c in zip(p.w_values, p.class_sizes))
    return Fraction(w_r * w_r * p.v_size * p.v_size, denominator)


def bound_pair(p: AssociationProfile) -> BoundPair:
    """Both bounds for the same profile."""
    return BoundPair(
        lower=lower_bound_nonisolated(p),
        upper=upper_bound_nonisolated(p.v_size, p.degree),
    )
