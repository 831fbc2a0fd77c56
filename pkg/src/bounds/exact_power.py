"""
Exact descriptors for quantities like sqrt(q^e) that are not integers in general.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import integer_nthroot


@dataclass(frozen=True)
class ExactPower:
    """base ** (numerator / denominator), kept symbolic."""
    base: int
    numerator: int
    denominator: int

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def power(self, t) -> 'ExactPower':
        """(base^e)^t with a rational t >= 0."""
        e = self.exponent * Fraction(t)
        return ExactPower(self.base, e.numerator, e.denominator)

    def ceil(self) -> int:
        """Smallest integer >= base^exponent, computed exactly."""
        e = self.exponent
        if e < 0:
            raise ValueError("negative exponents are not supported")
        root, exact = integer_nthroot(self.base ** e.numerator, e.denominator)
        return int(root) if exact else int(root) + 1

    def is_integer(self) -> bool:
        e = self.exponent
        _, exact = integer_nthroot(self.base ** e.numerator, e.denominator)
        return bool(exact)

    def approx(self) -> float:
        try:
            return math.exp(float(self.exponent) * math.log(self.base))
        except OverflowError:
            return math.inf

    def render(self) -> str:
        e = self.exponent
        if e.denominator == 1:
            return f"{self.base}^{e.numerator}"
        return f"{self.base}^({e.numerator}/{e.denominator})"


@dataclass(frozen=True)
class GVEstimate:
    """Cardinality q^exponent / divisor guaranteed asymptotically by Gilbert-Varshamov."""
    exponent: int
    divisor: int

    def at(self, q: int) -> Fraction:
        return Fraction(q ** self.exponent, self.divisor)
