"""
Parameter sweeps over q: one record per (q, S_q), plus a trend summary.

S-rules:
    const:c        S_q = c
    gamma:t        S_q = max(2, ceil(gamma_q ** t)), t a non-negative rational
    list:a,b,...   S_q taken position-wise from the list
    spread         S_q = (q^n - 1) / (q^k - 1)  (injection metric, k | n)
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from src.bounds.density_bounds import spread_size
from src.cli.records import (
    REGIME_ABOVE, REGIME_BELOW, REGIME_UNDETERMINED, OutputRecord,
)
from src.core.errors import ParameterError
from src.core.logging_controller import debug
from src.counting.combinat import require_prime_power
from src.metrics import BaseMetric, get_metric

RULE_CONST = 'const'
RULE_GAMMA = 'gamma'
RULE_LIST = 'list'
RULE_SPREAD = 'spread'

LOWER_TREND_LEVEL = Fraction(99, 100)
UPPER_TREND_LEVEL = Fraction(1, 100)


@dataclass(frozen=True)
class SRule:
    kind: str
    constant: Optional[int] = None
    exponent: Optional[Fraction] = None
    values: Tuple[int, ...] = ()

    def render(self) -> str:
        if self.kind == RULE_CONST:
            return f"const:{self.constant}"
        if self.kind == RULE_GAMMA:
            return f"gamma:{self.exponent}"
        if self.kind == RULE_LIST:
            return "list:" + ",".join(str(v) for v in self.values)
        return RULE_SPREAD


def parse_s_rule(text: str) -> SRule:
    """Parse 'const:c', 'gamma:t', 'list:a,b,...' or 'spread'."""
    kind, _, argument = text.strip().partition(':')
    try:
        if kind == RULE_CONST:
            return SRule(kind, constant=int(argument))
        if kind == RULE_GAMMA:
            t = Fraction(argument)
            if t < 0:
                raise ParameterError(f"gamma exponent must be >= 0, got {t}")
            return SRule(kind, exponent=t)
        if kind == RULE_LIST:
            values = tuple(int(v) for v in argument.split(',') if v.strip())
            if not values:
                raise ParameterError("list S-rule needs at least one value")
            return SRule(kind, values=values)
        if kind == RULE_SPREAD and not argument:
            return SRule(kind)
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"cannot parse S-rule {text!r}")
    raise ParameterError(
        f"unknown S-rule {text!r}, expected const:c, gamma:t, list:a,b,... or spread"
    )


def parse_q_list(text: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise ParameterError(f"cannot parse q list {text!r}")
    if not values:
        raise ParameterError("q list is empty")
    return values


@dataclass
class SweepSpec:
    """Fixed (n, d[, k]), a list of field sizes and an S-rule."""
    metric: str
    n: int
    d: int
    q_values: List[int]
    s_rule: SRule
    k: Optional[int] = None

    def __post_init__(self):
        get_metric(self.metric)
        for q in self.q_values:
            if q < 2:
                raise ParameterError(f"q list entries must be >= 2, got {q}")
            if self.metric == 'injection':
                require_prime_power(q)
        if self.s_rule.kind == RULE_LIST and len(self.s_rule.values) != len(self.q_values):
            raise ParameterError(
                f"list S-rule has {len(self.s_rule.values)} values for "
                f"{len(self.q_values)} field sizes"
            )
        if self.s_rule.kind == RULE_SPREAD and self.metric != 'injection':
            raise ParameterError("the spread S-rule needs the injection metric")
        if self.metric == 'injection' and self.k is None:
            raise ParameterError("the injection metric needs -k")


@dataclass
class TrendSummary:
    first_q_lower_above: Optional[int] = None
    first_q_upper_below: Optional[int] = None
    lower_level: Fraction = field(default=LOWER_TREND_LEVEL)
    upper_level: Fraction = field(default=UPPER_TREND_LEVEL)

    def to_dict(self) -> dict:
        return {
            'first_q_lower_above_0.99': self.first_q_lower_above,
            'first_q_upper_below_0.01': self.first_q_upper_below,
        }


def _gamma_exponent(metric: BaseMetric, params) -> Optional[Fraction]:
    gamma = metric.gamma(params)
    return None if gamma is None else gamma.exponent


def regime_from_exponents(growth: Fraction, threshold: Optional[Fraction]) -> str:
    """Compare S_q ~ q^growth against gamma_q = q^threshold."""
    if threshold is None or growth == threshold:
        return REGIME_UNDETERMINED
    return REGIME_BELOW if growth < threshold else REGIME_ABOVE


def _sweep_regime(spec: SweepSpec, metric: BaseMetric, params) -> str:
    threshold = _gamma_exponent(metric, params)
    if threshold is None:
        return REGIME_UNDETERMINED
    rule = spec.s_rule
    if rule.kind == RULE_CONST:
        return regime_from_exponents(Fraction(0), threshold)
    if rule.kind == RULE_GAMMA:
        if threshold == 0:
            return REGIME_UNDETERMINED
        return regime_from_exponents(rule.exponent, Fraction(1))
    if rule.kind == RULE_SPREAD:
        return regime_from_exponents(Fraction(spec.n - params.k), threshold)
    return REGIME_UNDETERMINED


def cardinality_for(spec: SweepSpec, metric: BaseMetric, q: int, position: int) -> int:
    rule = spec.s_rule
    if rule.kind == RULE_CONST:
        return rule.constant
    if rule.kind == RULE_LIST:
        return rule.values[position]
    if rule.kind == RULE_SPREAD:
        return spread_size(q, spec.n, spec.k)
    # gamma needs a params object only for its exponent; S=2 is always valid
    pair_params = metric.make_params(q, spec.n, spec.d, 2, spec.k)
    gamma = metric.gamma(pair_params)
    if gamma is None:
        raise ParameterError("the gamma S-rule needs d >= 2")
    return max(2, gamma.power(rule.exponent).ceil())


def run_sweep(spec: SweepSpec) -> Tuple[List[OutputRecord], TrendSummary]:
    metric = get_metric(spec.metric)
    records = []
    trend = TrendSummary()
    for position, q in enumerate(spec.q_values):
        S = cardinality_for(spec, metric, q, position)
        params = metric.make_params(q, spec.n, spec.d, S, spec.k)
        interval = metric.density_bounds(params)
        debug(f"sweep q={q} S={S}: [{float(interval.lower):.6g}, {float(interval.upper):.6g}]")
        records.append(OutputRecord(
            command='sweep',
            s_rule=spec.s_rule.render(),
            ambient_size=metric.ambient_size(params),
            ball_size=params.ball_size,
            lower=interval.lower,
            upper=interval.upper,
            lower_raw=interval.lower_raw,
            upper_raw=interval.upper_raw,
            gamma=metric.gamma(params),
            regime=_sweep_regime(spec, metric, params),
            **record_params(metric, params),
        ))
        if trend.first_q_lower_above is None and interval.lower > trend.lower_level:
            trend.first_q_lower_above = q
        if trend.first_q_upper_below is None and interval.upper < trend.upper_level:
            trend.first_q_upper_below = q
    return records, trend


def record_params(metric: BaseMetric, params) -> dict:
    """The metric/q/n/k/d/S fields of an OutputRecord."""
    return {'metric': metric.name, **metric.params_dict(params)}
