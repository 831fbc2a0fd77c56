"""
Metrics package for codedensity.

Supports two metrics:
- HammingMetric: block codes in F_q^n
- InjectionMetric: subspace codes in G_q(k, n)
"""

from src.core.errors import ParameterError

from .base_metric import BaseMetric
from .hamming_metric import HammingMetric
from .injection_metric import InjectionMetric

METRIC_NAMES = ('hamming', 'injection')

_METRICS = {
    'hamming': HammingMetric,
    'injection': InjectionMetric,
}


def get_metric(name: str) -> BaseMetric:
    """Metric instance by command-line name."""
    try:
        return _METRICS[name]()
    except KeyError:
        raise ParameterError(f"unknown metric {name!r}, expected one of {METRIC_NAMES}")


__all__ = ['BaseMetric', 'HammingMetric', 'InjectionMetric', 'METRIC_NAMES', 'get_metric']
