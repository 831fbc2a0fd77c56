"""
Output records and their JSON-lines / CSV renderings.

Rationals are written as {"num": "...", "den": "...", "approx": "..."} with
num/den exact and approx a 17-significant-digit decimal string; large
integers are written as strings. Key order is fixed, absent fields are null,
so re-rendering a parsed record reproduces it byte for byte.

CSV columns follow the same order; a rational field `f` becomes the three
columns f_num, f_den, f and gamma becomes gamma_expr, gamma_ceil, gamma.
"""

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, fields
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from src.bounds.exact_power import ExactPower

APPROX_DIGITS = 17

REGIME_BELOW = "below-threshold"
REGIME_ABOVE = "above-threshold"
REGIME_UNDETERMINED = "undetermined"

RATIONAL_FIELDS = frozenset({
    'lower', 'upper', 'lower_raw', 'upper_raw', 'exact_density',
    'estimate', 'ci_low', 'ci_high', 'confidence_level',
})
BIG_INT_FIELDS = frozenset({'ambient_size', 'ball_size'})


def decimal_string(value: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = APPROX_DIGITS
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def render_rational(value: Optional[Fraction]) -> Optional[Dict[str, str]]:
    if value is None:
        return None
    value = Fraction(value)
    return {
        'num': str(value.numerator),
        'den': str(value.denominator),
        'approx': decimal_string(value),
    }


def parse_rational(data: Optional[Dict[str, str]]) -> Optional[Fraction]:
    if data is None:
        return None
    return Fraction(int(data['num']), int(data['den']))


def power_approx(value: ExactPower) -> str:
    with localcontext() as ctx:
        ctx.prec = APPROX_DIGITS
        exponent = Decimal(value.exponent.numerator) / Decimal(value.exponent.denominator)
        return str(Decimal(value.base) ** exponent)


def render_power(value: Optional[ExactPower]) -> Optional[Dict[str, str]]:
    if value is None:
        return None
    return {
        'base': str(value.base),
        'num': str(value.exponent.numerator),
        'den': str(value.exponent.denominator),
        'expr': value.render(),
        'ceil': str(value.ceil()),
        'approx': power_approx(value),
    }


def parse_power(data: Optional[Dict[str, str]]) -> Optional[ExactPower]:
    if data is None:
        return None
    return ExactPower(int(data['base']), int(data['num']), int(data['den']))


@dataclass
class OutputRecord:
    """One row of output; field order is the output key order."""
    command: str
    metric: str
    q: int
    n: int
    k: Optional[int]
    d: int
    S: int
    s_rule: Optional[str] = None
    ambient_size: Optional[int] = None
    ball_size: Optional[int] = None
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None
    lower_raw: Optional[Fraction] = None
    upper_raw: Optional[Fraction] = None
    gamma: Optional[ExactPower] = None
    regime: str = REGIME_UNDETERMINED
    exact_density: Optional[Fraction] = None
    sandwich_ok: Optional[bool] = None
    estimate: Optional[Fraction] = None
    ci_low: Optional[Fraction] = None
    ci_high: Optional[Fraction] = None
    trials: Optional[int] = None
    successes: Optional[int] = None
    seed: Optional[int] = None
    confidence_level: Optional[Fraction] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in RATIONAL_FIELDS:
                out[f.name] = render_rational(value)
            elif f.name in BIG_INT_FIELDS:
                out[f.name] = None if value is None else str(value)
            elif f.name == 'gamma':
                out[f.name] = render_power(value)
            else:
                out[f.name] = value
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'OutputRecord':
        values = {}
        for f in fields(cls):
            raw = data.get(f.name)
            if f.name in RATIONAL_FIELDS:
                values[f.name] = parse_rational(raw)
            elif f.name in BIG_INT_FIELDS:
                values[f.name] = None if raw is None else int(raw)
            elif f.name == 'gamma':
                values[f.name] = parse_power(raw)
            else:
                values[f.name] = raw
        return cls(**values)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, line: str) -> 'OutputRecord':
        return cls.from_dict(json.loads(line))

    def to_csv_row(self) -> List[str]:
        row: List[str] = []
        for name, value in self.to_dict().items():
            if name in RATIONAL_FIELDS:
                row.extend(['', '', ''] if value is None
                           else [value['num'], value['den'], value['approx']])
            elif name == 'gamma':
                row.extend(['', '', ''] if value is None
                           else [value['expr'], value['ceil'], value['approx']])
            elif value is None:
                row.append('')
            else:
                row.append(str(value).lower() if isinstance(value, bool) else str(value))
        return row


def csv_columns() -> List[str]:
    columns: List[str] = []
    for f in fields(OutputRecord):
        if f.name in RATIONAL_FIELDS:
            columns.extend([f"{f.name}_num", f"{f.name}_den", f.name])
        elif f.name == 'gamma':
            columns.extend(['gamma_expr', 'gamma_ceil', 'gamma'])
        else:
            columns.append(f.name)
    return columns


def render_records(records: Iterable[OutputRecord], fmt: str) -> str:
    """All records as one jsonl or csv document."""
    if fmt == 'jsonl':
        return ''.join(record.to_json() + '\n' for record in records)
    if fmt == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(csv_columns())
        for record in records:
            writer.writerow(record.to_csv_row())
        return buffer.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def write_atomically(path: Path, text: str) -> None:
    """Write via a temporary sibling file; nothing is left behind on failure."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
