#!/usr/bin/env python3
"""
Tests for the command-line front end and its output records.
"""

import io
import json
import sys
import tempfile
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from src.bounds.exact_power import ExactPower
from src.cli.app import main
from src.cli.records import (
    REGIME_BELOW, REGIME_UNDETERMINED, OutputRecord, csv_columns, decimal_string,
    render_rational, render_records, write_atomically,
)
from src.cli.sweep import (
    SweepSpec, parse_q_list, parse_s_rule, regime_from_exponents, run_sweep,
)
from src.core.errors import ParameterError
from src.geometry.codespace import parse_code, parse_subspace_code


def run_cli(*argv):
    """Run main() and return (exit code, stdout text)."""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main([str(a) for a in argv])
    return code, buffer.getvalue()


def first_record(text):
    return json.loads(text.splitlines()[0])


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

def test_render_rational():
    assert render_rational(Fraction(1, 3)) == {
        'num': '1', 'den': '3', 'approx': '0.33333333333333333',
    }
    assert render_rational(Fraction(-2, 7))['num'] == '-2'
    assert render_rational(None) is None
    assert decimal_string(Fraction(1, 2)) == '0.5'
    print("✓ rational rendering")


def test_record_rerender_is_byte_identical():
    record = OutputRecord(
        command='bounds', metric='hamming', q=2, n=3, k=None, d=2, S=3,
        ambient_size=8, ball_size=4,
        lower=Fraction(0), upper=Fraction(8, 35),
        lower_raw=Fraction(-2, 7), upper_raw=Fraction(8, 35),
        gamma=ExactPower(2, 2, 2),
    )
    line = record.to_json()
    assert OutputRecord.from_json(line).to_json() == line
    data = json.loads(line)
    assert list(data)[:7] == ['command', 'metric', 'q', 'n', 'k', 'd', 'S']
    assert data['ambient_size'] == '8'
    assert data['exact_density'] is None
    assert data['gamma']['expr'] == '2^1'
    print("✓ records re-render byte for byte")


def test_csv_rendering():
    record = OutputRecord(command='bounds', metric='hamming', q=2, n=2, k=None, d=2, S=2,
                          lower=Fraction(1, 3), upper=Fraction(1, 3), sandwich_ok=True)
    text = render_records([record], 'csv')
    header, row = text.splitlines()
    assert header.split(',') == csv_columns()
    assert 'lower_num' in csv_columns()
    values = dict(zip(csv_columns(), row.split(',')))
    assert values['lower_num'] == '1'
    assert values['lower_den'] == '3'
    assert values['sandwich_ok'] == 'true'
    assert values['k'] == ''
    with pytest.raises(ValueError):
        render_records([record], 'xml')
    print("✓ CSV columns")


def test_write_atomically():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / 'out.jsonl'
        write_atomically(path, 'a\n')
        write_atomically(path, 'b\n')
        assert path.read_text() == 'b\n'
        assert [p.name for p in Path(tmp).iterdir()] == ['out.jsonl']
        with pytest.raises(OSError):
            write_atomically(Path(tmp) / 'missing' / 'x', 'c')
    print("✓ atomic writes")


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def test_parse_s_rule():
    assert parse_s_rule('const:5').constant == 5
    assert parse_s_rule('gamma:1/2').exponent == Fraction(1, 2)
    assert parse_s_rule('list:3,4,5').values == (3, 4, 5)
    assert parse_s_rule('spread').kind == 'spread'
    assert parse_s_rule('gamma:3/2').render() == 'gamma:3/2'
    for bad in ('const:x', 'gamma:-1', 'list:', 'spread:2', 'other:1'):
        with pytest.raises(ParameterError):
            parse_s_rule(bad)
    assert parse_q_list('2,3, 4') == [2, 3, 4]
    with pytest.raises(ParameterError):
        parse_q_list('2,a')
    print("✓ S-rule parsing")


def test_sweep_spec_validation():
    with pytest.raises(ParameterError):
        SweepSpec('injection', 4, 2, [2, 6], parse_s_rule('const:2'), k=2)
    with pytest.raises(ParameterError):
        SweepSpec('hamming', 4, 2, [2, 3], parse_s_rule('list:2'))
    with pytest.raises(ParameterError):
        SweepSpec('hamming', 4, 2, [2, 3], parse_s_rule('spread'))
    with pytest.raises(ParameterError):
        SweepSpec('injection', 4, 2, [2, 3], parse_s_rule('spread'))
    print("✓ sweep validation")


def test_regimes():
    assert regime_from_exponents(Fraction(0), Fraction(3, 2)) == REGIME_BELOW
    assert regime_from_exponents(Fraction(2), Fraction(3, 2)) == 'above-threshold'
    assert regime_from_exponents(Fraction(1), Fraction(1)) == REGIME_UNDETERMINED
    assert regime_from_exponents(Fraction(1), None) == REGIME_UNDETERMINED
    print("✓ regime classification")


def test_run_sweep_gamma_rule():
    spec = SweepSpec('hamming', 4, 2, [2, 4, 16], parse_s_rule('gamma:1/2'))
    records, trend = run_sweep(spec)
    # gamma_q = q^(3/2), S_q = ceil(q^(3/4))
    assert [r.S for r in records] == [2, 3, 8]
    assert all(r.regime == REGIME_BELOW for r in records)
    assert all(r.s_rule == 'gamma:1/2' for r in records)
    assert trend.first_q_upper_below is None
    print("✓ gamma sweep")


def test_run_sweep_spread_rule():
    spec = SweepSpec('injection', 4, 2, [2, 3, 4, 5, 7, 8, 9, 11, 13],
                     parse_s_rule('spread'), k=2)
    records, trend = run_sweep(spec)
    assert [r.S for r in records][:3] == [5, 10, 17]
    assert all(r.regime == 'above-threshold' for r in records)
    assert trend.first_q_upper_below is not None
    assert trend.first_q_upper_below <= 13
    assert trend.to_dict()['first_q_lower_above_0.99'] is None
    print("✓ spread sweep: upper bound below 0.01 by q = 13")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def test_cli_bounds():
    code, out = run_cli('bounds', '-q', 2, '-n', 3, '-d', 2, '-S', 3)
    assert code == 0
    data = first_record(out)
    assert data['command'] == 'bounds'
    assert (data['lower_raw']['num'], data['lower_raw']['den']) == ('-2', '7')
    assert data['lower']['num'] == '0'
    assert (data['upper']['num'], data['upper']['den']) == ('8', '35')
    assert data['ball_size'] == '4'
    assert data['regime'] == REGIME_UNDETERMINED
    print("✓ bounds command")


def test_cli_bounds_injection_dualized():
    code, out = run_cli('bounds', '--metric', 'injection', '-q', 2, '-n', 5, '-k', 3, '-d', 2, '-S', 2)
    assert code == 0
    data = first_record(out)
    assert data['k'] == 3
    assert data['ambient_size'] == '155'
    print("✓ injection bounds keep the requested k")


def test_cli_exact():
    code, out = run_cli('exact', '--workers', 1, '-q', 2, '-n', 3, '-d', 2, '-S', 3)
    assert code == 0
    data = first_record(out)
    assert (data['exact_density']['num'], data['exact_density']['den']) == ('1', '7')
    assert data['sandwich_ok'] is True
    code, out = run_cli('exact', '--workers', 1, '--metric', 'injection',
                        '-q', 2, '-n', 4, '-k', 2, '-d', 2, '-S', 3)
    data = first_record(out)
    assert (data['exact_density']['num'], data['exact_density']['den']) == ('16', '187')
    assert (data['upper']['num'], data['upper']['den']) == ('248', '1139')
    print("✓ exact command")


def test_cli_estimate_workers_identical():
    argv = ('estimate', '-q', 2, '-n', 3, '-d', 2, '-S', 3, '--trials', 3000, '--seed', 17)
    code_one, out_one = run_cli(*argv, '--workers', 1)
    code_many, out_many = run_cli(*argv, '--workers', 2)
    assert code_one == code_many == 0
    assert out_one == out_many
    data = first_record(out_one)
    assert data['trials'] == 3000
    assert data['seed'] == 17
    assert (data['confidence_level']['num'], data['confidence_level']['den']) == ('99', '100')
    print("✓ estimate output independent of --workers")


def test_cli_estimate_dump():
    with tempfile.TemporaryDirectory() as tmp:
        dump = Path(tmp) / 'code.txt'
        code, _ = run_cli('estimate', '--workers', 1, '--metric', 'injection',
                          '-q', 2, '-n', 4, '-k', 2, '-d', 2, '-S', 4,
                          '--trials', 10, '--seed', 5, '--dump', dump)
        assert code == 0
        parsed = parse_subspace_code(dump.read_text(), 2)
        assert len(parsed) == 4
        dump_h = Path(tmp) / 'hamming.txt'
        run_cli('estimate', '--workers', 1, '-q', 3, '-n', 3, '-d', 2, '-S', 5,
                '--trials', 10, '--dump', dump_h)
        assert len(parse_code(dump_h.read_text(), 3)) == 5
    print("✓ --dump writes the first sampled code")


def test_cli_sweep_out_and_summary():
    with tempfile.TemporaryDirectory() as tmp:
        out_path = Path(tmp) / 'sweep.csv'
        code, stdout = run_cli('sweep', '-n', 4, '-d', 2, '--q-list', '2,3,5',
                               '--s-rule', 'const:2', '--format', 'csv', '--out', out_path)
        assert code == 0
        summary = json.loads(stdout)
        assert set(summary) == {'first_q_lower_above_0.99', 'first_q_upper_below_0.01'}
        lines = out_path.read_text().splitlines()
        assert len(lines) == 4
        assert lines[0].startswith('command,metric,q,n,k,d,S,s_rule')
    print("✓ sweep writes records and prints the trend summary")


def test_cli_verify():
    code, out = run_cli('verify', 'claim-a')
    assert code == 0
    assert out.splitlines()
    assert all(line.startswith('[ok]') for line in out.splitlines())
    print("✓ verify command")


def test_cli_exit_codes():
    assert run_cli('bounds', '--metric', 'injection', '-q', 6, '-n', 4, '-k', 2, '-d', 2, '-S', 2)[0] == 2
    assert run_cli('bounds', '-q', 2, '-n', 3, '-k', 1, '-d', 2, '-S', 2)[0] == 2
    assert run_cli('bounds', '-q', 2, '-n', 3, '-d', 2, '-S', 9)[0] == 2
    assert run_cli('exact', '--work-limit', 10, '-q', 2, '-n', 4, '-d', 2, '-S', 4)[0] == 3
    assert run_cli('estimate', '-q', 2, '-n', 3, '-d', 2, '-S', 3, '--trials', 0)[0] == 2
    assert run_cli('nonsense')[0] == 2
    # spread sizes depend on k
    assert run_cli('sweep', '--metric', 'injection', '-n', 4, '-d', 2,
                   '--q-list', '2,3', '--s-rule', 'spread')[0] == 2
    assert run_cli('bounds', '--metric', 'injection', '-q', 2, '-n', 2, '-k', 1, '-d', 1, '-S', 3)[0] == 0
    print("✓ exit codes")


if __name__ == '__main__':
    print("=" * 60)
    print("Command-Line Tests")
    print("=" * 60)
    test_render_rational()
    test_record_rerender_is_byte_identical()
    test_csv_rendering()
    test_write_atomically()
    test_parse_s_rule()
    test_sweep_spec_validation()
    test_regimes()
    test_run_sweep_gamma_rule()
    test_run_sweep_spread_rule()
    test_cli_bounds()
    test_cli_bounds_injection_dualized()
    test_cli_exact()
    test_cli_estimate_workers_identical()
    test_cli_estimate_dump()
    test_cli_sweep_out_and_summary()
    test_cli_verify()
    test_cli_exit_codes()
    print("=" * 60)
    print("✅ All tests PASSED!")
