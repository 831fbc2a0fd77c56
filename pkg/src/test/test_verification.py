#!/usr/bin/env python3
"""
Tests for the brute-force verification suites.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from src.core.errors import ParameterError, WorkLimitExceeded
from src.estimation.verification import (
    VerificationReport, build_pair_code_graph, make_report, run_suite,
    verify_ball_sizes_for, verify_claim_a, verify_injection_claims,
    verify_lemmas, verify_w_formula,
)
from src.metrics import get_metric


def _all_match(reports):
    failing = [r.describe() for r in reports if not r.match]
    assert not failing, failing
    assert reports


def test_make_report():
    assert make_report("x", 3, 3).match
    assert not make_report("x", 3, 4).match
    assert make_report("x", 5, 4, '<=').match
    assert not make_report("x", 5, 6, '<=').match
    report = make_report("x", 5, 6, '>=')
    assert report.match
    assert report.describe() == "[ok] x: brute force 6 >= formula 5"
    assert VerificationReport("y", 1, 2, False).describe().startswith("[MISMATCH]")
    print("✓ reports")


def test_claim_a_f2_3():
    reports = verify_claim_a(2, 3, 2)
    _all_match(reports)
    assert [r.brute_force for r in reports] == [12, 84, 48, 12]
    print("✓ F_2^3 pair classes [84, 48, 12]")


def test_claim_a_q3():
    _all_match(verify_claim_a(3, 3, 3))
    print("✓ F_3^3, d = 3 pair classes")


def test_injection_claims():
    reports = verify_injection_claims(2, 4, 2, 2)
    _all_match(reports)
    assert reports[0].brute_force == 315
    assert reports[2].brute_force == 10710
    print("✓ G_2(2,4) pair classes")


def test_w_formula():
    reports = verify_w_formula(2, 3, 2, 4)
    _all_match(reports)
    w = {r.quantity.rsplit(' ', 1)[1]: r.brute_force for r in reports}
    assert w == {'W_0': 1, 'W_1': 5, 'W_2': 15}
    reports = verify_w_formula(2, 3, 2, 3)
    _all_match(reports)
    assert reports[0].brute_force == 0
    print("✓ W_l formula")


def test_w_formula_work_limit():
    with pytest.raises(WorkLimitExceeded):
        verify_w_formula(2, 4, 2, 4, work_limit=100)
    with pytest.raises(ParameterError):
        verify_w_formula(2, 3, 1, 3)
    print("✓ W formula budget")


def test_ball_sizes():
    rng = np.random.default_rng(0)
    metric = get_metric('injection')
    params = metric.make_params(2, 4, 1, 2, 2)
    reports = verify_ball_sizes_for(metric, params, 2, rng)
    _all_match(reports)
    assert len(reports) == 2 * 3  # radii 0..k around two centers
    assert [r.brute_force for r in reports[:3]] == [1, 19, 35]
    metric = get_metric('hamming')
    _all_match(verify_ball_sizes_for(metric, metric.make_params(3, 3, 1, 2), 3, rng))
    print("✓ ball sizes")


def test_pair_code_graph():
    metric = get_metric('hamming')
    params = metric.make_params(2, 3, 2, 3)
    graph = build_pair_code_graph(metric, params)
    assert len(graph.pairs) == 12
    assert graph.right_count == 56
    assert graph.is_left_regular()
    assert set(graph.degrees) == {6}
    assert graph.non_isolated_count == 48
    print("✓ materialized pair/code graph")


def test_lemmas():
    metric = get_metric('hamming')
    _all_match(verify_lemmas(metric, metric.make_params(2, 3, 2, 4)))
    metric = get_metric('injection')
    _all_match(verify_lemmas(metric, metric.make_params(2, 4, 2, 3, 2)))
    print("✓ engine bounds hold on materialized graphs")


def test_run_suite():
    _all_match(run_suite('claim-a'))
    _all_match(run_suite('w-formula'))
    with pytest.raises(ParameterError):
        run_suite('nope')
    print("✓ built-in suites pass")


if __name__ == '__main__':
    print("=" * 60)
    print("Verification Suite Tests")
    print("=" * 60)
    test_make_report()
    test_claim_a_f2_3()
    test_claim_a_q3()
    test_injection_claims()
    test_w_formula()
    test_w_formula_work_limit()
    test_ball_sizes()
    test_pair_code_graph()
    test_lemmas()
    test_run_suite()
    print("=" * 60)
    print("✅ All tests PASSED!")
