#!/usr/bin/env python3
"""
Tests for the finite-geometry layer: row reduction, vectors, subspaces,
distances, enumeration, sampling, clique counting and text formats.
"""

import sys
from collections import Counter
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import chisquare

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from src.core.errors import NotPrimePowerError, ParameterError, WorkLimitExceeded
from src.counting.combinat import q_binom
from src.geometry.codespace import (
    Code, Subspace, SubspaceCode, Vector, code_min_distance, count_cliques,
    count_partial_spreads, enumerate_grassmannian, enumerate_vectors,
    format_code, format_subspace, format_vector, hamming_distance,
    injection_distance, is_partial_spread, parse_code, parse_subspace,
    parse_subspace_code, parse_vector, rref, sample_code_uniform,
    sample_subspace_code_uniform, sample_subspace_uniform,
    subspace_code_min_distance, subspace_from_rows,
)
from src.geometry.finite_field import get_field, pack_digits, unpack_digits


def test_pack_digits():
    assert pack_digits([0, 1, 1, 0], 2) == 6
    assert pack_digits([2, 1], 3) == 7
    assert unpack_digits(7, 3, 2) == (2, 1)
    assert unpack_digits(6, 2, 4) == (0, 1, 1, 0)
    print("✓ packed digits are big-endian")


def test_rref_binary():
    assert rref(2, [[1, 1, 0, 0], [1, 0, 1, 0]]) == [(1, 0, 1, 0), (0, 1, 1, 0)]
    assert rref(2, [[1, 1, 0], [1, 1, 0]]) == [(1, 1, 0)]
    assert rref(2, [[0, 0, 0]]) == []
    print("✓ binary RREF")


def test_rref_odd_and_extension_fields():
    # over F_3: (2,1) scales to (1,2)
    assert rref(3, [[2, 1]]) == [(1, 2)]
    assert rref(3, [[1, 1, 0], [2, 2, 0]]) == [(1, 1, 0)]
    assert get_field(3).rank([pack_digits([1, 2, 0], 3), pack_digits([0, 1, 1], 3)], 3) == 2
    # over F_4 every non-zero multiple of a row spans the same line
    lines = {subspace_from_rows(4, [[a, a]]) for a in (1, 2, 3)}
    assert len(lines) == 1
    with pytest.raises(NotPrimePowerError):
        get_field(6)
    print("✓ RREF over F_3 and F_4")


def test_vector_and_hamming_distance():
    x = Vector.from_coordinates(2, [0, 1, 1, 0])
    y = Vector.from_coordinates(2, [1, 1, 0, 0])
    assert x.index == 6
    assert hamming_distance(x, y) == 2
    a = Vector.from_coordinates(3, [0, 1, 2])
    b = Vector.from_coordinates(3, [0, 2, 2])
    assert hamming_distance(a, b) == 1
    with pytest.raises(ParameterError):
        hamming_distance(x, a)
    with pytest.raises(ParameterError):
        Vector(2, 3, 8)
    with pytest.raises(ParameterError):
        Vector.from_coordinates(2, [0, 2])
    print("✓ vectors and Hamming distance")


def test_code_min_distance():
    code = Code.of(Vector.from_coordinates(2, c) for c in ([0, 0, 0], [0, 1, 1], [1, 1, 0]))
    assert code_min_distance(code) == 2
    assert len(code) == 3
    with pytest.raises(ParameterError):
        Code.of([Vector(2, 3, 0)])
    print("✓ code minimum distance")


def test_subspace_canonical_form():
    X = subspace_from_rows(2, [[1, 1, 0, 0], [1, 0, 1, 0]])
    Y = subspace_from_rows(2, [[0, 1, 1, 0], [1, 1, 0, 0]])
    assert X == Y
    assert X.k == 2
    assert X.pivots == (0, 1)
    assert X.basis == ((1, 0, 1, 0), (0, 1, 1, 0))
    with pytest.raises(ParameterError):
        subspace_from_rows(2, [[1, 1, 0], [1, 1, 0]])
    with pytest.raises(ParameterError):
        Subspace(2, 3, (pack_digits([1, 1, 0], 2), pack_digits([1, 0, 0], 2)))
    print("✓ subspaces are canonical")


def test_injection_distance():
    X = subspace_from_rows(2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    Y = subspace_from_rows(2, [[0, 0, 1, 0], [0, 0, 0, 1]])
    Z = subspace_from_rows(2, [[1, 0, 0, 0], [0, 0, 1, 0]])
    assert injection_distance(X, X) == 0
    assert injection_distance(X, Y) == 2
    assert injection_distance(X, Z) == 1
    code = SubspaceCode.of([X, Y])
    assert subspace_code_min_distance(code) == 2
    assert is_partial_spread(code)
    assert not is_partial_spread(SubspaceCode.of([X, Y, Z]))
    # over F_3 as well
    A = subspace_from_rows(3, [[1, 0, 2, 0], [0, 1, 0, 1]])
    B = subspace_from_rows(3, [[1, 0, 2, 0], [0, 0, 1, 1]])
    assert injection_distance(A, B) == 1
    print("✓ injection distance")


def test_injection_distance_is_a_metric():
    """Symmetry, identity and the triangle inequality over all of G_2(2,4)"""
    subspaces = list(enumerate_grassmannian(2, 2, 4))
    size = len(subspaces)
    dist = np.zeros((size, size), dtype=np.int64)
    for i, X in enumerate(subspaces):
        for j, Y in enumerate(subspaces):
            dist[i, j] = injection_distance(X, Y)
    assert (dist == dist.T).all()
    assert (np.diag(dist) == 0).all()
    assert (dist + np.eye(size, dtype=np.int64) > 0).all()
    # dist[i, k] <= dist[i, j] + dist[j, k] for all 35^3 triples
    assert (dist[:, None, :] <= dist[:, :, None] + dist[None, :, :]).all()
    print("✓ injection distance is a metric on G_2(2,4)")


def test_rref_is_idempotent():
    for q, k, n in ((2, 2, 4), (2, 1, 3), (3, 2, 4)):
        for X in enumerate_grassmannian(q, k, n):
            assert subspace_from_rows(q, X.basis) == X
            assert rref(q, X.basis) == list(X.basis)
    print("✓ reducing a canonical basis changes nothing")


def test_enumeration_counts():
    assert len(list(enumerate_vectors(3, 3))) == 27
    indices = [x.index for x in enumerate_vectors(2, 4)]
    assert indices == sorted(indices)
    for q, k, n in ((2, 2, 4), (2, 1, 4), (2, 2, 5), (3, 2, 4), (4, 1, 3)):
        subspaces = list(enumerate_grassmannian(q, k, n))
        assert len(subspaces) == q_binom(n, k, q)
        assert len(set(subspaces)) == len(subspaces)
    with pytest.raises(WorkLimitExceeded):
        list(enumerate_vectors(2, 10, limit=100))
    with pytest.raises(WorkLimitExceeded):
        list(enumerate_grassmannian(2, 2, 6, limit=100))
    print("✓ enumeration covers every point exactly once")


def test_sample_code_uniform():
    rng = np.random.default_rng(7)
    counts = Counter()
    for _ in range(6000):
        code = sample_code_uniform(2, 2, 2, rng)
        assert len(code) == 2
        counts[tuple(x.index for x in code.sorted_elements())] += 1
    # six 2-subsets of F_2^2, each near 1000
    assert len(counts) == 6
    assert all(800 < c < 1200 for c in counts.values())
    with pytest.raises(ParameterError):
        sample_code_uniform(2, 2, 5, rng)
    print("✓ uniform code sampling")


def test_sample_subspace_uniform():
    rng = np.random.default_rng(11)
    counts = Counter(sample_subspace_uniform(2, 1, 3, rng) for _ in range(7000))
    # seven points of PG(2,2), each near 1000
    assert len(counts) == 7
    assert all(800 < c < 1200 for c in counts.values())
    code = sample_subspace_code_uniform(3, 2, 4, 5, rng)
    assert len(code) == 5
    assert all(X.k == 2 for X in code.elements)
    with pytest.raises(NotPrimePowerError):
        sample_subspace_code_uniform(6, 1, 3, 2, rng)
    with pytest.raises(ParameterError):
        sample_subspace_code_uniform(2, 2, 4, 36, rng)
    print("✓ uniform subspace sampling")


def test_sample_subspace_uniform_chi_square():
    rng = np.random.default_rng(41)
    cells = list(enumerate_grassmannian(2, 2, 4))
    counts = Counter(sample_subspace_uniform(2, 2, 4, rng) for _ in range(35 * 400))
    assert set(counts) == set(cells)
    _, p_value = chisquare([counts[X] for X in cells])
    assert p_value > 1e-4, p_value
    print("✓ uniform on the 35 planes of F_2^4")


def test_sample_subspace_code_uniform_chi_square():
    """The three 2-subsets of the points of G_2(1,2) are equally likely"""
    rng = np.random.default_rng(43)
    counts = Counter(sample_subspace_code_uniform(2, 1, 2, 2, rng) for _ in range(6000))
    assert len(counts) == 3
    _, p_value = chisquare(list(counts.values()))
    assert p_value > 1e-4, p_value
    print("✓ uniform subspace codes")


def test_count_cliques():
    # K4 has 4 triangles and 1 four-clique
    k4 = [0b1110, 0b1101, 0b1011, 0b0111]
    assert count_cliques(k4, 1) == 4
    assert count_cliques(k4, 2) == 6
    assert count_cliques(k4, 3) == 4
    assert count_cliques(k4, 4) == 1
    assert count_cliques(k4, 5) == 0
    assert count_cliques(k4, 3, first_vertices=[0]) == 3
    # path 0-1-2 has no triangle
    path = [0b010, 0b101, 0b010]
    assert count_cliques(path, 2) == 2
    assert count_cliques(path, 3) == 0
    with pytest.raises(ParameterError):
        count_cliques(k4, 0)
    print("✓ clique counting")


def test_partial_spreads():
    assert count_partial_spreads(2, 2, 4, 5) == 56
    assert count_partial_spreads(2, 2, 4, 6) == 0
    assert count_partial_spreads(2, 2, 4, 2) == 280
    with pytest.raises(ParameterError):
        count_partial_spreads(2, 3, 4, 2)
    print("✓ 56 spreads of G_2(2,4)")


def test_text_formats():
    x = parse_vector("0110", 2)
    assert x == Vector(2, 4, 6)
    assert format_vector(x) == "0110"
    big = Vector.from_coordinates(37, [36, 0, 5])
    assert format_vector(big) == "36.0.5"
    assert parse_vector("36.0.5", 37) == big
    X = parse_subspace("1100;1010", 2)
    assert format_subspace(X) == "1010;0110"
    code = parse_code("011\n000\n110\n", 2)
    assert format_code(code) == "000\n011\n110"
    subspace_code = parse_subspace_code("1000;0100\n0010;0001", 2)
    assert format_code(subspace_code) == "0010;0001\n1000;0100"
    with pytest.raises(ParameterError):
        parse_vector("012", 2)
    with pytest.raises(ParameterError):
        parse_subspace("110;110", 2)
    print("✓ canonical text formats")


if __name__ == '__main__':
    print("=" * 60)
    print("Finite Geometry Tests")
    print("=" * 60)
    test_pack_digits()
    test_rref_binary()
    test_rref_odd_and_extension_fields()
    test_vector_and_hamming_distance()
    test_code_min_distance()
    test_subspace_canonical_form()
    test_injection_distance()
    test_injection_distance_is_a_metric()
    test_rref_is_idempotent()
    test_enumeration_counts()
    test_sample_code_uniform()
    test_sample_subspace_uniform()
    test_sample_subspace_uniform_chi_square()
    test_sample_subspace_code_uniform_chi_square()
    test_count_cliques()
    test_partial_spreads()
    test_text_formats()
    print("=" * 60)
    print("✅ All tests PASSED!")
