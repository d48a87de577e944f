import math

import numpy as np
import pytest

from relaycast import (Alphabet, EnumerationCapError, InvalidMatrixError,
                       InvalidParameterError, N, StreamFormatError, capacity,
                       characteristic_roots, count_words, enumerate_words,
                       format_matrix, format_stream, is_admissible,
                       make_constraint, matrix_power, parse_stream,
                       power_graph, spectral_radius)
from helpers import brute_force_words, scan_admissible

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


# ---------------------------------------------------------------------------
# alphabet and streams

def test_alphabet_size_and_symbols():
    a = Alphabet(3)
    assert a.size == 4
    assert list(a.symbols()) == [0, 1, 2, N]


@pytest.mark.parametrize("q", [0, -1, "2", 1.5])
def test_alphabet_rejects_bad_q(q):
    with pytest.raises(InvalidParameterError):
        Alphabet(q)


def test_stream_roundtrip():
    word = (0, N, 1, N, N)
    assert parse_stream(format_stream(word)) == word
    assert format_stream(word) == "0 N 1 N N"


def test_stream_parse_errors():
    with pytest.raises(StreamFormatError):
        parse_stream("0 X 1")
    with pytest.raises(StreamFormatError):
        parse_stream("0 -1")
    with pytest.raises(StreamFormatError):
        parse_stream("3 N", q=3)


# ---------------------------------------------------------------------------
# admissibility

def test_admissible_examples():
    assert is_admissible(parse_stream("1 N 1 N N"))
    assert not is_admissible(parse_stream("1 1"))
    assert is_admissible(parse_stream("2 N 0 N N 1"))
    assert is_admissible(())


@pytest.mark.parametrize("q,n", [(1, 6), (2, 5)])
def test_admissible_matches_scan_oracle(q, n):
    from itertools import product
    symbols = list(range(q)) + [N]
    for word in product(symbols, repeat=n):
        assert is_admissible(word) == scan_admissible(word)


# ---------------------------------------------------------------------------
# graph presentation

def test_make_constraint_adjacency():
    assert make_constraint(1).adjacency == ((1, 1), (1, 0))
    assert make_constraint(6).adjacency == ((1, 6), (1, 0))


def test_make_constraint_structure():
    g = make_constraint(2)
    assert g.states == ("OFF", "ON")
    labels = {(e.src, e.dst, e.word) for e in g.edges}
    assert labels == {(0, 0, (N,)), (0, 1, (0,)), (0, 1, (1,)), (1, 0, (N,))}


@pytest.mark.parametrize("q", [0, -3])
def test_make_constraint_rejects_degenerate(q):
    with pytest.raises(InvalidParameterError):
        make_constraint(q)


def _path_words(g, length):
    """All label words of length-`length` paths, starting anywhere."""
    by_src = {}
    for e in g.edges:
        by_src.setdefault(e.src, []).append(e)
    words = set()
    frontier = [((), s) for s in range(len(g.states))]
    for _ in range(length):
        frontier = [(w + e.word, e.dst)
                    for w, s in frontier for e in by_src.get(s, [])]
    return {w for w, _ in frontier}


@pytest.mark.parametrize("q", [1, 2])
def test_presentation_lossless_at_finite_scale(q):
    g = make_constraint(q)
    for n in range(1, 11):
        path_words = _path_words(g, n)
        assert all(is_admissible(w) for w in path_words)
        assert path_words == set(enumerate_words(q, n, cap=10**8))


# ---------------------------------------------------------------------------
# counting

def test_fibonacci_sequence_q1():
    assert [count_words(1, n) for n in range(6)] == [1, 2, 3, 5, 8, 13]


def test_counts_match_derived_values():
    assert count_words(2, 2) == 5   # 9 strings minus the 4 data-data pairs
    assert count_words(6, 2) == 13  # 49 - 36


@pytest.mark.parametrize("q", [1, 2, 3])
def test_count_matches_bruteforce(q):
    for n in range(0, 9):
        expected = brute_force_words(q, n)
        assert count_words(q, n) == len(expected)
        assert enumerate_words(q, n, cap=10**8) == sorted(
            expected, key=lambda w: tuple((s is N, s if s is not N else 0)
                                          for s in w))


@pytest.mark.parametrize("q", range(1, 9))
def test_count_recurrence_exact(q):
    values = [count_words(q, n) for n in range(61)]
    for n in range(2, 61):
        assert values[n] == values[n - 1] + q * values[n - 2]


def test_count_is_exact_at_large_n():
    # q=6 leaves 64-bit range near n=40; exactness must survive n=200
    value = count_words(6, 200)
    assert value > 3**199
    assert value == count_words(6, 199) + 6 * count_words(6, 198)


def test_enumerate_examples():
    assert enumerate_words(1, 2) == [(0, N), (N, 0), (N, N)]
    assert enumerate_words(1, 0) == [()]


def test_enumerate_cap():
    with pytest.raises(EnumerationCapError):
        enumerate_words(2, 15, cap=10**6)  # 3**15 > 10**6


# ---------------------------------------------------------------------------
# spectral quantities

def test_spectral_radius_closed_form_family():
    assert spectral_radius([[1, 1], [1, 0]]) == pytest.approx(GOLDEN_RATIO, abs=1e-9)
    assert spectral_radius([[1, 6], [1, 0]]) == pytest.approx(3.0, abs=1e-9)
    assert spectral_radius([[1, 0], [0, 1]]) == pytest.approx(1.0, abs=1e-12)
    for q in range(1, 9):
        expected = (1 + math.sqrt(1 + 4 * q)) / 2
        assert spectral_radius([[1, q], [1, 0]]) == pytest.approx(expected, abs=1e-9)


def test_spectral_radius_power_iteration_vs_numpy():
    rng = np.random.default_rng(7)
    for size in (3, 4, 5, 6):
        for _ in range(5):
            m = rng.integers(0, 4, size=(size, size))
            np.fill_diagonal(m, m.diagonal() + 1)
            for i in range(size):  # a cycle keeps the matrix irreducible
                m[i][(i + 1) % size] += 1
            matrix = m.tolist()
            expected = max(abs(np.linalg.eigvals(np.array(matrix))))
            assert spectral_radius(matrix) == pytest.approx(expected, abs=1e-9)


def test_spectral_radius_rejects_bad_matrices():
    with pytest.raises(InvalidMatrixError):
        spectral_radius([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(InvalidMatrixError):
        spectral_radius([[1, -1], [1, 0]])
    with pytest.raises(InvalidMatrixError):
        spectral_radius([])


def test_capacity_values():
    assert capacity(1) == pytest.approx(0.694242, abs=1e-6)
    assert capacity(1) == pytest.approx(math.log2(GOLDEN_RATIO), abs=1e-12)
    assert capacity(6) == pytest.approx(math.log2(3), abs=1e-12)
    assert abs(capacity(2) - 1.0) <= 1e-12


def test_capacity_rejects_q0():
    with pytest.raises(InvalidParameterError):
        capacity(0)


@pytest.mark.parametrize("q", range(1, 9))
def test_capacity_agrees_with_spectral_radius(q):
    adjacency = make_constraint(q).adjacency
    assert abs(capacity(q) - math.log2(spectral_radius(adjacency))) <= 1e-9


def test_characteristic_roots():
    plus, minus = characteristic_roots(1)
    assert plus == pytest.approx(GOLDEN_RATIO, abs=1e-9)
    assert minus == pytest.approx(1 - GOLDEN_RATIO, abs=1e-9)
    assert characteristic_roots(6) == pytest.approx((3.0, -2.0), abs=1e-9)
    assert characteristic_roots(2) == pytest.approx((2.0, -1.0), abs=1e-9)
    for q in range(1, 9):
        plus, minus = characteristic_roots(q)
        assert plus + minus == pytest.approx(1.0, abs=1e-9)
        assert plus * minus == pytest.approx(-q, abs=1e-9)


@pytest.mark.parametrize("q", [1, 2, 6])
def test_count_growth_approaches_capacity(q):
    gap30 = abs(math.log2(count_words(q, 30)) / 30 - capacity(q))
    gap60 = abs(math.log2(count_words(q, 60)) / 60 - capacity(q))
    assert gap60 < gap30 <= 0.03
    if q in (1, 2):
        assert gap30 <= 0.02


# ---------------------------------------------------------------------------
# power graphs

def test_power_graph_examples():
    assert power_graph(make_constraint(1), 3).adjacency == ((3, 2), (2, 1))
    assert power_graph(make_constraint(6), 2).adjacency == ((7, 6), (1, 6))


def test_power_graph_identity():
    g = make_constraint(2)
    assert power_graph(g, 1) is g


@pytest.mark.parametrize("q", [1, 2, 3])
def test_power_graph_adjacency_is_matrix_power(q):
    g = make_constraint(q)
    base = [list(row) for row in g.adjacency]
    for n in range(2, 6):
        powered = power_graph(g, n)
        assert [list(row) for row in powered.adjacency] == matrix_power(base, n)
        assert all(len(e.word) == n for e in powered.edges)
        assert all(is_admissible(e.word) for e in powered.edges)
        # deterministic base presentation: a path is fixed by (src, label)
        keys = [(e.src, e.word) for e in powered.edges]
        assert len(keys) == len(set(keys))


def test_format_matrix():
    assert format_matrix([[1, 2], [3, 4]]) == "1 2\n3 4"
