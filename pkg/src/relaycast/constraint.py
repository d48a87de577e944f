"""The no-adjacent-data constraint as a shift of finite type.

A relay that forwards what it heard one slot ago loses data exactly when
its parent transmits in two consecutive slots, so the source must emit
streams in which no two consecutive symbols are data symbols. This
module represents that constraint by its two-state graph presentation

    state 0 (OFF, "may send anything")   state 1 (ON, "just sent data")

with edges ``0 -N-> 0``, ``0 -k-> 1`` for each data symbol ``k``, and
``1 -N-> 0``; counts admissible words; and computes the growth rate of
the count (the capacity, in bits per symbol) from the spectral radius of
the adjacency matrix.

Counting uses exact integer arithmetic throughout: for q=6 the word
count grows like 3**n and leaves 64-bit range near n=40.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

from .errors import (EnumerationCapError, InvalidMatrixError,
                     InvalidParameterError)
from .symbols import N, Word, is_data, word_key

DEFAULT_ENUMERATION_CAP = 10**7

Matrix = Sequence[Sequence[int]]


def _check_q(q):
    if not isinstance(q, int) or isinstance(q, bool) or q < 1:
        raise InvalidParameterError(
            f"need a positive number of data symbols, got q={q!r}")


@dataclass(frozen=True)
class Edge:
    """A labeled edge; ``word`` is the label (one symbol per slot)."""

    src: int
    dst: int
    word: Word


@dataclass(frozen=True)
class ConstraintGraph:
    """Labeled directed graph presenting the constraint or a power of it.

    Immutable; every bi-infinite edge-label sequence is admissible and
    every admissible stream is the label sequence of some path.
    """

    q: int
    states: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Entry [i][j] counts the edges from state i to state j."""
        size = len(self.states)
        counts = [[0] * size for _ in range(size)]
        for e in self.edges:
            counts[e.src][e.dst] += 1
        return tuple(tuple(row) for row in counts)

    def out_edges(self, state: int) -> List[Edge]:
        return [e for e in self.edges if e.src == state]


def _canonical(edges) -> Tuple[Edge, ...]:
    return tuple(sorted(edges, key=lambda e: (e.src, word_key(e.word), e.dst)))


def make_constraint(q: int) -> ConstraintGraph:
    """Two-state presentation with adjacency ``[[1, q], [1, 0]]``."""
    _check_q(q)
    edges = [Edge(0, 1, (k,)) for k in range(q)]
    edges.append(Edge(0, 0, (N,)))
    edges.append(Edge(1, 0, (N,)))
    return ConstraintGraph(q=q, states=("OFF", "ON"), edges=_canonical(edges))


def power_graph(g: ConstraintGraph, n: int) -> ConstraintGraph:
    """Presentation whose edges are the length-n paths of ``g``.

    Labels concatenate along the path; the adjacency matrix is the n-th
    power of ``g``'s. ``n=1`` returns ``g`` itself.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidParameterError(f"power must be a positive integer, got {n!r}")
    if n == 1:
        return g
    by_src: List[List[Edge]] = [[] for _ in g.states]
    for e in g.edges:
        by_src[e.src].append(e)
    paths = list(g.edges)
    for _ in range(n - 1):
        paths = [Edge(e.src, f.dst, e.word + f.word)
                 for e in paths for f in by_src[e.dst]]
    return ConstraintGraph(q=g.q, states=g.states, edges=_canonical(paths))


def count_words(q: int, n: int) -> int:
    """Number of admissible length-n words, as an exact integer.

    Satisfies the recurrence ``N(n) = N(n-1) + q*N(n-2)`` with seeds
    ``N(0) = 1`` (the empty word) and ``N(1) = q+1``: a word ending in
    silence extends any admissible word, while a word ending in one of
    the q data symbols extends only words ending in silence.
    """
    _check_q(q)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidParameterError(f"length must be nonnegative, got {n!r}")
    a, b = 1, q + 1
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, b + q * a
    return b


def enumerate_words(q: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> List[Word]:
    """All admissible length-n words, lexicographic (N after data).

    A desk-scale brute-force oracle for :func:`count_words` and the
    encoder tests. Refuses to start when the search space ``(q+1)**n``
    exceeds ``cap``.
    """
    _check_q(q)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidParameterError(f"length must be nonnegative, got {n!r}")
    if (q + 1) ** n > cap:
        raise EnumerationCapError(
            f"(q+1)**n = {(q + 1) ** n} exceeds enumeration cap {cap}")
    words: List[Word] = [()]
    for _ in range(n):
        extended: List[Word] = []
        for w in words:
            if not (w and is_data(w[-1])):
                extended.extend(w + (k,) for k in range(q))
            extended.append(w + (N,))
        words = extended
    return words


# ---------------------------------------------------------------------------
# exact integer matrix helpers

def matrix_multiply(a: Matrix, b: Matrix) -> List[List[int]]:
    size = range(len(a))
    return [[sum(a[i][k] * b[k][j] for k in size) for j in size] for i in size]


def matrix_power(m: Matrix, n: int) -> List[List[int]]:
    if n < 1:
        raise InvalidParameterError("matrix power needs n >= 1")
    result = [list(row) for row in m]
    for _ in range(n - 1):
        result = matrix_multiply(result, m)
    return result


def matrix_vector(m: Matrix, x: Sequence[int]) -> List[int]:
    return [sum(v * xi for v, xi in zip(row, x)) for row in m]


def format_matrix(m: Matrix) -> str:
    """Row-major, one row per line, entries space-separated."""
    return "\n".join(" ".join(str(v) for v in row) for row in m)


def validate_matrix(matrix: Matrix) -> List[List[int]]:
    """Return a list-of-lists copy, or raise for non-square/negative input."""
    rows = [list(row) for row in matrix]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise InvalidMatrixError("matrix must be square and nonempty")
    for row in rows:
        for value in row:
            if value < 0:
                raise InvalidMatrixError(f"negative entry {value!r}")
    return rows


# ---------------------------------------------------------------------------
# spectral quantities

def spectral_radius(matrix: Matrix, tol: float = 1e-12,
                    max_iterations: int = 100_000) -> float:
    """Largest absolute eigenvalue of a nonnegative matrix.

    2x2 matrices (the ``[[1, q], [1, 0]]`` family and its relatives) use
    the exact quadratic closed form. Larger matrices use power iteration
    with Collatz-Wielandt ratio bounds, run on ``A + I`` so that
    irreducible inputs become primitive and the bounds converge.
    """
    m = validate_matrix(matrix)
    size = len(m)
    if size == 1:
        return float(m[0][0])
    if size == 2:
        (a, b), (c, d) = m
        return ((a + d) + math.sqrt((a - d) ** 2 + 4 * b * c)) / 2.0
    x = [1.0] * size
    low, high = 0.0, math.inf
    for _ in range(max_iterations):
        y = [sum(row[j] * x[j] for j in range(size)) + x[i]
             for i, row in enumerate(m)]
        ratios = [yi / xi for yi, xi in zip(y, x)]
        low, high = min(ratios), max(ratios)
        if high - low <= tol:
            break
        top = max(y)
        x = [v / top for v in y]
    return (low + high) / 2.0 - 1.0


def characteristic_roots(q: int) -> Tuple[float, float]:
    """Both eigenvalues of ``[[1, q], [1, 0]]``: ``(1 +- sqrt(1+4q)) / 2``.

    Their sum is 1 and their product is -q.
    """
    _check_q(q)
    root = math.sqrt(1.0 + 4.0 * q)
    return ((1.0 + root) / 2.0, (1.0 - root) / 2.0)


def capacity(q: int) -> float:
    """Asymptotic growth rate of the admissible word count, in bits/symbol.

    Equals ``log2((1 + sqrt(4q+1)) / 2)``, the base-2 log of the dominant
    eigenvalue. For q=1 this is log2 of the golden ratio, 0.694242...;
    for q=6 it is log2(3).
    """
    _check_q(q)
    return math.log2((1.0 + math.sqrt(4.0 * q + 1.0)) / 2.0)
