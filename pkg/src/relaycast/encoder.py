"""Finite-state encoder synthesis by state splitting, with exact inversion.

A rate p:n encoder maps p input bits per step to an n-symbol block while
keeping the concatenated output admissible. Construction:

1. take the n-th power of the two-state presentation,
2. find a small integer weight vector x with ``A x >= 2**p x`` per
   component (a certificate that 2**p choices per state are sustainable),
3. out-split heavy states until every weight is 1, at which point every
   surviving state has at least 2**p outgoing edges,
4. delete surplus edges down to exactly 2**p per state and assign input
   tags in codeword order.

Out-splitting duplicates every edge that enters a split state, so two
transitions of the finished machine can share a codeword. Instead of
demanding distinct codewords per state (impossible at these rates: from
a state entered on a data-final block only silence-initial blocks exist,
and there are fewer than 2**p of them), the builder certifies bounded
lookahead decodability: it follows every pair of states reachable by
emitting identical blocks and verifies the pair dies out within a fixed
number of blocks, the machine's *anticipation*. ``encode`` appends that
many fixed flush blocks so the lookahead always has material, and
``decode`` tracks all label-consistent paths; by the certificate, every
surviving path agrees on the message bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .constraint import (ConstraintGraph, Edge, Matrix, capacity,
                         make_constraint, matrix_vector, power_graph,
                         validate_matrix)
from .errors import (AmbiguousEncoderError, EncoderBuildError,
                     EncoderFormatError, FramingError, InfeasibleRateError,
                     InsufficientDegreeError, InvalidParameterError,
                     NonUniformLabelError, StateSplitError, StreamFormatError,
                     UnknownCodewordError)
from .symbols import Word, format_stream, parse_stream, word_key

_PERRON_SCALE_LIMIT = 4096
_FEASIBILITY_CEILING = 1 << 20

Transition = Tuple[Word, int]


def _check_positive(value, name):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InvalidParameterError(f"{name} must be a positive integer, got {value!r}")


# ---------------------------------------------------------------------------
# approximate eigenvector

@dataclass(frozen=True)
class ApproxEigenvector:
    """Integer certificate: ``vector != 0`` and ``A vector >= 2**p vector``."""

    vector: Tuple[int, ...]
    p: int
    n: Optional[int] = None


def _franaszek_fixpoint(matrix, seed, target):
    """Largest fixpoint of ``x -> min(x, floor(A x / target))`` below seed.

    The map is monotone and decreasing, so iteration from any seed
    terminates; nonzero fixpoints are exactly the valid weight vectors.
    """
    x = list(seed)
    while True:
        ax = matrix_vector(matrix, x)
        y = [min(xi, axi // target) for xi, axi in zip(x, ax)]
        if y == x:
            return x
        x = y


def _perron_direction(matrix):
    """Dominant eigenvector direction, normalized to minimum entry 1.

    Power iteration on ``A + I`` keeps every entry positive and converges
    for any irreducible nonnegative A.
    """
    size = len(matrix)
    x = [1.0] * size
    for _ in range(100_000):
        y = [sum(row[j] * x[j] for j in range(size)) + x[i]
             for i, row in enumerate(matrix)]
        top = max(y)
        y = [v / top for v in y]
        if max(abs(a - b) for a, b in zip(x, y)) < 1e-14:
            x = y
            break
        x = y
    bottom = min(x)
    return [v / bottom for v in x]


def _reduced(vector):
    g = math.gcd(*vector) if len(vector) > 1 else vector[0]
    return tuple(v // g for v in vector)


def find_approximate_eigenvector(adjacency: Matrix, p: int,
                                 block_length: Optional[int] = None) -> ApproxEigenvector:
    """Small nonzero integer vector with ``adjacency @ x >= 2**p * x``.

    Seeds the Franaszek fixpoint iteration with integer roundings of the
    Perron direction at increasing scales and returns the first nonzero
    fixpoint, gcd-reduced. Raises :class:`InfeasibleRateError` when only
    the zero fixpoint exists, i.e. p bits per block are not sustainable.
    """
    matrix = validate_matrix(adjacency)
    _check_positive(p, "p")
    target = 1 << p
    size = len(matrix)
    ceiling = _franaszek_fixpoint(matrix, [_FEASIBILITY_CEILING] * size, target)
    if not any(ceiling):
        raise InfeasibleRateError(
            f"no nonzero weight vector supports {p} bits per block "
            f"for this adjacency")
    direction = _perron_direction(matrix)
    for scale in range(1, _PERRON_SCALE_LIMIT + 1):
        seed = [max(1, round(scale * v)) for v in direction]
        x = _franaszek_fixpoint(matrix, seed, target)
        if any(x):
            return ApproxEigenvector(_reduced(x), p, block_length)
    return ApproxEigenvector(_reduced(ceiling), p, block_length)


# ---------------------------------------------------------------------------
# state splitting

def _restrict_to_support(g, weights):
    """Drop zero-weight states; the inequality survives on the rest."""
    keep = [i for i, w in enumerate(weights) if w > 0]
    if len(keep) == len(weights):
        return g, list(weights)
    remap = {old: new for new, old in enumerate(keep)}
    edges = tuple(Edge(remap[e.src], remap[e.dst], e.word)
                  for e in g.edges if e.src in remap and e.dst in remap)
    graph = ConstraintGraph(q=g.q,
                            states=tuple(g.states[i] for i in keep),
                            edges=edges)
    return graph, [weights[i] for i in keep]


def split_states(g: ConstraintGraph, x: ApproxEigenvector) -> ConstraintGraph:
    """Out-split states until every weight is 1.

    Each round splits the heaviest state (ties: lowest index) in two,
    giving the first descendant the smallest workable weight (1 when
    possible). The state's outgoing edges, ordered by descending head
    weight then label, are cut greedily into two groups whose edge-weight
    sums stay at least ``2**p`` times the descendant weights; edges
    entering the split state are duplicated to both descendants. The
    result has ``sum(x.vector)`` states, every one with at least ``2**p``
    outgoing edges; the number of rounds performed is
    ``sum(x.vector) - len(g.states)``.
    """
    if len(x.vector) != len(g.states):
        raise InvalidParameterError(
            f"weight vector has {len(x.vector)} entries for "
            f"{len(g.states)} states")
    if any(w < 0 for w in x.vector) or not any(x.vector):
        raise StateSplitError("weights must be nonnegative and not all zero")
    target = 1 << x.p
    checked = matrix_vector(g.adjacency, x.vector)
    if any(got < target * want for got, want in zip(checked, x.vector)):
        raise StateSplitError(
            "vector fails the weight inequality; not an approximate eigenvector")

    if all(w == 1 for w in x.vector):
        return g

    g, weights = _restrict_to_support(g, list(x.vector))
    names = list(g.states)
    edges = list(g.edges)

    while True:
        heaviest = max(weights)
        if heaviest <= 1:
            break
        u = weights.index(heaviest)
        outgoing = sorted((e for e in edges if e.src == u),
                          key=lambda e: (-weights[e.dst], word_key(e.word), e.dst))
        out_weight = sum(weights[e.dst] for e in outgoing)
        partition = None
        for first_weight in range(1, heaviest):
            acc = 0
            cut = None
            for i, e in enumerate(outgoing):
                acc += weights[e.dst]
                if acc >= target * first_weight:
                    cut = i + 1
                    break
            if cut is None:
                break  # even the full set cannot cover first_weight
            if out_weight - acc >= target * (heaviest - first_weight):
                partition = (first_weight, cut)
                break
        if partition is None:
            raise StateSplitError(
                f"state {names[u]!r} admits no weight-consistent partition")
        first_weight, cut = partition
        in_first = {id(e) for e in outgoing[:cut]}

        # u becomes u.0 at index u and u.1 at index u+1; higher indices
        # shift up by one.
        def new_index(old):
            return old if old < u else old + 1

        rebuilt = []
        for e in edges:
            if e.src == u:
                src = u if id(e) in in_first else u + 1
            else:
                src = new_index(e.src)
            heads = [u, u + 1] if e.dst == u else [new_index(e.dst)]
            rebuilt.extend(Edge(src, dst, e.word) for dst in heads)
        names[u:u + 1] = [names[u] + ".0", names[u] + ".1"]
        weights[u:u + 1] = [first_weight, heaviest - first_weight]
        edges = rebuilt

    result = ConstraintGraph(q=g.q, states=tuple(names),
                             edges=tuple(sorted(edges, key=lambda e: (e.src, word_key(e.word), e.dst))))
    degrees = [0] * len(result.states)
    for e in result.edges:
        degrees[e.src] += 1
    if any(d < target for d in degrees):
        raise StateSplitError("splitting left a state short of out-degree 2**p")
    return result


# ---------------------------------------------------------------------------
# the encoder machine

@dataclass(frozen=True)
class Encoder:
    """Immutable rate p:n machine. ``transitions[state][tag] = (codeword, next)``."""

    q: int
    p: int
    n: int
    start_state: int
    transitions: Tuple[Tuple[Transition, ...], ...]
    anticipation: int

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    @property
    def rate(self) -> float:
        return self.p / self.n

    @cached_property
    def _by_codeword(self):
        """Per state: codeword -> ((tag, next), ...)."""
        index = []
        for outs in self.transitions:
            lookup: Dict[Word, list] = {}
            for tag, (word, nxt) in enumerate(outs):
                lookup.setdefault(word, []).append((tag, nxt))
            index.append({w: tuple(v) for w, v in lookup.items()})
        return tuple(index)


def _anticipation(transitions) -> int:
    """Lookahead blocks needed to resolve shared codewords, or raise.

    Explores the graph over unordered state pairs reachable by emitting a
    common codeword from both members. A pair that collapses onto a
    single state, or that can be prolonged forever, can never be told
    apart, so the machine is rejected. Returns 0 for a machine whose
    codewords are distinct at every state, else 1 + the longest pair path.
    """
    index: List[Dict[Word, List[int]]] = []
    forks = set()
    for state, outs in enumerate(transitions):
        heads: Dict[Word, List[int]] = {}
        for _, (word, nxt) in enumerate(outs):
            heads.setdefault(word, []).append(nxt)
        index.append(heads)
        for word, targets in heads.items():
            for a, b in combinations(targets, 2):
                if a == b:
                    raise AmbiguousEncoderError(
                        f"state {state} emits {format_stream(word)!r} to "
                        f"state {a} under two different tags")
                forks.add((min(a, b), max(a, b)))
    if not forks:
        return 0

    def successors(pair):
        a, b = pair
        nxt = set()
        for word, a_heads in index[a].items():
            b_heads = index[b].get(word)
            if not b_heads:
                continue
            for ta in a_heads:
                for tb in b_heads:
                    if ta == tb:
                        raise AmbiguousEncoderError(
                            f"states {a} and {b} merge on {format_stream(word)!r}")
                    nxt.add((min(ta, tb), max(ta, tb)))
        return nxt

    # longest path in the pair graph; a cycle means unbounded ambiguity
    depth: Dict[tuple, int] = {}
    in_progress = object()

    def longest(pair):
        seen = depth.get(pair)
        if seen is in_progress:
            raise AmbiguousEncoderError(
                f"state pair {pair} can stay indistinguishable forever")
        if seen is not None:
            return seen
        depth[pair] = in_progress
        best = 0
        for nxt in successors(pair):
            best = max(best, 1 + longest(nxt))
        depth[pair] = best
        return best

    return 1 + max(longest(pair) for pair in sorted(forks))


def _assemble(q, p, n, start_state, transitions) -> Encoder:
    fanout = 1 << p
    if not transitions:
        raise EncoderBuildError("encoder has no states")
    for state, outs in enumerate(transitions):
        if len(outs) != fanout:
            raise EncoderBuildError(
                f"state {state} has {len(outs)} transitions, needs {fanout}")
        for word, nxt in outs:
            if len(word) != n:
                raise NonUniformLabelError(
                    f"codeword {format_stream(word)!r} is not {n} symbols")
            if not 0 <= nxt < len(transitions):
                raise EncoderBuildError(f"transition target {nxt} out of range")
    if not 0 <= start_state < len(transitions):
        raise EncoderBuildError(f"start state {start_state} out of range")
    return Encoder(q=q, p=p, n=n, start_state=start_state,
                   transitions=transitions,
                   anticipation=_anticipation(transitions))


def prune_to_encoder(g: ConstraintGraph, q: int, p: int, n: int) -> Encoder:
    """Delete surplus edges down to 2**p per state and assign tags.

    Keeps the lexicographically smallest codewords at each state,
    preferring distinct codewords and filling with duplicates only when
    the state does not offer 2**p distinct ones. Tags follow codeword
    order. States that become unreachable from the start state (the
    first descendant of OFF, index 0) are dropped.
    """
    _check_positive(q, "q")
    _check_positive(p, "p")
    _check_positive(n, "n")
    if g.q != q:
        raise InvalidParameterError(f"graph was built for q={g.q}, not q={q}")
    fanout = 1 << p
    for e in g.edges:
        if len(e.word) != n:
            raise NonUniformLabelError(
                f"edge label {format_stream(e.word)!r} is not {n} symbols")

    kept: List[List[Edge]] = []
    for state in range(len(g.states)):
        outgoing = sorted((e for e in g.edges if e.src == state),
                          key=lambda e: (word_key(e.word), e.dst))
        if len(outgoing) < fanout:
            raise InsufficientDegreeError(
                f"state {g.states[state]!r} has out-degree {len(outgoing)}, "
                f"needs {fanout}")
        primaries, duplicates = [], []
        seen = set()
        for e in outgoing:
            key = word_key(e.word)
            (duplicates if key in seen else primaries).append(e)
            seen.add(key)
        chosen = (primaries + duplicates)[:fanout]
        chosen.sort(key=lambda e: (word_key(e.word), e.dst))
        kept.append(chosen)

    start = 0
    reachable = {start}
    frontier = [start]
    while frontier:
        state = frontier.pop()
        for e in kept[state]:
            if e.dst not in reachable:
                reachable.add(e.dst)
                frontier.append(e.dst)
    order = sorted(reachable)
    renumber = {old: new for new, old in enumerate(order)}
    transitions = tuple(
        tuple((e.word, renumber[e.dst]) for e in kept[old])
        for old in order)
    return _assemble(q, p, n, renumber[start], transitions)


def build_encoder(q: int, p: int, n: int) -> Encoder:
    """Synthesize the rate p:n machine for q data symbols plus silence.

    Deterministic in (q, p, n). Raises :class:`InfeasibleRateError` when
    p/n exceeds the capacity.
    """
    _check_positive(q, "q")
    base = make_constraint(q)
    powered = power_graph(base, n)
    x = find_approximate_eigenvector(powered.adjacency, p, block_length=n)
    split = split_states(powered, x)
    return prune_to_encoder(split, q, p, n)


# ---------------------------------------------------------------------------
# encode / decode

@dataclass(frozen=True)
class FrameHeader:
    """Framing metadata returned by encode and required by decode."""

    bit_length: int
    pad: int

    def __post_init__(self):
        if self.bit_length < 0 or self.pad < 0:
            raise InvalidParameterError("frame fields must be nonnegative")


def _normalize_bits(bits) -> str:
    if isinstance(bits, str):
        text = bits
    else:
        text = "".join(str(b) for b in bits)
    if text.strip("01"):
        raise StreamFormatError("bit strings may contain only 0 and 1")
    return text


def encode(encoder: Encoder, bits) -> Tuple[Word, FrameHeader]:
    """Map a bit string to an admissible symbol stream.

    Consumes p bits per block from the start state, zero-padding the tail
    to a multiple of p, then appends ``encoder.anticipation`` flush
    blocks (always tag 0) so that decoding can resolve shared codewords
    even at the end of the stream. Empty input maps to the empty stream.
    """
    text = _normalize_bits(bits)
    length = len(text)
    if length == 0:
        return (), FrameHeader(0, 0)
    pad = (-length) % encoder.p
    text += "0" * pad
    out: List = []
    state = encoder.start_state
    for i in range(0, len(text), encoder.p):
        tag = int(text[i:i + encoder.p], 2)
        word, state = encoder.transitions[state][tag]
        out.extend(word)
    for _ in range(encoder.anticipation):
        word, state = encoder.transitions[state][0]
        out.extend(word)
    return tuple(out), FrameHeader(length, pad)


def decode(encoder: Encoder, word: Sequence, header: FrameHeader) -> str:
    """Recover the original bits; exact inverse of :func:`encode`.

    Tracks every state the observed blocks allow (shared codewords keep
    several alive). The flush appended by encode guarantees that all
    paths surviving to the end agree on the message bits; stray streams
    that match no transition raise :class:`UnknownCodewordError` at the
    offending block.
    """
    stream = tuple(word)
    if len(stream) % encoder.n:
        raise FramingError(
            f"stream length {len(stream)} is not a multiple of n={encoder.n}")
    length = header.bit_length
    if header.pad != (-length) % encoder.p:
        raise FramingError(
            f"pad {header.pad} inconsistent with bit length {length}")
    message_blocks = (length + encoder.p - 1) // encoder.p
    expected = message_blocks + (encoder.anticipation if message_blocks else 0)
    total = len(stream) // encoder.n
    if total != expected:
        raise FramingError(f"stream has {total} blocks, frame implies {expected}")
    if message_blocks == 0:
        return ""

    lookup = encoder._by_codeword
    candidates: Dict[int, str] = {encoder.start_state: ""}
    for i in range(total):
        block = stream[i * encoder.n:(i + 1) * encoder.n]
        advanced: Dict[int, str] = {}
        in_message = i < message_blocks
        for state, bits_so_far in candidates.items():
            for tag, nxt in lookup[state].get(block, ()):
                if nxt in advanced:
                    raise AmbiguousEncoderError(
                        "two decode paths converged; machine certificate broken")
                advanced[nxt] = (bits_so_far + format(tag, f"0{encoder.p}b")
                                 if in_message else bits_so_far)
        if not advanced:
            raise UnknownCodewordError(
                f"block {i} ({format_stream(block)}) matches no transition")
        candidates = advanced
    survivors = set(candidates.values())
    if len(survivors) != 1:
        raise AmbiguousEncoderError("flush failed to single out the message")
    return survivors.pop()[:length]


# ---------------------------------------------------------------------------
# reporting and serialization

@dataclass(frozen=True)
class EncoderReport:
    q: int
    p: int
    n: int
    rate: float
    capacity: float
    efficiency: float
    num_states: int


def encoder_report(encoder: Encoder) -> EncoderReport:
    """Rate, capacity, and their ratio for a built machine."""
    cap = capacity(encoder.q)
    rate = encoder.p / encoder.n
    return EncoderReport(q=encoder.q, p=encoder.p, n=encoder.n, rate=rate,
                         capacity=cap, efficiency=rate / cap,
                         num_states=encoder.num_states)


def serialize_encoder(encoder: Encoder) -> str:
    """Line-oriented text form.

    Header ``ENC q p n num_states start_state``, then one line per
    transition: ``<state> <tag> <codeword tokens> <next_state>``.
    """
    lines = [f"ENC {encoder.q} {encoder.p} {encoder.n} "
             f"{encoder.num_states} {encoder.start_state}"]
    for state, outs in enumerate(encoder.transitions):
        for tag, (word, nxt) in enumerate(outs):
            lines.append(f"{state} {tag} {format_stream(word)} {nxt}")
    return "\n".join(lines) + "\n"


def parse_encoder(text: str) -> Encoder:
    """Inverse of :func:`serialize_encoder`; re-verifies decodability."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise EncoderFormatError("empty encoder text")
    header = lines[0].split()
    if len(header) != 6 or header[0] != "ENC":
        raise EncoderFormatError(f"bad header line {lines[0]!r}")
    try:
        q, p, n, num_states, start = (int(v) for v in header[1:])
    except ValueError as exc:
        raise EncoderFormatError(f"bad header line {lines[0]!r}") from exc
    if q < 1 or p < 1 or n < 1 or num_states < 1:
        raise EncoderFormatError("header values must be positive")
    fanout = 1 << p
    if len(lines) - 1 != num_states * fanout:
        raise EncoderFormatError(
            f"expected {num_states * fanout} transition lines, "
            f"got {len(lines) - 1}")
    table: Dict[Tuple[int, int], Transition] = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 + n:
            raise EncoderFormatError(f"bad transition line {line!r}")
        try:
            state, tag, nxt = int(parts[0]), int(parts[1]), int(parts[-1])
            word = parse_stream(" ".join(parts[2:-1]), q=q)
        except (ValueError, StreamFormatError) as exc:
            raise EncoderFormatError(f"bad transition line {line!r}") from exc
        if not 0 <= state < num_states or not 0 <= tag < fanout:
            raise EncoderFormatError(f"state or tag out of range in {line!r}")
        if (state, tag) in table:
            raise EncoderFormatError(f"duplicate transition for state "
                                     f"{state} tag {tag}")
        table[(state, tag)] = (word, nxt)
    if len(table) != num_states * fanout:
        raise EncoderFormatError("missing transitions")
    transitions = tuple(
        tuple(table[(state, tag)] for tag in range(fanout))
        for state in range(num_states))
    try:
        return _assemble(q, p, n, start, transitions)
    except EncoderBuildError as exc:
        if isinstance(exc, AmbiguousEncoderError):
            raise
        raise EncoderFormatError(str(exc)) from exc
