"""Slot-synchronous symbol forwarding over a rooted relay tree.

Every non-source node repeats, one slot later, whatever it heard from
its parent in the previous slot. A node transmitting a data symbol is ON
for that slot and cannot listen: whatever its parent sent is erased. The
simulator never peeks at an erased symbol; the node stores silence in
its place, which is only correct when the source stream is admissible.
That is exactly the property the violation log makes testable: a
violation is recorded whenever a node is ON while its parent transmits a
data symbol, and an inadmissible source provably produces one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .constraint import capacity
from .encoder import build_encoder, decode, encode
from .errors import InvalidParameterError, RelaycastError, TopologyError
from .symbols import N, Symbol, Word, is_data


class _Erased:
    """Singleton marker for a reception lost to the half-duplex rule."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ERASED"


ERASED = _Erased()


# ---------------------------------------------------------------------------
# topology

@dataclass(frozen=True, eq=False)
class TreeTopology:
    """Rooted directed tree of node ids; node 0 is the source."""

    nodes: Tuple[int, ...]
    parent: Dict[int, int]
    depth: Dict[int, int]

    @property
    def max_depth(self) -> int:
        return max(self.depth.values())

    def children(self, node: int) -> Tuple[int, ...]:
        return tuple(v for v in self.nodes if self.parent.get(v) == node)


def parse_tree(text: str) -> TreeTopology:
    """Parse a topology file: one ``<node_id> <parent_id>`` pair per line.

    The root uses ``-`` as its parent and must have id 0; ``#`` starts a
    comment. Raises :class:`TopologyError` with a distinct reason code
    for empty input, bad lines, duplicate declarations, multiple roots,
    a non-zero root id, unknown parent ids, and parent cycles.
    """
    declared: Dict[int, Optional[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TopologyError("format", f"line {lineno}: expected "
                                f"'<node> <parent>', got {raw.strip()!r}")
        if not parts[0].isdigit():
            raise TopologyError("format", f"line {lineno}: bad node id {parts[0]!r}")
        node = int(parts[0])
        if parts[1] == "-":
            parent: Optional[int] = None
        elif parts[1].isdigit():
            parent = int(parts[1])
        else:
            raise TopologyError("format", f"line {lineno}: bad parent {parts[1]!r}")
        if node in declared:
            raise TopologyError("multiple-parents",
                                f"node {node} is declared more than once")
        declared[node] = parent

    if not declared:
        raise TopologyError("empty", "topology has no nodes")
    roots = [node for node, parent in declared.items() if parent is None]
    if len(roots) > 1:
        raise TopologyError("multiple-roots", f"several roots: {sorted(roots)}")
    if roots and roots[0] != 0:
        raise TopologyError("bad-root-id", f"root must be node 0, got {roots[0]}")
    for node, parent in declared.items():
        if parent is not None and parent not in declared:
            raise TopologyError("unknown-parent",
                                f"node {node} names unknown parent {parent}")

    depth: Dict[int, int] = {}
    for start in declared:
        trail: List[int] = []
        on_trail = set()
        current = start
        while current not in depth:
            if current in on_trail:
                raise TopologyError("cycle",
                                    f"parent links loop through node {current}")
            parent = declared[current]
            if parent is None:
                depth[current] = 0
                break
            trail.append(current)
            on_trail.add(current)
            current = parent
        for node in reversed(trail):
            depth[node] = depth[declared[node]] + 1

    parent_map = {node: parent for node, parent in declared.items()
                  if parent is not None}
    return TreeTopology(nodes=tuple(sorted(declared)),
                        parent=parent_map, depth=depth)


# ---------------------------------------------------------------------------
# simulation

@dataclass(frozen=True, eq=False)
class SimTrace:
    """Per-slot transcript of what every node transmitted and received.

    ``received`` holds :data:`ERASED` where the half-duplex rule lost a
    symbol and ``None`` for the source, which has no parent to hear.
    """

    nodes: Tuple[int, ...]
    transmitted: Tuple[Tuple[Symbol, ...], ...]
    received: Tuple[Tuple[object, ...], ...]
    violations: Tuple[Tuple[int, int], ...]

    @property
    def num_slots(self) -> int:
        return len(self.transmitted)

    def transmit_stream(self, node: int) -> Word:
        """Everything ``node`` sent, slot by slot."""
        i = self.nodes.index(node)
        return tuple(row[i] for row in self.transmitted)

    def export(self) -> str:
        """One line per slot: ``t | v:sym ...``, ``*`` marking erased reception."""
        lines = []
        for t, row in enumerate(self.transmitted):
            cells = []
            for i, node in enumerate(self.nodes):
                token = "N" if not is_data(row[i]) else str(row[i])
                if self.received[t][i] is ERASED:
                    token += "*"
                cells.append(f"{node}:{token}")
            lines.append(f"{t} | " + " ".join(cells))
        return "\n".join(lines)


def simulate(topo: TreeTopology, source_stream: Sequence[Symbol],
             extra_slots: Optional[int] = None) -> SimTrace:
    """Run ``len(source_stream) + extra_slots`` slots of forwarding.

    The source transmits its stream (silence once exhausted); every other
    node transmits what it stored in the previous slot, initially
    silence. A node that is OFF stores its parent's symbol for the next
    slot; a node that is ON records an erasure and stores silence, since
    it cannot know what it missed. ``extra_slots`` defaults to the tree
    depth so the pipeline drains. The stream may be inadmissible; every
    slot where a node is ON under a data-transmitting parent is logged.
    """
    stream = tuple(source_stream)
    if extra_slots is None:
        extra_slots = topo.max_depth
    if extra_slots < 0:
        raise InvalidParameterError("extra_slots must be nonnegative")
    nodes = topo.nodes
    relays = nodes[1:]
    pending: Dict[int, Symbol] = {v: N for v in relays}
    transmitted: List[Tuple[Symbol, ...]] = []
    received: List[Tuple[object, ...]] = []
    violations: List[Tuple[int, int]] = []

    for t in range(len(stream) + extra_slots):
        sending: Dict[int, Symbol] = {0: stream[t] if t < len(stream) else N}
        for v in relays:
            sending[v] = pending[v]
        heard: Dict[int, object] = {0: None}
        for v in relays:
            from_parent = sending[topo.parent[v]]
            if is_data(sending[v]):
                heard[v] = ERASED
                pending[v] = N
                if is_data(from_parent):
                    violations.append((t, v))
            else:
                heard[v] = from_parent
                pending[v] = from_parent
        transmitted.append(tuple(sending[v] for v in nodes))
        received.append(tuple(heard[v] for v in nodes))

    return SimTrace(nodes=nodes, transmitted=tuple(transmitted),
                    received=tuple(received), violations=tuple(violations))


# ---------------------------------------------------------------------------
# delivery verification

@dataclass(frozen=True)
class NodeDelivery:
    node: int
    depth: int
    passed: bool


@dataclass(frozen=True)
class DeliveryReport:
    nodes: Tuple[NodeDelivery, ...]
    violations: int

    @property
    def all_passed(self) -> bool:
        return all(entry.passed for entry in self.nodes)


def verify_delivery(trace: SimTrace, topo: TreeTopology,
                    source_stream: Sequence[Symbol]) -> DeliveryReport:
    """Check that every node relays the source stream delayed by its depth.

    A node's forwarded stream (its transmissions, in which erased
    receptions already appear as silence) must equal depth-many leading
    silences followed by the source stream, truncated to the simulated
    horizon. For an admissible source this holds at every node with zero
    violations; an inadmissible source breaks it somewhere.
    """
    stream = tuple(source_stream)
    horizon = trace.num_slots
    entries = []
    for i, node in enumerate(trace.nodes):
        d = topo.depth[node]
        expected = ((N,) * d + stream + (N,) * horizon)[:horizon]
        actual = tuple(row[i] for row in trace.transmitted)
        entries.append(NodeDelivery(node=node, depth=d, passed=actual == expected))
    return DeliveryReport(nodes=tuple(entries),
                          violations=len(trace.violations))


def baseline_rate(q: int) -> float:
    """Rate of deterministic store-and-forward with alternating slots.

    Each node stays OFF half the time, so ``0.5 * log2(q+1)`` bits per
    symbol.
    """
    if not isinstance(q, int) or isinstance(q, bool) or q < 1:
        raise InvalidParameterError(f"need a positive q, got {q!r}")
    return 0.5 * math.log2(q + 1)


# ---------------------------------------------------------------------------
# the full pipeline

@dataclass(frozen=True)
class NodeRecovery:
    node: int
    depth: int
    recovered: bool


@dataclass(frozen=True)
class EndToEndReport:
    q: int
    p: int
    n: int
    rate: float
    capacity: float
    baseline: float
    message_bits: int
    nodes: Tuple[NodeRecovery, ...]

    @property
    def all_recovered(self) -> bool:
        return all(entry.recovered for entry in self.nodes)


def end_to_end(q: int, p: int, n: int, topo: TreeTopology, message,
               extra_slots: Optional[int] = None) -> EndToEndReport:
    """Encode, broadcast through the tree, decode at every node, compare.

    Builds the rate p:n encoder, feeds the encoded stream to the source,
    simulates with at least ``max_depth`` extra slots, then strips each
    node's depth-long silence prefix from its forwarded stream and
    decodes it. Every node must recover the message bits exactly.
    """
    machine = build_encoder(q, p, n)
    if isinstance(message, str):
        bits = message
    else:
        bits = "".join(str(b) for b in message)
    stream, header = encode(machine, bits)
    drain = topo.max_depth if extra_slots is None else max(extra_slots,
                                                           topo.max_depth)
    trace = simulate(topo, stream, drain)
    entries = []
    for i, node in enumerate(trace.nodes):
        d = topo.depth[node]
        forwarded = tuple(row[i] for row in trace.transmitted)
        delivered = forwarded[d:d + len(stream)]
        try:
            recovered = decode(machine, delivered, header) == bits
        except RelaycastError:
            recovered = False
        entries.append(NodeRecovery(node=node, depth=d, recovered=recovered))
    return EndToEndReport(q=q, p=p, n=n, rate=p / n, capacity=capacity(q),
                          baseline=baseline_rate(q), message_bits=len(bits),
                          nodes=tuple(entries))
