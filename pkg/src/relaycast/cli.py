"""Command-line front end.

Every subcommand is a thin wrapper over one library call: parse flags,
call, format. Exit codes: 0 success, 1 domain error (invalid parameter,
infeasible rate, malformed data, ...), 2 unknown subcommand, 3 malformed
flags, 4 file not found.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

from .constraint import capacity, count_words, enumerate_words
from .encoder import (FrameHeader, build_encoder, decode, encode,
                      encoder_report, parse_encoder, serialize_encoder)
from .errors import RelaycastError, UnsupportedParameterError
from .simulator import (baseline_rate, end_to_end, parse_tree, simulate,
                        verify_delivery)
from .symbols import format_stream, parse_stream

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN_COMMAND = 2
EXIT_USAGE = 3
EXIT_NOT_FOUND = 4

# Benchmark capacities (b/sym) of depth-limited binary-alphabet trees,
# achieved by depth-dependent on-off schedules; used as the comparison
# column of the rate table. Not derivable from this package.
TABLE_DEPTH_LABELS = ("2", "3", "5", "11", "inf")
TABLE_REFERENCE_RATES = (0.7729, 0.7324, 0.7099, 0.6981, 0.6942)


@dataclass(frozen=True)
class TableRow:
    """One comparison row: both schemes as a percentage of the benchmark."""

    depth: str
    reference_rate: float
    constrained_pct: float
    forwarding_pct: float


def table_report(q: int) -> List[TableRow]:
    """Constrained coding and plain forwarding vs. the depth benchmarks.

    Reference rates are only tabulated for q=1; any other q raises
    :class:`UnsupportedParameterError`.
    """
    if q != 1:
        raise UnsupportedParameterError(
            f"reference rates are only tabulated for q=1, got q={q}")
    cap = capacity(1)
    fwd = baseline_rate(1)
    return [TableRow(depth=label, reference_rate=ref,
                     constrained_pct=100.0 * cap / ref,
                     forwarding_pct=100.0 * fwd / ref)
            for label, ref in zip(TABLE_DEPTH_LABELS, TABLE_REFERENCE_RATES)]


# ---------------------------------------------------------------------------
# plumbing

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(value: float, fmt: str) -> str:
    return repr(value) if fmt == "raw" else f"{value:.6f}"


def _read_value(value: str, kind: str) -> str:
    """Return file contents when ``value`` names a file, else ``value``.

    Inline values must look like the expected payload; anything else is
    treated as a missing file.
    """
    path = Path(value)
    if path.is_file():
        return path.read_text()
    if kind == "bits" and not value.strip("01"):
        return value
    if kind == "stream" and all(t == "N" or t.isdigit() for t in value.split()):
        return value
    raise FileNotFoundError(value)


def _read_file(value: str) -> str:
    path = Path(value)
    if not path.is_file():
        raise FileNotFoundError(value)
    return path.read_text()


def _add_format(parser):
    parser.add_argument("--format", choices=("text", "raw"), default="text")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_capacity(args) -> None:
    print(_fmt(capacity(args.q), args.format))


def _cmd_count(args) -> None:
    print(count_words(args.q, args.n))


def _cmd_enumerate(args) -> None:
    for word in enumerate_words(args.q, args.n, cap=args.cap):
        print(format_stream(word))


def _cmd_build_encoder(args) -> None:
    machine = build_encoder(args.q, args.p, args.n)
    text = serialize_encoder(machine)
    if args.out:
        Path(args.out).write_text(text)
        report = encoder_report(machine)
        print(f"states: {report.num_states}")
        print(f"rate: {_fmt(report.rate, args.format)}")
        print(f"capacity: {_fmt(report.capacity, args.format)}")
        print(f"efficiency: {_fmt(report.efficiency, args.format)}")
    else:
        sys.stdout.write(text)


def _cmd_encode(args) -> None:
    machine = parse_encoder(_read_file(args.encoder))
    bits = _read_value(args.bits, "bits").strip()
    stream, header = encode(machine, bits)
    if args.format == "raw":
        print(f"{header.bit_length} {header.pad}")
        print(format_stream(stream))
    else:
        print(f"length: {header.bit_length}")
        print(f"pad: {header.pad}")
        print(f"stream: {format_stream(stream)}")


def _cmd_decode(args) -> None:
    machine = parse_encoder(_read_file(args.encoder))
    stream = parse_stream(_read_value(args.stream, "stream"), q=machine.q)
    pad = (-args.length) % machine.p
    print(decode(machine, stream, FrameHeader(args.length, pad)))


def _cmd_simulate(args) -> None:
    topo = parse_tree(_read_file(args.tree))
    stream = parse_stream(_read_value(args.stream, "stream"))
    trace = simulate(topo, stream, args.extra_slots)
    print(trace.export())
    report = verify_delivery(trace, topo, stream)
    print(f"violations: {report.violations}")
    for entry in report.nodes:
        status = "ok" if entry.passed else "FAIL"
        print(f"node {entry.node} depth {entry.depth}: {status}")


def _cmd_end_to_end(args) -> None:
    topo = parse_tree(_read_file(args.tree))
    if args.bits is not None:
        bits = _read_value(args.bits, "bits").strip()
    else:
        rng = random.Random(args.seed)
        bits = "".join(rng.choice("01") for _ in range(args.random))
    report = end_to_end(args.q, args.p, args.n, topo, bits,
                        extra_slots=args.extra_slots)
    print(f"message bits: {report.message_bits}")
    print(f"rate: {_fmt(report.rate, args.format)}")
    print(f"capacity: {_fmt(report.capacity, args.format)}")
    print(f"baseline: {_fmt(report.baseline, args.format)}")
    for entry in report.nodes:
        status = "recovered" if entry.recovered else "FAIL"
        print(f"node {entry.node} depth {entry.depth}: {status}")
    print(f"all recovered: {'yes' if report.all_recovered else 'NO'}")


def _cmd_table(args) -> None:
    rows = table_report(args.q)
    if args.format == "raw":
        for row in rows:
            print(f"{row.depth} {row.reference_rate!r} "
                  f"{row.constrained_pct!r} {row.forwarding_pct!r}")
    else:
        print(f"{'depth':>6} {'benchmark':>10} {'constrained%':>13} "
              f"{'forwarding%':>12}")
        for row in rows:
            print(f"{row.depth:>6} {row.reference_rate:>10.4f} "
                  f"{row.constrained_pct:>13.2f} {row.forwarding_pct:>12.2f}")


# ---------------------------------------------------------------------------
# dispatch

def _build_parser(command: str) -> Tuple[_Parser, object]:
    parser = _Parser(prog=f"relaycast {command}", add_help=True)
    if command == "capacity":
        parser.add_argument("--q", type=int, required=True)
        _add_format(parser)
        return parser, _cmd_capacity
    if command == "count":
        parser.add_argument("--q", type=int, required=True)
        parser.add_argument("--n", type=int, required=True)
        _add_format(parser)
        return parser, _cmd_count
    if command == "enumerate":
        parser.add_argument("--q", type=int, required=True)
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--cap", type=int, default=10**7)
        _add_format(parser)
        return parser, _cmd_enumerate
    if command == "build-encoder":
        parser.add_argument("--q", type=int, required=True)
        parser.add_argument("--p", type=int, required=True)
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--out", help="write serialized encoder here "
                            "and print a report instead")
        _add_format(parser)
        return parser, _cmd_build_encoder
    if command == "encode":
        parser.add_argument("--encoder", required=True)
        parser.add_argument("--bits", required=True,
                            help="path or inline 0/1 string")
        _add_format(parser)
        return parser, _cmd_encode
    if command == "decode":
        parser.add_argument("--encoder", required=True)
        parser.add_argument("--stream", required=True,
                            help="path or inline tokens")
        parser.add_argument("--length", type=int, required=True,
                            help="message length in bits")
        _add_format(parser)
        return parser, _cmd_decode
    if command == "simulate":
        parser.add_argument("--tree", required=True)
        parser.add_argument("--stream", required=True,
                            help="path or inline tokens")
        parser.add_argument("--extra-slots", type=int, default=None)
        _add_format(parser)
        return parser, _cmd_simulate
    if command == "end-to-end":
        parser.add_argument("--q", type=int, required=True)
        parser.add_argument("--p", type=int, required=True)
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--tree", required=True)
        parser.add_argument("--bits", help="path or inline 0/1 string")
        parser.add_argument("--random", type=int, default=1000,
                            help="random message length when --bits is absent")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--extra-slots", type=int, default=None)
        _add_format(parser)
        return parser, _cmd_end_to_end
    if command == "table":
        parser.add_argument("--q", type=int, required=True)
        _add_format(parser)
        return parser, _cmd_table
    raise KeyError(command)


_COMMANDS = ("capacity", "count", "enumerate", "build-encoder", "encode",
             "decode", "simulate", "end-to-end", "table")

_HELP = """usage: relaycast <command> [flags]

commands:
  capacity       asymptotic rate of the constraint, b/sym (--q)
  count          exact number of admissible words (--q --n)
  enumerate      list admissible words (--q --n [--cap])
  build-encoder  synthesize a rate p:n machine (--q --p --n [--out])
  encode         bits -> admissible stream (--encoder --bits)
  decode         stream -> bits (--encoder --stream --length)
  simulate       forward a stream through a tree (--tree --stream
                 [--extra-slots])
  end-to-end     encode, broadcast, decode at every node (--q --p --n
                 --tree [--bits | --random K --seed S])
  table          rates vs. depth-limited benchmarks (--q 1)

common flags:
  --format {text,raw}   raw prints full double precision

exit codes:
  0 success, 1 domain error, 2 unknown command, 3 malformed flags,
  4 file not found
"""


def run(argv) -> int:
    """Dispatch one invocation; returns the exit status."""
    argv = list(argv)
    if not argv or argv[0] in ("-h", "--help", "help"):
        print(_HELP, end="")
        return EXIT_OK if argv else EXIT_UNKNOWN_COMMAND
    command, rest = argv[0], argv[1:]
    if command not in _COMMANDS:
        print(f"error: unknown command {command!r} (see --help)",
              file=sys.stderr)
        return EXIT_UNKNOWN_COMMAND
    parser, handler = _build_parser(command)
    try:
        args = parser.parse_args(rest)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse -h
        return int(exc.code or 0)
    try:
        handler(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except RelaycastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
