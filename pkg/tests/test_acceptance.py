"""Acceptance suite: one test per exit criterion, each printing a
PASS/FAIL line (run pytest with -s, or read captured output on failure).

Criterion 3 asserts a convergence gap of at most 0.02 at n=30 for
q in {1, 2, 6}. The true gap for q=6 is log2(9/5)/30 = 0.02827 (the word
count is (9/5)*3**n up to a vanishing term, and the counts themselves
are pinned by the brute-force oracle of criterion 2), so that one check
fails; it is asserted as stated rather than loosened.
"""

import math
import random
from itertools import product

import pytest

from relaycast import (InfeasibleRateError, N, baseline_rate, build_encoder,
                       capacity, count_words, decode, encode, encoder_report,
                       enumerate_words, is_admissible, parse_stream,
                       parse_tree, simulate, table_report, verify_delivery,
                       end_to_end)
from helpers import (chain_text, fig1_text, random_admissible_stream,
                     random_bits, random_stream, scan_admissible)


def _report(criterion, ok, detail):
    print(f"CRITERION {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_capacity_values():
    c1, c2, c6 = capacity(1), capacity(2), capacity(6)
    ok = (abs(c1 - 0.694242) <= 1e-6
          and abs(c6 - 1.584963) <= 1e-6
          and abs(c2 - 1.0) <= 1e-12)
    _report(1, ok, f"C(1)={c1:.7f} C(6)={c6:.7f} C(2)={c2!r}")


def test_criterion_2_counting_oracle():
    fib = [count_words(1, n) for n in range(6)]
    ok = fib == [1, 2, 3, 5, 8, 13]
    details = [f"q=1 n<=5 sequence {fib}"]
    for q in (1, 2, 3):
        for n in range(13):
            counted = count_words(q, n)
            listed = enumerate_words(q, n, cap=5**13)
            ok = ok and counted == len(listed)
            if n <= 8:  # independent product-filter oracle at small n
                brute = sum(1 for w in product(list(range(q)) + [N], repeat=n)
                            if scan_admissible(w))
                ok = ok and counted == brute
    details.append("count == enumeration for q in {1,2,3}, n <= 12")
    _report(2, ok, "; ".join(details))


@pytest.mark.parametrize("q", [1, 2, 6])
def test_criterion_3_capacity_convergence(q):
    gap30 = abs(math.log2(count_words(q, 30)) / 30 - capacity(q))
    gap60 = abs(math.log2(count_words(q, 60)) / 60 - capacity(q))
    ok = gap30 <= 0.02 and gap60 < gap30
    _report(3, ok, f"q={q}: gap(30)={gap30:.6f} (<=0.02), "
                   f"gap(60)={gap60:.6f} (< gap(30))")


def test_criterion_4_encoder_synthesis():
    r1 = encoder_report(build_encoder(1, 2, 3))
    r6 = encoder_report(build_encoder(6, 3, 2))
    try:
        build_encoder(1, 1, 1)
        infeasible_raised = False
    except InfeasibleRateError:
        infeasible_raised = True
    ok = (r1.efficiency > 0.96 and r6.efficiency > 0.94 and infeasible_raised)
    _report(4, ok, f"eff(1,2,3)={r1.efficiency:.4f}>0.96, "
                   f"eff(6,3,2)={r6.efficiency:.4f}>0.94, "
                   f"(1,1,1) infeasible={infeasible_raised}")


def test_criterion_5_roundtrip_property(enc_q1, enc_q6):
    rng = random.Random(5)
    checked = 0
    ok = True
    for machine in (enc_q1, enc_q6):
        for _ in range(1000):
            bits = random_bits(rng, rng.randrange(4097))
            stream, header = encode(machine, bits)
            if not is_admissible(stream) or decode(machine, stream, header) != bits:
                ok = False
                break
            checked += 1
    _report(5, ok, f"{checked} random messages (0..4096 bits each encoder) "
                   f"round-tripped admissibly")


def test_criterion_6_protocol_theorem_iff():
    topo = parse_tree(chain_text(3))
    ok = True
    checked = 0
    # exhaustive over the binary-choice patterns, lengths 0..10, q=1
    trace = simulate(topo, ())
    ok = len(trace.violations) == 0 and is_admissible(())
    checked += 1
    frontier = [()]
    for _ in range(10):
        frontier = [w + (s,) for w in frontier for s in (0, N)]
        for stream in frontier:
            trace = simulate(topo, stream)
            ok = ok and (len(trace.violations) == 0) == is_admissible(stream)
            checked += 1
    # randomized spot checks for larger alphabets
    for q in (2, 6):
        rng = random.Random(60 + q)
        for _ in range(500):
            stream = random_stream(rng, q, rng.randrange(1, 50))
            trace = simulate(topo, stream)
            ok = ok and (len(trace.violations) == 0) == is_admissible(stream)
            checked += 1
    _report(6, ok, f"zero violations iff admissible over {checked} streams "
                   f"(exhaustive q=1 len<=10, random q in {{2,6}})")


def test_criterion_7_delivery_law():
    topo = parse_tree(chain_text(11))
    rng = random.Random(7)
    stream = random_admissible_stream(rng, 1, 10_000)
    trace = simulate(topo, stream)
    report = verify_delivery(trace, topo, stream)
    ok = report.all_passed and report.violations == 0
    _report(7, ok, f"12 nodes, 10^4-slot admissible stream: "
                   f"all delayed copies exact, {report.violations} violations")


def test_criterion_8_end_to_end_broadcast():
    rng = random.Random(8)
    fig1 = end_to_end(1, 2, 3, parse_tree(fig1_text()), random_bits(rng, 1000))
    chain = end_to_end(6, 3, 2, parse_tree(chain_text(5)), random_bits(rng, 999))
    ok = (fig1.all_recovered and len(fig1.nodes) == 13
          and fig1.rate > fig1.baseline == 0.5
          and chain.all_recovered
          and chain.rate == 1.5 > chain.baseline)
    _report(8, ok, f"fig-1 tree: 13/13 recovered at rate {fig1.rate:.4f} > 0.5; "
                   f"depth-5 chain: recovered at 1.5 > {chain.baseline:.4f}")


def test_criterion_9_table_reproduction():
    published = {
        "2": (89.82, 64.70), "3": (94.79, 68.27), "5": (97.80, 70.43),
        "11": (99.44, 71.62), "inf": (100.00, 72.02),
    }
    rows = table_report(1)
    worst = 0.0
    for row in rows:
        cc, sf = published[row.depth]
        worst = max(worst, abs(row.constrained_pct - cc),
                    abs(row.forwarding_pct - sf))
    ok = worst <= 0.05 and baseline_rate(1) == 0.5
    _report(9, ok, f"all ten percentages within {worst:.4f} <= 0.05 points; "
                   f"baseline_rate(1) == 0.5 exactly")
