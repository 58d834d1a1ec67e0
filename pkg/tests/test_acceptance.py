"""Acceptance suite: every release-gating check, one printed line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines. The
arithmetic-progression criteria run over a fixed grid of 25 parameter
triples; block-structure claims are checked only for stride gaps c >= b+2,
where the predictions hold (see test_arith for the honest treatment of
c = b+1 families).
"""

import json
import random

import numpy as np
import pytest

from ccsub.arith import detect_period, verify_arith
from ccsub.cli import main
from ccsub.consecutive import closed_form_base, closed_form_complement
from ccsub.engine import build_table, mex, table_from_csv, winning_moves
from ccsub.rules import (
    Consecutive,
    Explicit,
    FiniteArithmetic,
    Position,
    Side,
    options,
    parse_ruleset,
)

from helpers import brute_period, is_primitive

K_RANGE = range(1, 31)
N_MAX = 3000

GRID = [
    (8, 13, 3),
    (5, 7, 0), (5, 7, 2), (5, 8, 0), (5, 8, 2), (5, 8, 4),
    (6, 8, 1), (6, 9, 3), (6, 10, 0), (7, 9, 2), (7, 10, 4),
    (7, 12, 1), (8, 10, 0), (8, 13, 0), (8, 14, 2), (9, 12, 4),
    (9, 16, 1), (10, 13, 2), (10, 18, 3), (12, 15, 1), (12, 22, 4),
    (15, 19, 2), (15, 25, 3), (20, 24, 0), (23, 25, 1),
]


def _line(name: str, ok: bool, detail: str) -> bool:
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def test_grid_is_well_formed():
    assert len(GRID) >= 20
    assert (8, 13, 3) in GRID
    assert len(set(GRID)) == len(GRID)
    for b, c, i_max in GRID:
        assert 5 <= b < c <= 25
        assert 2 * b >= c + 2
        assert 0 <= i_max <= 4


@pytest.fixture(scope="module")
def consecutive_sweep():
    results = {}
    for k in K_RANGE:
        table = build_table(Consecutive(k), N_MAX)
        base_expected = np.asarray([closed_form_base(k, n) for n in range(N_MAX + 1)])
        comp_expected = np.asarray([closed_form_complement(k, n) for n in range(N_MAX + 1)])
        results[k] = (table, base_expected, comp_expected)
    return results


@pytest.fixture(scope="module")
def grid_reports():
    return {
        (b, c, i): verify_arith(b, c, i, 11 * (2 * b + i * c))
        for (b, c, i) in GRID
    }


def test_criterion_1_closed_form_exactness(consecutive_sweep):
    mismatches = 0
    comparisons = 0
    for k, (table, base_expected, comp_expected) in consecutive_sweep.items():
        mismatches += int((table.base != base_expected).sum())
        mismatches += int((table.complement != comp_expected).sum())
        comparisons += 2 * (N_MAX + 1)
    ok = mismatches == 0 and comparisons == 2 * len(list(K_RANGE)) * (N_MAX + 1)
    assert _line(
        "criterion 1, closed-form exactness",
        ok,
        f"{comparisons} comparisons, {mismatches} mismatches",
    )


def test_criterion_2_complement_monotonicity(consecutive_sweep):
    violations = 0
    for k, (table, _, _) in consecutive_sweep.items():
        row = table.complement
        violations += int((np.diff(row[k + 1 :]) < 0).sum())
    ok = violations == 0
    assert _line(
        "criterion 2, complement row monotone past k",
        ok,
        f"k in 1..30, n up to {N_MAX}, {violations} violations",
    )


def test_criterion_3_periodicity(grid_reports):
    bad = []
    for (b, c, i), report in grid_reports.items():
        p = report.predicted_period
        # verify_arith asserts equality on 2p <= n <= n_max - p = 10p exactly
        if not (report.theorem_3_9_ok and report.predicted_period % report.detected_period == 0):
            bad.append((b, c, i))
    ok = not bad
    assert _line(
        "criterion 3, period 2b+i_max*c holds on [2p, 10p]",
        ok,
        f"{len(grid_reports)} triples, failures: {bad}",
    )


def test_criterion_4_block_structure(grid_reports):
    contradictions = []
    asserted = 0
    conflicted = 0
    for key, report in grid_reports.items():
        for entry in report.block_check:
            if entry.agrees is None:
                conflicted += entry.prediction.value == "conflict"
                continue
            asserted += 1
            if not entry.agrees:
                contradictions.append((key, entry.offset))
    ok = not contradictions
    assert _line(
        "criterion 4, block-value predictions",
        ok,
        f"{asserted} classified offsets asserted, {conflicted} conflicted offsets "
        f"reported not asserted, contradictions: {contradictions}",
    )


def test_criterion_5_finite_infinite_agreement(grid_reports):
    bad = [key for key, report in grid_reports.items() if not report.lemma_3_1_ok]
    ok = not bad
    assert _line(
        "criterion 5, cut vs uncut progression agree below p",
        ok,
        f"{len(grid_reports)} triples, both sides, failures: {bad}",
    )


def test_criterion_6_complement_bounds(grid_reports):
    bad_38 = [key for key, report in grid_reports.items() if not report.lemma_3_8_ok]
    bad_32 = [key for key, report in grid_reports.items() if not report.lemma_3_2_ok]
    literal_missing = []
    for (b, c, i), report in grid_reports.items():
        first, last, count = report.lemma_3_2_literal_failures
        small = build_table(FiniteArithmetic(b, c, i), b - 1)
        if not (first == 2 and (small.base[2:] < 2).all() and count >= b - 2):
            literal_missing.append((b, c, i))
    ok = not bad_38 and not bad_32 and not literal_missing
    assert _line(
        "criterion 6, complement bounds and literal-reading record",
        ok,
        f"complement > 2*i_max from p: {len(GRID) - len(bad_38)}/{len(GRID)}; "
        f"complement >= 2 from 2: {len(GRID) - len(bad_32)}/{len(GRID)}; "
        f"base-side reading fails on every heap in [2, b) as recorded",
    )


def test_criterion_7_oracle_property_suite():
    rng = random.Random(424243)
    problems = []

    # mex laws on random multisets
    for _ in range(500):
        vals = [rng.randint(0, 12) for _ in range(rng.randint(0, 20))]
        m = mex(vals)
        if m in vals or m > len(vals) or mex(vals + [m]) <= m:
            problems.append(("mex", vals))

    # winning-move soundness across rulesets and positions
    rulesets = [Consecutive(2), Consecutive(5), FiniteArithmetic(5, 8, 2), Explicit([3, 7, 10])]
    for rules in rulesets:
        table = build_table(rules, 80)
        for n in range(0, 81, 7):
            for side in (Side.BASE, Side.COMPLEMENT):
                pos = Position(n, side)
                moves = winning_moves(rules, pos)
                has_options = bool(options(rules, pos))
                value = table.value(n, side)
                if has_options and (value > 0) != bool(moves):
                    problems.append(("winning-moves", rules.text, n, side.value))
                if any(table.value(n - s, opp) != 0 for s, opp in moves):
                    problems.append(("winning-moves-target", rules.text, n, side.value))

    # determinism: byte-identical rebuilds
    a = build_table(FiniteArithmetic(8, 13, 3), 400)
    b = build_table(FiniteArithmetic(8, 13, 3), 400)
    if a.to_csv().encode() != b.to_csv().encode() or a.to_json() != b.to_json():
        problems.append(("determinism",))

    # period detector recovers the primitive period on synthetic sequences
    recovered = 0
    attempts = 0
    while recovered < 120 and attempts < 5000:
        attempts += 1
        q = rng.randint(1, 12)
        word = [rng.randint(0, 5) for _ in range(q)]
        if not is_primitive(word):
            continue
        prefix = [rng.randint(0, 5) for _ in range(rng.randint(0, 15))]
        seq = prefix + word * rng.randint(4, 8)
        expected = brute_period(seq)
        if expected is None or expected[1] != q:
            continue  # degenerate trailing repetition; contract answers differently
        rho, got = detect_period(seq)
        if got != q or rho > len(prefix):
            problems.append(("detect", seq))
        recovered += 1
    if recovered < 100:
        problems.append(("detect-sample-size", recovered))

    ok = not problems
    assert _line(
        "criterion 7, oracle and property suite",
        ok,
        f"500 mex draws, {len(rulesets)} rulesets of winning-move checks, "
        f"byte-identical rebuilds, {recovered} synthetic period recoveries; "
        f"problems: {problems[:5]}",
    )


def test_criterion_8_cli_contract(tmp_path, capsys):
    path = tmp_path / "big.csv"
    code = main(["table", "--set", "set:8,21,34,47", "--nmax", "9999",
                 "--format", "csv", "--out", str(path)])
    capsys.readouterr()
    rules = parse_ruleset("set:8,21,34,47")
    text = path.read_text()
    rows = text.count("\n") - 1
    parsed = table_from_csv(text, rules)
    round_trip_ok = (
        code == 0
        and rows == 10_000
        and parsed == build_table(rules, 9999)
        and parsed.to_csv() == text
    )

    codes = {}
    codes["verify-consecutive"] = main(["verify", "--set", "k=5", "--nmax", "2000"])
    codes["verify-arith"] = main(["verify", "--set", "arith:8,13,3", "--nmax", "550"])
    codes["verify-hypothesis"] = main(["verify", "--set", "arith:3,10,1", "--nmax", "100"])
    codes["period-unbounded"] = main(["period", "--set", "k=2", "--nmax", "300", "--side", "comp"])
    capsys.readouterr()
    exit_ok = (
        codes["verify-consecutive"] == 0
        and codes["verify-arith"] == 0
        and codes["verify-hypothesis"] == 2
        and codes["period-unbounded"] == 1
    )

    ok = round_trip_ok and exit_ok
    assert _line(
        "criterion 8, CLI contract",
        ok,
        f"csv round-trip on {rows} rows: {'ok' if round_trip_ok else 'BROKEN'}; "
        f"exit codes {codes}",
    )
