"""Closed forms for consecutive base sets {1..k} and their verification.

Both constraint sides admit exact formulas. The base side counts up to 2k and
then cycles through residues; the complement side is flat at 0 below k, climbs
linearly to 2k, and from there grows by one every k+1 heaps without bound.
All arithmetic is exact integers; the mod convention is the smallest
nonnegative residue and ceiling division is (a + b - 1) // b.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .engine import DEFAULT_STATE_CEILING, build_table
from .rules import Consecutive, Side


class ConsecutiveCase(Enum):
    """Which clause of the closed form covers a given (k, n, side)."""

    A_LOW = "A_low"           # base side, 0 <= n <= 2k: value n
    A_PERIODIC = "A_periodic"  # base side, n > 2k: (n+1) mod (k+1)
    B_ZERO = "B_zero"         # complement side, n < k: no moves, value 0
    B_LINEAR = "B_linear"     # complement side, k <= n <= 3k: value n - k
    B_LOG = "B_log"           # complement side, n > 3k: 2k + ceil((n-3k)/(k+1))


def classify(k: int, n: int, side: Side) -> ConsecutiveCase:
    if side is Side.BASE:
        return ConsecutiveCase.A_LOW if n <= 2 * k else ConsecutiveCase.A_PERIODIC
    if n < k:
        return ConsecutiveCase.B_ZERO
    if n <= 3 * k:
        return ConsecutiveCase.B_LINEAR
    return ConsecutiveCase.B_LOG


def closed_form_base(k: int, n: int) -> int:
    """Grundy value of (n, base side) for the set {1..k}."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 0:
        raise ValueError(f"heap size must be >= 0, got {n}")
    if n <= 2 * k:
        return n
    return (n + 1) % (k + 1)


def closed_form_complement(k: int, n: int) -> int:
    """Grundy value of (n, complement side) for the set {1..k}."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 0:
        raise ValueError(f"heap size must be >= 0, got {n}")
    if n < k:
        return 0
    if n <= 3 * k:
        return n - k
    return 2 * k + (n - 3 * k + k) // (k + 1)  # 2k + ceil((n-3k)/(k+1))


@dataclass(frozen=True)
class Mismatch:
    n: int
    side: Side
    case: ConsecutiveCase
    expected: int  # closed form
    actual: int    # engine


@dataclass(frozen=True)
class ConsecutiveReport:
    """Closed form vs engine comparison over heap sizes 0..n_max, both sides."""

    k: int
    n_max: int
    passed: bool
    mismatches: tuple[Mismatch, ...]
    monotonicity_ok: bool
    comparisons: int = field(compare=False, default=0)

    def to_json(self) -> str:
        return json.dumps(
            {
                "family": "consecutive",
                "k": self.k,
                "n_max": self.n_max,
                "passed": self.passed,
                "mismatches": [
                    {
                        "n": m.n,
                        "side": m.side.value,
                        "case": m.case.value,
                        "expected": m.expected,
                        "actual": m.actual,
                    }
                    for m in self.mismatches
                ],
                "monotonicity_ok": self.monotonicity_ok,
            }
        )


def verify_consecutive(
    k: int, n_max: int, *, state_ceiling: int = DEFAULT_STATE_CEILING
) -> ConsecutiveReport:
    """Compare both closed forms against the engine for every heap size.

    Mismatches are tagged with the formula clause they fall under, so a
    failure points at a specific branch. Also checks that the engine's
    complement row never decreases past n = k.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    table = build_table(Consecutive(k), n_max, state_ceiling=state_ceiling)
    ns = np.arange(n_max + 1)
    expected_base = np.asarray([closed_form_base(k, n) for n in range(n_max + 1)])
    expected_comp = np.asarray([closed_form_complement(k, n) for n in range(n_max + 1)])
    mismatches: list[Mismatch] = []
    for side, expected, actual in (
        (Side.BASE, expected_base, table.base),
        (Side.COMPLEMENT, expected_comp, table.complement),
    ):
        for n in ns[expected != actual]:
            n = int(n)
            mismatches.append(
                Mismatch(n, side, classify(k, n, side), int(expected[n]), int(actual[n]))
            )
    # complement row must be nondecreasing for n > k
    tail = table.complement[k + 1 :]
    monotonicity_ok = bool((np.diff(tail) >= 0).all()) if tail.size > 1 else True
    return ConsecutiveReport(
        k=k,
        n_max=n_max,
        passed=not mismatches,
        mismatches=tuple(mismatches),
        monotonicity_ok=monotonicity_ok,
        comparisons=2 * (n_max + 1),
    )
