"""Test-side reference implementations, kept independent of the package code.

These are deliberately naive: top-down memoized recursion for Grundy values
straight off the option definition, and a double-loop period scanner. They
exist so the package's fast paths are checked against something with no
shared machinery.
"""

from __future__ import annotations

from hypothesis import strategies as st

from ccsub.rules import (
    Consecutive,
    Explicit,
    FiniteArithmetic,
    InfiniteArithmetic,
    Side,
)


def naive_grundy(rules, n: int, side: Side, memo=None) -> int:
    """Memoized top-down recursion; fine up to a couple hundred stones."""
    if memo is None:
        memo = {}
    key = (n, side)
    if key in memo:
        return memo[key]
    vals = set()
    for s in range(1, n + 1):
        in_base = rules.has(s)
        if (side is Side.BASE) == in_base:
            vals.add(naive_grundy(rules, n - s, Side.BASE, memo))
            vals.add(naive_grundy(rules, n - s, Side.COMPLEMENT, memo))
    g = 0
    while g in vals:
        g += 1
    memo[key] = g
    return g


def brute_period(values, min_tail_multiple: int = 3):
    """Double-loop version of the period-detection contract.

    Returns (preperiod, period) for the smallest period whose minimal
    preperiod leaves at least min_tail_multiple periods of evidence, or None.
    """
    vals = list(values)
    length = len(vals)
    if length < 4:
        return None
    for q in range(1, length):
        rho = 0
        for n in range(length - 1 - q, -1, -1):
            if vals[n + q] != vals[n]:
                rho = n + 1
                break
        if length - 1 - rho >= min_tail_multiple * q:
            return rho, q
    return None


def is_primitive(word) -> bool:
    """True if no proper divisor length repeats to give the word."""
    length = len(word)
    for d in range(1, length):
        if length % d == 0 and word == word[:d] * (length // d):
            return False
    return True


consecutive_rulesets = st.builds(Consecutive, st.integers(1, 12))
finite_arith_rulesets = st.builds(
    FiniteArithmetic, st.integers(1, 12), st.integers(1, 15), st.integers(0, 4)
)
infinite_arith_rulesets = st.builds(
    InfiniteArithmetic, st.integers(1, 12), st.integers(1, 15)
)
explicit_rulesets = st.builds(
    Explicit, st.lists(st.integers(1, 40), min_size=1, max_size=6)
)
any_ruleset = st.one_of(
    consecutive_rulesets,
    finite_arith_rulesets,
    infinite_arith_rulesets,
    explicit_rulesets,
)
sides = st.sampled_from([Side.BASE, Side.COMPLEMENT])
