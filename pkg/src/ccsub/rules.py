"""Rulesets, positions, and move enumeration for comply/constrain subtraction.

The game is played on a single heap of ``n`` stones with a fixed set ``S`` of
positive integers. A move removes ``s`` stones, where ``s`` is drawn either
from ``S`` or from its complement, whichever constraint the previous player
imposed. Along with the physical move, the mover picks the constraint the
opponent plays under next. The first player without a legal move loses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Union


class Side(Enum):
    """Constraint a player moves under: draw from the base set or its complement."""

    BASE = "base"
    COMPLEMENT = "comp"

    @property
    def other(self) -> "Side":
        return Side.COMPLEMENT if self is Side.BASE else Side.BASE


class RulesetSyntaxError(ValueError):
    """Raised when a ruleset string cannot be parsed; names the offending token."""


@dataclass(frozen=True, slots=True)
class Consecutive:
    """Base set {1, 2, ..., k}."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    def has(self, s: int) -> bool:
        return 1 <= s <= self.k

    def members_upto(self, n: int) -> Sequence[int]:
        return range(1, min(self.k, n) + 1)

    @property
    def text(self) -> str:
        return f"k={self.k}"


@dataclass(frozen=True, slots=True)
class FiniteArithmetic:
    """Base set {b + i*c : 0 <= i <= i_max}.

    Construction only requires positive b, c and nonnegative i_max. The
    periodicity analysis additionally assumes (c+2)/2 <= b < c; rulesets
    violating that are still usable for table building and exploration but
    carry ``hypothesis_ok == False`` and are refused by the analysis layer.
    """

    b: int
    c: int
    i_max: int

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError(f"b must be >= 1, got {self.b}")
        if self.c < 1:
            raise ValueError(f"c must be >= 1, got {self.c}")
        if self.i_max < 0:
            raise ValueError(f"i_max must be >= 0, got {self.i_max}")

    @property
    def hypothesis_ok(self) -> bool:
        # (c+2)/2 <= b < c, compared in exact integer arithmetic.
        return 2 * self.b >= self.c + 2 and self.b < self.c

    @property
    def largest(self) -> int:
        return self.b + self.i_max * self.c

    def has(self, s: int) -> bool:
        return self.b <= s <= self.largest and (s - self.b) % self.c == 0

    def members_upto(self, n: int) -> Sequence[int]:
        if n < self.b:
            return []
        top = min(self.i_max, (n - self.b) // self.c)
        return [self.b + i * self.c for i in range(top + 1)]

    @property
    def text(self) -> str:
        return f"arith:{self.b},{self.c},{self.i_max}"


@dataclass(frozen=True, slots=True)
class InfiniteArithmetic:
    """Base set {b + i*c : i >= 0}, the uncut progression."""

    b: int
    c: int

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError(f"b must be >= 1, got {self.b}")
        if self.c < 1:
            raise ValueError(f"c must be >= 1, got {self.c}")

    @property
    def hypothesis_ok(self) -> bool:
        return 2 * self.b >= self.c + 2 and self.b < self.c

    def has(self, s: int) -> bool:
        return s >= self.b and (s - self.b) % self.c == 0

    def members_upto(self, n: int) -> Sequence[int]:
        if n < self.b:
            return []
        return range(self.b, n + 1, self.c)

    @property
    def text(self) -> str:
        return f"inf-arith:{self.b},{self.c}"


@dataclass(frozen=True)
class Explicit:
    """Arbitrary finite base set, kept as a sorted tuple of distinct positives."""

    elements: tuple[int, ...]
    _set: frozenset[int] = field(init=False, repr=False, compare=False)

    def __init__(self, elements) -> None:
        elems = tuple(sorted(set(int(e) for e in elements)))
        if not elems:
            raise ValueError("explicit ruleset needs at least one element")
        if elems[0] < 1:
            raise ValueError(f"elements must be >= 1, got {elems[0]}")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_set", frozenset(elems))

    def has(self, s: int) -> bool:
        return s in self._set

    def members_upto(self, n: int) -> Sequence[int]:
        return [e for e in self.elements if e <= n]

    @property
    def text(self) -> str:
        return "set:" + ",".join(str(e) for e in self.elements)


RuleSet = Union[Consecutive, FiniteArithmetic, InfiniteArithmetic, Explicit]


@dataclass(frozen=True, slots=True)
class Position:
    """Heap size plus the constraint the player to move is under."""

    n: int
    side: Side

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"heap size must be >= 0, got {self.n}")


def contains(rules: RuleSet, side: Side, s: int) -> bool:
    """True iff ``s`` belongs to the move set for ``side`` (S, or Z+ minus S)."""
    if s < 1:
        raise ValueError(f"moves are positive integers, got {s}")
    inside = rules.has(s)
    return inside if side is Side.BASE else not inside


def legal_moves(rules: RuleSet, pos: Position) -> list[int]:
    """Ascending moves available from ``pos``: the side's set intersected with [1, n]."""
    if pos.side is Side.BASE:
        return list(rules.members_upto(pos.n))
    return [s for s in range(1, pos.n + 1) if not rules.has(s)]


def options(rules: RuleSet, pos: Position) -> list[Position]:
    """All positions reachable in one move.

    Each legal move ``s`` yields two options, (n-s, BASE) and (n-s, COMPLEMENT),
    since the mover also picks the opponent's constraint. Moves are distinct,
    so the (n, side) pairs are distinct as emitted.
    """
    out: list[Position] = []
    for s in legal_moves(rules, pos):
        m = pos.n - s
        out.append(Position(m, Side.BASE))
        out.append(Position(m, Side.COMPLEMENT))
    return out


def parse_side(token: str) -> Side:
    t = token.strip().lower()
    if t in ("base", "b", "s"):
        return Side.BASE
    if t in ("comp", "complement", "c"):
        return Side.COMPLEMENT
    raise RulesetSyntaxError(f"unknown side {token!r} (expected 'base' or 'comp')")


def _parse_int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise RulesetSyntaxError(f"bad {what} {token!r}: not an integer") from None


def parse_ruleset(text: str) -> RuleSet:
    """Parse the shared ruleset syntax.

    Accepted forms: ``k=K``, ``arith:B,C,IMAX``, ``inf-arith:B,C`` and
    ``set:a,b,c,...``. Raises RulesetSyntaxError naming the bad token.
    """
    t = text.strip()
    if t.startswith("k="):
        k = _parse_int(t[2:], "k")
        if k < 1:
            raise RulesetSyntaxError(f"bad k {t[2:]!r}: must be >= 1")
        return Consecutive(k)
    if t.startswith("arith:"):
        parts = t[len("arith:"):].split(",")
        if len(parts) != 3:
            raise RulesetSyntaxError(f"bad arith ruleset {t!r}: expected arith:B,C,IMAX")
        b = _parse_int(parts[0], "b")
        c = _parse_int(parts[1], "c")
        i_max = _parse_int(parts[2], "i_max")
        try:
            return FiniteArithmetic(b, c, i_max)
        except ValueError as exc:
            raise RulesetSyntaxError(f"bad arith ruleset {t!r}: {exc}") from None
    if t.startswith("inf-arith:"):
        parts = t[len("inf-arith:"):].split(",")
        if len(parts) != 2:
            raise RulesetSyntaxError(f"bad inf-arith ruleset {t!r}: expected inf-arith:B,C")
        b = _parse_int(parts[0], "b")
        c = _parse_int(parts[1], "c")
        try:
            return InfiniteArithmetic(b, c)
        except ValueError as exc:
            raise RulesetSyntaxError(f"bad inf-arith ruleset {t!r}: {exc}") from None
    if t.startswith("set:"):
        tokens = t[len("set:"):].split(",")
        elems = [_parse_int(tok, "set element") for tok in tokens]
        bad = [e for e in elems if e < 1]
        if bad:
            raise RulesetSyntaxError(f"bad set element {bad[0]!r}: must be >= 1")
        return Explicit(elems)
    raise RulesetSyntaxError(
        f"unrecognized ruleset {text!r} (expected k=K, arith:B,C,IMAX, inf-arith:B,C or set:...)"
    )
