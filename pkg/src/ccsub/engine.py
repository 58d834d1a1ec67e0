"""Grundy value engine: mex dynamic programming over both constraint sides.

Everything downstream (closed-form checks, periodicity analysis, the CLI)
treats this module as ground truth. Two routes compute the same values:

* :func:`grundy` is the definitional route. It walks heap sizes bottom-up and
  takes the mex over the values of :func:`ccsub.rules.options` at each state.
  No tricks, easy to audit, fine for small heaps.
* :func:`build_table` is the fast route used for bulk table building. It runs
  the same bottom-up recurrence but gathers option values with numpy and does
  the excludant scan on a fresh presence array of size ``|options|+1`` per
  state, so each state costs O(|options|).

The two are cross-checked against each other in the test suite; neither is
derived from the other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .rules import Position, RuleSet, Side, options, legal_moves, parse_ruleset

#: Ceiling on states per side; guards against accidental huge builds. The
#: complement side of a consecutive set costs O(n) per state, so a run at the
#: ceiling is a deliberate, long computation.
DEFAULT_STATE_CEILING = 10_000_000


class ResourceLimitError(RuntimeError):
    """Requested heap size exceeds the configured state ceiling."""


def _check_ceiling(n: int, state_ceiling: int) -> None:
    if n + 1 > state_ceiling:
        raise ResourceLimitError(
            f"heap size {n} needs {n + 1} states per side, over the ceiling of "
            f"{state_ceiling}; raise the ceiling to run this deliberately"
        )


def mex(values: Iterable[int]) -> int:
    """Smallest nonnegative integer absent from ``values``.

    Duplicates and an empty collection are fine. Runs in O(len) using a
    presence array: the answer never exceeds the number of values given.
    """
    vals = list(values)
    bound = len(vals)
    present = bytearray(bound + 1)
    for v in vals:
        if v < 0:
            raise ValueError(f"mex is over nonnegative integers, got {v}")
        if v <= bound:
            present[v] = 1
    for i in range(bound + 1):
        if not present[i]:
            return i
    return bound + 1  # unreachable: bound+1 slots, <= bound values


def grundy(rules: RuleSet, pos: Position, *, state_ceiling: int = DEFAULT_STATE_CEILING) -> int:
    """Grundy value of ``pos``, computed from the option recurrence directly.

    A position with no options has value 0; otherwise the value is the mex of
    its options' values. Bottom-up over heap sizes, both sides per heap.
    """
    _check_ceiling(pos.n, state_ceiling)
    rows = {Side.BASE: [0] * (pos.n + 1), Side.COMPLEMENT: [0] * (pos.n + 1)}
    for n in range(1, pos.n + 1):
        for side in (Side.BASE, Side.COMPLEMENT):
            opts = options(rules, Position(n, side))
            rows[side][n] = mex(rows[o.side][o.n] for o in opts)
    return rows[pos.side][pos.n]


def _mex_arr(vals: np.ndarray) -> int:
    # Presence array of size |vals|+1; argmin finds the first False slot.
    bound = vals.size
    present = np.zeros(bound + 1, dtype=bool)
    present[vals[vals <= bound]] = True
    return int(present.argmin())


def _member_array(rules: RuleSet, n_max: int) -> np.ndarray:
    """Ascending members of the base set up to n_max, as an int64 array."""
    return np.asarray(rules.members_upto(n_max), dtype=np.int64)


@dataclass(frozen=True)
class GrundyTable:
    """Grundy values for one ruleset, both sides, heap sizes 0..n_max.

    The value arrays are read-only; a finished table is safe to share.
    """

    rules: RuleSet
    n_max: int
    base: np.ndarray
    complement: np.ndarray

    def value(self, n: int, side: Side) -> int:
        row = self.base if side is Side.BASE else self.complement
        return int(row[n])

    def row(self, side: Side) -> np.ndarray:
        return self.base if side is Side.BASE else self.complement

    def to_csv(self) -> str:
        """CSV with header ``n,G_base,G_complement``, one row per heap size, LF endings."""
        lines = ["n,G_base,G_complement"]
        for n in range(self.n_max + 1):
            lines.append(f"{n},{self.base[n]},{self.complement[n]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "ruleset": self.rules.text,
                "n_max": self.n_max,
                "base": [int(v) for v in self.base],
                "complement": [int(v) for v in self.complement],
            }
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrundyTable):
            return NotImplemented
        return (
            self.rules == other.rules
            and self.n_max == other.n_max
            and np.array_equal(self.base, other.base)
            and np.array_equal(self.complement, other.complement)
        )


def build_table(rules: RuleSet, n_max: int, *, state_ceiling: int = DEFAULT_STATE_CEILING) -> GrundyTable:
    """Build the full Grundy table bottom-up.

    Cost is O(sum over heaps of the option count): the base side touches at
    most |S| options per heap, the complement side touches nearly all smaller
    heaps, both sides, per heap.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    _check_ceiling(n_max, state_ceiling)
    base = np.zeros(n_max + 1, dtype=np.int64)
    comp = np.zeros(n_max + 1, dtype=np.int64)
    members = _member_array(rules, n_max)
    count = 0  # how many members are <= n, advanced as n grows
    for n in range(1, n_max + 1):
        while count < members.size and members[count] <= n:
            count += 1
        mv = members[:count]
        heaps = n - mv
        if count:
            base[n] = _mex_arr(np.concatenate((base[heaps], comp[heaps])))
        # Complement moves reach every smaller heap except those a base move reaches.
        keep = np.ones(n, dtype=bool)
        keep[heaps] = False
        if keep.any():
            comp[n] = _mex_arr(np.concatenate((base[:n][keep], comp[:n][keep])))
    base.flags.writeable = False
    comp.flags.writeable = False
    return GrundyTable(rules=rules, n_max=n_max, base=base, complement=comp)


def winning_moves(
    rules: RuleSet, pos: Position, *, state_ceiling: int = DEFAULT_STATE_CEILING
) -> list[tuple[int, Side]]:
    """Moves (s, opponent side) that land the opponent on a value-0 position.

    Empty exactly when ``pos`` itself has value 0 or no options. Ordered by
    move size, BASE before COMPLEMENT at equal size.
    """
    if pos.n == 0:
        return []
    table = build_table(rules, pos.n, state_ceiling=state_ceiling)
    out: list[tuple[int, Side]] = []
    for s in legal_moves(rules, pos):
        for side in (Side.BASE, Side.COMPLEMENT):
            if table.value(pos.n - s, side) == 0:
                out.append((s, side))
    return out


def table_from_csv(text: str, rules: RuleSet) -> GrundyTable:
    """Rebuild a GrundyTable from its CSV export (inverse of ``to_csv``)."""
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != "n,G_base,G_complement":
        raise ValueError("missing or malformed CSV header, expected n,G_base,G_complement")
    base: list[int] = []
    comp: list[int] = []
    for i, ln in enumerate(lines[1:]):
        parts = ln.split(",")
        if len(parts) != 3:
            raise ValueError(f"row {i}: expected 3 fields, got {len(parts)}")
        n, gb, gc = (int(p) for p in parts)
        if n != i:
            raise ValueError(f"row {i}: out-of-order heap size {n}")
        base.append(gb)
        comp.append(gc)
    if not base:
        raise ValueError("CSV has no data rows")
    barr = np.asarray(base, dtype=np.int64)
    carr = np.asarray(comp, dtype=np.int64)
    barr.flags.writeable = False
    carr.flags.writeable = False
    return GrundyTable(rules=rules, n_max=len(base) - 1, base=barr, complement=carr)


def table_from_json(text: str) -> GrundyTable:
    """Rebuild a GrundyTable from its JSON export (inverse of ``to_json``)."""
    obj = json.loads(text)
    rules = parse_ruleset(obj["ruleset"])
    barr = np.asarray(obj["base"], dtype=np.int64)
    carr = np.asarray(obj["complement"], dtype=np.int64)
    if obj["n_max"] != barr.size - 1 or barr.size != carr.size:
        raise ValueError("inconsistent n_max and value array lengths")
    barr.flags.writeable = False
    carr.flags.writeable = False
    return GrundyTable(rules=rules, n_max=int(obj["n_max"]), base=barr, complement=carr)
