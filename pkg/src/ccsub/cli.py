"""Command-line front end.

Subcommands: ``grundy`` (one value), ``table`` (full table as pretty text,
CSV or JSON, optionally with a rendered figure), ``verify`` (closed-form or
periodicity verification reports), ``period`` (empirical period detection)
and ``play`` (interactive game against the engine).

Exit codes: 0 success / verification passed; 1 verification failed or not
enough data to certify a period; 2 bad arguments, bad ruleset syntax, or
parameters outside the analysis hypothesis; 3 state ceiling exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import IO

from .arith import (
    BlockPrediction,
    HypothesisViolationError,
    InsufficientDataError,
    PeriodReport,
    detect_period,
    verify_arith,
)
from .consecutive import ConsecutiveReport, verify_consecutive
from .engine import (
    DEFAULT_STATE_CEILING,
    GrundyTable,
    ResourceLimitError,
    build_table,
    winning_moves,
)
from .rules import (
    Consecutive,
    FiniteArithmetic,
    Position,
    RulesetSyntaxError,
    Side,
    legal_moves,
    parse_ruleset,
    parse_side,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _side(text: str) -> Side:
    try:
        return parse_side(text)
    except RulesetSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccsub",
        description="Grundy values and periodicity checks for comply/constrain subtraction games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--set", dest="ruleset", required=True, metavar="RULESET",
                       help="ruleset: k=K, arith:B,C,IMAX, inf-arith:B,C, or set:a,b,...")
        p.add_argument("--state-ceiling", type=int, default=DEFAULT_STATE_CEILING,
                       help="max states per side (default %(default)s)")

    p = sub.add_parser("grundy", help="print the value of one position")
    common(p)
    p.add_argument("--n", type=_nonneg, required=True, help="heap size")
    p.add_argument("--side", type=_side, default=Side.BASE, help="base or comp")
    p.add_argument("--verbose", action="store_true", help="also list winning moves")
    p.set_defaults(func=cmd_grundy)

    p = sub.add_parser("table", help="emit the value table for heaps 0..nmax")
    common(p)
    p.add_argument("--nmax", type=_nonneg, required=True)
    p.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--plot", help="also render the table to this image file")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check the closed forms or the period predictions")
    common(p)
    p.add_argument("--nmax", type=_nonneg, required=True)
    p.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    p.add_argument("--plot", help="also render the report to this image file")
    p.add_argument("--allow-small-b", action="store_true",
                   help="proceed for b < 5 with complement-bound checks informational")
    p.add_argument("--min-tail-multiple", type=int, default=3,
                   help="periods of trailing evidence required (default %(default)s)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("period", help="detect (preperiod, period) of one value row")
    common(p)
    p.add_argument("--nmax", type=_nonneg, required=True)
    p.add_argument("--side", type=_side, default=Side.BASE)
    p.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    p.add_argument("--out")
    p.add_argument("--min-tail-multiple", type=int, default=3)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("play", help="play against the engine")
    common(p)
    p.add_argument("--n", type=_nonneg, required=True, help="starting heap size")
    p.add_argument("--side", type=_side, default=Side.BASE,
                   help="constraint you start under (base or comp)")
    p.set_defaults(func=cmd_play)
    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_grundy(args: argparse.Namespace) -> int:
    rules = parse_ruleset(args.ruleset)
    table = build_table(rules, args.n, state_ceiling=args.state_ceiling)
    print(table.value(args.n, args.side))
    if args.verbose:
        moves = winning_moves(rules, Position(args.n, args.side), state_ceiling=args.state_ceiling)
        if moves:
            listing = ", ".join(f"take {s} -> opponent on {side.value}" for s, side in moves)
            print(f"winning moves: {listing}")
        else:
            print("no winning move from here")
    return EXIT_OK


def _pretty_table(table: GrundyTable, block_width: int | None) -> str:
    lines: list[str] = []
    if block_width:
        width = max(len(str(int(max(table.base.max(), table.complement.max())))), 2)
        header = "  " + " ".join(f"{off:>{width}}" for off in range(block_width))
        for name, row in (("base", table.base), ("complement", table.complement)):
            lines.append(f"{name} side (columns are offsets within a block of {block_width}):")
            lines.append(header)
            for start in range(0, table.n_max + 1, block_width):
                cells = " ".join(
                    f"{int(row[n]):>{width}}"
                    for n in range(start, min(start + block_width, table.n_max + 1))
                )
                lines.append("  " + cells)
            lines.append("")
    else:
        lines.append(f"{'n':>6} {'G_base':>8} {'G_complement':>12}")
        for n in range(table.n_max + 1):
            lines.append(f"{n:>6} {int(table.base[n]):>8} {int(table.complement[n]):>12}")
    return "\n".join(lines) + "\n"


def cmd_table(args: argparse.Namespace) -> int:
    rules = parse_ruleset(args.ruleset)
    table = build_table(rules, args.nmax, state_ceiling=args.state_ceiling)
    block_width = None
    period_note = None
    if isinstance(rules, FiniteArithmetic):
        block_width = 2 * rules.b + rules.i_max * rules.c
        if rules.hypothesis_ok:
            period_note = block_width
    if args.format == "csv":
        text = table.to_csv()
    elif args.format == "json":
        payload = json.loads(table.to_json())
        if period_note is not None:
            payload["predicted_period"] = period_note
        text = json.dumps(payload) + "\n"
    else:
        text = _pretty_table(table, block_width)
        if period_note is not None:
            text += f"predicted period: {period_note}\n"
    _emit(text, args.out)
    if args.plot:
        from .plots import save_table_figure

        save_table_figure(table, args.plot, block_width=block_width)
    return EXIT_OK


def _pretty_consecutive(report: ConsecutiveReport) -> str:
    lines = [
        f"family: consecutive k={report.k}, heaps 0..{report.n_max}",
        f"comparisons: {report.comparisons}",
        f"complement row nondecreasing past k: {'yes' if report.monotonicity_ok else 'NO'}",
    ]
    if report.mismatches:
        lines.append(f"mismatches ({len(report.mismatches)}):")
        for m in report.mismatches[:50]:
            lines.append(
                f"  n={m.n} side={m.side.value} case={m.case.value} "
                f"closed-form={m.expected} engine={m.actual}"
            )
        if len(report.mismatches) > 50:
            lines.append(f"  ... {len(report.mismatches) - 50} more")
    lines.append("result: PASS" if report.passed else "result: FAIL")
    return "\n".join(lines) + "\n"


def _csv_consecutive(report: ConsecutiveReport) -> str:
    lines = ["n,side,case,expected,actual"]
    for m in report.mismatches:
        lines.append(f"{m.n},{m.side.value},{m.case.value},{m.expected},{m.actual}")
    return "\n".join(lines) + "\n"


def _pretty_period(report: PeriodReport) -> str:
    lines = [
        f"family: arith b={report.b} c={report.c} i_max={report.i_max}, heaps 0..{report.n_max}",
        f"predicted period: {report.predicted_period}",
        f"detected: preperiod {report.detected_preperiod}, period {report.detected_period}",
        f"period holds from 2p on: {'yes' if report.theorem_3_9_ok else 'NO'}"
        f" (from p on: {'yes' if report.periodic_from_p else 'no'})",
        f"finite/infinite agreement below p: {'yes' if report.lemma_3_1_ok else 'NO'}",
        f"complement >= 2 from n=2: {'yes' if report.lemma_3_2_ok else 'NO'}"
        + (" [informational]" if report.informational_bounds else ""),
        f"complement > 2*i_max from n=p: {'yes' if report.lemma_3_8_ok else 'NO'}"
        + (" [informational]" if report.informational_bounds else ""),
        f"largest base-side value seen: {report.observed_max_base}",
    ]
    if report.lemma_3_2_literal_failures:
        first, last, count = report.lemma_3_2_literal_failures
        lines.append(
            f"base-side reading of the >=2 bound fails at {count} heaps "
            f"(first {first}, last {last})"
        )
    disagreements = [e for e in report.block_check if e.agrees is False]
    if disagreements:
        lines.append(f"block offsets contradicting their prediction ({len(disagreements)}):")
        for e in disagreements[:50]:
            lines.append(
                f"  offset {e.offset}: predicted {e.prediction.value}, observed {e.observed}"
            )
    conflicts = report.block_conflicts
    if conflicts:
        lines.append(f"conflicted offsets (adjudicated by the table, not asserted): {conflicts}")
        for off in conflicts:
            e = report.block_check[off]
            lines.append(f"  offset {off}: observed class {e.observed}")
    lines.append("result: PASS" if report.passed else "result: FAIL")
    return "\n".join(lines) + "\n"


def _csv_period(report: PeriodReport) -> str:
    lines = ["offset,prediction,observed,agrees"]
    for e in report.block_check:
        observed = "" if e.observed is None else e.observed
        agrees = "" if e.agrees is None else str(e.agrees).lower()
        lines.append(f"{e.offset},{e.prediction.value},{observed},{agrees}")
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace) -> int:
    rules = parse_ruleset(args.ruleset)
    if isinstance(rules, Consecutive):
        report = verify_consecutive(rules.k, args.nmax, state_ceiling=args.state_ceiling)
        if args.format == "json":
            text = report.to_json() + "\n"
        elif args.format == "csv":
            text = _csv_consecutive(report)
        else:
            text = _pretty_consecutive(report)
        _emit(text, args.out)
        if args.plot:
            from .plots import save_consecutive_figure

            table = build_table(rules, args.nmax, state_ceiling=args.state_ceiling)
            save_consecutive_figure(report, table, args.plot)
        return EXIT_OK if report.passed else EXIT_FAILED
    if isinstance(rules, FiniteArithmetic):
        report = verify_arith(
            rules.b,
            rules.c,
            rules.i_max,
            args.nmax,
            allow_small_b=args.allow_small_b,
            min_tail_multiple=args.min_tail_multiple,
            state_ceiling=args.state_ceiling,
        )
        if args.format == "json":
            text = report.to_json() + "\n"
        elif args.format == "csv":
            text = _csv_period(report)
        else:
            text = _pretty_period(report)
        _emit(text, args.out)
        if args.plot:
            from .plots import save_period_figure

            table = build_table(rules, args.nmax, state_ceiling=args.state_ceiling)
            save_period_figure(report, table, args.plot)
        return EXIT_OK if report.passed else EXIT_FAILED
    raise RulesetSyntaxError(
        f"verify needs a k=K or arith:B,C,IMAX ruleset, got {args.ruleset!r}"
    )


def cmd_period(args: argparse.Namespace) -> int:
    rules = parse_ruleset(args.ruleset)
    table = build_table(rules, args.nmax, state_ceiling=args.state_ceiling)
    rho, q = detect_period(table.row(args.side), args.min_tail_multiple)
    if args.format == "json":
        text = json.dumps({"preperiod": rho, "period": q}) + "\n"
    elif args.format == "csv":
        text = f"preperiod,period\n{rho},{q}\n"
    else:
        text = f"preperiod={rho} period={q}\n"
    _emit(text, args.out)
    return EXIT_OK


def play_session(
    rules,
    n: int,
    side: Side,
    in_stream: IO[str],
    out_stream: IO[str],
    *,
    state_ceiling: int = DEFAULT_STATE_CEILING,
) -> int:
    """Interactive loop: the human moves first from (n, side).

    A move is entered as ``<stones> <base|comp>``, the second token being the
    constraint imposed on the engine. ``q`` resigns. Illegal input re-prompts.
    Whoever cannot move loses.
    """
    table = build_table(rules, n, state_ceiling=state_ceiling)
    pos = Position(n, side)

    def say(msg: str) -> None:
        out_stream.write(msg + "\n")

    say(f"ruleset {rules.text}, starting heap {n}")
    while True:
        moves = legal_moves(rules, pos)
        say(f"heap {pos.n}, you draw from the {pos.side.value} set; legal moves: {moves}")
        if not moves:
            say("you cannot move: you lose")
            return EXIT_OK
        entered = None
        while entered is None:
            out_stream.write("your move (s side, or q to quit): ")
            out_stream.flush()
            line = in_stream.readline()
            if not line or line.strip().lower() in ("q", "quit"):
                say("you quit")
                return EXIT_OK
            parts = line.split()
            if len(parts) != 2:
                say("enter a move like: 3 base")
                continue
            try:
                s = int(parts[0])
                opp = parse_side(parts[1])
            except (ValueError, RulesetSyntaxError):
                say("enter a move like: 3 base")
                continue
            if s not in moves:
                say(f"illegal move {s}; legal moves: {moves}")
                continue
            entered = (s, opp)
        s, opp = entered
        pos = Position(pos.n - s, opp)
        say(f"you take {s}, engine is on the {opp.value} set at heap {pos.n}")

        engine_moves = legal_moves(rules, pos)
        if not engine_moves:
            say("engine cannot move: you win")
            return EXIT_OK
        choice = None
        for es in engine_moves:
            for eside in (Side.BASE, Side.COMPLEMENT):
                if table.value(pos.n - es, eside) == 0:
                    choice = (es, eside)
                    break
            if choice:
                break
        if choice is None:
            choice = (engine_moves[0], Side.BASE)
        es, eside = choice
        pos = Position(pos.n - es, eside)
        say(f"engine takes {es}, you are on the {eside.value} set at heap {pos.n}")


def cmd_play(args: argparse.Namespace) -> int:
    rules = parse_ruleset(args.ruleset)
    return play_session(
        rules, args.n, args.side, sys.stdin, sys.stdout, state_ceiling=args.state_ceiling
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (RulesetSyntaxError, HypothesisViolationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
