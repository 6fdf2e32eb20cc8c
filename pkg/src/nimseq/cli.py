"""Command-line entry point.

Exit status: 0 on success, 1 when a verification or a grid lookup fails,
2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path

from . import nim_core, uw_automaton
from .evolution import evolve_nim, records_from_counts
from .sequences import Family, SequenceEngine

ORACLE_BUDGET = 10**9

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}; expected comma-separated integers")


def _index_range(args) -> range:
    if args.start < 0 or args.to < 0:
        raise UsageError("index bounds must be non-negative")
    return range(args.start, args.to + 1)


def _check_k(k: int) -> None:
    if k < 1:
        raise UsageError(f"--k must be at least 1, got {k}")


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        f = open(path, "w", encoding="ascii", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}")
    with f:
        yield f


def _engine(args) -> SequenceEngine:
    engine = SequenceEngine()
    cache = getattr(args, "memo_cache", None)
    if cache and Path(cache).exists():
        try:
            engine.load(cache)
        except Exception:
            print(f"nimseq: ignoring unreadable memo cache {cache}", file=sys.stderr)
    return engine


def _save_engine(args, engine: SequenceEngine) -> None:
    cache = getattr(args, "memo_cache", None)
    if cache:
        try:
            engine.save(cache)
        except OSError as exc:
            raise UsageError(f"cannot write memo cache {cache}: {exc.strerror}")


def _emit_terms(out, family: str, k: int, terms, fmt: str) -> None:
    for n, v in terms:
        if fmt == "jsonl":
            out.write(json.dumps({"family": family, "k": k, "n": n, "value": v}) + "\n")
        else:
            out.write(f"{n} {v}\n")


def cmd_seq(args) -> int:
    _check_k(args.k)
    idx = _index_range(args)
    engine = _engine(args)
    with _output(args.out) as out:
        _emit_terms(out, args.family, args.k, ((n, engine.term(args.family, args.k, n)) for n in idx), args.format)
    _save_engine(args, engine)
    return EXIT_OK


def cmd_bfile(args) -> int:
    _check_k(args.k)
    idx = _index_range(args)
    engine = _engine(args)
    lines = [f"{n} {engine.term(args.family, args.k, n)}\n" for n in idx]
    with _output(args.out) as out:
        out.writelines(lines)
    _save_engine(args, engine)
    return EXIT_OK


def oracle_cost(family: str, k: int, n: int) -> int:
    """Size of the box the brute-force counter sweeps for indices up to ``n``."""
    bound = n if Family(family) in (Family.a, Family.d) else 2 * n
    return (bound + 1) ** (k - 1)


def oracle_terms(family: str, k: int, n: int) -> list[int]:
    fam = Family(family)
    if fam in (Family.a, Family.d):
        hist = nim_core.oracle_max_histogram(k, n)
    else:
        hist = nim_core.oracle_total_histogram(k, n)
    if fam in (Family.d, Family.D):
        return hist
    out, running = [], 0
    for v in hist:
        running += v
        out.append(running)
    return out


def _guarded_oracle(args) -> list[int]:
    _check_k(args.k)
    _index_range(args)
    cost = oracle_cost(args.family, args.k, args.to)
    if cost > ORACLE_BUDGET:
        raise UsageError(
            f"brute force over {cost} prefixes exceeds the budget of {ORACLE_BUDGET}; "
            "lower --to or --k"
        )
    return oracle_terms(args.family, args.k, args.to)


def cmd_oracle(args) -> int:
    values = _guarded_oracle(args)
    with _output(args.out) as out:
        _emit_terms(out, args.family, args.k, ((n, values[n]) for n in _index_range(args)), args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    expected = _guarded_oracle(args)
    engine = _engine(args)
    bad = 0
    checked = 0
    for n in _index_range(args):
        got = engine.term(args.family, args.k, n)
        checked += 1
        if got != expected[n]:
            bad += 1
            print(f"{n} {expected[n]} {got}")
    _save_engine(args, engine)
    if bad:
        print(f"FAIL {bad} of {checked} terms differ", file=sys.stderr)
        return EXIT_FAIL
    print(f"ok {checked} terms of {args.family}_{args.k} match brute force")
    return EXIT_OK


def cmd_evolve(args) -> int:
    if args.to < 0:
        raise UsageError("--to must be non-negative")
    if args.grid:
        records = records_from_counts(uw_automaton.evolve_uw(args.to).born_counts())
    else:
        if args.k is None:
            raise UsageError("evolve needs --k or --grid")
        _check_k(args.k)
        records = evolve_nim(args.k, args.to)
    with _output(args.out) as out:
        for r in records:
            if args.format == "jsonl":
                out.write(json.dumps({"generation": r.generation, "born": r.born, "cumulative": r.cumulative}) + "\n")
            else:
                out.write(f"{r.generation} {r.born} {r.cumulative}\n")
    return EXIT_OK


def _fmt_tuple(t) -> str:
    return ",".join(str(v) for v in t)


def _print_segments(segments) -> None:
    for seg in segments:
        print(
            f"segment pair {_fmt_tuple(seg.pair)} heading {_fmt_tuple(seg.heading)} "
            f"length {seg.length} end {_fmt_tuple(seg.end)}"
        )


def cmd_map(args) -> int:
    if (args.position is None) == (args.cell is None):
        raise UsageError("map needs exactly one of --position or --cell")
    if args.position is not None:
        p = _int_list(args.position, "position")
        if len(p) != 3:
            raise UsageError("the grid matching needs a 3-pile position")
        if any(v < 0 for v in p):
            raise UsageError("pile sizes must be non-negative")
        if nim_core.nim_sum(p):
            raise CheckFailed(f"{_fmt_tuple(p)} is not a P-position (nim-sum {nim_core.nim_sum(p)})")
        segments = uw_automaton.position_segments(p)
        print(f"cell {_fmt_tuple(uw_automaton.position_to_cell(p))}")
        _print_segments(segments)
        return EXIT_OK

    c = _int_list(args.cell, "cell")
    if len(c) != 2:
        raise UsageError("a cell is written x,y")
    if args.gen is None or args.gen < 0:
        raise UsageError("--cell needs a non-negative --gen bound")
    cell = uw_automaton.Cell(*c)
    if uw_automaton.is_forbidden(cell):
        raise CheckFailed(f"cell {_fmt_tuple(cell)} lies in the forbidden south wedge")
    births = uw_automaton.evolve_uw(args.gen)
    if cell not in births:
        raise CheckFailed(f"cell {_fmt_tuple(cell)} is not alive by generation {args.gen}")
    print(f"position {_fmt_tuple(uw_automaton.cell_to_position(cell, births))}")
    _print_segments(uw_automaton.cell_segments(cell, births))
    return EXIT_OK


def cmd_render(args) -> int:
    if args.to < 0:
        raise UsageError("--to must be non-negative")
    births = uw_automaton.evolve_uw(args.to)
    opts = uw_automaton.RenderOptions(color_by_generation=not args.mono)
    svg = uw_automaton.render(births, opts)
    with _output(args.out) as out:
        out.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nimseq", description="Nim P-position sequences and the Ulam-Warburton automaton"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_seq_args(p, fmt=True):
        p.add_argument("--family", required=True, choices=[f.value for f in Family])
        p.add_argument("--k", type=int, required=True, help="number of piles")
        p.add_argument("--from", dest="start", type=int, default=0, help="first index (default 0)")
        p.add_argument("--to", type=int, required=True, help="last index, inclusive")
        p.add_argument("--out", help="output file (default stdout)")
        if fmt:
            p.add_argument("--format", choices=["plain", "jsonl"], default="plain")

    p = sub.add_parser("seq", help="print sequence terms from the formulas")
    add_seq_args(p)
    p.add_argument("--memo-cache", help="persist the memo table in this file")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("oracle", help="print sequence terms by brute force")
    add_seq_args(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="compare formulas against brute force")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--memo-cache")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bfile", help="write an OEIS-style b-file")
    add_seq_args(p, fmt=False)
    p.add_argument("--memo-cache")
    p.set_defaults(func=cmd_bfile)

    p = sub.add_parser("evolve", help="generation table for Nim or the grid automaton")
    who = p.add_mutually_exclusive_group()
    who.add_argument("--k", type=int)
    who.add_argument("--grid", action="store_true", help="run the three-branch grid automaton")
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["plain", "jsonl"], default="plain")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("map", help="match a 3-pile P-position with its grid cell")
    p.add_argument("--position", help="e.g. 14,11,5")
    p.add_argument("--cell", help="e.g. 10,-3 (use --cell=-1,0 for a leading minus)")
    p.add_argument("--gen", type=int, help="generation bound used to grow the grid for --cell")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("render", help="draw the grid automaton as SVG")
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--mono", action="store_true", help="single dot colour")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nimseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailed as exc:
        print(f"nimseq: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
