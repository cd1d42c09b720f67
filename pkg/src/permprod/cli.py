"""Command-line interface.

Results go to stdout one value (or one set) per line; diagnostics and
progress go to stderr.  Every computed result is appended to the results
store unless --no-store.  Exit status: 0 success, 1 computation error or
failed check (diagnostic on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from pathlib import Path

from . import closed_forms, results
from ._version import __version__
from .perms import CompletionExplosion, InvalidPermutation, Overflow
from .results import Method, Quantity
from .search import (
    InstanceTooLarge,
    InvalidConfig,
    Mode,
    SearchConfig,
    brute_force_oracle,
    multiset_count,
    search,
)

DEFAULT_STORE = "permprod-results.jsonl"
DEFAULT_NODE_BUDGET = 10**7

_ERRORS = (
    Overflow,
    InvalidPermutation,
    CompletionExplosion,
    InvalidConfig,
    InstanceTooLarge,
    results.ConflictDetected,
    results.MissingCell,
    results.ParseError,
    results.UnknownSequence,
    OSError,
    ValueError,  # argument validation in the closed forms
)


def _default_workers(env: dict[str, str] | None = None) -> int:
    env = os.environ if env is None else env
    raw = env.get("PERMPROD_THREADS")
    if raw is not None:
        try:
            value = int(raw)
            if value >= 1:
                return value
        except ValueError:
            pass
        print(
            f"ignoring invalid PERMPROD_THREADS={raw!r}", file=sys.stderr
        )
    return os.cpu_count() or 1


def _progress_printer(quiet: bool):
    if quiet:
        return None
    last = [0.0]

    def report(pass_no: int, done: int, total: int) -> None:
        now = time.monotonic()
        if done < total and now - last[0] < 2.0:
            return
        last[0] = now
        print(f"pass {pass_no}: {done}/{total} nodes", file=sys.stderr)

    return report


def _config(args, n: int, k: int, mode: Mode) -> SearchConfig:
    return SearchConfig(
        n=n,
        k=k,
        mode=mode,
        workers=args.workers,
        completion_cap=args.completion_cap,
        checkpoint_interval=args.checkpoint_interval,
    )


def _append_records(args, records) -> None:
    if args.no_store:
        return
    for record in records:
        results.store_append(record, args.store)


def _nodes(n: int, k: int) -> int:
    """Sweep size of an (n, k) search: C(n!+k-3, k-2)."""
    if n == 1 or k == 1:
        return 0
    return multiset_count(math.factorial(n), k - 2)


def _within_budget(n: int, k: int, budget: int) -> bool:
    return budget == 0 or _nodes(n, k) <= budget


def _vmin_cell(args, n: int, k: int, mode: Mode = Mode.VALUE_ONLY):
    """(value, records) for one v_min cell, via closed form or search."""
    answer = closed_forms.vmin_closed(n, k)
    if answer is not None and mode is Mode.VALUE_ONLY:
        record = results.make_record(
            n, k, Quantity.VMIN, answer.value, Method.CLOSED_FORM
        )
        return answer.value, None, [record]
    result = search(_config(args, n, k, mode), _progress_printer(args.quiet))
    records = [
        results.make_record(
            n,
            k,
            Quantity.VMIN,
            result.v_min,
            Method.SEARCH,
            lex_min_set=result.lex_min_set,
            enumerated=result.enumerated,
            elapsed=result.elapsed,
        )
    ]
    if result.n_min is not None:
        records.append(
            results.make_record(
                n,
                k,
                Quantity.NMIN,
                result.n_min,
                Method.SEARCH,
                lex_min_set=result.lex_min_set,
                enumerated=result.enumerated,
                elapsed=result.elapsed,
            )
        )
    return result.v_min, result, records


def _cmd_vmin(args) -> int:
    value, _, records = _vmin_cell(args, args.n, args.k)
    _append_records(args, records)
    print(value)
    return 0


def _cmd_vmax(args) -> int:
    value = closed_forms.vmax(args.n, args.k)
    _append_records(
        args,
        [results.make_record(args.n, args.k, Quantity.VMAX, value, Method.CLOSED_FORM)],
    )
    print(value)
    return 0


def _cmd_count(args) -> int:
    trivial = closed_forms.nmin_trivial(args.n, args.k)
    if trivial is not None:
        _append_records(
            args,
            [
                results.make_record(
                    args.n, args.k, Quantity.NMIN, trivial, Method.CLOSED_FORM
                )
            ],
        )
        print(trivial)
        return 0
    _, result, records = _vmin_cell(args, args.n, args.k, Mode.COUNT_MINIMIZERS)
    _append_records(args, records)
    print(result.n_min)
    return 0


def _cmd_minimizers(args) -> int:
    _, result, records = _vmin_cell(args, args.n, args.k, Mode.LIST_MINIMIZERS)
    _append_records(args, records)
    sets = result.minimizers if args.all else (result.lex_min_set,)
    for kset in sets:
        print(results.format_kset(kset))
    return 0


def _cmd_oracle_check(args) -> int:
    fast = search(
        _config(args, args.n, args.k, Mode.COUNT_MINIMIZERS),
        _progress_printer(args.quiet),
    )
    oracle = brute_force_oracle(args.n, args.k)
    _append_records(
        args,
        [
            results.make_record(
                args.n,
                args.k,
                Quantity.VMIN,
                fast.v_min,
                Method.SEARCH,
                lex_min_set=fast.lex_min_set,
                enumerated=fast.enumerated,
                elapsed=fast.elapsed,
            ),
            results.make_record(
                args.n,
                args.k,
                Quantity.VMIN,
                oracle.v_min,
                Method.ORACLE,
                lex_min_set=oracle.lex_min_set,
                enumerated=oracle.enumerated,
                elapsed=oracle.elapsed,
            ),
        ],
    )
    same = (
        fast.v_min == oracle.v_min
        and fast.n_min == oracle.n_min
        and fast.lex_min_set == oracle.lex_min_set
    )
    if same:
        print(f"OK v_min={fast.v_min} n_min={fast.n_min}")
        return 0
    print(
        "MISMATCH "
        f"search: v_min={fast.v_min} n_min={fast.n_min} "
        f"lex=({results.format_kset(fast.lex_min_set)}) "
        f"oracle: v_min={oracle.v_min} n_min={oracle.n_min} "
        f"lex=({results.format_kset(oracle.lex_min_set)})"
    )
    return 1


_QUANTITIES = {
    "vmin": Quantity.VMIN,
    "vmax": Quantity.VMAX,
    "nmin": Quantity.NMIN,
    "nmax": Quantity.NMAX,
}


def _cmd_table(args) -> int:
    quantity = _QUANTITIES[args.quantity]
    records = []
    for n in range(1, args.nmax + 1):
        for k in range(1, args.kmax + 1):
            try:
                cell = _table_cell(args, quantity, n, k)
            except Overflow:
                print(f"skip (n={n}, k={k}): beyond 128-bit range", file=sys.stderr)
                continue
            except CompletionExplosion as exc:
                print(f"skip (n={n}, k={k}): {exc}", file=sys.stderr)
                continue
            if cell is None:
                if not args.quiet:
                    print(
                        f"skip (n={n}, k={k}): beyond node budget "
                        f"({_nodes(n, k)} > {args.max_nodes})",
                        file=sys.stderr,
                    )
                continue
            records.extend(cell)
    _append_records(args, records)
    text = results.render_table(records, quantity)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _table_cell(args, quantity: Quantity, n: int, k: int):
    """Records for one table cell, or None when over the node budget."""
    if quantity is Quantity.VMAX:
        value = closed_forms.vmax(n, k)
        return [results.make_record(n, k, Quantity.VMAX, value, Method.CLOSED_FORM)]
    if quantity is Quantity.NMAX:
        value = closed_forms.nmax(n, k)
        return [results.make_record(n, k, Quantity.NMAX, value, Method.CLOSED_FORM)]
    if quantity is Quantity.VMIN:
        if closed_forms.vmin_closed(n, k) is None and not _within_budget(
            n, k, args.max_nodes
        ):
            return None
        _, _, records = _vmin_cell(args, n, k)
        return records
    trivial = closed_forms.nmin_trivial(n, k)
    if trivial is not None:
        return [results.make_record(n, k, Quantity.NMIN, trivial, Method.CLOSED_FORM)]
    if not _within_budget(n, k, args.max_nodes):
        return None
    _, _, records = _vmin_cell(args, n, k, Mode.COUNT_MINIMIZERS)
    return records


def _column_terms(args, k: int, terms: int):
    """(values, records) for the first `terms` v_min(n, k) within budget."""
    values = []
    records = []
    for n in range(1, terms + 1):
        if closed_forms.vmin_closed(n, k) is None and not _within_budget(
            n, k, args.max_nodes
        ):
            print(
                f"stopping at n={n}: {_nodes(n, k)} nodes exceed budget "
                f"{args.max_nodes}",
                file=sys.stderr,
            )
            break
        if n > 15:
            print(f"stopping at n={n}: search is capped at n=15", file=sys.stderr)
            break
        value, _, cell_records = _vmin_cell(args, n, k)
        values.append(str(value))
        records.extend(cell_records)
    return values, records


def _antidiagonal_terms(args, terms: int):
    """Whole antidiagonals of the v_min table while the budget lasts."""
    table: dict[tuple[int, int], int] = {}
    values: list[str] = []
    records = []
    s = 2
    while len(values) < terms:
        cells = [(n, s - n) for n in range(1, s)]
        affordable = all(
            n <= 15
            and (
                closed_forms.vmin_closed(n, k) is not None
                or _within_budget(n, k, args.max_nodes)
            )
            for n, k in cells
        )
        if not affordable:
            print(
                f"stopping before antidiagonal n+k={s}: a cell exceeds the "
                f"node budget {args.max_nodes}",
                file=sys.stderr,
            )
            break
        for n, k in cells:
            value, _, cell_records = _vmin_cell(args, n, k)
            table[(n, k)] = value
            records.extend(cell_records)
        seq = results.antidiagonal_sequence(table, depth=s - 1)
        values = list(seq.values)
        s += 1
    return values[:terms], records


def _computed_sequence(args, oeis_id: str, terms: int):
    if oeis_id == results.ANTIDIAGONAL_ID:
        values, records = _antidiagonal_terms(args, terms)
    else:
        k = results.sequence_column(oeis_id)
        values, records = _column_terms(args, k, terms)
    return results.SequenceRecord(oeis_id=oeis_id, offset=1, values=tuple(values)), records


def _cmd_bfile(args) -> int:
    if args.seq not in results.KNOWN_SEQUENCES:
        raise results.UnknownSequence(
            f"{args.seq} is not produced here; known: "
            + ", ".join(results.KNOWN_SEQUENCES)
        )
    seq, records = _computed_sequence(args, args.seq, args.terms)
    _append_records(args, records)
    text = results.emit_bfile(seq)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    if args.seq not in results.KNOWN_SEQUENCES:
        raise results.UnknownSequence(
            f"{args.seq} is not produced here; known: "
            + ", ".join(results.KNOWN_SEQUENCES)
        )
    if args.reference:
        reference = Path(args.reference).read_text(encoding="utf-8")
    elif args.fetch:
        try:
            cache = Path.home() / ".cache" / "permprod"
            reference = results.fetch_reference(args.seq, cache)
        except OSError as exc:
            print(f"fetch failed ({exc}); using bundled reference", file=sys.stderr)
            reference = results.reference_bfile(args.seq)
    else:
        reference = results.reference_bfile(args.seq)
    if args.terms is not None:
        terms = args.terms
    else:
        # Aim for the whole reference; the node budget stops us earlier
        # anyway when terms get expensive.
        terms = len(results.parse_bfile(reference).values)
    seq, records = _computed_sequence(args, args.seq, terms)
    _append_records(args, records)
    report = results.verify_against_reference(seq, reference)
    print(report.summary())
    return 0 if report.ok else 1


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--workers",
        type=int,
        default=_default_workers(),
        help="search threads (default: PERMPROD_THREADS or CPU count)",
    )
    sub.add_argument(
        "--completion-cap",
        type=int,
        default=10**6,
        help="abort counting when tied completions exceed this (default 1e6)",
    )
    sub.add_argument(
        "--checkpoint-interval",
        type=int,
        default=0,
        help="nodes per progress checkpoint (0 = automatic)",
    )
    sub.add_argument("--quiet", action="store_true", help="suppress progress output")
    sub.add_argument(
        "--store",
        default=DEFAULT_STORE,
        help=f"results store path (default {DEFAULT_STORE})",
    )
    sub.add_argument(
        "--no-store", action="store_true", help="do not append to the results store"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permprod",
        description=(
            "Extremal sums of entrywise products of permutations: "
            "exhaustive search, closed forms, and sequence tooling."
        ),
    )
    parser.add_argument("--version", action="version", version=f"permprod {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, with_nk=True):
        sub = commands.add_parser(name, help=help_text)
        if with_nk:
            sub.add_argument("n", type=int)
            sub.add_argument("k", type=int)
        _add_common(sub)
        sub.set_defaults(func=func)
        return sub

    add("vmin", _cmd_vmin, "minimum of v over k-sets of permutations of 1..n")
    add("vmax", _cmd_vmax, "maximum of v (power sum, closed form)")
    add("count", _cmd_count, "number of nonequivalent minimizing k-sets")
    minimizers = add("minimizers", _cmd_minimizers, "lex-smallest canonical minimizer")
    minimizers.add_argument(
        "--all", action="store_true", help="print every canonical minimizer"
    )
    add("oracle-check", _cmd_oracle_check, "diff the search against the naive oracle")

    table = add("table", _cmd_table, "emit a CSV table over an (n, k) rectangle", False)
    table.add_argument(
        "--quantity", choices=sorted(_QUANTITIES), required=True
    )
    table.add_argument("--nmax", type=int, required=True)
    table.add_argument("--kmax", type=int, required=True)
    table.add_argument(
        "--max-nodes",
        type=int,
        default=DEFAULT_NODE_BUDGET,
        help="leave cells blank beyond this sweep size (0 = unlimited)",
    )
    table.add_argument("--output", help="write CSV here instead of stdout")

    bfile = add("bfile", _cmd_bfile, "emit an OEIS b-file", False)
    bfile.add_argument("--seq", required=True, help="OEIS id, e.g. A070735")
    bfile.add_argument("--terms", type=int, required=True)
    bfile.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    bfile.add_argument("--output", help="write the b-file here instead of stdout")

    verify = add("verify", _cmd_verify, "check computed terms against a reference b-file", False)
    verify.add_argument("--seq", required=True, help="OEIS id, e.g. A070735")
    verify.add_argument("--reference", help="reference b-file path (default: bundled)")
    verify.add_argument("--terms", type=int, help="terms to compute (default: budget-limited)")
    verify.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    verify.add_argument(
        "--fetch", action="store_true", help="try fetching the reference from oeis.org"
    )

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


run = main  # programmatic entry point: run(argv) -> exit status


if __name__ == "__main__":
    sys.exit(main())
