"""Result persistence, OEIS-style sequence tooling, and table rendering.

The store is a line-delimited JSON file: one self-describing record per
line, append-only, human-inspectable.  Values travel as decimal strings so
128-bit integers survive any JSON parser; permutations serialize as integer
lists, with the letter notation (a=10, b=11, ...) reserved for human-facing
listings of n >= 10.

Sequence columns of the v_min table map to OEIS ids (k=3..8), and the
antidiagonal flattening of the whole table is A260355, read n-ascending
within each diagonal.  Reference b-files for all of them ship with the
package so verification never needs the network; a small fetch helper can
refresh them from oeis.org when a network is available.
"""

from __future__ import annotations

import csv
import io
import json
import urllib.request
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from ._version import __version__
from .perms import KSet, Perm

#: OEIS ids of the fixed-k columns of the v_min table.
COLUMN_SEQUENCES: dict[str, int] = {
    "A070735": 3,
    "A070736": 4,
    "A260356": 5,
    "A260357": 6,
    "A260358": 7,
    "A260359": 8,
}

#: OEIS id of the antidiagonal reading of the v_min table.
ANTIDIAGONAL_ID = "A260355"

KNOWN_SEQUENCES = tuple(COLUMN_SEQUENCES) + (ANTIDIAGONAL_ID,)


class ConflictDetected(RuntimeError):
    """Two store records disagree on the same (n, k, quantity) key."""


class MissingCell(LookupError):
    """An antidiagonal needs a table cell that was never computed."""


class ParseError(ValueError):
    """A b-file or store line does not parse."""


class UnknownSequence(LookupError):
    """The OEIS id is not one this artifact produces."""


class Quantity(Enum):
    VMIN = "VMin"
    VMAX = "VMax"
    NMIN = "NMin"
    NMAX = "NMax"


class Method(Enum):
    CLOSED_FORM = "ClosedForm"
    SEARCH = "Search"
    ORACLE = "Oracle"


class Direction(Enum):
    N_ASCENDING = "n-ascending"
    N_DESCENDING = "n-descending"


#: Reading order of A260355, fixed by comparing both directions of the
#: flattened table against the stored reference terms (the descending
#: reading diverges at the third term already).
A260355_DIRECTION = Direction.N_ASCENDING


# ---------------------------------------------------------------------------
# Records and the append-only store.

@dataclass(frozen=True)
class ResultRecord:
    n: int
    k: int
    quantity: Quantity
    value: str
    lex_min_set: tuple[tuple[int, ...], ...] | None
    method: Method
    enumerated: int
    elapsed_ms: int
    created_at: str
    artifact_version: str

    def key(self) -> tuple[int, int, str]:
        return (self.n, self.k, self.quantity.value)

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "k": self.k,
            "quantity": self.quantity.value,
            "value": self.value,
            "lex_min_set": (
                None
                if self.lex_min_set is None
                else [list(p) for p in self.lex_min_set]
            ),
            "method": self.method.value,
            "enumerated": self.enumerated,
            "elapsed_ms": self.elapsed_ms,
            "created_at": self.created_at,
            "artifact_version": self.artifact_version,
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        try:
            payload = json.loads(line)
            return cls(
                n=int(payload["n"]),
                k=int(payload["k"]),
                quantity=Quantity(payload["quantity"]),
                value=str(payload["value"]),
                lex_min_set=(
                    None
                    if payload["lex_min_set"] is None
                    else tuple(tuple(int(e) for e in p) for p in payload["lex_min_set"])
                ),
                method=Method(payload["method"]),
                enumerated=int(payload["enumerated"]),
                elapsed_ms=int(payload["elapsed_ms"]),
                created_at=str(payload["created_at"]),
                artifact_version=str(payload["artifact_version"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad store line {line!r}: {exc}") from exc


def make_record(
    n: int,
    k: int,
    quantity: Quantity,
    value: int,
    method: Method,
    lex_min_set: KSet | None = None,
    enumerated: int = 0,
    elapsed: float = 0.0,
) -> ResultRecord:
    return ResultRecord(
        n=n,
        k=k,
        quantity=quantity,
        value=str(value),
        lex_min_set=None if lex_min_set is None else lex_min_set.perms,
        method=method,
        enumerated=enumerated,
        elapsed_ms=int(elapsed * 1000),
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        artifact_version=__version__,
    )


def store_append(record: ResultRecord, path: str | Path) -> None:
    """Append one record as one line; creates the file if needed."""
    with open(path, "a", encoding="utf-8") as handle:
        handle.write(record.to_json() + "\n")


def read_store(path: str | Path) -> list[ResultRecord]:
    """All records in file order, no conflict analysis."""
    records = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                records.append(ResultRecord.from_json(line))
    return records


def load_store(path: str | Path) -> dict[tuple[int, int, str], ResultRecord]:
    """Logical view keyed by (n, k, quantity); later agreeing records win.

    Raises ConflictDetected as soon as two records disagree on a value for
    the same key.
    """
    merged: dict[tuple[int, int, str], ResultRecord] = {}
    for record in read_store(path):
        previous = merged.get(record.key())
        if previous is not None and int(previous.value) != int(record.value):
            raise ConflictDetected(
                f"store {path}: {record.key()} has both value {previous.value} "
                f"and {record.value}"
            )
        merged[record.key()] = record
    return merged


# ---------------------------------------------------------------------------
# Sequences and b-files.

@dataclass(frozen=True)
class SequenceRecord:
    oeis_id: str
    offset: int
    values: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(str(v) for v in self.values))


def sequence_column(oeis_id: str) -> int:
    """The k of a fixed-k column sequence; rejects everything else."""
    try:
        return COLUMN_SEQUENCES[oeis_id]
    except KeyError:
        raise UnknownSequence(
            f"{oeis_id} is not a column sequence; known: {', '.join(KNOWN_SEQUENCES)}"
        ) from None


def emit_bfile(seq: SequenceRecord) -> str:
    """Standard b-file text: "index value" lines, no header, trailing newline."""
    if not seq.values:
        raise ValueError("refusing to emit an empty sequence")
    return "".join(
        f"{seq.offset + i} {value}\n" for i, value in enumerate(seq.values)
    )


def parse_bfile(text: str, oeis_id: str = "") -> SequenceRecord:
    """Parse b-file text; comment lines (#) and blank lines are skipped.

    Indices must be consecutive, so parse and emit are mutually inverse on
    well-formed inputs.
    """
    offset: int | None = None
    expected: int | None = None
    values: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            index = int(parts[0])
            value = int(parts[1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer token in {raw!r}") from exc
        if offset is None:
            offset = index
            expected = index
        if index != expected:
            raise ParseError(
                f"line {lineno}: index {index} breaks the run (expected {expected})"
            )
        expected = index + 1
        values.append(str(value))
    if offset is None:
        raise ParseError("no data lines found")
    return SequenceRecord(oeis_id=oeis_id, offset=offset, values=tuple(values))


def antidiagonal_sequence(
    table: Mapping[tuple[int, int], int | str],
    depth: int,
    direction: Direction = A260355_DIRECTION,
    oeis_id: str = ANTIDIAGONAL_ID,
    offset: int = 1,
) -> SequenceRecord:
    """Flatten table cells along antidiagonals n+k = 2 .. depth+1.

    Within one antidiagonal, `direction` picks n ascending or descending.
    Every needed cell must be present, else MissingCell.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    values: list[str] = []
    for s in range(2, depth + 2):
        ns = range(1, s) if direction is Direction.N_ASCENDING else range(s - 1, 0, -1)
        for n in ns:
            k = s - n
            if (n, k) not in table:
                raise MissingCell(f"cell (n={n}, k={k}) missing for antidiagonal {s}")
            values.append(str(int(table[(n, k)])))
    return SequenceRecord(oeis_id=oeis_id, offset=offset, values=tuple(values))


@dataclass(frozen=True)
class VerifyReport:
    oeis_id: str
    compared: int
    matched: int
    first_mismatch: tuple[int, str, str] | None
    only_computed: tuple[int, ...]
    only_reference: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def summary(self) -> str:
        label = self.oeis_id or "sequence"
        if self.first_mismatch is not None:
            index, got, want = self.first_mismatch
            return (
                f"{label}: MISMATCH at index {index}: computed {got}, "
                f"reference {want} ({self.matched}/{self.compared} matched)"
            )
        return f"{label}: OK, {self.compared} compared, {self.compared} matched"


def verify_against_reference(seq: SequenceRecord, reference: str) -> VerifyReport:
    """Index-by-index comparison of a computed sequence with b-file text."""
    ref = parse_bfile(reference, seq.oeis_id)
    computed = {seq.offset + i: v for i, v in enumerate(seq.values)}
    published = {ref.offset + i: v for i, v in enumerate(ref.values)}
    overlap = sorted(computed.keys() & published.keys())
    matched = 0
    first_mismatch = None
    for index in overlap:
        if int(computed[index]) == int(published[index]):
            matched += 1
        elif first_mismatch is None:
            first_mismatch = (index, computed[index], published[index])
    return VerifyReport(
        oeis_id=seq.oeis_id,
        compared=len(overlap),
        matched=matched,
        first_mismatch=first_mismatch,
        only_computed=tuple(sorted(computed.keys() - published.keys())),
        only_reference=tuple(sorted(published.keys() - computed.keys())),
    )


def reference_bfile(oeis_id: str) -> str:
    """Text of the bundled reference b-file for one of the known sequences."""
    if oeis_id not in KNOWN_SEQUENCES:
        raise UnknownSequence(
            f"no bundled reference for {oeis_id}; known: {', '.join(KNOWN_SEQUENCES)}"
        )
    return (
        resources.files("permprod")
        .joinpath("data", f"b{oeis_id[1:]}.txt")
        .read_text(encoding="utf-8")
    )


def fetch_reference(oeis_id: str, cache_dir: str | Path, timeout: float = 30.0) -> str:
    """Fetch a b-file from oeis.org, caching to disk.  Purely optional:
    callers must degrade to the bundled reference when this raises."""
    cache = Path(cache_dir) / f"b{oeis_id[1:]}.txt"
    if cache.is_file():
        return cache.read_text(encoding="utf-8")
    url = f"https://oeis.org/{oeis_id}/b{oeis_id[1:]}.txt"
    with urllib.request.urlopen(url, timeout=timeout) as response:
        text = response.read().decode("utf-8")
    cache.parent.mkdir(parents=True, exist_ok=True)
    cache.write_text(text, encoding="utf-8")
    return text


# ---------------------------------------------------------------------------
# Tables and display formatting.

def render_table(records: Iterable[ResultRecord], quantity: Quantity) -> str:
    """CSV of one quantity: header "n/k,1,..,K", one row per n, blanks for
    absent cells."""
    cells: dict[tuple[int, int], str] = {}
    for record in records:
        if record.quantity is not quantity:
            continue
        key = (record.n, record.k)
        if key in cells and int(cells[key]) != int(record.value):
            raise ConflictDetected(
                f"records disagree at (n={record.n}, k={record.k}): "
                f"{cells[key]} vs {record.value}"
            )
        cells[key] = record.value
    out = io.StringIO()
    writer = csv.writer(out)
    if not cells:
        writer.writerow(["n/k"])
        return out.getvalue()
    max_n = max(n for n, _ in cells)
    max_k = max(k for _, k in cells)
    writer.writerow(["n/k"] + [str(k) for k in range(1, max_k + 1)])
    for n in range(1, max_n + 1):
        writer.writerow(
            [str(n)] + [cells.get((n, k), "") for k in range(1, max_k + 1)]
        )
    return out.getvalue()


def format_permutation(p: Perm) -> str:
    """Digit string with letters for entries past 9 (a=10, b=11, ...).

    >>> format_permutation((1, 2, 3))
    '123'
    >>> format_permutation(tuple(range(1, 11)))
    '123456789a'
    """
    return "".join(str(e) if e <= 9 else chr(ord("a") + e - 10) for e in p)


def format_kset(s: KSet) -> str:
    """Members in stored (ascending key) order, comma-separated.

    >>> from .perms import make_kset
    >>> format_kset(make_kset([(2, 3, 1), (1, 2, 3), (3, 1, 2)]))
    '123, 231, 312'
    """
    return ", ".join(format_permutation(p) for p in s.perms)
