"""
OEIS sequences, b-files, and the results store
==============================================

Fixed-k columns of the v_min table are OEIS sequences (A070735 for k=3
through A260359 for k=8), and the antidiagonal reading of the whole table
is A260355.  This demo computes prefixes, emits b-files, verifies them
against the bundled reference copies, and shows the append-only store.
"""

import tempfile
from pathlib import Path

from permprod import (
    COLUMN_SEQUENCES,
    Method,
    Quantity,
    SearchConfig,
    SequenceRecord,
    antidiagonal_sequence,
    emit_bfile,
    load_store,
    make_record,
    parse_bfile,
    read_store,
    reference_bfile,
    render_table,
    search,
    store_append,
    verify_against_reference,
)

# ---------------------------------------------------------------------------
# Column sequences.  Compute the first 8 terms of A070735 (the k=3 column).

values = [str(search(SearchConfig(n, 3)).v_min) for n in range(1, 9)]
seq = SequenceRecord("A070735", offset=1, values=tuple(values))
print(emit_bfile(seq), end="")

# Verify against the reference b-file shipped with the package.
report = verify_against_reference(seq, reference_bfile("A070735"))
print(report.summary())

# Every column sequence has a bundled reference:
for oeis_id, k in COLUMN_SEQUENCES.items():
    ref = parse_bfile(reference_bfile(oeis_id), oeis_id)
    print(f"{oeis_id} (k={k}): {len(ref.values)} reference terms,",
          "starting", ", ".join(ref.values[:4]))

# ---------------------------------------------------------------------------
# The antidiagonal sequence A260355 reads the table along n+k = 2, 3, ...
# with n ascending inside each diagonal.

table = {}
for s in range(2, 7):
    for n in range(1, s):
        table[(n, s - n)] = search(SearchConfig(n, s - n)).v_min
anti = antidiagonal_sequence(table, depth=5)
print("\nA260355 prefix:", ", ".join(anti.values))
print(verify_against_reference(anti, reference_bfile("A260355")).summary())

# ---------------------------------------------------------------------------
# The results store: append-only JSON lines, one self-describing record
# per computed quantity, 128-bit safe (values travel as decimal strings).

store = Path(tempfile.mkdtemp()) / "results.jsonl"
for n in range(1, 5):
    for k in range(1, 5):
        result = search(SearchConfig(n, k))
        store_append(
            make_record(n, k, Quantity.VMIN, result.v_min, Method.SEARCH,
                        enumerated=result.enumerated, elapsed=result.elapsed),
            store,
        )

records = read_store(store)
print("\nstore holds", len(records), "records; first line:")
print(records[0].to_json())

# load_store gives the merged logical view (and trips on contradictions).
merged = load_store(store)
print("merged keys:", len(merged))

# render_table turns store records into the familiar CSV grid.
print("\n" + render_table(records, Quantity.VMIN))
