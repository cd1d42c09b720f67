import os

import pytest

import permprod.cli as cli
from permprod import (
    Method,
    Quantity,
    SearchResult,
    load_store,
    make_kset,
    read_store,
)
from permprod.cli import _default_workers, main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_vmin_by_search(capsys):
    rc, out, _ = run(capsys, "vmin", "5", "3", "--quiet", "--no-store")
    assert rc == 0
    assert out == "89\n"


def test_vmin_closed_forms(capsys):
    assert run(capsys, "vmin", "1", "9", "--no-store")[:2] == (0, "1\n")
    assert run(capsys, "vmin", "2", "6", "--no-store")[:2] == (0, "16\n")
    assert run(capsys, "vmin", "7", "2", "--no-store")[:2] == (0, "84\n")


def test_vmax(capsys):
    rc, out, _ = run(capsys, "vmax", "3", "3", "--no-store")
    assert (rc, out) == (0, "36\n")


def test_count_trivial_and_search(capsys):
    assert run(capsys, "count", "2", "9", "--no-store")[:2] == (0, "1\n")
    rc, out, _ = run(capsys, "count", "3", "6", "--quiet", "--no-store")
    assert (rc, out) == (0, "2\n")


def test_minimizers_default_prints_lex_min(capsys):
    rc, out, _ = run(capsys, "minimizers", "4", "4", "--quiet", "--no-store")
    assert rc == 0
    assert out == "1234, 2143, 3412, 4321\n"


def test_minimizers_all(capsys):
    rc, out, _ = run(capsys, "minimizers", "5", "3", "--all", "--quiet", "--no-store")
    assert rc == 0
    assert out.splitlines() == [
        "12345, 34251, 52314",
        "12345, 35214, 52341",
        "12345, 35241, 52314",
    ]


def test_oracle_check_ok(capsys, tmp_path):
    store = tmp_path / "store.jsonl"
    rc, out, _ = run(
        capsys, "oracle-check", "3", "4", "--quiet", "--store", str(store)
    )
    assert rc == 0
    assert out == "OK v_min=33 n_min=1\n"
    records = read_store(store)
    assert [r.method for r in records] == [Method.SEARCH, Method.ORACLE]
    assert {r.value for r in records} == {"33"}
    assert load_store(store)  # agreeing records, no conflict


def test_oracle_check_mismatch(capsys, monkeypatch):
    forged = SearchResult(
        n=3,
        k=3,
        v_min=19,
        n_min=2,
        lex_min_set=make_kset([(1, 2, 3), (1, 2, 3), (1, 2, 3)]),
        enumerated=1,
        elapsed=0.0,
    )
    monkeypatch.setattr(cli, "brute_force_oracle", lambda n, k: forged)
    rc, out, _ = run(capsys, "oracle-check", "3", "3", "--quiet", "--no-store")
    assert rc == 1
    assert out.startswith("MISMATCH ")
    assert "search: v_min=18 n_min=1" in out
    assert "oracle: v_min=19 n_min=2" in out


def test_store_records_for_count(capsys, tmp_path):
    store = tmp_path / "store.jsonl"
    rc, out, _ = run(capsys, "count", "3", "3", "--quiet", "--store", str(store))
    assert (rc, out) == (0, "1\n")
    records = read_store(store)
    assert [(r.quantity, r.method, r.value) for r in records] == [
        (Quantity.VMIN, Method.SEARCH, "18"),
        (Quantity.NMIN, Method.SEARCH, "1"),
    ]
    assert records[0].lex_min_set == ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    assert records[0].enumerated == 6


def test_default_store_in_cwd(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    rc, out, _ = run(capsys, "vmin", "2", "4")
    assert (rc, out) == (0, "8\n")
    assert (tmp_path / cli.DEFAULT_STORE).is_file()
    assert len(read_store(tmp_path / cli.DEFAULT_STORE)) == 1


def test_no_store_leaves_no_file(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(capsys, "vmin", "2", "4", "--no-store")
    assert not (tmp_path / cli.DEFAULT_STORE).exists()


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "vmin", "3")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate", "1", "2")[0] == 2
    assert run(capsys, "table", "--quantity", "vgolf", "--nmax", "1", "--kmax", "1")[0] == 2


def test_domain_errors_exit_1(capsys):
    rc, _, err = run(capsys, "vmin", "0", "3", "--no-store")
    assert rc == 1
    assert "ValueError" in err
    rc, _, err = run(capsys, "vmin", "2", "200", "--no-store")
    assert rc == 1
    assert "Overflow" in err
    rc, _, err = run(capsys, "vmin", "16", "3", "--no-store")
    assert rc == 1
    assert "InvalidConfig" in err
    rc, _, err = run(capsys, "bfile", "--seq", "A000042", "--terms", "3", "--no-store")
    assert rc == 1
    assert "UnknownSequence" in err


def test_version(capsys):
    rc, out, _ = run(capsys, "--version")
    assert rc == 0
    assert out.strip() == f"permprod {cli.__version__}"


def test_bfile_column(capsys):
    rc, out, _ = run(
        capsys, "bfile", "--seq", "A070735", "--terms", "5", "--quiet", "--no-store"
    )
    assert rc == 0
    assert out == "1 1\n2 6\n3 18\n4 44\n5 89\n"


def test_bfile_output_file(capsys, tmp_path):
    target = tmp_path / "b070736.txt"
    rc, out, _ = run(
        capsys,
        "bfile", "--seq", "A070736", "--terms", "4",
        "--output", str(target), "--quiet", "--no-store",
    )
    assert rc == 0
    assert out == ""
    assert target.read_text() == "1 1\n2 8\n3 33\n4 96\n"


def test_bfile_respects_node_budget(capsys):
    # n! nodes for the k=3 column: 7! = 5040 exceeds a budget of 1000.
    rc, out, err = run(
        capsys,
        "bfile", "--seq", "A070735", "--terms", "10",
        "--max-nodes", "1000", "--quiet", "--no-store",
    )
    assert rc == 0
    assert out == "1 1\n2 6\n3 18\n4 44\n5 89\n6 162\n"
    assert "stopping at n=7" in err


def test_bfile_antidiagonal(capsys):
    rc, out, _ = run(
        capsys, "bfile", "--seq", "A260355", "--terms", "10", "--quiet", "--no-store"
    )
    assert rc == 0
    assert out == "1 1\n2 1\n3 3\n4 1\n5 4\n6 6\n7 1\n8 6\n9 10\n10 10\n"


def test_verify_against_bundled(capsys):
    rc, out, _ = run(
        capsys, "verify", "--seq", "A070736", "--terms", "4", "--quiet", "--no-store"
    )
    assert rc == 0
    assert out == "A070736: OK, 4 compared, 4 matched\n"


def test_verify_default_terms_budget_limited(capsys):
    rc, out, err = run(
        capsys,
        "verify", "--seq", "A070735", "--max-nodes", "1000", "--quiet", "--no-store",
    )
    assert rc == 0
    assert out == "A070735: OK, 6 compared, 6 matched\n"
    assert "stopping at n=7" in err


def test_verify_corrupted_reference(capsys, tmp_path):
    bad = tmp_path / "reference.txt"
    bad.write_text("1 1\n2 6\n3 19\n")
    rc, out, _ = run(
        capsys,
        "verify", "--seq", "A070735", "--reference", str(bad),
        "--quiet", "--no-store",
    )
    assert rc == 1
    assert "MISMATCH at index 3: computed 18, reference 19" in out


def test_table_vmax(capsys):
    rc, out, _ = run(
        capsys,
        "table", "--quantity", "vmax", "--nmax", "3", "--kmax", "3",
        "--quiet", "--no-store",
    )
    assert rc == 0
    assert out.splitlines() == [
        "n/k,1,2,3",
        "1,1,1,1",
        "2,3,5,9",
        "3,6,14,36",
    ]


def test_table_nmin(capsys):
    rc, out, _ = run(
        capsys,
        "table", "--quantity", "nmin", "--nmax", "3", "--kmax", "4",
        "--quiet", "--no-store",
    )
    assert rc == 0
    assert out.splitlines() == [
        "n/k,1,2,3,4",
        "1,1,1,1,1",
        "2,1,1,1,1",
        "3,1,1,1,1",
    ]


def test_table_vmin_skips_over_budget_cells(capsys, tmp_path):
    target = tmp_path / "table.csv"
    rc, out, _ = run(
        capsys,
        "table", "--quantity", "vmin", "--nmax", "4", "--kmax", "4",
        "--max-nodes", "20", "--quiet", "--no-store", "--output", str(target),
    )
    assert rc == 0
    assert out == ""
    # closed forms always fill; search cells beyond 20 nodes stay blank
    assert target.read_text().splitlines() == [
        "n/k,1,2,3,4",
        "1,1,1,1,1",
        "2,3,4,6,8",
        "3,6,10,18,",
        "4,10,20,,",
    ]


def test_default_workers_env(capsys):
    assert _default_workers({"PERMPROD_THREADS": "3"}) == 3
    assert _default_workers({"PERMPROD_THREADS": "1"}) == 1
    fallback = os.cpu_count() or 1
    assert _default_workers({}) == fallback
    assert _default_workers({"PERMPROD_THREADS": "0"}) == fallback
    assert _default_workers({"PERMPROD_THREADS": "many"}) == fallback
    assert "PERMPROD_THREADS" in capsys.readouterr().err
