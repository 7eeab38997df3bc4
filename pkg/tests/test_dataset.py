import io
from collections import Counter

import pytest

from ncconic import dataset

EXPECTED_ROWS = {
    "1": 10,
    "2": 13,
    "3": 55,
    "4": 10,
    "5": 4,
    "6": 7,
    "7": 6,
    "8": 7,
    "9": 12,
    "10": 7,
    "11": 16,
    "12": 4,
    "13": 8,
    "14": 3,
    "15": 9,
    "ident": 26,
}


def test_row_coverage_and_uniqueness():
    rows = dataset.load_rows()
    by_table = Counter(r.table for r in rows)
    assert dict(by_table) == EXPECTED_ROWS
    labels = Counter((r.table, r.label) for r in rows)
    dup = [k for k, v in labels.items() if v > 1]
    assert not dup


def test_every_row_names_a_field():
    for r in dataset.load_rows():
        assert r.spec is not None
        if not r.skip and r.table != "ident":
            assert r.ambient is not None and r.relations or r.table == "ident"


def test_verify_statuses_are_legal_and_deterministic():
    buf1, buf2 = io.StringIO(), io.StringIO()
    rep1 = dataset.verify(table="14", out=buf1)
    rep2 = dataset.verify(table="14", out=buf2)
    assert buf1.getvalue() == buf2.getvalue()
    assert rep1.ok and rep2.ok
    for r in rep1.results:
        assert r.status in ("PASS", "FAIL", "SKIP", "NOTE")


def test_verify_row_filter():
    buf = io.StringIO()
    rep = dataset.verify(table="10", row="F1", out=buf)
    assert rep.ok
    assert all("[10/F1]" in l for l in buf.getvalue().splitlines() if l.startswith("PASS"))


def test_skip_rows_report_reasons():
    rows = [r for r in dataset.load_rows() if r.skip and r.kind != "missing"]
    assert rows, "table 3 carries skip rows for the relation-less types"
    for r in rows:
        res = dataset.verify_row(r)
        assert len(res) == 1 and res[0].status == "SKIP" and res[0].detail
