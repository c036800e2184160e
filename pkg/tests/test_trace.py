import pytest

from rpheap import heap_factory
from rpheap.trace import (COLUMNS, PHI_COLUMNS, Replayer, Trace, TraceError,
                          TraceParseError, parse_trace, run_trace)
from rpheap.workloads import random_trace, sort_trace

SAMPLE = """heapbench-trace 1 rp2
# two items and a meld
make a
make b
insert a 1 0.5
insert b 2 0.25   # trailing comment
meld a b
decreasekey a 1 0.375
findmin a
deletemin a
deletemin a
deletemin a
"""


def test_parse_sample():
    t = parse_trace(SAMPLE)
    assert t.kind == "rp2" and t.version == 1
    assert t.ops[2] == ("insert", "a", 1, 0.5)
    assert t.ops[4] == ("meld", "a", "b")
    assert len(t) == 10


def test_round_trip():
    t = random_trace(500, 2)
    t.kind = "rp1"
    back = parse_trace(t.dumps())
    assert back == t
    assert back.dumps() == t.dumps()


def test_round_trip_file(tmp_path):
    t = sort_trace(20)
    p = tmp_path / "t.trace"
    t.save(p)
    assert Trace.load(p) == t


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("nonsense\n", 1),
    ("heapbench-trace 2\n", 1),
    ("heapbench-trace 1\nmake a\npush a 1 2\n", 3),
    ("heapbench-trace 1\nmake a\ninsert a 1\n", 3),
    ("heapbench-trace 1\nmake a\n\ninsert a x 1.0\n", 4),
    ("heapbench-trace 1\nmake a\ninsert a -3 1.0\n", 3),
])
def test_parse_errors_name_line(text, line):
    with pytest.raises(TraceParseError) as e:
        parse_trace(text)
    assert e.value.line_no == line
    assert f"line {line}" in str(e.value)


def test_replayer_results():
    rep = Replayer(heap_factory("rp2"))
    out = rep.observe(parse_trace(SAMPLE).ops)
    assert out == [(6, 1), (7, 1), (8, 2), (9, None)]


def test_replayer_errors():
    rep = Replayer(heap_factory("rp2"))
    with pytest.raises(TraceError):
        rep.step(("insert", "nope", 1, 1.0))
    rep.step(("make", "a"))
    with pytest.raises(TraceError):
        rep.step(("make", "a"))
    rep.step(("insert", "a", 1, 1.0))
    with pytest.raises(TraceError):
        rep.step(("insert", "a", 1, 2.0))
    rep.step(("make", "b"))
    with pytest.raises(TraceError):
        rep.step(("decreasekey", "b", 1, 0.5))
    tol = Replayer(heap_factory("rp2"), tolerant=True)
    tol.run([("insert", "x", 1, 1.0), ("make", "x"), ("delete", "x", 5)])
    assert len(tol.heaps["x"]) == 0


def test_ids_follow_melds():
    rep = Replayer(heap_factory("rp1"))
    rep.run([("make", "a"), ("make", "b"), ("insert", "b", 1, 5.0),
             ("meld", "a", "b"), ("decreasekey", "a", 1, 1.0)])
    assert rep.heaps["a"].find_min().value == 4.0


def test_deletemin_on_empty_heap_is_ok():
    t = parse_trace("heapbench-trace 1\nmake a\ndeletemin a\nfindmin a\n")
    res = run_trace(t, heap_factory("rp2"), check="full")
    assert res.status == 0
    assert res.results == [(1, None), (2, None)]


def test_run_trace_rows_and_csv():
    t = sort_trace(10)
    res = run_trace(t, heap_factory("rp2"), check="full", analysis="type2-goodbad")
    assert res.status == 0
    assert len(res.rows) == len(t.ops)
    text = res.csv_text(True)
    assert text.splitlines()[0] == ",".join(COLUMNS + PHI_COLUMNS)
    assert len(text.splitlines()) == len(t.ops) + 1
    assert res.csv_text(False).splitlines()[0] == ",".join(COLUMNS)
    ins = [r for r in res.rows if r["op"] == "insert"]
    assert all(r["phi_after"] - r["phi_before"] == 2 for r in ins)


def test_run_trace_reports_failure():
    t = parse_trace("heapbench-trace 1\nmake a\ninsert a 1 1.0\ninsert a 1 2.0\n")
    res = run_trace(t, heap_factory("rp2"))
    assert res.status == 1 and res.error


def test_run_trace_check_levels():
    t = random_trace(400, 4)
    for level in ("off", "cheap", "full"):
        assert run_trace(t, heap_factory("rp1"), check=level, shadow_oracle=True).status == 0
    with pytest.raises(ValueError):
        run_trace(t, heap_factory("rp1"), check="loud")
