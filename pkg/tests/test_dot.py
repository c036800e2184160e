import re

import pytest

from rpheap import make_heap
from rpheap.dot import ViewError, export_dot


def counts(text):
    nodes = len(re.findall(r"^\s+n\d+ \[label=", text, re.M))
    edges = re.findall(r"^\s+n\d+ -> n\d+.*$", text, re.M)
    return nodes, len(edges), sum("dashed" in e for e in edges)


def perfect_rank2(kind="rp2"):
    h = make_heap(kind)
    for v in range(5):
        h.insert(v, v)
    h.delete_min()  # four singletons pair up, then one more pass
    h.insert(-1, 9)
    h.delete_min()
    return h


def test_singleton():
    h = make_heap("rp2")
    h.insert(1.5, 3)
    text = export_dot(h)
    assert counts(text) == (1, 0, 0)
    assert '"3:1.5 [0]"' in text
    assert text.startswith("digraph")


def test_rank_two_tree():
    h = perfect_rank2("bq-eager")
    assert [r.rank for r in h.iter_roots()] == [2]
    assert counts(export_dot(h)) == (4, 3, 1)
    assert counts(export_dot(h, "heap-ordered")) == (4, 3, 0)


def test_full_view_needs_tournament():
    with pytest.raises(ViewError):
        export_dot(make_heap("rp2"), "full")
    with pytest.raises(ViewError):
        export_dot(make_heap("rp2"), "half-empty")
    with pytest.raises(ViewError):
        export_dot(make_heap("rp2"), "sideways")


def test_tournament_views():
    h = make_heap("tournament")
    for v in range(4):
        h.insert(v, v)
    nodes, edges, dashed = counts(export_dot(h, "full"))
    assert (nodes, edges) == (7, 6) and dashed == 0
    text = export_dot(h, "half-empty")
    nodes, edges, _ = counts(text)
    assert (nodes, edges) == (7, 6)
    assert len(re.findall(r'label="\[\d+\]"', text)) == 3


def test_write_to_file(tmp_path):
    h = make_heap("rp1")
    h.insert(2, 1)
    p = tmp_path / "h.dot"
    text = export_dot(h, path=p)
    assert p.read_text() == text
