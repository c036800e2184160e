import pytest

from rpheap import heap_factory
from rpheap.core import DeadHandleError
from rpheap.oracle import OracleHeap, differential_run, exhaustive_small
from rpheap.rpheap import RankPairingHeap, audit_rank_rule
from rpheap.trace import Trace
from rpheap.workloads import random_trace


class SkipsMinUpdate(RankPairingHeap):
    """Planted bug: a decreased root never becomes the minimum."""

    def _restore_after_decrease(self, x):
        if x.parent is None:
            return
        super()._restore_after_decrease(x)


def test_oracle_basics():
    o = OracleHeap()
    a = o.insert(3, 1)
    o.insert(2, 2)
    assert o.find_min().id == 2
    o.decrease_key(a, 2)
    assert o.delete_min() is a
    o.delete_min()
    assert o.delete_min() is None
    with pytest.raises(DeadHandleError):
        o.decrease_key(a, 1)


def test_clean_runs_agree():
    for kind in ("rp1", "rp2", "pairing", "capped:1", "variantA:2"):
        rep = differential_run(random_trace(3000, 5), heap_factory(kind))
        assert rep.ok, (kind, rep.detail)


def test_planted_bug_is_found_and_shrunk():
    found = None
    for seed in range(20):
        rep = differential_run(random_trace(2000, seed), SkipsMinUpdate)
        if not rep.ok:
            found = rep
            break
    assert found is not None
    assert found.shrunk is not None and len(found.shrunk) <= 20
    again = differential_run(found.shrunk, SkipsMinUpdate, shrink=False)
    assert not again.ok


def test_eight_heap_meld_tree():
    ops = []
    nid = 0
    for k in range(8):
        ops.append(("make", f"h{k}"))
        for _ in range(5):
            ops.append(("insert", f"h{k}", nid, float((nid * 37) % 101)))
            nid += 1
    for step in (1, 2, 4):
        for k in range(0, 8, 2 * step):
            ops.append(("meld", f"h{k}", f"h{k + step}"))
    ops += [("deletemin", "h0")] * 41
    for kind in ("rp1", "rp2", "bq-onepass", "bq-eager", "tournament", "pairing"):
        rep = differential_run(Trace(ops), heap_factory(kind))
        assert rep.ok, kind
        assert rep.results[-1] == (len(ops) - 1, None)


def test_exhaustive_tiny():
    rep = exhaustive_small(heap_factory("rp2"), max_len=4, items=2,
                           audit=lambda h: audit_rank_rule(h, "type2"))
    assert rep.ok and rep.sequences > 100
    bad = exhaustive_small(SkipsMinUpdate, max_len=4, items=2)
    assert not bad.ok
