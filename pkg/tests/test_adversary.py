import pytest

from rpheap import make_heap
from rpheap.adversary import (AttackSummary, BudgetError, Driver, build_capped_instance,
                              build_variantA_instance, check_one_perfect_per_rank,
                              control_heap, ladder_stage_ok, run_insert_deletemin_attack,
                              run_variantA_cycle)
from rpheap.core import subtree_size
from rpheap.oracle import differential_run
from rpheap import heap_factory


def test_driver_keeps_order():
    drv = Driver(make_heap("rp2"))
    a = drv.insert()
    b = drv.insert()
    assert b.value > a.value
    c = drv.insert(below=True)
    assert drv.h.find_min() is c
    drv.kill(a)
    assert not a.alive
    assert [op[0] for op in drv.trace().ops][:1] == ["make"]


@pytest.mark.parametrize("k,steps", [(2, 3), (4, 10), (8, 36)])
def test_variantA_cycle_cost(k, steps):
    drv = build_variantA_instance(1, k)
    assert not check_one_perfect_per_rank(drv.h, k + 1)
    s1 = run_variantA_cycle(drv, 1, k)
    s2 = run_variantA_cycle(drv, 1, k)
    assert s1.rank_steps == s2.rank_steps == steps  # k(k+1)/2


def test_variantA_b2_runs():
    drv = build_variantA_instance(2, 3)
    s = run_variantA_cycle(drv, 2, 3)
    assert s.rank_steps > 0


def test_variantA_trace_replays():
    drv = build_variantA_instance(1, 3)
    run_variantA_cycle(drv, 1, 3)
    rep = differential_run(drv.trace(), heap_factory("variantA:1"))
    assert rep.ok


def test_variantA_budget():
    with pytest.raises(BudgetError):
        build_variantA_instance(1, 32, record=False)
    with pytest.raises(ValueError):
        build_variantA_instance(0, 3)


def test_ladder_stages():
    seen = []

    def watch(stage, h):
        if stage[0] == "grow":
            _, top, j = stage
            assert not ladder_stage_ok(h, top, j), stage
        else:
            ranks = sorted(r.rank for r in h.iter_roots())
            assert ranks == list(range(stage[1] + 1))
        seen.append(stage)

    drv = build_capped_instance(0, 5, on_stage=watch)
    assert seen[-1] == ("top", 5)
    assert len(drv.h) == 6 * 7 // 2


def test_capped_zero_attack():
    drv = build_capped_instance(0, 6)
    build = drv.trace()
    s = run_insert_deletemin_attack(drv, 5)
    assert s.cycles == 5
    assert min(s.trees) >= 7 and max(s.links) == 0
    assert s.superlog
    c = run_insert_deletemin_attack(control_heap(build, "rp1"), 5)
    assert max(c.trees) <= c.log_bound


@pytest.mark.parametrize("d,cap", [(1, 4), (2, 8)])
def test_capped_prune(d, cap):
    drv = build_capped_instance(d, 8)
    roots = list(drv.h.iter_roots())
    assert sorted(r.rank for r in roots) == list(range(9))
    assert max(subtree_size(r) for r in roots) <= cap


def test_zero_cycles():
    drv = build_capped_instance(0, 3)
    s = run_insert_deletemin_attack(drv, 0)
    assert s == AttackSummary(n=len(drv.h))
    assert not s.superlog
