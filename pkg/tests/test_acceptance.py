"""Acceptance checks, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed at the end of a
pytest run (see conftest.py) or directly when this file is run as a script.
"""

import math
import time

import numpy as np
import pytest

from rpheap import heap_factory, make_heap
from rpheap.adversary import (BudgetError, build_capped_instance, build_variantA_instance,
                              control_heap, run_insert_deletemin_attack, run_variantA_cycle)
from rpheap.analysis import (IncrementalPotential, Type1ColorMonitor, Type2DeltaMonitor,
                             lg, min_size, potential, size_bound_violations)
from rpheap.binomial import perfect_tree_violations
from rpheap.oracle import OracleHeap, differential_run, exhaustive_small, observe
from rpheap.trace import Replayer, run_trace
from rpheap.workloads import (Xorshift64Star, bellman_ford, dijkstra, kruskal, prim,
                              random_graph, random_trace)

LINES = []


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    LINES.append(line)
    print(line)
    assert ok, line


# 1 ------------------------------------------------------------------------

EQUIV_KINDS = [
    ("rp1", "unrestricted"), ("rp1", "red-first"), ("rp1", "disassembly-first"),
    ("rp2", "unrestricted"), ("rp2", "red-first"), ("rp2", "disassembly-first"),
    ("capped:0", None), ("variantA:1", None), ("pairing", None),
    ("bq-onepass", None), ("bq-eager", None), ("tournament", None),
]


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    traces = {}
    bad = []
    for kind, policy in EQUIV_KINDS:
        dk = make_heap(kind).supports_decrease_key
        if dk not in traces:
            t = random_trace(100_000, seed=1, decrease_key=dk)
            traces[dk] = (t, observe(t.ops, OracleHeap))
        t, want = traces[dk]
        rep = differential_run(t, heap_factory(kind, policy, verify=False), expected=want)
        if not rep.ok:
            bad.append(f"{kind}/{policy}: {rep.detail}")
    took = time.perf_counter() - t0
    record(1, not bad and took < 30,
           f"{len(EQUIV_KINDS)} structure/policy pairs x 1e5 ops, "
           f"{len(bad)} mismatching, {took:.1f}s (limit 30s) {bad[:2]}")


# 2 ------------------------------------------------------------------------

def test_criterion_2_exhaustive_small():
    t0 = time.perf_counter()
    notes = []
    ok = True
    for kind in ("rp1", "rp2"):
        rep = exhaustive_small(heap_factory(kind), max_len=6, items=3, audit=lambda h: h.audit())
        ok = ok and rep.ok
        notes.append(f"{kind}: {rep.sequences} checked, {rep.pruned} pruned as revisits, "
                     f"{len(rep.failures)} failing")
    took = time.perf_counter() - t0
    record(2, ok and took < 60, "; ".join(notes) + f"; {took:.1f}s (limit 60s)")


# 3 ------------------------------------------------------------------------

def test_criterion_3_size_bounds():
    assert [min_size(k, "type2") for k in range(5)] == [1, 2, 3, 5, 8]
    checks = violations = 0
    first = None
    for kind, rule in (("rp1", "type1"), ("rp2", "type2")):
        for policy in ("unrestricted", "red-first", "disassembly-first"):
            for seed in range(4):
                t = random_trace(3000, seed=100 + seed)
                rep = Replayer(heap_factory(kind, policy, verify=False))
                for i, op in enumerate(t.ops):
                    rep.step(op)
                    if i % 7 and i != len(t.ops) - 1:
                        continue
                    for h in rep.heaps.values():
                        checks += 1
                        v = size_bound_violations(h, rule)
                        violations += len(v)
                        if v and first is None:
                            first = (kind, policy, seed, i, v[0])
    record(3, violations == 0,
           f"{checks} heap snapshots over 24 fuzz runs, {violations} violations {first or ''}")


# 4 ------------------------------------------------------------------------

def test_criterion_4_perfect_trees():
    checked = 0
    problems = []
    for kind in ("bq-onepass", "bq-eager"):
        t = random_trace(10_000, seed=7, decrease_key=False)
        rep = Replayer(heap_factory(kind, verify=False))
        known = set()  # (root, rank) pairs already verified; such trees are unchanged
        for op in t.ops:
            rep.step(op)
            now = set()
            for h in rep.heaps.values():
                for r in h.iter_roots():
                    key = (r, r.rank)
                    now.add(key)
                    if key not in known:
                        checked += 1
                        problems += perfect_tree_violations(r)
            known = now
        for h in rep.heaps.values():
            problems += h.audit()
    record(4, not problems,
           f"{checked} new half trees checked over 2 x 1e4 ops, {len(problems)} violations "
           f"{problems[:1]}")


# 5 ------------------------------------------------------------------------

def _type2_run(seed, ops):
    rng = Xorshift64Star(seed)
    h = make_heap("rp2", verify=False)
    mon = Type2DeltaMonitor(h)
    live = []
    mismatches = 0
    for i in range(ops):
        u = rng.random()
        if u < 0.5 or not live:
            live.append(mon.run("insert", h.insert, round(rng.random() * 1000, 3), i))
        elif u < 0.75:
            live.remove(mon.run("deletemin", h.delete_min))
        elif u < 0.9:
            x = live[rng.randbelow(len(live))]
            mon.run("decreasekey", h.decrease_key, x, round(rng.random() * 100, 3) + 0.001)
        elif u < 0.95:
            side = make_heap("rp2", verify=False)
            for j in range(rng.randbelow(4)):
                live.append(side.insert(rng.random() * 1000, ops + 10 * i + j))
            mon.tracker.absorb(IncrementalPotential(side, "type2-goodbad"))
            mon.run("meld", h.meld, side)
        else:
            x = live.pop(rng.randbelow(len(live)))
            mon.run("delete", h.delete, x)
        if potential(h, "type2-goodbad").value != mon.tracker.value:
            mismatches += 1
    return mon, mismatches


def test_criterion_5_type2_potential_deltas():
    total = {"insert": 0, "match": 0, "detach": 0, "disassembled": 0}
    violations, mismatches = [], 0
    for seed in range(2):
        mon, mm = _type2_run(seed, 10_000)
        violations += mon.violations
        mismatches += mm
        for k, v in mon.counts.items():
            total[k] += v
    record(5, not violations and mismatches == 0,
           f"2 x 1e4 ops, events {total}, {len(violations)} delta violations, "
           f"{mismatches} from-scratch mismatches {violations[:1]}")


# 6 ------------------------------------------------------------------------

def test_criterion_6_type1_colours():
    rng = Xorshift64Star(6)
    h = make_heap("rp1", verify=False)
    mon = Type1ColorMonitor(h)
    live = [h.insert(rng.random() * 1000, i) for i in range(3000)]
    nid = len(live)
    while mon.decreases < 10_000:
        u = rng.random()
        if u < 0.7:
            x = live[rng.randbelow(len(live))]
            mon.decrease(x, round(rng.random() * 50, 3) + 0.001)
        elif u < 0.85:
            live.remove(h.delete_min())
        else:
            live.append(h.insert(rng.random() * 1000, nid))
            nid += 1
        if len(live) < 500:
            for _ in range(500):
                live.append(h.insert(rng.random() * 1000, nid))
                nid += 1
    record(6, not mon.violations,
           f"{mon.decreases} key decreases, {mon.steps_on_yellow} steps at yellow non-roots, "
           f"{len(mon.violations)} violations {mon.violations[:1]}")


# 7 ------------------------------------------------------------------------

def test_criterion_7_tournament_bound():
    failing = []
    worst = 0.0
    for seed in range(100):
        t = random_trace(2000, seed=seed, decrease_key=False)
        res = run_trace(t, heap_factory("tournament", verify=False))
        assert res.status == 0, res.error
        used = sum(r["comparisons"] for r in res.rows)
        budget = sum(2 for r in res.rows if r["op"] in ("insert", "meld"))
        budget += sum(2 * lg(r["n_before"]) for r in res.rows if r["op"] == "deletemin")
        worst = max(worst, used / budget)
        if used > budget:
            failing.append(seed)
    record(7, not failing,
           f"100 traces, {len(failing)} over budget, worst comparisons/budget {worst:.3f}")


# 8 ------------------------------------------------------------------------

def test_criterion_8_variantA_superlinear():
    t0 = time.perf_counter()
    steps = {}
    error = ""
    for k in (16, 32, 64):
        try:
            drv = build_variantA_instance(1, k, record=False)
        except BudgetError as e:
            error = f"k={k}: {e}"
            break
        steps[k] = run_variantA_cycle(drv, 1, k).rank_steps
    took = time.perf_counter() - t0
    ratios = [steps[2 * k] / steps[k] for k in steps if 2 * k in steps]
    ok = not error and len(ratios) == 2 and min(ratios) >= 3 and took < 10
    record(8, ok, f"rank steps per cycle {steps}, ratios {[round(r, 2) for r in ratios]}, "
                  f"{took:.1f}s {error}")


# 9 ------------------------------------------------------------------------

def test_criterion_9_capped_zero_attack():
    k = 15
    drv = build_capped_instance(0, k)
    build = drv.trace()
    built_ops = drv.count
    s = run_insert_deletemin_attack(drv, 50)
    c = run_insert_deletemin_attack(control_heap(build, "rp1"), 50)
    ok = (s.cycles == c.cycles == 50 and min(s.trees) >= k + 1
          and max(c.trees) <= c.log_bound)
    record(9, ok, f"capped(0) built in {built_ops} ops (n={s.n}); trees per pass "
                  f"min {min(s.trees)} (need >= {k + 1}); rp1 control max {max(c.trees)} "
                  f"(need <= {c.log_bound})")


# 10 -----------------------------------------------------------------------

CLIENT_KINDS = ["rp1", "rp2", "pairing", "capped:0", "variantA:1"]


def test_criterion_10_graph_clients():
    bad = []
    for seed in range(50):
        g = random_graph(1000, 5000, seed)
        dist = bellman_ford(g, 0)
        mst = math.fsum(sorted(kruskal(g)))
        for kind in CLIENT_KINDS:
            if not np.array_equal(np.array(dijkstra(g, 0, make_heap(kind, verify=False)).values), dist):
                bad.append(("dijkstra", kind, seed))
            if prim(g, make_heap(kind, verify=False)).total != mst:
                bad.append(("prim", kind, seed))
    record(10, not bad, f"50 graphs (n=1000, m=5000) x {len(CLIENT_KINDS)} structures, "
                        f"{len(bad)} mismatches {bad[:2]}")


# 11 -----------------------------------------------------------------------

def test_criterion_11_determinism(tmp_path):
    from rpheap.cli import main
    diffs = []
    for impl, scheme in (("rp1", "type1-freshstale"), ("rp2", "type2-goodbad"),
                         ("tournament", "tournament-unfair"), ("pairing", None)):
        outs = []
        for run in range(2):
            t = tmp_path / f"{impl}{run}.trace"
            m = tmp_path / f"{impl}{run}.csv"
            assert main(["gen", "random", "--n", "3000", "--seed", "11",
                         "--impl", impl, "-o", str(t)]) == 0
            args = ["run", "--trace", str(t), "--impl", impl, "--metrics", str(m)]
            if scheme:
                args += ["--analysis", scheme]
            assert main(args) == 0
            outs.append((t.read_bytes(), m.read_bytes()))
        if outs[0] != outs[1]:
            diffs.append(impl)
    record(11, not diffs, f"trace and metrics CSV byte-identical across two runs for 4 "
                          f"structures; differing: {diffs}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
