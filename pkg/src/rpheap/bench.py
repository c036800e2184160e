"""Counter-based benchmark: mean comparisons, links and rank steps per op
class, for each (workload, implementation) pair."""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass

from . import heap_factory, make_heap
from .trace import Replayer, Trace
from .workloads import gen_workload, random_graph

BENCH_COLUMNS = ["workload", "impl", "op", "count", "comparisons", "links", "rank_steps"]


@dataclass
class BenchRow:
    workload: str
    impl: str
    op: str
    count: int
    comparisons: float
    links: float
    rank_steps: float


def parse_suite_item(item: str, seed: int = 0):
    """``sort:N``, ``random:N``, ``dijkstra:N:M`` or ``prim:N:M`` -> (name, trace factory).
    The factory takes ``decrease_key`` so random traces suit every impl."""
    parts = item.split(":")
    kind, nums = parts[0], [int(p) for p in parts[1:]]
    if kind in ("sort", "random") and len(nums) == 1:
        return item, lambda dk=True: gen_workload(kind, n=nums[0], seed=seed, decrease_key=dk)
    if kind in ("dijkstra", "prim") and len(nums) == 2:
        g = random_graph(nums[0], nums[1], seed)
        return item, lambda dk=True: gen_workload(kind, graph=g)
    raise ValueError(f"bad suite item {item!r}")


def measure(trace: Trace, factory) -> dict:
    """Replay ``trace``; totals per op name as [count, comparisons, links, rank_steps]."""
    rep = Replayer(factory)
    tot = defaultdict(lambda: [0, 0, 0, 0])
    for op in trace.ops:
        involved = [rep.heaps[n] for n in op[1:3] if isinstance(n, str) and n in rep.heaps]
        if op[0] != "meld":
            involved = involved[:1]
        before = [sum(h.counters.snapshot()[j] for h in involved) for j in range(3)]
        rep.step(op)
        h = rep.heaps.get(op[1])
        if h is None:
            continue
        after = h.counters.snapshot()
        t = tot[op[0]]
        t[0] += 1
        for j in range(3):
            t[j + 1] += after[j] - before[j]
    return tot


def bench(suite: list[str], impls: list[str], repetitions: int = 1, seed: int = 0) -> list[BenchRow]:
    """Run every impl on every workload. Impls without decrease-key get
    random traces without it; graph workloads need it and are skipped."""
    rows = []
    for item in suite:
        name, make_trace = parse_suite_item(item, seed)
        cache = {}
        for impl in impls:
            dk = make_heap(impl).supports_decrease_key
            if name.split(":")[0] in ("dijkstra", "prim") and not dk:
                continue
            if dk not in cache:
                cache[dk] = make_trace(dk)
            trace = cache[dk]
            agg = defaultdict(lambda: [0, 0, 0, 0])
            for _ in range(repetitions):
                for op, t in measure(trace, heap_factory(impl, verify=False)).items():
                    for j in range(4):
                        agg[op][j] += t[j]
            for op in sorted(agg):
                c, cmp_, lk, rs = agg[op]
                rows.append(BenchRow(name, impl, op, c // repetitions,
                                     cmp_ / c, lk / c, rs / c))
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    for r in rows:
        w.writerow([r.workload, r.impl, r.op, r.count, f"{r.comparisons:.4f}",
                    f"{r.links:.4f}", f"{r.rank_steps:.4f}"])
    return buf.getvalue()
