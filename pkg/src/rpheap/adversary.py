"""Scripted attacks on two weakened key-decrease rules.

variantA(b): ranks may differ by any negative amount but by at most ``b``
upward, and the repair after a cut walks ancestors only. Decreasing keys
bottom-up along a thinned unordered path makes every cut cascade to the top,
so one cycle costs on the order of k**2 rank steps.

capped(d): at most ``d`` rank-decrease steps per key decrease. Pruning
perfect trees (d >= 1), or the path ladder (d = 0), leaves a heap with one
half tree per rank and few items, and then every insert + delete-min pair
has to walk all those roots.

All scripts run through ``Driver``, which records a replayable trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .analysis import lg
from .binomial import perfect_tree_violations
from .core import HeapError, Node, iter_subtree, rank_of, subtree_size
from .rpheap import RankPairingHeap, RankRule
from .trace import Trace

NODE_BUDGET = 1 << 26


class BudgetError(HeapError):
    """The construction would need more nodes than the budget allows."""


class ShapeError(HeapError):
    """The heap is not in the shape an attack step expects."""


class Driver:
    """Runs heap operations by item id and records them as a trace."""

    def __init__(self, heap, name: str = "a", record: bool = True):
        self.h = heap
        self.name = name
        self.ops: Optional[list] = [("make", name)] if record else None
        self.handles: dict[int, Node] = {}
        self.next_id = 0
        self.lo = 0.0   # every live value is >= lo
        self.hi = 0.0   # every live value is <= hi
        self.count = 0  # heap operations performed

    def _rec(self, *op):
        self.count += 1
        if self.ops is not None:
            self.ops.append(op)

    def insert(self, value: Optional[float] = None, below: bool = False) -> Node:
        """Insert ``value``; ``below`` puts it under every live key, and
        the default puts it above every live key."""
        if value is None:
            if below:
                self.lo -= 1.0
                value = self.lo
            else:
                self.hi += 1.0
                value = self.hi
        self.lo = min(self.lo, value)
        self.hi = max(self.hi, value)
        i = self.next_id
        self.next_id += 1
        x = self.h.insert(value, i)
        self.handles[i] = x
        self._rec("insert", self.name, i, value)
        return x

    def delete_min(self) -> Optional[Node]:
        x = self.h.delete_min()
        self._rec("deletemin", self.name)
        if x is not None:
            del self.handles[x.id]
        return x

    def decrease(self, x: Node, delta: float):
        self.h.decrease_key(x, delta)
        self._rec("decreasekey", self.name, x.id, delta)
        if delta != math.inf:
            self.lo = min(self.lo, x.value)

    def decrease_below(self, x: Node, depth: float = 1.0):
        """Lower ``x`` to ``depth`` under the current minimum."""
        self.decrease(x, x.value - (self.lo - depth))

    def kill(self, x: Node):
        """Key decrease by infinity followed by a minimum deletion."""
        self.decrease(x, math.inf)
        y = self.delete_min()
        if y is not x:
            raise ShapeError("tombstoned item was not the minimum")

    def cycle(self) -> Node:
        """Insert an item below everything, then delete it again."""
        self.insert(below=True)
        return self.delete_min()

    def trace(self) -> Trace:
        return Trace(list(self.ops or []), kind=self.h.kind)


def _roots_by_rank(h) -> dict[int, list[Node]]:
    out: dict[int, list[Node]] = {}
    for r in h.iter_roots():
        out.setdefault(r.rank, []).append(r)
    return out


def check_one_perfect_per_rank(h, top: int) -> list[str]:
    """One perfect half tree of each rank 0..top and nothing else."""
    problems = []
    by = _roots_by_rank(h)
    if sorted(by) != list(range(top + 1)) or any(len(v) != 1 for v in by.values()):
        problems.append(f"root ranks {sorted(r.rank for r in h.iter_roots())}, "
                        f"want one each of 0..{top}")
    for r in h.iter_roots():
        problems += perfect_tree_violations(r)
    return problems


def build_perfect_ladder(drv: Driver, top: int):
    """Insert 2**(top+1)-1 items, then cycle tiny items through until the
    one-pass matches leave one perfect half tree per rank 0..top."""
    need = (1 << (top + 1)) - 1
    if need + 1 > NODE_BUDGET:
        raise BudgetError(f"{need} nodes needed for ranks 0..{top}; budget {NODE_BUDGET}")
    for _ in range(need):
        drv.insert()
    while True:
        drv.cycle()
        ranks = [r.rank for r in drv.h.iter_roots()]
        if len(ranks) == len(set(ranks)):
            break
    problems = check_one_perfect_per_rank(drv.h, top)
    if problems:
        raise ShapeError("; ".join(problems[:3]))


# -- variantA ----------------------------------------------------------------------

def build_variantA_instance(b: int, k: int, record: bool = True) -> Driver:
    """A variantA(b) heap holding one perfect half tree of each rank 0..b*k+1."""
    if b < 1 or k < 1:
        raise ValueError("need b >= 1 and k >= 1")
    top = b * k + 1
    if top + 2 > 62 or (1 << (top + 1)) > NODE_BUDGET:
        raise BudgetError(
            f"variantA(b={b}, k={k}) needs 2**{top + 1}-1 nodes; budget is 2**26")
    drv = Driver(RankPairingHeap(RankRule("variantA", b=b), verify=False), record=record)
    build_perfect_ladder(drv, top)
    return drv


@dataclass
class CycleSummary:
    rank_steps: int = 0
    comparisons: int = 0
    links: int = 0
    ops: int = 0
    decrease_keys: int = 0
    cascade_lengths: list = field(default_factory=list)


def _delta(h, before):
    a = h.counters.snapshot()
    return a[0] - before[0], a[1] - before[1], a[2] - before[2]


def run_variantA_cycle(drv: Driver, b: int, k: int) -> CycleSummary:
    """Thin, cascade, delete-min, insert; leaves the heap shape unchanged."""
    h = drv.h
    top = b * k + 1
    problems = check_one_perfect_per_rank(h, top)
    if problems:
        raise ShapeError("; ".join(problems[:3]))
    x = _roots_by_rank(h)[top][0]
    path = []
    y = x.ord
    while y is not None:
        path.append(y)
        y = y.unord
    # path[i] has rank b*k - i
    before = h.counters.snapshot()
    ops0 = drv.count
    s = CycleSummary()
    for y in path:
        if y.rank % b:
            drv.decrease_below(y, 0.5)
            s.decrease_keys += 1
    keep = [y for y in path if y.rank % b == 0]
    # smallest rank first; the first one ends up with the lowest key
    lowest = drv.lo - len(keep) - 1
    for i, y in enumerate(reversed(keep)):
        steps0 = h.counters.rank_steps
        drv.decrease(y, y.value - (lowest + i))
        s.cascade_lengths.append(h.counters.rank_steps - steps0)
        s.decrease_keys += 1
    by = _roots_by_rank(h)
    if len(by.get(0, [])) != 3 or any(len(by.get(r, [])) != 2 for r in range(1, b * k + 1)):
        raise ShapeError("unexpected root ranks after the cascades")
    drv.delete_min()
    drv.insert()
    s.comparisons, s.links, s.rank_steps = _delta(h, before)
    s.ops = drv.count - ops0
    return s


# -- capped(d) ------------------------------------------------------------------------

def _is_path(root: Node) -> bool:
    for x in iter_subtree(root):
        if x.unord is not None and x is not root:
            return False
    return True


def grow_path_tree(drv: Driver, j: int):
    """With path trees of ranks 0..j-1 present (ranks >= j may also be
    there, once each): insert an item below all, run j insert/delete-min
    cycles so it wins one match per rank, then cut every node of the
    unordered path under its ordered child. Leaves path trees of ranks
    0..j-2 and a path tree of rank j."""
    m = drv.insert(below=True)
    for _ in range(j):
        drv.cycle()
    if m.rank != j or m.parent is not None:
        raise ShapeError(f"ladder item reached rank {m.rank}, want {j}")
    p = []
    y = m.ord.unord if m.ord is not None else None
    while y is not None:
        p.append(y)
        y = y.unord
    for y in reversed(p):
        drv.decrease(y, 0.5)


def build_capped_instance(d: int, k: int, record: bool = True,
                          on_stage: Optional[Callable] = None) -> Driver:
    """A capped(d) heap with one half tree of each rank 0..k.

    d = 0 uses the path ladder: raising the top rank from K-1 to K runs
    ``grow_path_tree`` for j = K, K-1, ..., 1 and one insert. d >= 1 builds
    perfect trees and deletes every node at distance d+2 or more from its
    root, deepest first. ``on_stage(name, heap)`` observes the ladder.
    """
    if d < 0 or k < 1:
        raise ValueError("need d >= 0 and k >= 1")
    drv = Driver(RankPairingHeap(RankRule("capped", d=d), verify=False), record=record)
    if d == 0:
        if (k + 1) * (k + 2) // 2 + 2 > NODE_BUDGET:
            raise BudgetError("ladder too large")
        drv.insert()
        for top in range(1, k + 1):
            for j in range(top, 0, -1):
                grow_path_tree(drv, j)
                if on_stage is not None:
                    on_stage(("grow", top, j), drv.h)
            drv.insert()
            if on_stage is not None:
                on_stage(("top", top), drv.h)
        return drv
    if k + 2 > 62 or (1 << (k + 1)) > NODE_BUDGET:
        raise BudgetError(f"capped(d={d}, k={k}) needs 2**{k + 1}-1 nodes; budget is 2**26")
    build_perfect_ladder(drv, k)
    doomed = []
    for root in drv.h.iter_roots():
        stack = [(root, 0)]
        while stack:
            x, dist = stack.pop()
            if dist >= d + 2:
                doomed.append((dist, x.id))
            for c in (x.ord, x.unord):
                if c is not None:
                    stack.append((c, dist + 1))
    doomed.sort(reverse=True)
    for _, i in doomed:
        drv.kill(drv.handles[i])
    return drv


def ladder_stage_ok(h, top: int, j: int) -> list[str]:
    """After ``grow_path_tree(j)`` while raising the top rank to ``top``:
    path trees of ranks 0..j-2 and j..top, nothing else."""
    want = [r for r in range(top + 1) if r != j - 1]
    got = sorted(r.rank for r in h.iter_roots())
    problems = []
    if got != want:
        problems.append(f"root ranks {got}, want {want}")
    for r in h.iter_roots():
        if not _is_path(r) or subtree_size(r) != r.rank + 1:
            problems.append(f"tree of rank {r.rank} is not a path")
    return problems


# -- the insert / delete-min attack ------------------------------------------------------

@dataclass
class AttackSummary:
    cycles: int = 0
    n: int = 0
    trees: list = field(default_factory=list)        # trees entering each pass
    comparisons: list = field(default_factory=list)
    links: list = field(default_factory=list)

    @property
    def log_bound(self) -> int:
        return lg(self.n) + 1

    @property
    def superlog(self) -> bool:
        """Every cycle walked more trees than ceil(lg n) + 1."""
        return bool(self.trees) and min(self.trees) > self.log_bound


def run_insert_deletemin_attack(drv: Driver, cycles: int) -> AttackSummary:
    """Insert an item below all others and delete it, ``cycles`` times."""
    h = drv.h
    s = AttackSummary(n=len(h))
    for _ in range(cycles):
        before = h.counters.snapshot()
        drv.cycle()
        c, l, _ = _delta(h, before)
        s.cycles += 1
        s.trees.append(h.last_pass)
        s.comparisons.append(c)
        s.links.append(l)
    return s


def control_heap(trace: Trace, kind: str = "rp1", warmup: int = 64) -> Driver:
    """Replay an attack's build trace on a healthy heap, then run ``warmup``
    insert/delete-min cycles so leftover equal-rank trees get matched."""
    from . import make_heap
    from .trace import Replayer
    rep = Replayer(lambda: make_heap(kind, verify=False))
    rep.run(trace.ops)
    name = next(iter(rep.heaps))
    drv = Driver(rep.heaps[name], name, record=False)
    drv.handles = dict(rep.handles)
    drv.next_id = max(rep.handles, default=-1) + 1
    # ids of items deleted during the build are never reused
    drv.next_id = max(drv.next_id, max((op[2] for op in trace.ops if op[0] == "insert"),
                                       default=-1) + 1)
    vals = [x.value for x in rep.handles.values()]
    drv.lo = min(vals, default=0.0)
    drv.hi = max(vals, default=0.0)
    for _ in range(warmup):
        drv.cycle()
    return drv
