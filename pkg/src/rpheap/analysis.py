"""Potential functions, node classifications and amortized-cost checks.

Every scheme assigns an integer to each node (or tree) and sums them:

    tournament-unfair   1 per node that lost its last match unfairly
    onepass-treecount   1 per root
    type2-goodbad       good child k, bad child k+1, root k+2
    type1-color         green/yellow child k, yellow root k+2, red k+4
    type1-freshstale    green/yellow child k, stale yellow root k+2,
                        red child or fresh root k+4, stale red root k+6

``IncrementalPotential`` keeps the per-node values up to date from the
heap's change log and can be checked against a from-scratch sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .core import Node, iter_subtree, rank_of

SCHEMES = ("tournament-unfair", "onepass-treecount", "type2-goodbad",
           "type1-color", "type1-freshstale")


# -- classifications --------------------------------------------------------

def classify_type2(x: Node) -> str:
    if x.parent is None:
        return "root"
    return "bad" if x.rank - rank_of(x.ord) >= 2 else "good"


def is_11(x: Node) -> bool:
    return x.rank - rank_of(x.ord) == 1 and x.rank - rank_of(x.unord) == 1


def classify_type1(x: Node) -> str:
    if x.parent is None:
        c = x.ord
        return "yellow" if c is None or is_11(c) else "red"
    if x.ord is None and x.unord is None:
        return "green"
    if is_11(x) and all(is_11(c) for c in (x.ord, x.unord) if c is not None):
        return "green"
    do, du = x.rank - rank_of(x.ord), x.rank - rank_of(x.unord)
    if {do, du} == {0, 1}:
        zero = x.ord if do == 0 else x.unord
        if is_11(zero):
            return "yellow"
    return "red"


def _value(x: Node, scheme: str, fresh) -> tuple[str, int]:
    k = x.rank
    if scheme == "type2-goodbad":
        c = classify_type2(x)
        return c, k + {"good": 0, "bad": 1, "root": 2}[c]
    if scheme in ("type1-color", "type1-freshstale"):
        c = classify_type1(x)
        root = x.parent is None
        if scheme == "type1-color" or not root:
            if c == "red":
                return c, k + 4
            return c, k + 2 if root else k
        if x in fresh:
            return "fresh-" + c, k + 4
        return "stale-" + c, k + (6 if c == "red" else 2)
    if scheme == "tournament-unfair":
        return ("unfair", 1) if x.unfair else ("fair", 0)
    if scheme == "onepass-treecount":
        return ("root", 1) if x.parent is None else ("child", 0)
    raise ValueError(f"unknown analysis scheme {scheme!r}")


def _fresh_of(h, freshness) -> set:
    if freshness is None:
        f = getattr(h, "fresh_roots", None)
        return f() if f is not None else set()
    if isinstance(freshness, dict):
        return {x for x, v in freshness.items() if v}
    return set(freshness)


# -- snapshots -------------------------------------------------------------

@dataclass
class PotentialSnapshot:
    scheme: str
    value: int
    per_node: dict = field(default_factory=dict)  # node -> class name


def potential(h, scheme: str, freshness=None) -> PotentialSnapshot:
    """From-scratch potential of heap ``h``. For ``type1-freshstale``,
    ``freshness`` (a set of roots, or a map root -> bool) names the fresh
    roots; by default the heap's own record is used, empty between ops."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown analysis scheme {scheme!r}")
    fresh = _fresh_of(h, freshness) if scheme == "type1-freshstale" else ()
    total = 0
    per = {}
    for x in h.iter_nodes():
        c, v = _value(x, scheme, fresh)
        per[x] = c
        total += v
    return PotentialSnapshot(scheme, total, per)


def potential_type2(h) -> PotentialSnapshot:
    return potential(h, "type2-goodbad")


def potential_type1(h, freshness=None) -> PotentialSnapshot:
    if freshness is None:
        return potential(h, "type1-color")
    return potential(h, "type1-freshstale", freshness)


class IncrementalPotential:
    """Per-node potential kept current from the heap's change log.

    After an operation, only nodes that changed plus their parents and
    grandparents are reclassified (a class reads ranks two levels down).
    ``sync`` returns the class transitions it saw.
    """

    def __init__(self, h, scheme: str):
        if scheme not in SCHEMES:
            raise ValueError(f"unknown analysis scheme {scheme!r}")
        self.h = h
        self.scheme = scheme
        h.track_changes(True)
        self.cls: dict = {}
        self.val: dict = {}
        self.value = 0
        self._fresh: set = set()
        fresh = self._current_fresh()
        for x in h.iter_nodes():
            self._set(x, fresh)

    def _current_fresh(self) -> set:
        return _fresh_of(self.h, None) if self.scheme == "type1-freshstale" else set()

    def _set(self, x, fresh):
        c, v = _value(x, self.scheme, fresh)
        self.value += v - self.val.get(x, 0)
        self.cls[x] = c
        self.val[x] = v

    def sync(self) -> list:
        fresh = self._current_fresh()
        affected = set()
        for x in self.h.take_changes():
            affected.add(x)
            p = x.parent
            if p is not None:
                affected.add(p)
                if p.parent is not None:
                    affected.add(p.parent)
        affected |= fresh ^ self._fresh
        self._fresh = fresh
        changes = []
        for x in affected:
            old = self.cls.get(x)
            if not x.alive:
                if x in self.val:
                    self.value -= self.val.pop(x)
                    del self.cls[x]
                    changes.append((x, old, None))
                continue
            self._set(x, fresh)
            if self.cls[x] != old:
                changes.append((x, old, self.cls[x]))
        return changes

    def absorb(self, other: "IncrementalPotential"):
        """Take over the nodes of a heap melded into ours."""
        other.sync()
        self.cls.update(other.cls)
        self.val.update(other.val)
        self.value += other.value
        other.cls, other.val, other.value = {}, {}, 0

    def check(self) -> list[str]:
        self.sync()
        snap = potential(self.h, self.scheme)
        problems = []
        if snap.value != self.value:
            problems.append(f"incremental potential {self.value} != recomputed {snap.value}")
        if len(snap.per_node) != len(self.cls):
            problems.append("incremental potential tracks the wrong node set")
        return problems


# -- per-operation delta monitors -------------------------------------------

class Type2DeltaMonitor:
    """Checks the exact type-2 potential steps while operations run:
    insert +2, each fair match -1, decrease-key detach at most +4, and the
    disassembly (with the deleted root) at most k-2 for a rank-k root."""

    def __init__(self, h):
        self.h = h
        self.tracker = IncrementalPotential(h, "type2-goodbad")
        self.violations: list[str] = []
        self.counts = {"insert": 0, "match": 0, "detach": 0, "disassembled": 0}
        self._last = self.tracker.value
        self._op = None
        h.observer = self._on_event

    def _now(self):
        self.tracker.sync()
        return self.tracker.value

    def _on_event(self, event, h, **info):
        v = self._now()
        d = v - self._last
        self._last = v
        if event == "match":
            self.counts["match"] += 1
            if d != -1:
                self.violations.append(f"{self._op}: match changed potential by {d}")
        elif event == "detach":
            self.counts["detach"] += 1
            if d > 4:
                self.violations.append(f"{self._op}: detach raised potential by {d}")
        elif event == "disassembled":
            self.counts["disassembled"] += 1
            if d > info["rank"] - 2:
                self.violations.append(
                    f"{self._op}: disassembly of rank {info['rank']} changed potential by {d}")

    def run(self, label, fn, *args):
        self._op = label
        self._last = self._now()
        out = fn(*args)
        after = self._now()
        if label == "insert":
            self.counts["insert"] += 1
            if after - self._last != 2:
                self.violations.append(f"insert changed potential by {after - self._last}")
        self._last = after
        return out


class Type1ColorMonitor:
    """Watches type-1 colours across key decreases: no green node turns red,
    at most one node newly turns red, and a rank-decrease step at a node
    that was a yellow non-root is always the last one."""

    def __init__(self, h):
        self.h = h
        self.tracker = IncrementalPotential(h, "type1-color")
        self.violations: list[str] = []
        self.decreases = 0
        self.steps_on_yellow = 0
        self._before: dict = {}
        self._was_root: set = set()
        self._active = False
        h.observer = self._on_event

    def _on_event(self, event, h, **info):
        if not self._active or event != "rank_step":
            return
        u = info["node"]
        if self._before.get(u) == "yellow" and u not in self._was_root:
            self.steps_on_yellow += 1
            if not info["stop"]:
                self.violations.append(
                    f"rank step at yellow node {u.id} did not stop ({info['old']} -> {info['new']})")

    def decrease(self, x, delta):
        self.tracker.sync()
        # snapshot colours of x and its ancestors: only they can change colour
        self._before = {}
        self._was_root = set()
        y = x
        while y is not None:
            self._before[y] = self.tracker.cls[y]
            if y.parent is None:
                self._was_root.add(y)
            y = y.parent
        self._active = True
        try:
            self.h.decrease_key(x, delta)
        finally:
            self._active = False
        self.decreases += 1
        new_red = 0
        for node, old, new in self.tracker.sync():
            if new == "red" and old != "red":
                new_red += 1
                if old == "green":
                    self.violations.append(f"green node {node.id} turned red")
        if new_red > 1:
            self.violations.append(f"{new_red} nodes turned red in one key decrease")


# -- amortized budgets -------------------------------------------------------

@dataclass
class OpMetrics:
    op: str
    n_before: int
    comparisons: int
    links: int = 0
    rank_steps: int = 0
    halftrees_after: int = 0
    max_rank: int = -1
    phi_before: Optional[int] = None
    phi_after: Optional[int] = None

    @classmethod
    def from_row(cls, row: dict) -> "OpMetrics":
        return cls(row["op"], int(row["n_before"]), int(row["comparisons"]),
                   int(row["links"]), int(row["rank_steps"]),
                   int(row["halftrees_after"]), int(row["max_rank"]),
                   _int_or_none(row.get("phi_before")), _int_or_none(row.get("phi_after")))


def _int_or_none(v):
    return None if v in (None, "") else int(v)


def lg(n: int) -> int:
    """Ceiling of log2 n, with lg of 0 or 1 taken as 0."""
    return 0 if n <= 1 else math.ceil(math.log2(n))


@dataclass
class Budget:
    """Amortized budget per op: ``c1`` for insert, meld, findmin and make,
    ``c_dk`` (default ``c1``) for decreasekey, ``c2*lg n + c3`` for
    deletemin and delete. Potential changes count ``phi_scale`` times."""
    c1: float = 3
    c2: float = 2
    c3: float = 0
    phi_scale: float = 1
    c_dk: Optional[float] = None
    cost: str = "comparisons+rank_steps"

    def actual(self, m: OpMetrics) -> int:
        if self.cost == "comparisons":
            return m.comparisons
        return m.comparisons + m.rank_steps

    def allowed(self, m: OpMetrics) -> float:
        if m.op in ("deletemin", "delete"):
            return self.c2 * lg(m.n_before) + self.c3
        if m.op == "decreasekey" and self.c_dk is not None:
            return self.c_dk
        return self.c1


@dataclass
class AmortizedReport:
    ok: bool
    checked: int
    first_violation: Optional[tuple] = None  # (index, message)
    total_actual: int = 0
    total_budget: float = 0
    worst_slack: float = math.inf


def verify_amortized(metrics: Iterable[OpMetrics], budget: Budget) -> AmortizedReport:
    """Check ``actual + phi_scale*(phi_after - phi_before) <= budget`` per op
    and the telescoped sum; potentials must be present on every record."""
    rep = AmortizedReport(True, 0)
    phi0 = phi_end = None
    for i, m in enumerate(metrics):
        if m.phi_before is None or m.phi_after is None:
            raise ValueError(f"metrics row {i} carries no potential")
        if phi0 is None:
            phi0 = m.phi_before
        phi_end = m.phi_after
        a = budget.actual(m)
        allowed = budget.allowed(m)
        amortized = a + budget.phi_scale * (m.phi_after - m.phi_before)
        rep.checked += 1
        rep.total_actual += a
        rep.total_budget += allowed
        rep.worst_slack = min(rep.worst_slack, allowed - amortized)
        if amortized > allowed and rep.ok:
            rep.ok = False
            rep.first_violation = (i, f"{m.op}: actual {a} + dphi "
                                      f"{m.phi_after - m.phi_before} exceeds {allowed}")
    if phi0 is not None and rep.ok:
        if rep.total_actual > rep.total_budget + budget.phi_scale * (phi0 - phi_end):
            rep.ok = False
            rep.first_violation = (rep.checked, "telescoped total exceeds the budget")
    return rep


# -- size bounds --------------------------------------------------------------

def min_size(rank: int, rule: str) -> int:
    """Fewest items a half tree of ``rank`` can hold: 2**k for type 1 and
    binomial trees; n_0=1, n_1=2, n_k=n_(k-1)+n_(k-2) for type 2."""
    if rule != "type2":
        return 1 << rank
    a, b = 1, 2
    for _ in range(rank):
        a, b = b, a + b
    return a


def size_bound_violations(h, rule: str) -> list[str]:
    """Every root's half tree meets ``min_size``; every non-root of rank j
    heads a binary subtree of at least ``min_size(j+1) - 1`` nodes."""
    problems = []
    for root in h.iter_roots():
        order = list(iter_subtree(root))
        sizes: dict = {}
        for x in reversed(order):
            sizes[x] = 1 + sizes.get(x.ord, 0) + sizes.get(x.unord, 0)
        if sizes[root] < min_size(root.rank, rule):
            problems.append(f"root {root.id} of rank {root.rank} holds {sizes[root]} items")
        for x in order[1:]:
            if sizes[x] < min_size(x.rank + 1, rule) - 1:
                problems.append(f"node {x.id} of rank {x.rank} heads {sizes[x]} nodes")
    return problems


# Frozen budgets, potential counted twice, cost = comparisons + rank steps.
# The delete-min slopes follow the potential arguments (about 3 log_phi 2
# for type 2, 11 for type 1); the decrease-key constants were measured on
# seeded random, sort, Dijkstra and Prim traces and rounded up.
BUDGETS = {
    "type2-goodbad": Budget(c1=5, c2=5, c3=0, phi_scale=2, c_dk=12),
    "type1-color": Budget(c1=5, c2=11, c3=1, phi_scale=2, c_dk=22),
    "type1-freshstale": Budget(c1=5, c2=11, c3=1, phi_scale=2, c_dk=22),
    "tournament-unfair": Budget(c1=2, c2=2, c3=0, phi_scale=1, cost="comparisons"),
}
