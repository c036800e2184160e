"""Rank-pairing heaps (type 1 and type 2) and two deliberately weakened
variants used by the adversary constructions.

The heap is a one-pass binomial queue plus parent pointers and a relaxed rank
rule. Decreasing the key of a non-root ``x`` cuts ``x`` (with its ordered
subtree) loose, puts ``unord(x)`` in its place and then repairs ranks upward.
Only ranks cascade; links change only at the old parent and the root list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Node, RootListHeap, iter_subtree, rank_of

RULES = ("type1", "type2", "variantA", "capped")
POLICIES = ("unrestricted", "red-first", "disassembly-first")


@dataclass(frozen=True)
class RankRule:
    kind: str = "type2"
    b: int = 1  # variantA: largest allowed positive rank difference
    d: int = 0  # capped: rank-decrease steps allowed per key decrease

    def __post_init__(self):
        if self.kind not in RULES:
            raise ValueError(f"unknown rank rule {self.kind!r}")
        if self.kind == "variantA" and self.b < 1:
            raise ValueError("variantA needs b >= 1")
        if self.kind == "capped" and self.d < 0:
            raise ValueError("capped needs d >= 0")

    def __str__(self):
        if self.kind == "variantA":
            return f"variantA:{self.b}"
        if self.kind == "capped":
            return f"capped:{self.d}"
        return self.kind


def type1_target_rank(rv: int, rw: int) -> int:
    if rv > rw:
        return rv
    if rw > rv:
        return rw
    return rw + 1


def type2_target_rank(rv: int, rw: int) -> int:
    if rv > rw + 1:
        return rv
    if rw > rv + 1:
        return rw
    return max(rv + 1, rw + 1)


def decrease_rank_step(u: Node, rule: str = "type1") -> Optional[Node]:
    """One iteration of the rank-decrease loop at non-root ``u``.

    Returns the next node to examine, or None when the loop stops. Reaching
    a root refreshes its rank to r(ord)+1 and stops.
    """
    if u.parent is None:
        raise ValueError("decrease_rank_step called on a root")
    target = type1_target_rank if rule == "type1" else type2_target_rank
    k = target(rank_of(u.ord), rank_of(u.unord))
    if k == u.rank:
        return None
    u.rank = k
    p = u.parent
    if p.parent is None:
        p.rank = rank_of(p.ord) + 1
        return None
    return p


def root_is_red(x: Node) -> bool:
    """Type-1 root colour: yellow iff childless or its child is a 1,1-node."""
    c = x.ord
    if c is None:
        return False
    return not (rank_of(c.ord) == c.rank - 1 and rank_of(c.unord) == c.rank - 1)


class RankPairingHeap(RootListHeap):
    supports_decrease_key = True

    def __init__(self, rule: RankRule | str = "type2", policy: Optional[str] = None,
                 verify: bool = True):
        super().__init__(verify)
        if isinstance(rule, str):
            rule = RankRule(rule)
        if policy is None:
            policy = "disassembly-first" if rule.kind in ("type1", "capped") else "unrestricted"
        if policy not in POLICIES:
            raise ValueError(f"unknown match policy {policy!r}")
        self.rule = rule
        self.policy = policy
        self._fresh: Optional[set] = None
        self._target = type1_target_rank if rule.kind in ("type1", "capped") else type2_target_rank

    @property
    def kind(self):
        return {"type1": "rp1", "type2": "rp2"}.get(self.rule.kind, str(self.rule))

    def config(self):
        return (type(self), self.rule, self.policy)

    def describe(self):
        return f"{self.kind}/{self.policy}"

    # delete-min ----------------------------------------------------------

    def _pass_order(self, produced, others):
        if self.policy == "disassembly-first":
            trees = produced + others
        elif self.policy == "red-first":
            trees = produced + others
            trees = [t for t in trees if root_is_red(t)] + \
                    [t for t in trees if not root_is_red(t)]
        else:
            trees = others + produced
        if self.observer is not None:
            self._fresh = {t for t in produced if t.rank >= 1}
        return trees

    def _link(self, a, b):
        w = super()._link(a, b)
        if self._fresh is not None:
            self._fresh.discard(a)
            self._fresh.discard(b)
        return w

    def delete_min(self):
        try:
            return super().delete_min()
        finally:
            self._fresh = None

    def fresh_roots(self) -> set:
        """Roots created by the running delete-min that have not been matched."""
        return set(self._fresh) if self._fresh is not None else set()

    # key decrease --------------------------------------------------------

    def _restore_after_decrease(self, x: Node) -> None:
        p = x.parent
        if p is None:
            if x is not self._min:
                self.counters.comparisons += 1
                if x.key < self._min.key:
                    self._min = x
            return
        y = x.unord
        if p.ord is x:
            p.ord = y
        else:
            p.unord = y
        if y is not None:
            y.parent = p
        x.unord = None
        x.parent = None
        x.rank = rank_of(x.ord) + 1
        self._touch(x, y, p)
        if p.parent is None:
            p.rank = rank_of(p.ord) + 1
        self._add_root(x)
        self._emit("detach", node=x, parent=p)
        if self.rule.kind == "variantA":
            self._decrease_ranks_ancestors(p, y)
        else:
            self._decrease_ranks(p)

    def _decrease_ranks(self, u: Node) -> None:
        limit = self.rule.d if self.rule.kind == "capped" else -1
        target = self._target
        steps = 0
        while u.parent is not None:
            if steps == limit:
                return
            steps += 1
            self.counters.rank_steps += 1
            k = target(rank_of(u.ord), rank_of(u.unord))
            old = u.rank
            stop = k == old
            if not stop:
                u.rank = k
                self._touch(u)
            self._emit("rank_step", node=u, old=old, new=k, stop=stop)
            if stop:
                return
            u = u.parent
        # u is a root whose ordered child may have shrunk
        u.rank = rank_of(u.ord) + 1
        self._touch(u)

    def _decrease_ranks_ancestors(self, u: Node, c: Optional[Node]) -> None:
        """variantA repair: reads only the changed child, never siblings."""
        b = self.rule.b
        while u.parent is not None:
            self.counters.rank_steps += 1
            rc = rank_of(c)
            old = u.rank
            stop = old - rc <= b
            if not stop:
                u.rank = rc + b
                self._touch(u)
            self._emit("rank_step", node=u, old=old, new=u.rank, stop=stop)
            if stop:
                return
            c, u = u, u.parent
        u.rank = rank_of(u.ord) + 1
        self._touch(u)

    # audits --------------------------------------------------------------

    def audit(self) -> list[str]:
        problems = super().audit()
        if self.rule.kind != "capped":
            problems += audit_rank_rule(self, self.rule)
        return problems


def node_rule_ok(x: Node, rule: RankRule) -> bool:
    """Rank rule at a non-root node."""
    r = x.rank
    d1, d2 = sorted((r - rank_of(x.ord), r - rank_of(x.unord)))
    if x.ord is None and x.unord is None and r != 0 and rule.kind != "variantA":
        return False
    if rule.kind in ("type1", "capped"):
        return (d1, d2) == (1, 1) or (d1 == 0 and d2 >= 1)
    if rule.kind == "type2":
        return (d1, d2) in ((1, 1), (1, 2)) or (d1 == 0 and d2 >= 2)
    return d2 <= rule.b


def audit_rank_rule(heap, rule: RankRule | str) -> list[str]:
    """Every node violating ``rule``; an empty list means the heap passes."""
    if isinstance(rule, str):
        rule = RankRule(rule)
    problems = []
    for root in heap.iter_roots():
        if root.rank != rank_of(root.ord) + 1:
            problems.append(f"root {root.id}: rank {root.rank} != r(ord)+1")
        for x in iter_subtree(root):
            if x is root:
                continue
            if x.parent.rank < x.rank and rule.kind != "variantA":
                problems.append(f"node {x.id}: negative rank difference")
            if not node_rule_ok(x, rule):
                problems.append(
                    f"node {x.id}: rank {x.rank} with children "
                    f"{rank_of(x.ord)},{rank_of(x.unord)} breaks {rule}")
    return problems

