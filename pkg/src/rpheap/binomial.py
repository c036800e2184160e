"""One-pass and eager binomial queues over perfect half trees."""

from __future__ import annotations

from typing import Optional

from .core import (CostCounters, Node, RootListHeap, bucket_pass, carry_into,
                   disassemble, link_fair, iter_subtree)

__all__ = ["OnePassBinomialQueue", "EagerBinomialQueue", "disassemble",
           "one_pass_links", "eager_links", "perfect_tree_violations"]


def one_pass_links(trees: list[Node], counters: Optional[CostCounters] = None) -> list[Node]:
    """Maximum pairing of equal-rank trees, each tree in at most one match.

    Within a rank, earlier trees are matched first.
    """
    return bucket_pass(trees, lambda a, b: link_fair(a, b, counters))


def eager_links(trees: list[Node], counters: Optional[CostCounters] = None) -> list[Node]:
    """Fair matches with carries until every rank holds at most one tree.
    Output is in increasing rank order."""
    buckets: list[Optional[Node]] = []
    for t in trees:
        carry_into(buckets, t, lambda a, b: link_fair(a, b, counters))
    return [t for t in buckets if t is not None]


def perfect_tree_violations(root: Node) -> list[str]:
    """A perfect half tree of rank k: every non-root is a 1,1-node, leaves
    have rank 0, and the tree holds exactly 2**k nodes."""
    problems = []
    size = 0
    for x in iter_subtree(root):
        size += 1
        if x is root:
            continue
        for c in (x.ord, x.unord):
            if (c.rank if c is not None else -1) != x.rank - 1:
                problems.append(f"node {x.id} is not a 1,1-node")
                break
    if size != 1 << root.rank:
        problems.append(f"tree of rank {root.rank} has {size} nodes")
    return problems


class OnePassBinomialQueue(RootListHeap):
    """Insert and meld do no matches; delete-min does one pairing pass."""

    kind = "bq-onepass"

    def audit(self) -> list[str]:
        problems = super().audit()
        for r in self.iter_roots():
            problems += perfect_tree_violations(r)
        return problems


class EagerBinomialQueue(RootListHeap):
    """Classical binomial queue: after every operation at most one tree per
    rank, kept in a rank-indexed table."""

    kind = "bq-eager"

    def __init__(self, verify: bool = True):
        super().__init__(verify)
        self._by_rank: list[Optional[Node]] = []

    def _relist(self, m: Optional[Node]):
        trees = [t for t in self._by_rank if t is not None]
        self._nroots = len(trees)
        self._min = m
        if not trees:
            return
        if m is not None:
            i = trees.index(m)
            trees = trees[i:] + trees[:i]
        for a, b in zip(trees, trees[1:]):
            a.next = b
        trees[-1].next = trees[0]

    def insert(self, value: float, id: int) -> Node:
        x = self._new_node(value, id)
        self._touch(x)
        m = self._min
        carry_into(self._by_rank, x, self._link)
        if m is None:
            m = x
        else:
            self.counters.comparisons += 1
            if x.key < m.key:
                m = x
        self._relist(m)
        return x

    def meld(self, other: "EagerBinomialQueue") -> "EagerBinomialQueue":
        self._check_meld(other)
        a, b = self._min, other._min
        for t in other._by_rank:
            if t is not None:
                carry_into(self._by_rank, t, self._link)
        if a is None:
            m = b
        elif b is None:
            m = a
        else:
            self.counters.comparisons += 1
            m = b if b.key < a.key else a
        other._by_rank = []
        other._min = None
        other._nroots = 0
        self._absorb(other)
        self._relist(m)
        return self

    def delete_min(self) -> Optional[Node]:
        self._check_usable()
        x = self._min
        if x is None:
            return None
        self._by_rank[x.rank] = None
        k = x.rank
        produced = disassemble(x)
        self._touch(*produced)
        self._retire(x)
        self.last_pass = len(produced)
        self._pending = produced + [t for t in self._by_rank if t is not None]
        try:
            self._emit("disassembled", deleted=x, rank=k, produced=produced)
            for t in produced:
                carry_into(self._by_rank, t, self._link)
        finally:
            self._pending = None
        m = None
        for t in self._by_rank:
            if t is None:
                continue
            if m is None:
                m = t
            else:
                self.counters.comparisons += 1
                if t.key < m.key:
                    m = t
        self._relist(m)
        return x

    def audit(self) -> list[str]:
        problems = super().audit()
        seen = set()
        for r in self.iter_roots():
            problems += perfect_tree_violations(r)
            if r.rank in seen:
                problems.append(f"two trees of rank {r.rank}")
            seen.add(r.rank)
            if self._by_rank[r.rank] is not r:
                problems.append(f"rank table out of sync at {r.rank}")
        return problems
