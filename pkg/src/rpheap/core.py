"""Items, counters and the root-list machinery shared by every heap kind.

All heaps here use the half-ordered binary representation: each node has an
ordered child (``ord``), an unordered child (``unord``) and a parent pointer.
A node's key is the tuple ``(live, value, id)``; ``live`` is 0 only for a
tombstoned node, so a tombstone sorts below every ordinary key and ids still
break ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional


class HeapError(Exception):
    """Base class for heap contract violations."""


class DeadHandleError(HeapError):
    pass


class DuplicateIdError(HeapError):
    pass


class UnsupportedOperation(HeapError):
    pass


class KindMismatchError(HeapError):
    pass


class EmptyHeapError(HeapError):
    pass


class Node:
    """One heap item; it doubles as the handle returned by ``insert``."""

    __slots__ = ("key", "value", "id", "rank", "ord", "unord", "parent",
                 "next", "alive", "unfair")

    def __init__(self, value: float, id: int):
        self.value = value
        self.id = id
        self.key = (1, value, id)
        self.rank = 0
        self.ord: Optional[Node] = None
        self.unord: Optional[Node] = None
        self.parent: Optional[Node] = None
        self.next: Optional[Node] = None  # root-list successor
        self.alive = True
        self.unfair = False  # lost its last match unfairly (tournaments only)

    @property
    def tombstoned(self) -> bool:
        return self.key[0] == 0

    def __repr__(self):
        return f"Node(id={self.id}, value={self.value!r}, rank={self.rank})"


def rank_of(node: Optional[Node]) -> int:
    """Rank of a possibly missing child; a missing child has rank -1."""
    return -1 if node is None else node.rank


@dataclass
class CostCounters:
    comparisons: int = 0
    links: int = 0
    rank_steps: int = 0

    def snapshot(self) -> tuple[int, int, int]:
        return (self.comparisons, self.links, self.rank_steps)

    def absorb(self, other: "CostCounters") -> None:
        self.comparisons += other.comparisons
        self.links += other.links
        self.rank_steps += other.rank_steps


def iter_subtree(root: Optional[Node]) -> Iterator[Node]:
    """Preorder over a half tree (node, ordered subtree, unordered subtree)."""
    stack = [root] if root is not None else []
    while stack:
        x = stack.pop()
        yield x
        if x.unord is not None:
            stack.append(x.unord)
        if x.ord is not None:
            stack.append(x.ord)


def subtree_size(root: Optional[Node]) -> int:
    return sum(1 for _ in iter_subtree(root))


def check_links(root: Node) -> list[str]:
    """Parent/child consistency and half order for one half tree."""
    problems = []
    if root.parent is not None:
        problems.append(f"root {root.id} has a parent")
    if root.unord is not None:
        problems.append(f"root {root.id} has an unordered child")
    # each entry: (node, key the node must exceed or None)
    stack = [(root, None)]
    while stack:
        x, bound = stack.pop()
        if not x.alive:
            problems.append(f"dead node {x.id} still linked")
        if bound is not None and not x.key > bound:
            problems.append(f"half order broken at {x.id}")
        for child, b in ((x.ord, x.key), (x.unord, bound)):
            if child is None:
                continue
            if child.parent is not x:
                problems.append(f"child {child.id} of {x.id} has wrong parent")
            stack.append((child, b))
    return problems


class MeldableHeap:
    """Common surface: ``insert``, ``find_min``, ``delete_min``, ``meld``,
    ``decrease_key``, ``delete`` and audits.

    ``verify`` enables the O(1) duplicate-id check; bench runs switch it off.
    ``observer``, when set, is called as ``observer(event, heap, **info)`` at
    the intermediate points of an operation; analysis code uses this to read
    potentials mid-operation.
    """

    kind = "abstract"
    supports_decrease_key = False

    def __init__(self, verify: bool = True):
        self.counters = CostCounters()
        self.n = 0
        self.verify = verify
        self.observer: Optional[Callable] = None
        self.last_pass = 0  # trees entering the last delete-min pass
        self._ids: set[int] = set()
        self._destroyed = False
        self._dirty: Optional[set] = None  # nodes whose fields changed

    def track_changes(self, on: bool = True):
        self._dirty = set() if on else None

    def take_changes(self) -> set:
        d = self._dirty if self._dirty is not None else set()
        if self._dirty is not None:
            self._dirty = set()
        return d

    def _touch(self, *nodes):
        if self._dirty is not None:
            self._dirty.update(x for x in nodes if x is not None)

    def __len__(self):
        return self.n

    def config(self) -> tuple:
        """Everything that must agree for two heaps to be meldable."""
        return (type(self), self.kind)

    # -- shared helpers -------------------------------------------------

    def _check_usable(self):
        if self._destroyed:
            raise HeapError("heap was destroyed by a meld")

    def _new_node(self, value: float, id: int) -> Node:
        self._check_usable()
        if self.verify:
            if id in self._ids:
                raise DuplicateIdError(f"id {id} already in heap")
            self._ids.add(id)
        self.n += 1
        return Node(float(value), id)

    def _retire(self, x: Node) -> Node:
        self._touch(x)
        x.alive = False
        x.parent = x.ord = x.unord = x.next = None
        self.n -= 1
        if self.verify:
            self._ids.discard(x.id)
        return x

    def _check_handle(self, x: Node):
        self._check_usable()
        if not isinstance(x, Node) or not x.alive:
            raise DeadHandleError("handle is not live")

    def _check_meld(self, other: "MeldableHeap"):
        self._check_usable()
        other._check_usable()
        if other is self:
            raise HeapError("cannot meld a heap with itself")
        if self.config() != other.config():
            raise KindMismatchError(
                f"cannot meld {self.describe()} with {other.describe()}")
        if self.verify and other.verify and not self._ids.isdisjoint(other._ids):
            raise DuplicateIdError("melded heaps share item ids")

    def _absorb(self, other: "MeldableHeap"):
        self.n += other.n
        self.counters.absorb(other.counters)
        if self.verify:
            self._ids |= other._ids
        other._ids = set()
        other.n = 0
        other._destroyed = True

    def _emit(self, event: str, **info):
        if self.observer is not None:
            self.observer(event, self, **info)

    def describe(self) -> str:
        return self.kind

    # -- operations without a structure-specific version ----------------

    def decrease_key(self, x: Node, delta: float) -> None:
        """Lower the key of ``x`` by ``delta > 0``; ``delta = inf`` turns
        ``x`` into a tombstone that sorts below every key."""
        self._check_handle(x)
        if not self.supports_decrease_key:
            raise UnsupportedOperation(f"{self.describe()} has no decrease_key")
        if not delta > 0:
            raise ValueError(f"delta must be positive, got {delta!r}")
        if delta == math.inf:
            x.key = (0, 0.0, x.id)
        else:
            x.value = x.value - delta
            x.key = (1, x.value, x.id)
        self._restore_after_decrease(x)

    def decrease_key_to(self, x: Node, value: float) -> None:
        """Set the key of ``x`` to exactly ``value``, which must be lower."""
        self._check_handle(x)
        if not self.supports_decrease_key:
            raise UnsupportedOperation(f"{self.describe()} has no decrease_key")
        if not value < x.value:
            raise ValueError("new key must be smaller than the current key")
        x.value = float(value)
        x.key = (1, x.value, x.id)
        self._restore_after_decrease(x)

    def _restore_after_decrease(self, x: Node) -> None:
        raise UnsupportedOperation(f"{self.describe()} has no decrease_key")

    def delete(self, x: Node) -> None:
        """Remove ``x``: tombstone it, then delete the minimum."""
        self.decrease_key(x, math.inf)
        y = self.delete_min()
        if y is not x:
            raise HeapError(f"delete removed {y!r} instead of {x!r}")

    def iter_roots(self) -> Iterator[Node]:
        raise NotImplementedError

    def iter_nodes(self) -> Iterator[Node]:
        for r in list(self.iter_roots()):
            yield from iter_subtree(r)

    def root_count(self) -> int:
        return sum(1 for _ in self.iter_roots())

    def max_rank(self) -> int:
        return max((r.rank for r in self.iter_roots()), default=-1)

    def audit(self) -> list[str]:
        """Structural audit: links, half order, root ranks, count, min."""
        problems = []
        roots = list(self.iter_roots())
        count = 0
        for r in roots:
            problems += check_links(r)
            if r.rank != rank_of(r.ord) + 1:
                problems.append(f"root {r.id} rank {r.rank} != r(ord)+1")
            count += subtree_size(r)
        if count != self.n:
            problems.append(f"count {self.n} but {count} nodes reachable")
        m = self.find_min()
        if roots and (m is None or any(r.key < m.key for r in roots)):
            problems.append("find_min is not the minimum root")
        return problems


class RootListHeap(MeldableHeap):
    """A set of half trees kept in a circular singly-linked root list whose
    entry point is the minimum root (one-pass binomial queues, rp-heaps)."""

    def __init__(self, verify: bool = True):
        super().__init__(verify)
        self._min: Optional[Node] = None
        self._nroots = 0
        self._pending: Optional[list[Node]] = None

    # root list -----------------------------------------------------------

    def _add_root(self, x: Node):
        m = self._min
        self._nroots += 1
        if m is None:
            x.next = x
            self._min = x
            return
        x.next = m.next
        m.next = x
        self.counters.comparisons += 1
        if x.key < m.key:
            self._min = x

    def iter_roots(self) -> Iterator[Node]:
        if self._pending is not None:
            # mid delete-min: trees not yet linked back into the list
            for t in self._pending:
                if t.parent is None and t.alive:
                    yield t
            return
        m = self._min
        if m is None:
            return
        x = m
        while True:
            yield x
            x = x.next
            if x is m:
                break

    def root_count(self) -> int:
        if self._pending is not None:
            return super().root_count()
        return self._nroots

    def _set_roots(self, trees: list[Node]):
        """Relink ``trees`` as the root list, minimum first."""
        self._nroots = len(trees)
        if not trees:
            self._min = None
            return
        m = trees[0]
        for t in trees[1:]:
            self.counters.comparisons += 1
            if t.key < m.key:
                m = t
        for a, b in zip(trees, trees[1:]):
            a.next = b
        trees[-1].next = trees[0]
        self._min = m

    # heap operations ---------------------------------------------------

    def insert(self, value: float, id: int) -> Node:
        x = self._new_node(value, id)
        self._touch(x)
        self._add_root(x)
        return x

    def find_min(self) -> Optional[Node]:
        self._check_usable()
        return self._min

    def meld(self, other: "RootListHeap") -> "RootListHeap":
        self._check_meld(other)
        a, b = self._min, other._min
        self._nroots += other._nroots
        if b is not None:
            if a is None:
                self._min = b
            else:
                a.next, b.next = b.next, a.next
                self.counters.comparisons += 1
                if b.key < a.key:
                    self._min = b
        other._min = None
        other._nroots = 0
        self._absorb(other)
        return self

    def _link(self, a: Node, b: Node) -> Node:
        """Fair match of two roots of equal rank; returns the winner."""
        c = a.ord if a.key < b.key else b.ord
        w = link_fair(a, b, self.counters)
        self._touch(a, b, c)
        self._emit("match", winner=w, loser=w.ord)
        return w

    def _pass_order(self, produced: list[Node], others: list[Node]) -> list[Node]:
        return others + produced

    def delete_min(self) -> Optional[Node]:
        self._check_usable()
        x = self._min
        if x is None:
            return None
        others = []
        y = x.next
        while y is not x:
            others.append(y)
            y = y.next
        k = x.rank
        produced = disassemble(x)
        self._touch(*produced)
        self._retire(x)
        trees = self._pass_order(produced, others)
        self.last_pass = len(trees)
        self._pending = trees
        try:
            self._emit("disassembled", deleted=x, rank=k, produced=produced)
            out = self._pair_by_rank(trees, produced)
        finally:
            self._pending = None
        self._set_roots(out)
        return x

    def _pair_by_rank(self, trees: list[Node], produced: list[Node]) -> list[Node]:
        return bucket_pass(trees, self._link)


def link_fair(a: Node, b: Node, counters: Optional[CostCounters] = None) -> Node:
    """Match two roots: the loser becomes the ordered child of the winner and
    takes the winner's old ordered subtree as its unordered subtree. The
    winner's rank becomes the loser's rank plus one."""
    if counters is not None:
        counters.comparisons += 1
        counters.links += 1
    if b.key < a.key:
        a, b = b, a
    c = a.ord
    b.unord = c
    if c is not None:
        c.parent = b
    a.ord = b
    b.parent = a
    a.rank = b.rank + 1
    return a


def bucket_pass(trees: list[Node], link: Callable[[Node, Node], Node]) -> list[Node]:
    """One pass of fair matches: each tree goes into the empty bucket of its
    rank, or is matched with the occupant and the winner goes straight to the
    output. Leftover bucket occupants follow, in rank order."""
    buckets: list[Optional[Node]] = []
    out = []
    for t in trees:
        r = t.rank
        if r >= len(buckets):
            buckets.extend([None] * (r + 1 - len(buckets)))
        other = buckets[r]
        if other is None:
            buckets[r] = t
        else:
            buckets[r] = None
            out.append(link(other, t))
    out.extend(t for t in buckets if t is not None)
    return out


def carry_into(buckets: list[Optional[Node]], t: Node,
               link: Callable[[Node, Node], Node]) -> Node:
    """Add ``t`` to a one-tree-per-rank table, matching with carries."""
    r = t.rank
    while True:
        if r >= len(buckets):
            buckets.extend([None] * (r + 1 - len(buckets)))
        other = buckets[r]
        if other is None:
            buckets[r] = t
            return t
        buckets[r] = None
        t = link(other, t)
        r = t.rank


def disassemble(root: Node) -> list[Node]:
    """Split the tree below ``root`` into half trees along the unordered path
    from ``ord(root)``, top-down. Each new root gets rank r(ord)+1."""
    out = []
    y = root.ord
    root.ord = None
    while y is not None:
        nxt = y.unord
        y.unord = None
        y.parent = None
        y.unfair = False
        y.rank = rank_of(y.ord) + 1
        out.append(y)
        y = nxt
    return out
