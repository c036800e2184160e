"""Balanced tournaments kept as a single half tree, and converters to the
other three drawings of the same tournament (full, half-empty, heap-ordered).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core import (MeldableHeap, Node, carry_into, disassemble, iter_subtree,
                   rank_of)


def match_roots(a: Node, b: Node, counters=None) -> Node:
    """Match two half-tree roots and return the winner.

    A fair match (equal ranks) raises the winner's rank by one. After an
    unfair match the winner's rank becomes the larger of the two ranks. The
    loser's stored rank is always the winner's new rank minus one, and the
    loser remembers whether its match was unfair.
    """
    if a is b:
        raise ValueError("cannot match a root with itself")
    if counters is not None:
        counters.comparisons += 1
        counters.links += 1
    if b.key < a.key:
        a, b = b, a
    fair = a.rank == b.rank
    new_rank = a.rank + 1 if fair else max(a.rank, b.rank)
    c = a.ord
    b.unord = c
    if c is not None:
        c.parent = b
    a.ord = b
    b.parent = a
    b.rank = new_rank - 1
    b.unfair = not fair
    a.rank = new_rank
    return a


class TournamentHeap(MeldableHeap):
    """One-tree binomial queue: every insert and meld is a single match;
    delete-min rebuilds one tree from the winner's victims."""

    kind = "tournament"

    def __init__(self, verify: bool = True):
        super().__init__(verify)
        self.root: Optional[Node] = None
        self.phi = 0  # unfair-match edges currently in the tree
        self.last_unfair = 0

    def _match(self, a: Node, b: Node) -> Node:
        w = match_roots(a, b, self.counters)
        loser = w.ord
        if loser.unfair:
            self.phi += 1
        self._touch(a, b, loser.unord)
        self._emit("match", winner=w, loser=loser)
        return w

    def iter_roots(self) -> Iterator[Node]:
        if self.root is not None:
            yield self.root

    def find_min(self) -> Optional[Node]:
        self._check_usable()
        return self.root

    def insert(self, value: float, id: int) -> Node:
        x = self._new_node(value, id)
        self._touch(x)
        self.root = x if self.root is None else self._match(self.root, x)
        return x

    def meld(self, other: "TournamentHeap") -> "TournamentHeap":
        self._check_meld(other)
        if other.root is not None:
            self.phi += other.phi
            self.root = other.root if self.root is None else self._match(self.root, other.root)
        other.root = None
        other.phi = 0
        self._absorb(other)
        return self

    def delete_min(self) -> Optional[Node]:
        self._check_usable()
        x = self.root
        if x is None:
            return None
        self.phi -= sum(1 for t in _loser_path(x) if t.unfair)
        produced = disassemble(x)
        self._touch(*produced)
        self._retire(x)
        self.last_pass = len(produced)
        buckets: list[Optional[Node]] = []
        for t in produced:
            carry_into(buckets, t, self._match)
        survivors = [t for t in buckets if t is not None]
        unfair = 0
        root = survivors[0] if survivors else None
        for t in survivors[1:]:
            root = self._match(root, t)
            unfair += 1
        self.last_unfair = unfair
        self.root = root
        return x

    def audit(self) -> list[str]:
        problems = super().audit()
        flagged = sum(1 for x in self.iter_nodes() if x.unfair)
        if flagged != self.phi:
            problems.append(f"phi {self.phi} but {flagged} unfair edges")
        return problems


def _loser_path(x: Node) -> Iterator[Node]:
    y = x.ord
    while y is not None:
        yield y
        y = y.unord


def rank_size_violations(root: Node) -> list[str]:
    """Every half tree obtained by detaching a node with its ordered subtree
    (rank r(ord)+1) must hold at least 2**rank items."""
    problems = []
    sizes = {}
    # postorder sizes of ordered subtrees: size(x) = 1 + size(ord) + size(unord)
    order = list(iter_subtree(root))
    for x in reversed(order):
        sizes[x] = 1 + sizes.get(x.ord, 0) + sizes.get(x.unord, 0)
    for x in order:
        own = 1 + sizes.get(x.ord, 0)
        k = rank_of(x.ord) + 1
        if own < (1 << k):
            problems.append(f"half tree at {x.id} of rank {k} has {own} items")
    return problems


# -- the other three representations -------------------------------------

@dataclass
class FullNode:
    """Node of the full drawing: a leaf holds an item, an internal node a
    match labelled with its winner and the winner's rank after it."""
    item: Node
    rank: int
    left: Optional["FullNode"] = None   # the winner's side before the match
    right: Optional["FullNode"] = None  # the loser's tournament

    @property
    def is_leaf(self):
        return self.left is None

    def leaves(self) -> list[Node]:
        out, stack = [], [self]
        while stack:
            f = stack.pop()
            if f.is_leaf:
                out.append(f.item)
            else:
                stack += [f.right, f.left]
        return out


def expand_full(root: Node) -> FullNode:
    """Rebuild the full tournament tree from a half tree.

    Node ``x`` with loser chain c1 (most recent), c2, ... is the match
    ``(x before beating c1) vs (c1's own tournament)``, of rank r(c1)+1.
    """
    def new(x, c):
        return FullNode(x, 0 if c is None else c.rank + 1)

    top = new(root, root.ord)
    stack = [(top, root.ord)]
    while stack:
        f, c = stack.pop()
        if c is None:
            continue
        f.left = new(f.item, c.unord)
        f.right = new(c, c.ord)
        stack += [(f.left, c.unord), (f.right, c.ord)]
    return top


def half_empty(full: FullNode) -> FullNode:
    """Copy of ``full`` where each item stays only in its highest node. The
    winner's side of every match repeats the winner, so it goes empty."""
    top = FullNode(full.item, full.rank)
    stack = [(full, top)]
    while stack:
        f, g = stack.pop()
        if f.is_leaf:
            continue
        g.left = FullNode(None, f.left.rank)
        g.right = FullNode(f.right.item, f.right.rank)
        stack += [(f.left, g.left), (f.right, g.right)]
    return top


@dataclass
class OrderedTreeNode:
    """Heap-ordered multiway tree: children are the items this one beat,
    most recent match first."""
    id: int
    value: float
    rank: int
    children: list["OrderedTreeNode"] = field(default_factory=list)


def to_heap_ordered(root: Node) -> OrderedTreeNode:
    top = OrderedTreeNode(root.id, root.value, root.rank)
    stack = [(root, top)]
    while stack:
        x, t = stack.pop()
        c = x.ord
        while c is not None:
            child = OrderedTreeNode(c.id, c.value, c.rank)
            t.children.append(child)
            stack.append((c, child))
            c = c.unord
    return top


def from_heap_ordered(top: OrderedTreeNode) -> Node:
    """Inverse of ``to_heap_ordered``: first child becomes the ordered child
    and next sibling the unordered child. Builds fresh nodes."""
    def make(t):
        x = Node(t.value, t.id)
        x.rank = t.rank
        return x

    root = make(top)
    stack = [(top, root)]
    while stack:
        t, x = stack.pop()
        prev = None
        for ct in t.children:
            c = make(ct)
            if prev is None:
                x.ord = c
                c.parent = x
            else:
                prev.unord = c
                c.parent = prev
            prev = c
            stack.append((ct, c))
    return root


def half_tree_signature(root: Optional[Node]):
    """Hashable description of a half tree's shape, ids and ranks."""
    if root is None:
        return None
    out = []
    stack = [root]
    while stack:
        x = stack.pop()
        if x is None:
            out.append(None)
            continue
        out.append((x.id, x.rank))
        stack += [x.unord, x.ord]
    return tuple(out)
