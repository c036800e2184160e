"""Classic two-pass pairing heap, kept only as a benchmark baseline.

Multiway heap-ordered trees stored as child / next-sibling / previous links,
where ``prev`` of a first child points at its parent.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .core import MeldableHeap


class PNode:
    __slots__ = ("key", "value", "id", "child", "sibling", "prev", "alive")

    def __init__(self, value, id):
        self.value = value
        self.id = id
        self.key = (1, value, id)
        self.child = self.sibling = self.prev = None
        self.alive = True

    def __repr__(self):
        return f"PNode(id={self.id}, value={self.value!r})"


class PairingHeap(MeldableHeap):
    kind = "pairing"
    supports_decrease_key = True

    def __init__(self, verify: bool = True):
        super().__init__(verify)
        self.root: Optional[PNode] = None

    def _new_node(self, value, id):
        self._check_usable()
        if self.verify:
            if id in self._ids:
                from .core import DuplicateIdError
                raise DuplicateIdError(f"id {id} already in heap")
            self._ids.add(id)
        self.n += 1
        return PNode(float(value), id)

    def _check_handle(self, x):
        self._check_usable()
        if not isinstance(x, PNode) or not x.alive:
            from .core import DeadHandleError
            raise DeadHandleError("handle is not live")

    def _join(self, a: PNode, b: PNode) -> PNode:
        self.counters.comparisons += 1
        self.counters.links += 1
        if b.key < a.key:
            a, b = b, a
        b.sibling = a.child
        if a.child is not None:
            a.child.prev = b
        a.child = b
        b.prev = a
        a.sibling = a.prev = None
        return a

    def iter_roots(self) -> Iterator[PNode]:
        if self.root is not None:
            yield self.root

    def iter_nodes(self):
        stack = [self.root] if self.root is not None else []
        while stack:
            x = stack.pop()
            yield x
            if x.child is not None:
                stack.append(x.child)
            if x.sibling is not None:
                stack.append(x.sibling)

    def root_count(self):
        return 0 if self.root is None else 1

    def max_rank(self):
        return -1

    def find_min(self):
        self._check_usable()
        return self.root

    def insert(self, value, id):
        x = self._new_node(value, id)
        self.root = x if self.root is None else self._join(self.root, x)
        return x

    def meld(self, other: "PairingHeap"):
        self._check_meld(other)
        if other.root is not None:
            self.root = other.root if self.root is None else self._join(self.root, other.root)
        other.root = None
        self._absorb(other)
        return self

    def _two_pass(self, first: Optional[PNode]) -> Optional[PNode]:
        pairs = []
        x = first
        while x is not None:
            y = x.sibling
            if y is None:
                x.prev = x.sibling = None
                pairs.append(x)
                break
            nxt = y.sibling
            x.prev = x.sibling = y.prev = y.sibling = None
            pairs.append(self._join(x, y))
            x = nxt
        if not pairs:
            return None
        r = pairs.pop()
        while pairs:
            r = self._join(pairs.pop(), r)
        return r

    def delete_min(self):
        self._check_usable()
        x = self.root
        if x is None:
            return None
        self.root = self._two_pass(x.child)
        x.child = None
        x.alive = False
        self.n -= 1
        if self.verify:
            self._ids.discard(x.id)
        return x

    def _restore_after_decrease(self, x):
        if x is self.root:
            return
        # cut x with its subtree
        if x.prev.child is x:
            x.prev.child = x.sibling
        else:
            x.prev.sibling = x.sibling
        if x.sibling is not None:
            x.sibling.prev = x.prev
        x.sibling = x.prev = None
        self.root = self._join(self.root, x)

    def audit(self):
        problems = []
        count = 0
        stack = [(self.root, None)] if self.root is not None else []
        while stack:
            x, parent = stack.pop()
            count += 1
            if parent is not None and not parent.key < x.key:
                problems.append(f"heap order broken at {x.id}")
            c = x.child
            prev = x
            while c is not None:
                if c.prev is not prev:
                    problems.append(f"bad prev link at {c.id}")
                stack.append((c, x))
                prev = c
                c = c.sibling
        if count != self.n:
            problems.append(f"count {self.n} but {count} nodes reachable")
        return problems
