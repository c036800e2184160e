"""Reference heap, differential replay with trace shrinking, and brute-force
enumeration of short operation sequences."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import DeadHandleError, DuplicateIdError, HeapError, KindMismatchError


class OracleItem:
    __slots__ = ("id", "value", "key", "alive")

    def __init__(self, value, id):
        self.id = id
        self.value = float(value)
        self.key = (1, self.value, id)
        self.alive = True

    def __repr__(self):
        return f"OracleItem(id={self.id}, value={self.value!r})"


class OracleHeap:
    """Sorted list of keys. O(n) per operation, obviously correct."""

    kind = "oracle"
    supports_decrease_key = True

    def __init__(self, verify: bool = True):
        self._keys: list[tuple] = []
        self._items: dict[int, OracleItem] = {}
        self._destroyed = False

    def __len__(self):
        return len(self._keys)

    def _usable(self):
        if self._destroyed:
            raise HeapError("heap was destroyed by a meld")

    def _live(self, x):
        self._usable()
        if not isinstance(x, OracleItem) or not x.alive or self._items.get(x.id) is not x:
            raise DeadHandleError("handle is not live")

    def insert(self, value, id) -> OracleItem:
        self._usable()
        if id in self._items:
            raise DuplicateIdError(f"id {id} already in heap")
        x = OracleItem(value, id)
        self._items[id] = x
        bisect.insort(self._keys, x.key)
        return x

    def find_min(self) -> Optional[OracleItem]:
        self._usable()
        return self._items[self._keys[0][2]] if self._keys else None

    def delete_min(self) -> Optional[OracleItem]:
        self._usable()
        if not self._keys:
            return None
        key = self._keys.pop(0)
        x = self._items.pop(key[2])
        x.alive = False
        return x

    def meld(self, other: "OracleHeap") -> "OracleHeap":
        self._usable()
        other._usable()
        if not isinstance(other, OracleHeap) or other is self:
            raise KindMismatchError("can only meld two distinct oracle heaps")
        if not self._items.keys().isdisjoint(other._items.keys()):
            raise DuplicateIdError("melded heaps share item ids")
        big, small = (self, other) if len(self._keys) >= len(other._keys) else (other, self)
        keys, items = big._keys, big._items
        if len(small._keys) * 16 < len(keys):
            for k in small._keys:
                bisect.insort(keys, k)
        else:
            keys = sorted(keys + small._keys)
        items.update(small._items)
        self._keys, self._items = keys, items
        other._keys, other._items, other._destroyed = [], {}, True
        return self

    def _rekey(self, x, key):
        i = bisect.bisect_left(self._keys, x.key)
        del self._keys[i]
        x.key = key
        bisect.insort(self._keys, key)

    def decrease_key(self, x, delta) -> None:
        self._live(x)
        if not delta > 0:
            raise ValueError(f"delta must be positive, got {delta!r}")
        if delta == math.inf:
            self._rekey(x, (0, 0.0, x.id))
        else:
            x.value = x.value - delta
            self._rekey(x, (1, x.value, x.id))

    def decrease_key_to(self, x, value) -> None:
        self._live(x)
        if not value < x.value:
            raise ValueError("new key must be smaller than the current key")
        x.value = float(value)
        self._rekey(x, (1, x.value, x.id))

    def delete(self, x) -> None:
        self.decrease_key(x, math.inf)
        self.delete_min()

    def audit(self):
        return [] if self._keys == sorted(self._keys) else ["oracle unsorted"]


# -- differential testing -------------------------------------------------

@dataclass
class DiffReport:
    ok: bool
    ops: int
    mismatch_at: Optional[int] = None
    detail: str = ""
    shrunk: Optional[list] = None
    results: list = field(default_factory=list)


def observe(ops, factory: Callable, *, tolerant: bool = False) -> list:
    """Replay ``ops`` and collect the id returned by every findmin/deletemin
    (None for an empty heap). With ``tolerant`` set, ops that refer to
    unknown heaps or ids are skipped, which keeps shrunk traces replayable."""
    from .trace import Replayer
    return Replayer(factory, tolerant=tolerant).observe(ops)


def differential_run(trace, impl: Callable, oracle: Callable = OracleHeap,
                     shrink: bool = True, expected: Optional[list] = None) -> DiffReport:
    """Run ``trace`` on both heap factories and compare every result id.
    On a mismatch, greedily shrink the op list while the mismatch persists.
    ``expected`` may hold the oracle's results from an earlier run."""
    ops = list(trace.ops if hasattr(trace, "ops") else trace)
    want = observe(ops, oracle) if expected is None else expected
    try:
        got = observe(ops, impl)
    except HeapError as e:
        rep = DiffReport(False, len(ops), None, f"implementation raised: {e}")
        if shrink:
            rep.shrunk = shrink_ops(ops, impl, oracle)
        return rep
    for i, (g, w) in enumerate(zip(got, want)):
        if g != w:
            rep = DiffReport(False, len(ops), g[0], f"op {g[0]}: got {g[1]}, expected {w[1]}")
            if shrink:
                rep.shrunk = shrink_ops(ops, impl, oracle)
            return rep
    if len(got) != len(want):
        return DiffReport(False, len(ops), None, "result count differs")
    return DiffReport(True, len(ops), results=want)


def _mismatch(ops, impl, oracle) -> bool:
    try:
        a = observe(ops, impl, tolerant=True)
    except HeapError:
        return True
    b = observe(ops, oracle, tolerant=True)
    return [r for _, r in a] != [r for _, r in b]


def shrink_ops(ops: list, impl, oracle) -> list:
    """Greedy delta debugging: drop chunks of halving size, then single ops,
    keeping each removal that still shows a mismatch."""
    ops = list(ops)
    chunk = max(1, len(ops) // 2)
    while chunk >= 1:
        i = 0
        while i < len(ops):
            cand = ops[:i] + ops[i + chunk:]
            if cand and _mismatch(cand, impl, oracle):
                ops = cand
            else:
                i += chunk
        chunk //= 2
    return ops


# -- exhaustive small instances --------------------------------------------

@dataclass
class ExhaustiveReport:
    ok: bool
    sequences: int          # prefixes actually replayed and checked
    failures: list
    pruned: int = 0         # prefixes whose state had been explored already


def state_signature(h) -> Optional[tuple]:
    """Everything that decides a root-list heap's future behaviour: root
    order from the minimum, and per node its key, rank, flags and children.
    None for heaps without a root list."""
    from .core import iter_subtree
    if not hasattr(h, "_min"):
        return None
    sig = []
    for r in h.iter_roots():
        for x in iter_subtree(r):
            sig.append((x.id, x.key, x.rank, x.unfair,
                        x.ord.id if x.ord is not None else None,
                        x.unord.id if x.unord is not None else None))
        sig.append(None)
    return tuple(sig)


VALUES = (1.0, 2.0, 3.0)
DELTAS = (0.5, 1.5)


def _moves(live: tuple, items: int):
    for i in range(1, items + 1):
        if i not in live:
            for v in VALUES:
                yield ("insert", "h", i, v)
    yield ("deletemin", "h")
    for i in live:
        for d in DELTAS:
            yield ("decreasekey", "h", i, d)
        yield ("delete", "h", i)


def _apply_live(live: tuple, op, removed: Optional[int]) -> tuple:
    if op[0] == "insert":
        return tuple(sorted(live + (op[2],)))
    if op[0] == "delete":
        return tuple(i for i in live if i != op[2])
    if op[0] == "deletemin" and removed is not None:
        return tuple(i for i in live if i != removed)
    return live


def exhaustive_small(factory: Callable, max_len: int = 6, items: int = 3,
                     audit: Optional[Callable] = None, dedup: bool = True) -> ExhaustiveReport:
    """Every op sequence of length <= ``max_len`` over ids 1..``items``
    (values in {1,2,3}, deltas in {0.5, 1.5}); each prefix is checked once
    against the oracle, plus ``audit(heap)`` after its last op.

    With ``dedup``, a prefix that leaves the heap, the oracle and the live
    ids in a state already explored with at least as many ops to go is
    checked but not extended: ops are deterministic, so its continuations
    were covered from the first visit.
    """
    from .trace import Replayer
    failures = []
    count = 0
    pruned = 0
    seen: dict = {}

    def visit(prefix, live):
        nonlocal count, pruned
        count += 1
        if prefix:
            impl = Replayer(factory)
            orc = Replayer(OracleHeap)
            orc.run([("make", "h")] + prefix[:-1])
            b = orc.step(prefix[-1])
            try:
                impl.run([("make", "h")] + prefix[:-1])
                a = impl.step(prefix[-1])
            except HeapError as e:
                failures.append((list(prefix), [f"raised: {e}"]))
                return
            problems = []
            if a != b:
                problems.append(f"result {a} != oracle {b}")
            h = impl.heaps["h"]
            if audit is not None:
                problems += audit(h)
            m, om = h.find_min(), orc.heaps["h"].find_min()
            if (m and m.id) != (om and om.id) or len(h) != len(orc.heaps["h"]):
                problems.append("state differs from oracle")
            if problems:
                failures.append((list(prefix), problems))
                return
            removed = b
        else:
            removed = None
        if len(prefix) == max_len:
            return
        if prefix:
            live = _apply_live(live, prefix[-1], removed)
            sig = state_signature(h) if dedup else None
            if sig is not None:
                sig = (sig, tuple(orc.heaps["h"]._keys), live)
                togo = max_len - len(prefix)
                if seen.get(sig, -1) >= togo:
                    pruned += 1
                    return
                seen[sig] = togo
        for op in _moves(live, items):
            visit(prefix + [op], live)

    visit([], ())
    return ExhaustiveReport(not failures, count, failures, pruned)
