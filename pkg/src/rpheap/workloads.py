"""Workload generators, graph files, and the Dijkstra / Prim clients.

Randomness comes from ``Xorshift64Star`` so that a seed gives the same
trace on every platform and in every port of this tool:

    state  <- splitmix64(seed)            (0 is replaced by a fixed constant)
    step   x ^= x >> 12; x ^= x << 25; x ^= x >> 27   (64-bit)
    output x * 0x2545F4914F6CDD1D mod 2**64
    float  (output >> 11) * 2**-53        uniform in [0, 1)
    below  output mod n
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .oracle import OracleHeap
from .trace import Trace

MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


class Xorshift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        return self.next_u64() % n


# -- synthetic traces ---------------------------------------------------------

DEFAULT_MIX = {"insert": 50, "deletemin": 25, "decreasekey": 15, "meld": 5, "delete": 5}


def sort_trace(n: int, seed: int = 0) -> Trace:
    """n inserts of random values, then n delete-mins."""
    rng = Xorshift64Star(seed)
    ops = [("make", "h")]
    ops += [("insert", "h", i, rng.random()) for i in range(n)]
    ops += [("deletemin", "h")] * n
    return Trace(ops)


def random_trace(n: int, seed: int = 0, mix: Optional[dict] = None,
                 heaps: int = 4, decrease_key: bool = True) -> Trace:
    """``n`` random ops over ``heaps`` named heaps (plus their ``make``s).

    ``mix`` weights insert/deletemin/decreasekey/meld/delete. Without
    ``decrease_key`` support the decreasekey and delete weights are dropped
    and the rest renormalised. A meld is followed by a ``make`` that
    replaces the consumed heap. Decrease-key and delete on an empty heap
    fall back to insert.
    """
    mix = dict(DEFAULT_MIX if mix is None else mix)
    if not decrease_key:
        mix.pop("decreasekey", None)
        mix.pop("delete", None)
    names = list(mix)
    total = sum(mix.values())
    cum = []
    acc = 0.0
    for k in names:
        acc += mix[k] / total
        cum.append(acc)
    rng = Xorshift64Star(seed)
    model: dict[str, OracleHeap] = {}
    handles: dict[int, object] = {}
    ops: list[tuple] = []
    serial = 0

    def make():
        nonlocal serial
        name = f"h{serial}"
        serial += 1
        model[name] = OracleHeap()
        ops.append(("make", name))
        return name

    for _ in range(heaps):
        make()
    next_id = 0
    for _ in range(n):
        u = rng.random()
        op = next((k for k, c in zip(names, cum) if u < c), names[-1])
        live = list(model)
        h = live[rng.randbelow(len(live))]
        m = model[h]
        if op in ("decreasekey", "delete") and len(m) == 0:
            op = "insert"
        if op == "meld" and len(live) < 2:
            op = "insert"
        if op == "insert":
            v = round(rng.random() * 1000.0, 3)
            handles[next_id] = m.insert(v, next_id)
            ops.append(("insert", h, next_id, v))
            next_id += 1
        elif op == "deletemin":
            x = m.delete_min()
            if x is not None:
                del handles[x.id]
            ops.append(("deletemin", h))
        elif op == "meld":
            h2 = live[rng.randbelow(len(live) - 1)]
            if h2 == h:
                h2 = live[-1]
            m.meld(model.pop(h2))
            ops.append(("meld", h, h2))
            make()
        else:
            i = m._keys[rng.randbelow(len(m._keys))][2]
            if op == "delete":
                m.delete(handles.pop(i))
                ops.append(("delete", h, i))
            else:
                d = round(rng.random() * 100.0, 3) + 0.001
                m.decrease_key(handles[i], d)
                ops.append(("decreasekey", h, i, d))
    return Trace(ops)


# -- graphs -----------------------------------------------------------------

@dataclass
class Graph:
    n: int
    src: np.ndarray   # int64
    dst: np.ndarray   # int64
    w: np.ndarray     # float64

    @property
    def m(self):
        return len(self.w)

    def adjacency(self, undirected: bool = False) -> list[list[tuple[int, float]]]:
        adj: list[list] = [[] for _ in range(self.n)]
        for u, v, w in zip(self.src.tolist(), self.dst.tolist(), self.w.tolist()):
            adj[u].append((v, w))
            if undirected:
                adj[v].append((u, w))
        return adj


class GraphFormatError(ValueError):
    pass


def random_graph(n: int, m: int, seed: int = 0) -> Graph:
    """Uniform random directed graph without self-loops; weights in [0, 1)."""
    if n < 2 and m > 0:
        raise ValueError("need at least two vertices for edges")
    rng = Xorshift64Star(seed)
    src, dst, w = [], [], []
    while len(w) < m:
        u, v = rng.randbelow(n), rng.randbelow(n)
        if u == v:
            continue
        src.append(u)
        dst.append(v)
        w.append(rng.random())
    return Graph(n, np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64),
                 np.array(w, dtype=np.float64))


def read_graph(path, n: Optional[int] = None) -> Graph:
    """Edge list ``u v w``, one edge per line; blank lines and ``#`` comments
    are skipped. Vertices are 0..max id unless ``n`` is given."""
    src, dst, w = [], [], []
    try:
        f = open(path, encoding="utf-8")
    except OSError as e:
        raise GraphFormatError(f"cannot read graph file {path}: {e}") from None
    with f:
        for no, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise GraphFormatError(f"{path}:{no}: expected 'u v w'")
            try:
                u, v, x = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError:
                raise GraphFormatError(f"{path}:{no}: bad edge {line!r}") from None
            if u < 0 or v < 0 or not math.isfinite(x):
                raise GraphFormatError(f"{path}:{no}: bad edge {line!r}")
            src.append(u)
            dst.append(v)
            w.append(x)
    top = max(src + dst, default=-1) + 1
    return Graph(max(top, n or 0), np.array(src, dtype=np.int64),
                 np.array(dst, dtype=np.int64), np.array(w, dtype=np.float64))


def write_graph(g: Graph, path):
    with open(path, "w", encoding="utf-8") as f:
        for u, v, w in zip(g.src.tolist(), g.dst.tolist(), g.w.tolist()):
            f.write(f"{u} {v} {w!r}\n")


# -- graph clients -------------------------------------------------------------

@dataclass
class ClientResult:
    values: list            # distances (Dijkstra) or chosen edge weights (Prim)
    inserts: int = 0
    delete_mins: int = 0
    decrease_keys: int = 0

    @property
    def total(self) -> float:
        return math.fsum(sorted(v for v in self.values if v != math.inf))


class _Recorder:
    """Collects the heap ops a client performs, as trace lines."""

    def __init__(self, ops: Optional[list]):
        self.ops = ops

    def __call__(self, *op):
        if self.ops is not None:
            self.ops.append(op)


def dijkstra(g: Graph, source: int, heap, record: Optional[list] = None) -> ClientResult:
    """Single-source shortest paths with one heap entry per vertex.

    Keys are set exactly with ``decrease_key_to``. When ``record`` is given
    the ops are appended to it as trace lines and keys are lowered by delta,
    so that replaying the trace reproduces the same keys bit for bit.
    """
    if g.m and float(g.w.min()) < 0:
        raise ValueError("dijkstra needs nonnegative edge weights")
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    rec = _Recorder(record)
    adj = g.adjacency()
    dist = [math.inf] * g.n
    done = [False] * g.n
    handles: dict[int, object] = {}
    res = ClientResult(dist)
    rec("make", "g")
    handles[source] = heap.insert(0.0, source)
    rec("insert", "g", source, 0.0)
    res.inserts += 1
    while True:
        x = heap.delete_min()
        rec("deletemin", "g")
        if x is None:
            break
        res.delete_mins += 1
        u = x.id
        du = x.value
        dist[u] = du
        done[u] = True
        for v, w in adj[u]:
            if done[v]:
                continue
            nd = du + w
            y = handles.get(v)
            if y is None:
                handles[v] = heap.insert(nd, v)
                rec("insert", "g", v, nd)
                res.inserts += 1
            elif nd < y.value:
                if record is None:
                    heap.decrease_key_to(y, nd)
                else:
                    delta = y.value - nd
                    heap.decrease_key(y, delta)
                    rec("decreasekey", "g", v, delta)
                res.decrease_keys += 1
    return res


def prim(g: Graph, heap, record: Optional[list] = None) -> ClientResult:
    """Minimum spanning forest of the undirected version of ``g``; ``values``
    are the weights of the chosen edges."""
    rec = _Recorder(record)
    adj = g.adjacency(undirected=True)
    done = [False] * g.n
    handles: dict[int, object] = {}
    res = ClientResult([])
    rec("make", "g")
    for start in range(g.n):
        if done[start]:
            continue
        handles[start] = heap.insert(0.0, start)
        rec("insert", "g", start, 0.0)
        res.inserts += 1
        first = True
        while True:
            x = heap.delete_min()
            rec("deletemin", "g")
            if x is None:
                break
            res.delete_mins += 1
            u = x.id
            done[u] = True
            if not first:
                res.values.append(x.value)
            first = False
            for v, w in adj[u]:
                if done[v]:
                    continue
                y = handles.get(v)
                if y is None:
                    handles[v] = heap.insert(w, v)
                    rec("insert", "g", v, w)
                    res.inserts += 1
                elif w < y.value:
                    if record is None:
                        heap.decrease_key_to(y, w)
                    else:
                        delta = y.value - w
                        heap.decrease_key(y, delta)
                        rec("decreasekey", "g", v, delta)
                    res.decrease_keys += 1
    return res


def dijkstra_trace(g: Graph, source: int = 0) -> Trace:
    ops: list = []
    dijkstra(g, source, OracleHeap(), record=ops)
    return Trace(ops)


def prim_trace(g: Graph) -> Trace:
    ops: list = []
    prim(g, OracleHeap(), record=ops)
    return Trace(ops)


# -- oracles --------------------------------------------------------------------

def bellman_ford(g: Graph, source: int) -> np.ndarray:
    """Vectorised Bellman-Ford: relax every edge until nothing changes."""
    dist = np.full(g.n, np.inf)
    dist[source] = 0.0
    for _ in range(g.n):
        cand = dist[g.src] + g.w
        new = dist.copy()
        np.minimum.at(new, g.dst, cand)
        if np.array_equal(new, dist):
            break
        dist = new
    return dist


def kruskal(g: Graph) -> list[float]:
    """Weights of a minimum spanning forest, by sorting edges and union-find."""
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen = []
    for i in np.argsort(g.w, kind="stable").tolist():
        a, b = find(int(g.src[i])), find(int(g.dst[i]))
        if a != b:
            parent[a] = b
            chosen.append(float(g.w[i]))
    return chosen


def gen_workload(kind: str, *, n: int = 1000, seed: int = 0, graph=None,
                 source: int = 0, mix: Optional[dict] = None,
                 decrease_key: bool = True) -> Trace:
    """Dispatch to a generator: ``sort``, ``random``, ``dijkstra``, ``prim``.
    ``graph`` is a ``Graph`` or a path to an edge-list file."""
    if kind == "sort":
        return sort_trace(n, seed)
    if kind == "random":
        return random_trace(n, seed, mix, decrease_key=decrease_key)
    if kind in ("dijkstra", "prim"):
        if graph is None:
            raise ValueError(f"{kind} needs a graph")
        g = graph if isinstance(graph, Graph) else read_graph(graph)
        return dijkstra_trace(g, source) if kind == "dijkstra" else prim_trace(g)
    raise ValueError(f"unknown workload {kind!r}")
