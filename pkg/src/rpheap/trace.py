"""Text traces of heap operations and a deterministic replayer.

A trace is UTF-8 text, one op per line, ``#`` starts a comment::

    heapbench-trace 1 rp2
    make a
    insert a 17 0.25
    decreasekey a 17 0.125
    deletemin a

The header names the format version and an optional structure hint (``-``
for none). Ids are decimal integers, values and deltas decimal reals.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .core import HeapError

OPS = {
    # name: argument converters after the heap name
    "make": (),
    "insert": (int, float),
    "findmin": (),
    "deletemin": (),
    "decreasekey": (int, float),
    "delete": (int,),
    "meld": (str,),
}
VERSION = 1


class TraceParseError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


@dataclass
class Trace:
    ops: list[tuple] = field(default_factory=list)
    kind: Optional[str] = None
    version: int = VERSION

    def __len__(self):
        return len(self.ops)

    def dumps(self) -> str:
        lines = [f"heapbench-trace {self.version} {self.kind or '-'}"]
        lines += [format_op(op) for op in self.ops]
        return "\n".join(lines) + "\n"

    def save(self, path):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.dumps())

    @classmethod
    def load(cls, path) -> "Trace":
        with open(path, encoding="utf-8") as f:
            return parse_trace(f.read())


def format_op(op: tuple) -> str:
    parts = [op[0], op[1]]
    for a in op[2:]:
        parts.append(repr(a) if isinstance(a, float) else str(a))
    return " ".join(parts)


def parse_trace(text: str) -> Trace:
    trace = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if trace is None:
            if words[0] != "heapbench-trace" or len(words) not in (2, 3):
                raise TraceParseError(no, "expected header 'heapbench-trace <version> [kind]'")
            try:
                version = int(words[1])
            except ValueError:
                raise TraceParseError(no, f"bad version {words[1]!r}") from None
            if version != VERSION:
                raise TraceParseError(no, f"unsupported trace version {version}")
            kind = words[2] if len(words) == 3 and words[2] != "-" else None
            trace = Trace(kind=kind, version=version)
            continue
        name = words[0]
        if name not in OPS:
            raise TraceParseError(no, f"unknown op {name!r}")
        conv = OPS[name]
        if len(words) != 2 + len(conv):
            raise TraceParseError(no, f"{name} takes {1 + len(conv)} arguments")
        try:
            args = [c(w) for c, w in zip(conv, words[2:])]
        except ValueError as e:
            raise TraceParseError(no, str(e)) from None
        if name in ("insert", "decreasekey", "delete") and args[0] < 0:
            raise TraceParseError(no, "ids must be unsigned")
        trace.ops.append((name, words[1], *args))
    if trace is None:
        raise TraceParseError(1, "empty trace")
    return trace


class TraceError(HeapError):
    pass


class Replayer:
    """Applies ops to named heaps built by ``factory``.

    ``step`` returns the id answered by findmin/deletemin (None when the
    heap is empty) and None for other ops. In ``tolerant`` mode ops that
    refer to missing heaps or items are skipped instead of raising.
    """

    def __init__(self, factory: Callable, tolerant: bool = False):
        self.factory = factory
        self.tolerant = tolerant
        self.heaps: dict = {}
        self.handles: dict = {}
        self._home: dict = {}     # id -> heap object it was inserted into
        self._merged: dict = {}   # destroyed heap object -> absorbing heap

    def _owner(self, id):
        h = self._home[id]
        while h in self._merged:
            h = self._merged[h]
        return h

    def _fail(self, msg):
        if self.tolerant:
            return _SKIP
        raise TraceError(msg)

    def run(self, ops: Iterable[tuple]):
        for op in ops:
            self.step(op)

    def observe(self, ops: Iterable[tuple]) -> list:
        out = []
        for i, op in enumerate(ops):
            r = self.step(op)
            if op[0] in ("findmin", "deletemin") and r is not _SKIP:
                out.append((i, r))
        return out

    def step(self, op: tuple):
        name, hname = op[0], op[1]
        if name == "make":
            if hname in self.heaps:
                return self._fail(f"heap {hname} already exists")
            self.heaps[hname] = self.factory()
            return None
        h = self.heaps.get(hname)
        if h is None:
            return self._fail(f"no heap named {hname}")
        if name == "insert":
            id = op[2]
            if id in self.handles:
                return self._fail(f"id {id} is already live")
            self.handles[id] = h.insert(op[3], id)
            self._home[id] = h
            return None
        if name == "findmin":
            m = h.find_min()
            return None if m is None else m.id
        if name == "deletemin":
            m = h.delete_min()
            if m is None:
                return None
            self.handles.pop(m.id, None)
            return m.id
        if name == "meld":
            h2 = self.heaps.get(op[2])
            if h2 is None or h2 is h:
                return self._fail(f"cannot meld {hname} with {op[2]}")
            h.meld(h2)
            del self.heaps[op[2]]
            self._merged[h2] = h
            return None
        id = op[2]
        x = self.handles.get(id)
        if x is None or self._owner(id) is not h:
            return self._fail(f"id {id} is not live in heap {hname}")
        if name == "decreasekey":
            h.decrease_key(x, op[3])
        elif name == "delete":
            h.delete(x)
            del self.handles[id]
        return None


_SKIP = object()


# -- metrics runner --------------------------------------------------------

COLUMNS = ["op_index", "op", "heap", "n_before", "comparisons", "links",
           "rank_steps", "halftrees_after", "max_rank"]
PHI_COLUMNS = ["phi_before", "phi_after"]


class AuditFailure(Exception):
    def __init__(self, op_index: int, problems: list):
        super().__init__(f"op {op_index}: " + "; ".join(problems[:5]))
        self.op_index = op_index
        self.problems = problems


@dataclass
class RunResult:
    status: int
    rows: list
    results: list
    error: str = ""

    def csv_text(self, with_phi: bool) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = COLUMNS + (PHI_COLUMNS if with_phi else [])
        w.writerow(cols)
        for r in self.rows:
            w.writerow([r[c] for c in cols])
        return buf.getvalue()


def run_trace(trace: Trace, factory: Callable, check: str = "off",
              analysis: Optional[str] = None, shadow_oracle: bool = False) -> RunResult:
    """Replay ``trace`` recording one metrics row per op.

    ``check``: ``off``; ``cheap`` (count and minimum after each op); ``full``
    (structural and rank-rule audit, and incremental potential against a
    from-scratch recomputation when ``analysis`` is set). Returns status 1 on
    the first failure.
    """
    from .analysis import IncrementalPotential
    if check not in ("off", "cheap", "full"):
        raise ValueError(f"unknown check level {check!r}")
    rep = Replayer(factory)
    shadow = Replayer(_oracle_factory()) if shadow_oracle else None
    rows, results = [], []
    trackers: dict = {}

    def phi(name):
        t = trackers.get(name)
        if t is None:
            return 0
        t.sync()
        return t.value

    for i, op in enumerate(trace.ops):
        name, hname = op[0], op[1]
        h = rep.heaps.get(hname)
        involved = [hname] if h is not None else []
        if name == "meld" and op[2] in rep.heaps:
            involved.append(op[2])
        before = [sum(rep.heaps[x].counters.snapshot()[j] for x in involved) for j in range(3)]
        n_before = len(h) if h is not None else 0
        phi_before = sum(phi(x) for x in involved) if analysis else None
        try:
            r = rep.step(op)
        except (HeapError, ValueError) as e:
            return RunResult(1, rows, results, f"op {i}: {e}")
        h = rep.heaps.get(hname)
        if analysis:
            if name == "make":
                trackers[hname] = IncrementalPotential(h, analysis)
            elif name == "meld":
                trackers[hname].absorb(trackers.pop(op[2]))
        if name in ("findmin", "deletemin"):
            results.append((i, r))
            if shadow is not None:
                want = shadow.step(op)
                if want != r:
                    return RunResult(1, rows, results, f"op {i}: got {r}, oracle says {want}")
        elif shadow is not None:
            shadow.step(op)
        after = h.counters.snapshot()
        row = {
            "op_index": i, "op": name, "heap": hname, "n_before": n_before,
            "comparisons": after[0] - before[0], "links": after[1] - before[1],
            "rank_steps": after[2] - before[2],
            "halftrees_after": h.root_count(), "max_rank": h.max_rank(),
        }
        if analysis:
            row["phi_before"] = phi_before
            row["phi_after"] = phi(hname)
        rows.append(row)
        if check == "off":
            continue
        try:
            if check == "cheap":
                _cheap_check(h, i)
            else:
                problems = h.audit()
                if analysis:
                    problems += trackers[hname].check()
                if problems:
                    raise AuditFailure(i, problems)
        except AuditFailure as e:
            return RunResult(1, rows, results, str(e))
    return RunResult(0, rows, results)


def _cheap_check(h, i):
    roots = list(h.iter_roots())
    m = h.find_min()
    if roots and any(r.key < m.key for r in roots):
        raise AuditFailure(i, ["find_min is not the minimum root"])
    if (m is None) != (len(h) == 0):
        raise AuditFailure(i, ["emptiness disagrees with count"])


def _oracle_factory():
    from .oracle import OracleHeap
    return OracleHeap
