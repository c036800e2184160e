"""Graphviz export of heaps in the four tournament drawings."""

from __future__ import annotations

from .tournament import TournamentHeap, expand_full, half_empty, to_heap_ordered

VIEWS = ("half-ordered", "heap-ordered", "full", "half-empty")


class ViewError(ValueError):
    pass


def _label(id, value, rank) -> str:
    if id is None:
        return f"[{rank}]"
    return f"{id}:{value:g} [{rank}]"


def export_dot(h, view: str = "half-ordered", path=None) -> str:
    """Return (and optionally write) DOT text for ``h``.

    Ordered-child edges are solid, unordered-child edges dashed. The full
    and half-empty views exist only for tournament heaps.
    """
    if view not in VIEWS:
        raise ViewError(f"unknown view {view!r}")
    if view in ("full", "half-empty") and not isinstance(h, TournamentHeap):
        raise ViewError(f"the {view} view needs a tournament heap, not {h.kind}")
    lines = [f"digraph heap {{", "  node [shape=box, fontname=monospace];"]
    counter = iter(range(1 << 62))

    def node(label):
        name = f"n{next(counter)}"
        lines.append(f'  {name} [label="{label}"];')
        return name

    def edge(a, b, dashed=False):
        lines.append(f"  {a} -> {b}" + (" [style=dashed];" if dashed else ";"))

    for root in list(h.iter_roots()):
        if view == "half-ordered":
            stack = [(root, node(_label(root.id, root.value, root.rank)))]
            while stack:
                x, nx = stack.pop()
                for c, dashed in ((x.ord, False), (x.unord, True)):
                    if c is not None:
                        nc = node(_label(c.id, c.value, c.rank))
                        edge(nx, nc, dashed)
                        stack.append((c, nc))
        elif view == "heap-ordered":
            t = to_heap_ordered(root)
            stack = [(t, node(_label(t.id, t.value, t.rank)))]
            while stack:
                t, nt = stack.pop()
                for c in t.children:
                    nc = node(_label(c.id, c.value, c.rank))
                    edge(nt, nc)
                    stack.append((c, nc))
        else:
            f = expand_full(root)
            if view == "half-empty":
                f = half_empty(f)

            def lab(f):
                x = f.item
                return _label(None, None, f.rank) if x is None else _label(x.id, x.value, f.rank)

            stack = [(f, node(lab(f)))]
            while stack:
                f, nf = stack.pop()
                if f.left is None:
                    continue
                for c in (f.left, f.right):
                    nc = node(lab(c))
                    edge(nf, nc)
                    stack.append((c, nc))
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as out:
            out.write(text)
    return text
