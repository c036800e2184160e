# A tour of the heaps: insert, find the minimum, delete it, meld two heaps.
from rpheap import make_heap
from rpheap.dot import export_dot

h = make_heap("rp2")
for i, v in enumerate([5.0, 3.0, 8.0, 1.0, 9.0, 2.0, 7.0]):
    h.insert(v, i)

print("min:", h.find_min())
print("roots before any delete-min:", h.root_count())

# the first delete-min pays for all the inserts: one pass of fair links
x = h.delete_min()
print("deleted", x.value, "->", h.root_count(), "roots, ranks",
      sorted(r.rank for r in h.iter_roots()))

# meld takes the other heap's root list in one comparison
other = make_heap("rp2")
other.insert(0.5, 100)
other.insert(4.0, 101)
h.meld(other)
print("after meld, min is", h.find_min().value)

out = []
while len(h):
    out.append(h.delete_min().value)
print("drained:", out)

# the same ops on every structure give the same answers
for kind in ["rp1", "rp2", "bq-onepass", "bq-eager", "tournament", "pairing"]:
    g = make_heap(kind)
    for i, v in enumerate([4, 1, 3, 2]):
        g.insert(v, i)
    print(f"{kind:11s}", [g.delete_min().value for _ in range(4)],
          "comparisons:", g.counters.comparisons)

# a small heap in graphviz form (ordered children solid, unordered dashed)
g = make_heap("bq-eager")
for i in range(4):
    g.insert(i, i)
print(export_dot(g))
