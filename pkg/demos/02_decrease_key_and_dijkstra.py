# Key decreases and what they buy: shortest paths and spanning trees.
import math

import numpy as np

from rpheap import make_heap
from rpheap.workloads import bellman_ford, dijkstra, kruskal, prim, random_graph

h = make_heap("rp1")
items = [h.insert(v, v) for v in range(16)]
h.delete_min()

# cutting a node out costs O(1) links; only ranks on the way up get repaired
x = items[11]
print("before:", x, "parent", x.parent)
h.decrease_key(x, 10.5)
print("after: ", x, "now a root:", x.parent is None)
print("rank repair steps so far:", h.counters.rank_steps)
print("audit:", h.audit() or "clean")

# delete = decrease to a tombstone that sorts below everything, then delete-min
h.delete(items[7])
print("7 still there?", any(y.id == 7 for y in h.iter_nodes()))

# Dijkstra with one heap entry per vertex
g = random_graph(1000, 5000, seed=3)
want = bellman_ford(g, 0)
for kind in ["rp1", "rp2", "pairing"]:
    heap = make_heap(kind)
    res = dijkstra(g, 0, heap)
    same = np.array_equal(np.array(res.values), want)
    c = heap.counters
    print(f"{kind:8s} dijkstra matches bellman-ford: {same}; "
          f"{res.decrease_keys} decrease-keys, {c.comparisons} comparisons, "
          f"{c.rank_steps} rank steps")

# Prim on the same edges, read as undirected
mst = math.fsum(sorted(kruskal(g)))
res = prim(g, make_heap("rp2"))
print("prim total", res.total, "kruskal total", mst, "equal:", res.total == mst)
