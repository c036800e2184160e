# Two weakened rank rules and the inputs that break them.
from rpheap.adversary import (build_capped_instance, build_variantA_instance, control_heap,
                              run_insert_deletemin_attack, run_variantA_cycle)
from rpheap.core import subtree_size

# Rule A: ranks are repaired by looking at ancestors only. Each attack cycle
# makes a cascade per kept path node, so the work grows like k^2 per cycle.
for k in (4, 8, 16):
    drv = build_variantA_instance(1, k, record=False)
    s = run_variantA_cycle(drv, 1, k)
    print(f"variantA k={k:2d}: n={len(drv.h):6d}, rank steps per cycle {s.rank_steps}")

# Going further needs a perfect half tree of every rank up to k+1,
# 2**(k+2) nodes: already 2**34 at k=32.

# Rule B: at most d repair steps per key decrease. With d=0 the ladder
# build leaves one path-shaped tree of each rank 0..k, and every
# insert + delete-min afterwards walks all of them.
k = 15
drv = build_capped_instance(0, k)
build = drv.trace()
print(f"capped(0) ladder to rank {k}: {drv.count} ops, n={len(drv.h)}")
s = run_insert_deletemin_attack(drv, 10)
print("trees per delete-min pass:", s.trees, "log bound", s.log_bound)

# the same build replayed on a type-1 heap collapses into a few big trees
c = run_insert_deletemin_attack(control_heap(build, "rp1"), 10)
print("healthy type-1 control:   ", c.trees)

# d >= 1: perfect trees pruned to depth d+1
for d in (1, 2):
    drv = build_capped_instance(d, 8)
    sizes = sorted(subtree_size(r) for r in drv.h.iter_roots())
    print(f"capped({d}) after pruning: tree sizes {sizes}")
