# Watching the amortized analysis happen: potentials and per-op budgets.
from rpheap import heap_factory, make_heap
from rpheap.analysis import (BUDGETS, OpMetrics, Type2DeltaMonitor, potential,
                             verify_amortized)
from rpheap.trace import run_trace
from rpheap.workloads import random_trace

h = make_heap("rp2")
mon = Type2DeltaMonitor(h)
xs = [mon.run("insert", h.insert, float(v), v) for v in range(32)]
print("32 inserts, potential", potential(h, "type2-goodbad").value)   # 2 per root

mon.run("deletemin", h.delete_min)
print("after one delete-min:", potential(h, "type2-goodbad").value,
      "matches so far", mon.counts["match"])

for x in xs[5:25:4]:
    mon.run("decreasekey", h.decrease_key, x, 100.0)
print("after 5 decrease-keys:", potential(h, "type2-goodbad").value)
print("delta violations:", mon.violations or "none")

# the same bookkeeping over a whole trace, as CSV rows
trace = random_trace(5000, seed=2)
res = run_trace(trace, heap_factory("rp2"), check="full", analysis="type2-goodbad")
print(res.csv_text(True).splitlines()[:4])

metrics = [OpMetrics.from_row(r) for r in res.rows]
rep = verify_amortized(metrics, BUDGETS["type2-goodbad"])
print(f"budget check: ok={rep.ok}, {rep.checked} ops, actual work {rep.total_actual}, "
      f"budget {rep.total_budget:.0f}, tightest slack {rep.worst_slack:.1f}")

# type 1 needs the fresh/stale split to pay for delete-min
res = run_trace(trace, heap_factory("rp1"), analysis="type1-freshstale")
rep = verify_amortized([OpMetrics.from_row(r) for r in res.rows], BUDGETS["type1-freshstale"])
print("type-1 budget check:", rep.ok, "tightest slack", rep.worst_slack)
