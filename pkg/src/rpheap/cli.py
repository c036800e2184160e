"""heapbench: generate traces, replay them with checks, benchmark, draw, attack."""

from __future__ import annotations

import argparse
import os
import sys

from . import KINDS, POLICIES, heap_factory, make_heap
from .analysis import SCHEMES


def _seed(args) -> int:
    env = os.environ.get("HEAPBENCH_SEED")
    return int(env) if env not in (None, "") else args.seed


def _write(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _mix(s: str) -> dict:
    names = ["insert", "deletemin", "decreasekey", "meld", "delete"]
    vals = [float(v) for v in s.split(",")]
    if len(vals) != len(names):
        raise argparse.ArgumentTypeError("mix needs 5 weights: insert,deletemin,decreasekey,meld,delete")
    return dict(zip(names, vals))


def cmd_gen(args) -> int:
    from .workloads import gen_workload, random_graph, write_graph
    seed = _seed(args)
    if args.workload == "graph":
        g = random_graph(args.n, args.m, seed)
        if args.output in (None, "-"):
            for u, v, w in zip(g.src.tolist(), g.dst.tolist(), g.w.tolist()):
                print(f"{u} {v} {w!r}")
        else:
            write_graph(g, args.output)
        return 0
    dk = True
    if args.impl:
        dk = make_heap(args.impl).supports_decrease_key
    t = gen_workload(args.workload, n=args.n, seed=seed, graph=args.graph,
                     source=args.source, mix=args.mix, decrease_key=dk)
    t.kind = args.impl
    _write(t.dumps(), args.output)
    return 0


def cmd_run(args) -> int:
    from .trace import Trace, TraceParseError, run_trace
    try:
        trace = Trace.load(args.trace)
    except TraceParseError as e:
        print(f"{args.trace}: parse error: {e}", file=sys.stderr)
        return 2
    impl = args.impl or trace.kind
    if impl is None:
        print("no --impl given and the trace names none", file=sys.stderr)
        return 2
    res = run_trace(trace, heap_factory(impl, args.policy), check=args.check_invariants,
                    analysis=args.analysis, shadow_oracle=args.oracle)
    if args.metrics:
        _write(res.csv_text(args.analysis is not None), args.metrics)
    if res.status:
        print(f"FAILED: {res.error}", file=sys.stderr)
    else:
        print(f"ok: {len(trace.ops)} ops on {impl}", file=sys.stderr)
    return res.status


def cmd_bench(args) -> int:
    from .bench import bench, rows_to_csv
    suite = [s for s in (args.suite or "").split(",") if s]
    impls = [s for s in args.impl.split(",") if s]
    rows = bench(suite, impls, args.repetitions, _seed(args))
    _write(rows_to_csv(rows), args.output)
    return 0


def cmd_dot(args) -> int:
    from .dot import ViewError, export_dot
    from .trace import Replayer, Trace
    trace = Trace.load(args.trace)
    impl = args.impl or trace.kind
    rep = Replayer(heap_factory(impl, args.policy))
    rep.run(trace.ops)
    name = args.heap or next(iter(rep.heaps))
    try:
        text = export_dot(rep.heaps[name], args.view)
    except ViewError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _write(text, args.output)
    return 0


def cmd_adversary(args) -> int:
    from .adversary import (BudgetError, build_capped_instance, build_variantA_instance,
                            control_heap, run_insert_deletemin_attack, run_variantA_cycle)
    try:
        if args.variant == "variantA":
            drv = build_variantA_instance(args.b, args.k)
            print(f"built variantA(b={args.b}) heap: n={len(drv.h)}, ops={drv.count}")
            for i in range(args.cycles):
                s = run_variantA_cycle(drv, args.b, args.k)
                print(f"cycle {i}: rank_steps={s.rank_steps} comparisons={s.comparisons} "
                      f"links={s.links} ops={s.ops}")
        else:
            drv = build_capped_instance(args.d, args.k)
            print(f"built capped(d={args.d}) heap: n={len(drv.h)}, ops={drv.count}")
            build = drv.trace()
            s = run_insert_deletemin_attack(drv, args.cycles)
            print(f"attack: trees per pass min={min(s.trees, default=0)} "
                  f"max={max(s.trees, default=0)}; ceil(lg n)+1={s.log_bound}")
            if args.control:
                c = run_insert_deletemin_attack(control_heap(build, "rp1"), args.cycles)
                print(f"rp1 control: trees per pass max={max(c.trees, default=0)}; "
                      f"ceil(lg n)+1={c.log_bound}")
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.trace_out:
        drv.trace().save(args.trace_out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heapbench", description=__doc__)
    p.add_argument("--seed", type=int, default=0,
                   help="random seed (HEAPBENCH_SEED overrides)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a workload trace")
    g.add_argument("workload", choices=["sort", "random", "dijkstra", "prim", "graph"])
    g.add_argument("--n", type=int, default=1000, help="items, ops, or vertices")
    g.add_argument("--m", type=int, default=5000, help="edges (graph)")
    g.add_argument("--graph", help="edge-list file for dijkstra/prim")
    g.add_argument("--source", type=int, default=0)
    g.add_argument("--mix", type=_mix, help="weights insert,deletemin,decreasekey,meld,delete")
    g.add_argument("--impl", help="structure hint; drops decrease-key ops it cannot run")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="replay a trace and emit metrics")
    r.add_argument("--trace", required=True)
    r.add_argument("--impl", help=f"one of {', '.join(KINDS)}")
    r.add_argument("--policy", choices=POLICIES)
    r.add_argument("--metrics", help="CSV output path ('-' for stdout)")
    r.add_argument("--check-invariants", choices=["off", "cheap", "full"], default="off")
    r.add_argument("--analysis", choices=SCHEMES)
    r.add_argument("--oracle", action="store_true", help="shadow every op on the oracle")
    r.set_defaults(func=cmd_run)

    b = sub.add_parser("bench", help="compare structures by counted work")
    b.add_argument("--suite", default="", help="e.g. sort:100000,dijkstra:1000:5000")
    b.add_argument("--impl", default="rp1,rp2,bq-onepass,bq-eager,tournament,pairing")
    b.add_argument("--repetitions", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)

    d = sub.add_parser("dot", help="draw the heap left by a trace")
    d.add_argument("--trace", required=True)
    d.add_argument("--impl")
    d.add_argument("--policy", choices=POLICIES)
    d.add_argument("--heap", help="heap name in the trace (default: first)")
    d.add_argument("--view", default="half-ordered",
                   choices=["half-ordered", "heap-ordered", "full", "half-empty"])
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_dot)

    a = sub.add_parser("adversary", help="run an attack on a weakened rule")
    a.add_argument("variant", choices=["variantA", "capped"])
    a.add_argument("--b", type=int, default=1)
    a.add_argument("--d", type=int, default=0)
    a.add_argument("--k", type=int, default=8)
    a.add_argument("--cycles", type=int, default=3)
    a.add_argument("--control", action="store_true", help="also run the rp1 control")
    a.add_argument("--trace-out", help="save the recorded trace")
    a.set_defaults(func=cmd_adversary)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
