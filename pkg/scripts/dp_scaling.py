#!/usr/bin/env python3
"""Measure the sketch table's operation counts across instance sizes.

Runs the one-pass sketch construction on a family of path instances (a short
cycle with a long pendant path) of growing size, records instrumented
operation counts and wall time, fits a line, and reports the worst relative
deviation.  Emits one JSON line per size plus a summary line.

Usage:
    python3 scripts/dp_scaling.py [--sizes 1000,10000,100000] [--out report.jsonl]
"""
import argparse
import json
import sys
import time

from polyext.geometry import SimplePolygon, pt
from polyext.model import Instance
from polyext.sketch import sketch_linear, SweepStats
from polyext.triangulation import ear_clip, root_dual


def path_instance(n: int) -> Instance:
    edges = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]
    edges += [(i, i + 1) for i in range(4, n - 1)]
    return Instance(n=n, edges=edges, cycle=[0, 1, 2, 3])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="1000,10000,100000",
                    help="comma-separated instance sizes")
    ap.add_argument("--out", default=None, help="write JSONL here too")
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    square = SimplePolygon([pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)])
    tri = root_dual(ear_clip(square))

    rows = []
    for n in sizes:
        inst = path_instance(n)
        stats = SweepStats()
        start = time.time()
        assign = sketch_linear(inst, tri, stats=stats)
        elapsed = time.time() - start
        rows.append({"n": n, "ops": stats.ops, "seconds": round(elapsed, 4),
                     "defined": assign is not None})

    xs = [r["n"] for r in rows]
    ys = [r["ops"] for r in rows]
    k = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    a = (k * sxy - sx * sy) / (k * sxx - sx * sx)
    b = (sy - a * sx) / k
    worst = max(max(y / (a * x + b), (a * x + b) / y)
                for x, y in zip(xs, ys))
    summary = {"fit_slope": a, "fit_intercept": b,
               "worst_ratio_to_linear_fit": round(worst, 4)}

    out_lines = [json.dumps(r, sort_keys=True) for r in rows]
    out_lines.append(json.dumps({"summary": summary}, sort_keys=True))
    text = "\n".join(out_lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
