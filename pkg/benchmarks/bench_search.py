#!/usr/bin/env python3
"""Benchmark the signature-search kernels (compiled vs pure Python).

Runs the same normalised search instances through every available backend,
checks that the outputs agree bit-for-bit, and reports wall times.

    python benchmarks/bench_search.py [--repeat N] [--graph6-file extra.g6]
"""

import argparse
import time

from rectaspec import bibd_incidence, clebsch_graph, folded_cube, hypercube
from rectaspec._kernel import backends
from rectaspec.constructions import biplane_7_4_2
from rectaspec.formats import parse_graph6
from rectaspec.search import build_signature_problem, kernel_arguments


def instances(extra_file=None):
    out = [
        ("Q4", hypercube(4)),
        ("clebsch", clebsch_graph()),
        ("biplane-incidence", bibd_incidence(biplane_7_4_2())),
        ("folded-5-cube", folded_cube(5)),
    ]
    if extra_file:
        with open(extra_file, "rb") as fh:
            out.append((extra_file, parse_graph6(fh.read())))
    return out


def kernel_args(graph):
    return kernel_arguments(build_signature_problem(graph))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--graph6-file")
    args = ap.parse_args()

    kernels = backends()
    print(f"backends: {', '.join(sorted(kernels))}")
    header = f"{'instance':>20} " + "".join(f"{name:>12}" for name in sorted(kernels))
    print(header + "   speedup  agree")
    for name, graph in instances(args.graph6_file):
        kargs = kernel_args(graph)
        times = {}
        results = {}
        for kname, fn in sorted(kernels.items()):
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[kname] = fn(*kargs)
                best = min(best, time.perf_counter() - t0)
            times[kname] = best
        agree = len({repr(r) for r in results.values()}) == 1
        cols = "".join(f"{times[k] * 1000:>10.2f}ms" for k in sorted(kernels))
        speed = (f"{times['python'] / times['cython']:>8.1f}x"
                 if {"python", "cython"} <= kernels.keys() else "     n/a")
        print(f"{name:>20} {cols}{speed}  {agree}")


if __name__ == "__main__":
    main()
