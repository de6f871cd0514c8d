"""Compare the compiled and pure-Python kernels, and the solver prune levels.

    python3 benchmarks/bench_kernels.py [--quick]

Each row times the same call on both backends and checks that the results
agree. Prune rows are timed on whichever backend is available.
"""
from __future__ import annotations

import argparse
import random
import time
from itertools import combinations

from stanleydepth import _pykernels
from stanleydepth.enumeration import edge_space
from stanleydepth.lattice import Antichain, complement_upset, down_closure
from stanleydepth.solver import CoverProblem, sdepth

try:
    from stanleydepth import _ckernels
except ImportError:
    _ckernels = None


def timed(fn, *args, repeat=1):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def cover_workload(seed: int, count: int):
    """Decision problems from random 4-uniform hypergraphs on 7 vertices."""
    rng = random.Random(seed)
    edges = [sum(1 << v for v in c) for c in combinations(range(7), 4)]
    probs = []
    while len(probs) < count:
        a = Antichain(rng.sample(edges, rng.randint(6, 20)), 7)
        fam = down_closure(a) if len(probs) % 2 == 0 else complement_upset(a)
        k = sdepth(fam).value + (len(probs) % 3 == 0)  # mix of yes and no instances
        if k > 7:
            continue
        probs.append((fam, k))
    return probs


def run_cover(impl, probs, prune):
    nodes = 0
    out = []
    for fam, k in probs:
        p = CoverProblem(fam, k)
        if any(p.need >> i & 1 and not c for i, c in enumerate(p.cover_of)):
            out.append(None)
            continue
        cc = prune in ("cc", "scc")
        chosen, nn = impl.cover_search(p.need, p.avail, p.cand_masks, p.cover_of,
                                       p.level_masks if cc else None, k,
                                       p.up_masks if prune == "scc" else None)
        nodes += nn
        out.append(chosen)
    return out, nodes


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    count = 10 if args.quick else 40
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled kernels not built; timing the fallback only")

    probs = cover_workload(0, count)
    print(f"{'workload':<34}{'backend':<9}{'seconds':>10}{'nodes':>10}")
    results = {}
    for prune in ("none", "cc", "scc"):
        for name, impl in backends:
            (out, nodes), sec = timed(run_cover, impl, probs, prune)
            results[(prune, name)] = out
            print(f"{'cover search prune=' + prune:<34}{name:<9}{sec:>10.3f}{nodes:>10}")
        if len(backends) == 2:
            assert results[(prune, "python")] == results[(prune, "cython")]

    space = edge_space(6, 3)
    hi = 1 << (16 if args.quick else space.width)
    ref = None
    for name, impl in backends:
        out, sec = timed(impl.canonical_filter, 1, hi, space.images)
        ref = out if ref is None else ref
        assert out == ref
        print(f"{'canonical filter n=6 k=3':<34}{name:<9}{sec:>10.3f}{len(out):>10}")

    space = edge_space(7, 3)
    rng = random.Random(1)
    masks = [rng.getrandbits(space.width) for _ in range(200 if args.quick else 2000)]
    ref = None
    for name, impl in backends:
        out, sec = timed(lambda: [impl.canonical_mask(m, space.images) for m in masks])
        ref = out if ref is None else ref
        assert out == ref
        print(f"{'canonical mask n=7 k=3':<34}{name:<9}{sec:>10.3f}{len(out):>10}")


if __name__ == "__main__":
    main()
