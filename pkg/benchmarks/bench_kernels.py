"""Compare the compiled and pure-Python kernels on the workloads the library actually runs.

    python benchmarks/bench_kernels.py [--repeat N] [--skip-slow]
"""

import argparse
import time

from tricosine import _pykernels
from tricosine.forge import nsc, optimism
from tricosine.mono import MonoElt
from tricosine.rm import build_rm
from tricosine.spherecode import _blocks, search_order

try:
    from tricosine import _ckernels
except ImportError:
    _ckernels = None


def workloads(skip_slow: bool):
    words = sorted(build_rm(2, 4).space)
    yield "xor_weight_hist, 2048 words, all pairs", "xor_weight_hist", (words,)

    f = nsc.frame()
    gens = f.sign_gens(f.E) + [MonoElt.of_perm(q) for q in f.P01_gens]
    yield ("mono_closure16, E01 x P01 (order 10752)", "mono_closure16",
           ([g.signs for g in gens], [_pack(g.perm) for g in gens], 16, 10**6))
    if not skip_slow:
        xg = nsc.x_generators()
        yield ("mono_closure16, X (order 645120)", "mono_closure16",
               ([g.signs for g in xg], [_pack(g.perm) for g in xg], 16, 10**6))

    b = optimism.build_bc16()
    blocks = _blocks(b)
    order = search_order(16, blocks)
    yield ("perm_backtrack, first automorphism of the (16,256,6) code", "perm_backtrack",
           (16, blocks, blocks, b.words, b.words, order, True, 10**8))
    if not skip_slow:
        yield ("perm_backtrack, all 40320 automorphisms", "perm_backtrack",
               (16, blocks, blocks, b.words, b.words, order, False, 10**8))


def _pack(p):
    return sum(x << (4 * i) for i, x in enumerate(p))


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--skip-slow", action="store_true")
    args = ap.parse_args()
    print(f"{'workload':62s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, name, fargs in workloads(args.skip_slow):
        tp, out_p = timed(getattr(_pykernels, name), fargs, args.repeat)
        if _ckernels is None:
            print(f"{label:62s} {tp:10.3f} {'n/a':>10s}")
            continue
        tc, out_c = timed(getattr(_ckernels, name), fargs, args.repeat)
        same = out_p == out_c if name != "perm_backtrack" else sorted(out_p[0]) == sorted(out_c[0])
        flag = "" if same else "  MISMATCH"
        print(f"{label:62s} {tp:10.3f} {tc:10.3f} {tp / tc:7.1f}x{flag}")


if __name__ == "__main__":
    main()
