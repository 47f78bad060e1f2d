"""Benchmark the compiled elimination kernel against the pure-Python one.

Run:  python benchmarks/bench_kernel.py

Micro workloads cover raw RREF; the end-to-end workloads re-run the two
saturation-heavy computations of the package (the arity-4 multilinear
ideal closure and a trivial two-letter envelope) with each kernel
swapped in, which is what the kernel exists for.  Entries in these
computations stay machine-word sized, unlike random dense elimination
whose entry growth turns everything into bignum time.
"""

import random
import time

from treealg import _gauss_py
from treealg import _kernel

try:
    from treealg import _gauss_c
except ImportError:
    _gauss_c = None


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def with_backend(impl, fn, repeat=3):
    saved = (_kernel.normalize_row, _kernel.reduce_row, _kernel.rref)
    _kernel.normalize_row = impl.normalize_row
    _kernel.reduce_row = impl.reduce_row
    _kernel.rref = impl.rref
    try:
        return timed(fn, repeat)
    finally:
        _kernel.normalize_row, _kernel.reduce_row, _kernel.rref = saved


def random_matrix(rng, rows, cols, lo, hi):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def closure_matrix():
    from treealg.suites import brace_image_closure

    span = brace_image_closure(4).spans[4]
    return [list(r) for r in span.rows], span.ncols


def run_zin_closure():
    from itertools import permutations

    from treealg.dendriform import DendElement, psi_eval
    from treealg.operads import corolla_tree, ideal_closure

    gens = {}
    for n in range(2, 5):
        labels = [str(i) for i in range(1, n + 1)]
        elems = []
        for root in labels:
            rest = [x for x in labels if x != root]
            for perm in permutations(rest):
                elems.append(
                    psi_eval(
                        corolla_tree(root, perm),
                        [DendElement.generator(x) for x in labels],
                    )
                )
        gens[n] = elems
    cl = ideal_closure(gens, 4, "two-sided")
    assert cl.rank(4) == 312


def run_trivial_envelope():
    from treealg.envelope import build_envelope, trivial_brace

    q = build_envelope(trivial_brace(2), 4)
    assert q.dims()[4] == 16
    assert q.verify_coideal() == []


def main():
    rng = random.Random(7)
    impls = [("python", _gauss_py)]
    if _gauss_c is not None:
        impls.append(("c", _gauss_c))
    else:
        print("compiled kernel not built; showing pure Python only")

    m1 = random_matrix(rng, 48, 60, -3, 3)
    rows4, ncols4 = closure_matrix()
    run_zin_closure()  # warm the tree-product caches for both backends

    workloads = [
        (
            "rref 48x60 dense +-3",
            lambda impl: with_backend(impl, lambda: impl.rref([list(r) for r in m1], 60)),
        ),
        (
            "closure matrix %dx%d rref" % (len(rows4), ncols4),
            lambda impl: with_backend(
                impl, lambda: impl.rref([list(r) for r in rows4], ncols4)
            ),
        ),
        (
            "arity-4 ideal closure",
            lambda impl: with_backend(impl, run_zin_closure, repeat=2),
        ),
        (
            "trivial envelope dim 2",
            lambda impl: with_backend(impl, run_trivial_envelope, repeat=2),
        ),
    ]

    print(
        "%-28s" % "workload",
        *("%12s" % name for name, _ in impls),
        "%10s" % "speedup",
    )
    for label, bench in workloads:
        times = [bench(impl) for _, impl in impls]
        cells = "".join("%12.4f" % t for t in times)
        speedup = "%10.1fx" % (times[0] / times[-1]) if len(times) > 1 else ""
        print("%-28s%s%s" % (label, cells, speedup))

    outs = [impl.rref([list(r) for r in rows4], ncols4) for _, impl in impls]
    assert all(o == outs[0] for o in outs), "backends disagree"
    print("backends agree on all checked outputs")


if __name__ == "__main__":
    main()
