"""Compare the compiled and pure-Python Smith-form kernels.

Two workloads: random sparse boundary-style matrices (the shape homology
actually produces) and the full word-model loop-homology pipeline, which is
dominated by the diagonal kernel.  Run with `python benchmarks/bench_snf.py`.
"""

import random
import time

from cobarkit.intlinalg import _snf_py

try:
    from cobarkit.intlinalg import _snf_cy

    HAVE_CY = True
except ImportError:
    _snf_cy = None
    HAVE_CY = False


def boundary_like(rng, m, n, density=0.12):
    return [
        [rng.choice([1, -1, 2]) if rng.random() < density else 0 for _ in range(n)]
        for _ in range(m)
    ]


def bench_diagonal():
    rng = random.Random(42)
    print(f"{'size':>10} {'python':>10} {'cython':>10} {'speedup':>8}")
    for size in (60, 120, 240):
        M = boundary_like(rng, size, size)
        t0 = time.time()
        d_py = _snf_py.smith_diagonal(M)
        t_py = time.time() - t0
        if HAVE_CY:
            t0 = time.time()
            d_cy = _snf_cy.smith_diagonal(M)
            t_cy = time.time() - t0
            assert d_py == d_cy
            print(f"{size:>10} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / max(t_cy, 1e-9):>7.1f}x", flush=True)
        else:
            print(f"{size:>10} {t_py:>9.3f}s {'-':>10} {'-':>8}", flush=True)


def bench_transforms():
    rng = random.Random(7)
    print(f"\n{'size':>10} {'python':>10} {'cython':>10} {'speedup':>8}")
    for size in (30, 60, 120):
        M = boundary_like(rng, size, size, density=0.2)
        t0 = time.time()
        U, S, V = _snf_py.smith_with_transforms(M)
        t_py = time.time() - t0
        if HAVE_CY:
            t0 = time.time()
            U2, S2, V2 = _snf_cy.smith_with_transforms(M)
            t_cy = time.time() - t0
            assert S == S2
            print(f"{size:>10} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / max(t_cy, 1e-9):>7.1f}x", flush=True)
        else:
            print(f"{size:>10} {t_py:>9.3f}s {'-':>10} {'-':>8}", flush=True)


def bench_loop_pipeline():
    """End to end: homology of the word model of the loops on the 2-sphere."""
    from cobarkit import intlinalg, sset
    from cobarkit.loopgroup import kan_loop_group, loop_group_chains

    print("\nword-model loop homology of the 2-sphere (length 4 window)")
    G = kan_loop_group(sset.sphere(2, dim=6), 3)
    for backend in (["cython", "python"] if HAVE_CY else ["python"]):
        intlinalg._fast = _snf_cy if backend == "cython" else None
        t0 = time.time()
        cx = loop_group_chains(G, 2, 4)
        vals = [repr(cx.homology(n)) for n in range(3)]
        print(f"  {backend:>7}: {time.time() - t0:6.2f}s  H = {vals}")
    intlinalg._fast = _snf_cy if HAVE_CY else None


if __name__ == "__main__":
    print(f"compiled backend available: {HAVE_CY}")
    bench_diagonal()
    bench_transforms()
    bench_loop_pipeline()
