"""Time the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row checks that both versions agree before reporting times.
"""

import argparse
import time

import numpy as np

from surfdom import _kernels as K
from surfdom import generators as gen
from surfdom.topology import CycleOracle


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases():
    G = gen.geodesic_sphere(20).graph
    ip, ix = G.csr
    src = np.array([0], dtype=np.int64)
    yield "bfs_dist geodesic(20)", G.n, lambda: K.bfs_dist(ip, ix, src, -1), lambda: K.py_bfs_dist(ip, ix, src, -1)

    member = np.zeros(G.n, dtype=np.bool_)
    member[::7] = True
    yield ("cover_counts geodesic(20)", G.n, lambda: K.cover_counts(ip, ix, member),
           lambda: K.py_cover_counts(ip, ix, member))

    T = gen.torus_grid(30, 30, 0).graph
    oracle = CycleOracle(T)
    tp, tx = T.csr
    yield ("scan_root torus(30,30)", T.n, lambda: K.scan_root(tp, tx, T.csr_signs, oracle.csr_hom, 0, -1),
           lambda: K.py_scan_root(tp, tx, T.csr_signs, oracle.csr_hom, 0, -1))

    S = gen.geodesic_sphere(4).graph
    sp, sx = S.csr
    terms = np.array([v for v in range(S.n) if S.degree(v) != 6][:8], dtype=np.int64)
    yield ("steiner_dp geodesic(4), 8 terminals", S.n, lambda: K.steiner_dp(sp, sx, terms),
           lambda: K.py_steiner_dp(sp, sx, terms))

    D = gen.torus_grid(6, 7, 1).graph
    cm = [(1 << v) | sum(1 << u for u in D.rotations[v]) for v in range(D.n)]
    yield ("dominating_bb torus(6,7,1)", D.n, lambda: K.dominating_bb(cm, 0, 0, 0, D.n + 1, 0, 10 ** 7),
           lambda: K.dominating_bb(cm, 0, 0, 0, D.n + 1, 0, 10 ** 7, force_python=True))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args(argv)
    if not K.USE_NUMBA:
        print("numba disabled; both columns time the Python path")
    print(f"{'kernel':40s} {'n':>6s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, n, fast, slow in cases():
        fast()  # compile outside the timing
        r1, t1 = best_of(fast, a.repeat)
        r2, t2 = best_of(slow, a.repeat)
        if not same(r1, r2):
            raise SystemExit(f"{name}: compiled and Python results differ")
        print(f"{name:40s} {n:6d} {t1 * 1e3:8.2f}ms {t2 * 1e3:8.2f}ms {t2 / max(t1, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
