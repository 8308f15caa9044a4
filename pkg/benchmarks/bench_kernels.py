"""Time each hot kernel in its numba and plain numpy/Python form.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Both forms are called directly from ``IMPLEMENTATIONS``, so the environment
flag does not matter here. Results must agree; the script stops otherwise.
"""

import argparse
import time

import numpy as np

from bergex import _kernels
from bergex._colex import binom_table, rank
from bergex.hypercore import Hypergraph, complete, star_path_construction
from bergex.pathstruct import _path_arrays, _shadow_adjacency


def _random_hypergraph(n, r, p, seed):
    rng = np.random.default_rng(seed)
    return Hypergraph(n, r, [e for e in complete(n, r).edges if rng.random() < p])


def cases(quick: bool):
    H = star_path_construction(10 if quick else 12, 3, 8)
    yield "longest_path", _path_arrays(H) + (7,)

    G = _random_hypergraph(14 if quick else 18, 3, 0.35, 1)
    binom = binom_table(G.n, 3)
    table = np.zeros(int(binom[G.n, 3]), dtype=np.bool_)
    for e in G.edges:
        table[rank(e)] = True
    yield "count_cliques", (G.n, 3, 5, table, binom)

    S = _random_hypergraph(14 if quick else 18, 3, 0.05, 2)
    yield "longest_graph_path", (S.n, _shadow_adjacency(S))

    rng = np.random.default_rng(3)
    adj = rng.random((60, 200)) < 0.04
    yield "max_matching", (adj,)

    masks = rng.integers(0, 2**62, size=20000, dtype=np.int64).astype(np.uint64)
    yield "count_submasks", (masks, np.uint64(2**63 - 1))


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    if "numba" not in _kernels.IMPLEMENTATIONS["longest_path"]:
        raise SystemExit("numba is not installed")
    print(f"{'kernel':20s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, call in cases(args.quick):
        impl = _kernels.IMPLEMENTATIONS[name]
        impl["numba"](*call)  # compile or load from cache
        times = {}
        out = {}
        for kind in ("numpy", "numba"):
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                out[kind] = impl[kind](*call)
                best = min(best, time.perf_counter() - t0)
            times[kind] = best
        if not _same(out["numpy"], out["numba"]):
            raise SystemExit(f"{name}: implementations disagree")
        speed = times["numpy"] / max(times["numba"], 1e-9)
        print(f"{name:20s} {times['numpy']:10.4f} {times['numba']:10.4f} {speed:8.1f}x")


if __name__ == "__main__":
    main()
