"""Hot inner loops, each with a numba and a plain numpy/Python implementation.

The numba versions are used when numba imports and ``BERGEX_NUMBA`` is not
set to ``0``. Both implementations of a kernel return identical results,
including tie-breaking, so the flag only changes speed.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

NUMBA_ENABLED = _HAVE_NUMBA and os.environ.get("BERGEX_NUMBA", "1") not in ("0", "false", "no")

__all__ = [
    "NUMBA_ENABLED",
    "any_submask",
    "count_submasks",
    "max_matching",
    "longest_path",
    "count_cliques",
    "longest_graph_path",
    "IMPLEMENTATIONS",
]


# -- subset tests over uint64 edge masks -------------------------------------

def _any_submask_np(masks: np.ndarray, state: int) -> bool:
    if masks.size == 0:
        return False
    s = np.uint64(state)
    return bool(np.any((masks & s) == masks))


def _count_submasks_np(masks: np.ndarray, state: int) -> int:
    if masks.size == 0:
        return 0
    s = np.uint64(state)
    return int(np.count_nonzero((masks & s) == masks))


def _any_submask_nb(masks, state):
    for i in range(masks.shape[0]):
        if masks[i] & state == masks[i]:
            return True
    return False


def _count_submasks_nb(masks, state):
    c = 0
    for i in range(masks.shape[0]):
        if masks[i] & state == masks[i]:
            c += 1
    return c


# -- maximum bipartite matching (Kuhn, lowest free left vertex first) --------

def _max_matching_py(adj: np.ndarray) -> np.ndarray:
    L, R = adj.shape
    nbrs = [np.flatnonzero(adj[u]).tolist() for u in range(L)]
    match_r = [-1] * R
    match_l = [-1] * L

    def attempt(x, seen):
        for j in nbrs[x]:
            if not seen[j]:
                seen[j] = True
                if match_r[j] == -1 or attempt(match_r[j], seen):
                    match_r[j] = x
                    match_l[x] = j
                    return True
        return False

    for u in range(L):
        attempt(u, [False] * R)
    return np.array(match_l, dtype=np.int64)


def _max_matching_nb(adj):
    L, R = adj.shape
    match_r = np.full(R, -1, dtype=np.int64)
    match_l = np.full(L, -1, dtype=np.int64)
    stack = np.empty(L + 1, dtype=np.int64)
    ptr = np.empty(L + 1, dtype=np.int64)
    via = np.empty(L + 1, dtype=np.int64)
    for u in range(L):
        seen = np.zeros(R, dtype=np.bool_)
        depth = 0
        stack[0] = u
        ptr[0] = 0
        found = -1
        while depth >= 0:
            x = stack[depth]
            j = ptr[depth]
            advanced = False
            while j < R:
                if adj[x, j] and not seen[j]:
                    seen[j] = True
                    via[depth] = j
                    if match_r[j] == -1:
                        found = depth
                        break
                    ptr[depth] = j + 1
                    depth += 1
                    stack[depth] = match_r[j]
                    ptr[depth] = 0
                    advanced = True
                    break
                j += 1
            if found >= 0:
                break
            if not advanced:
                depth -= 1
        if found >= 0:
            for t in range(found, -1, -1):
                match_r[via[t]] = stack[t]
                match_l[stack[t]] = via[t]
    return match_l


# -- longest Berge path -------------------------------------------------------

def _longest_path_py(n, r, edges, inc_ptr, inc_idx, budget):
    edges = edges.tolist()
    inc_ptr = inc_ptr.tolist()
    inc_idx = inc_idx.tolist()
    m = len(edges)
    best = 0
    best_v = [0] if n else []
    best_e: list[int] = []
    if n == 0 or budget <= 0:
        return best, np.array(best_v, dtype=np.int64), np.array(best_e, dtype=np.int64)
    used_v = [False] * n
    used_e = [False] * m
    pv = [0] * (n + 1)
    pe = [0] * (n + 1)
    ie = [0] * (n + 1)
    iv = [0] * (n + 1)
    for s in range(n):
        d = 0
        pv[0] = s
        used_v[s] = True
        ie[0] = inc_ptr[s]
        iv[0] = 0
        while d >= 0:
            advanced = False
            if d < budget:
                cur = pv[d]
                end = inc_ptr[cur + 1]
                while ie[d] < end:
                    e = inc_idx[ie[d]]
                    if used_e[e] or iv[d] >= r:
                        ie[d] += 1
                        iv[d] = 0
                        continue
                    w = edges[e][iv[d]]
                    iv[d] += 1
                    if used_v[w]:
                        continue
                    pe[d] = e
                    used_e[e] = True
                    d += 1
                    pv[d] = w
                    used_v[w] = True
                    ie[d] = inc_ptr[w]
                    iv[d] = 0
                    if d > best:
                        best = d
                        best_v = pv[: d + 1]
                        best_e = pe[:d]
                        if best == budget:
                            return best, np.array(best_v, dtype=np.int64), np.array(best_e, dtype=np.int64)
                    advanced = True
                    break
            if not advanced:
                used_v[pv[d]] = False
                if d > 0:
                    used_e[pe[d - 1]] = False
                d -= 1
    return best, np.array(best_v, dtype=np.int64), np.array(best_e, dtype=np.int64)


def _longest_path_nb(n, r, edges, inc_ptr, inc_idx, budget):
    m = edges.shape[0]
    best = 0
    best_v = np.zeros(n + 1, dtype=np.int64)
    best_e = np.zeros(n + 1, dtype=np.int64)
    if n == 0 or budget <= 0:
        return best, best_v[: 1 if n else 0].copy(), best_e[:0].copy()
    used_v = np.zeros(n, dtype=np.bool_)
    used_e = np.zeros(m, dtype=np.bool_)
    pv = np.zeros(n + 1, dtype=np.int64)
    pe = np.zeros(n + 1, dtype=np.int64)
    ie = np.zeros(n + 1, dtype=np.int64)
    iv = np.zeros(n + 1, dtype=np.int64)
    for s in range(n):
        d = 0
        pv[0] = s
        used_v[s] = True
        ie[0] = inc_ptr[s]
        iv[0] = 0
        while d >= 0:
            advanced = False
            if d < budget:
                cur = pv[d]
                end = inc_ptr[cur + 1]
                while ie[d] < end:
                    e = inc_idx[ie[d]]
                    if used_e[e] or iv[d] >= r:
                        ie[d] += 1
                        iv[d] = 0
                        continue
                    w = edges[e, iv[d]]
                    iv[d] += 1
                    if used_v[w]:
                        continue
                    pe[d] = e
                    used_e[e] = True
                    d += 1
                    pv[d] = w
                    used_v[w] = True
                    ie[d] = inc_ptr[w]
                    iv[d] = 0
                    if d > best:
                        best = d
                        best_v[: d + 1] = pv[: d + 1]
                        best_e[:d] = pe[:d]
                        if best == budget:
                            return best, best_v[: best + 1].copy(), best_e[:best].copy()
                    advanced = True
                    break
            if not advanced:
                used_v[pv[d]] = False
                if d > 0:
                    used_e[pe[d - 1]] = False
                d -= 1
    return best, best_v[: best + 1].copy(), best_e[:best].copy()


# -- s-cliques of an r-graph --------------------------------------------------

def _count_cliques_py(n, r, s, table, binom):
    table = table.tolist()
    binom = binom.tolist()
    if s > n:
        return 0
    if s == r:
        return sum(table)
    import itertools

    def ok(cur, v):
        for sub in itertools.combinations(cur, r - 1):
            rank = binom[v][r]
            for i, a in enumerate(sub):
                rank += binom[a][i + 1]
            if not table[rank]:
                return False
        return True

    count = 0

    def extend(cur, start):
        nonlocal count
        d = len(cur)
        for v in range(start, n - (s - d) + 1):
            if d < r - 1 or ok(cur, v):
                if d + 1 == s:
                    count += 1
                else:
                    extend(cur + [v], v + 1)

    extend([], 0)
    return count


def _count_cliques_nb(n, r, s, table, binom):
    if s > n:
        return 0
    cur = np.zeros(s, dtype=np.int64)
    nxt = np.zeros(s, dtype=np.int64)
    comb_idx = np.zeros(max(r - 1, 1), dtype=np.int64)
    count = 0
    d = 0
    nxt[0] = 0
    while d >= 0:
        v = nxt[d]
        if v > n - (s - d):
            d -= 1
            if d >= 0:
                nxt[d] = cur[d] + 1
            continue
        cur[d] = v
        good = True
        if d >= r - 1:
            k = r - 1
            for i in range(k):
                comb_idx[i] = i
            while True:
                rank = binom[v, r]
                for i in range(k):
                    rank += binom[cur[comb_idx[i]], i + 1]
                if not table[rank]:
                    good = False
                    break
                # next k-combination of range(d)
                i = k - 1
                while i >= 0 and comb_idx[i] == d - k + i:
                    i -= 1
                if i < 0:
                    break
                comb_idx[i] += 1
                for j in range(i + 1, k):
                    comb_idx[j] = comb_idx[j - 1] + 1
        if good:
            if d == s - 1:
                count += 1
                nxt[d] = v + 1
            else:
                d += 1
                nxt[d] = v + 1
        else:
            nxt[d] = v + 1
    return count


# -- longest simple path of a graph, bitmask DP ------------------------------

def _longest_graph_path_py(n, adj):
    adj = [int(a) for a in adj]
    if n == 0:
        return 0
    full = 1 << n
    ends = [0] * full
    best = 1
    for v in range(n):
        ends[1 << v] = 1 << v
    for mask in range(1, full):
        e = ends[mask]
        if not e:
            continue
        pc = bin(mask).count("1")
        if pc > best:
            best = pc
        v = 0
        while e:
            if e & 1:
                nxt = adj[v] & ~mask
                u = 0
                while nxt:
                    if nxt & 1:
                        ends[mask | (1 << u)] |= 1 << u
                    nxt >>= 1
                    u += 1
            e >>= 1
            v += 1
    return best


def _longest_graph_path_nb(n, adj):
    if n == 0:
        return 0
    full = 1 << n
    ends = np.zeros(full, dtype=np.int64)
    best = 1
    for v in range(n):
        ends[1 << v] = 1 << v
    for mask in range(1, full):
        e = ends[mask]
        if e == 0:
            continue
        pc = 0
        x = mask
        while x:
            x &= x - 1
            pc += 1
        if pc > best:
            best = pc
        for v in range(n):
            if (e >> v) & 1:
                nxt = adj[v] & ~mask
                for u in range(n):
                    if (nxt >> u) & 1:
                        ends[mask | (1 << u)] |= 1 << u
    return best


IMPLEMENTATIONS = {
    "any_submask": {"numpy": _any_submask_np},
    "count_submasks": {"numpy": _count_submasks_np},
    "max_matching": {"numpy": _max_matching_py},
    "longest_path": {"numpy": _longest_path_py},
    "count_cliques": {"numpy": _count_cliques_py},
    "longest_graph_path": {"numpy": _longest_graph_path_py},
}

if _HAVE_NUMBA:
    IMPLEMENTATIONS["any_submask"]["numba"] = njit(cache=True, nogil=True)(_any_submask_nb)
    IMPLEMENTATIONS["count_submasks"]["numba"] = njit(cache=True, nogil=True)(_count_submasks_nb)
    IMPLEMENTATIONS["max_matching"]["numba"] = njit(cache=True, nogil=True)(_max_matching_nb)
    IMPLEMENTATIONS["longest_path"]["numba"] = njit(cache=True, nogil=True)(_longest_path_nb)
    IMPLEMENTATIONS["count_cliques"]["numba"] = njit(cache=True, nogil=True)(_count_cliques_nb)
    IMPLEMENTATIONS["longest_graph_path"]["numba"] = njit(cache=True, nogil=True)(_longest_graph_path_nb)

_which = "numba" if NUMBA_ENABLED else "numpy"


def _pick(name):
    return IMPLEMENTATIONS[name][_which]


def any_submask(masks: np.ndarray, state: int) -> bool:
    """True iff some ``masks[i]`` is a subset of ``state`` (uint64 bitsets)."""
    if _which == "numba":
        return bool(IMPLEMENTATIONS["any_submask"]["numba"](masks, np.uint64(state)))
    return _any_submask_np(masks, state)


def count_submasks(masks: np.ndarray, state: int) -> int:
    if _which == "numba":
        return int(IMPLEMENTATIONS["count_submasks"]["numba"](masks, np.uint64(state)))
    return _count_submasks_np(masks, state)


def max_matching(adj: np.ndarray) -> np.ndarray:
    """Left-to-right match array (-1 when unmatched) for a dense boolean
    biadjacency matrix."""
    return _pick("max_matching")(np.ascontiguousarray(adj, dtype=np.bool_))


def longest_path(n, r, edges, inc_ptr, inc_idx, budget):
    """(length, vertices, edge indices) of the first maximum Berge path found,
    stopping early once ``budget`` hyperedges are reached."""
    best, verts, eidx = _pick("longest_path")(n, r, edges, inc_ptr, inc_idx, budget)
    return int(best), verts, eidx


def count_cliques(n, r, s, table, binom) -> int:
    """Number of s-sets whose r-subsets all have ``table[colex_rank]`` set."""
    return int(_pick("count_cliques")(n, r, s, table, binom))


def longest_graph_path(n: int, adj: np.ndarray) -> int:
    """Vertex count of a longest simple path; ``adj[v]`` is a neighbour bitmask."""
    if n > 24:
        raise ValueError("longest_graph_path is limited to n <= 24")
    return int(_pick("longest_graph_path")(n, np.asarray(adj, dtype=np.int64)))
