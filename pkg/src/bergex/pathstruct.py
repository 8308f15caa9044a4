"""Hanging blocks, component peeling, Berge stars and longest Berge paths."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb

import numpy as np

from . import _kernels
from .bergematch import max_bipartite_matching
from .hypercore import Hypergraph, ParameterError, VertexSet, components, is_connected

__all__ = [
    "HangingBlock",
    "PeelingReport",
    "BergePathCertificate",
    "BergeStarCertificate",
    "hanging_blocks",
    "classify_component",
    "peeling_verdicts",
    "find_berge_star",
    "longest_berge_path",
    "shadow_path_order",
]

NICE, STRONG, BAD = "nice", "strong", "bad"
LOW_DEGREE, HANGING_BLOCK = "low-degree", "hanging-block"


@dataclass(frozen=True)
class HangingBlock:
    block: VertexSet
    attachment: int


@dataclass(frozen=True)
class PeelingReport:
    steps: tuple[tuple[str, VertexSet], ...]
    verdict: str
    survivor: Hypergraph

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "steps": [{"kind": k, "removed": list(vs)} for k, vs in self.steps],
            "survivor": [list(e) for e in self.survivor.edges],
        }


@dataclass(frozen=True)
class BergePathCertificate:
    defining_vertices: tuple[int, ...]
    defining_hyperedges: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.defining_hyperedges)

    def is_valid(self, H: Hypergraph) -> bool:
        vs, es = self.defining_vertices, self.defining_hyperedges
        if len(vs) != len(es) + 1 or len(set(vs)) != len(vs) or len(set(es)) != len(es):
            return False
        return all(e in H.edge_set and vs[i] in e and vs[i + 1] in e for i, e in enumerate(es))

    def to_dict(self) -> dict:
        # same shape as a Berge certificate of the path v0 - v1 - ... - vt
        return {
            "core": [[i, i + 1] for i in range(self.length)],
            "map": {str(i): v for i, v in enumerate(self.defining_vertices)},
            "assign": [[i, list(e)] for i, e in enumerate(self.defining_hyperedges)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class BergeStarCertificate:
    center: int
    leaves: tuple[int, ...]
    hyperedges: tuple[tuple[int, ...], ...]

    def is_valid(self, H: Hypergraph) -> bool:
        x = self.center
        if len(set(self.leaves)) != len(self.leaves) or x in self.leaves:
            return False
        if len(set(self.hyperedges)) != len(self.hyperedges) or len(self.leaves) != len(self.hyperedges):
            return False
        return all(f in H.edge_set and x in f and u in f for u, f in zip(self.leaves, self.hyperedges))

    def to_dict(self) -> dict:
        return {
            "core": [[0, i + 1] for i in range(len(self.leaves))],
            "map": {"0": self.center, **{str(i + 1): u for i, u in enumerate(self.leaves)}},
            "assign": [[i, list(f)] for i, f in enumerate(self.hyperedges)],
        }


def _blocks_in(H: Hypergraph, comp: VertexSet, size: int):
    """Hanging blocks of one component, sorted by (block, attachment)."""
    if size <= 1 or size >= len(comp):
        return []
    inc = H.incidence
    edges = H.edges
    out = []
    for B in itertools.combinations(comp, size):
        bset = set(B)
        # an edge meeting B but leaving it: its vertices in B must all be v
        outside_touch: set[int] | None = None
        for u in B:
            for ei in inc[u]:
                e = edges[ei]
                if not bset.issuperset(e):
                    inside = bset.intersection(e)
                    outside_touch = inside if outside_touch is None else outside_touch | inside
        if outside_touch is None:
            # B is closed: any vertex works as attachment
            out.extend(HangingBlock(B, v) for v in B)
        elif len(outside_touch) == 1:
            out.append(HangingBlock(B, next(iter(outside_touch))))
    return out


def hanging_blocks(H: Hypergraph, size: int) -> list[HangingBlock]:
    """All (block, attachment) pairs with ``|block| = size``.

    Every hyperedge meeting ``block - {attachment}`` lies inside the block;
    blocks stay within one component and are neither a single vertex nor a
    whole component.
    """
    if size < 1:
        raise ParameterError(f"block size must be >= 1, got {size}")
    out = []
    for comp in components(H):
        out.extend(_blocks_in(H, comp, size))
    return sorted(out, key=lambda b: (b.block, b.attachment))


def _thresholds(s: int, k: int) -> tuple[int, int, int]:
    h = k // 2
    return h, comb(h - 1, s - 1), comb(h, s - 1)


class _Peeler:
    def __init__(self, H: Hypergraph, k: int):
        self.H = H
        self.h, self.nice_deg, self.peel_deg = _thresholds(H.r, k)

    def live_graph(self, alive: frozenset[int]) -> Hypergraph:
        return Hypergraph(self.H.n, self.H.r, [e for e in self.H.edges if alive.issuperset(e)])

    def moves(self, alive: frozenset[int]):
        """Eligible deletions: low-degree vertices, then hanging blocks."""
        G = self.live_graph(alive)
        out = []
        for v in sorted(alive):
            if G.degrees[v] < self.peel_deg:
                out.append((LOW_DEGREE, (v,)))
        for comp in components(G):
            comp = tuple(v for v in comp if v in alive)
            for b in _blocks_in(G, comp, self.h):
                out.append((HANGING_BLOCK, tuple(v for v in b.block if v != b.attachment)))
        return out

    def first_move(self, alive: frozenset[int]):
        G = self.live_graph(alive)
        for v in sorted(alive):
            if G.degrees[v] < self.peel_deg:
                return LOW_DEGREE, (v,)
        best = None
        for comp in components(G):
            comp = tuple(v for v in comp if v in alive)
            blocks = _blocks_in(G, comp, self.h)
            if blocks:
                b = blocks[0]
                cand = (b.block, b.attachment)
                if best is None or cand < best:
                    best = cand
        if best is None:
            return None
        return HANGING_BLOCK, tuple(v for v in best[0] if v != best[1])


def classify_component(H: Hypergraph, k: int) -> PeelingReport:
    """Nice / strong / bad verdict of a connected s-graph for Berge-P_k.

    Nice: min degree >= C(floor(k/2)-1, s-1) and no hanging block of size
    floor(k/2). Otherwise vertices of degree < C(floor(k/2), s-1) and the
    non-attachment vertices of size-floor(k/2) hanging blocks are deleted one
    at a time (low degree first, lowest id first); strong iff edges survive.
    """
    if not is_connected(H):
        raise ParameterError("classify_component needs a connected hypergraph")
    p = _Peeler(H, k)
    if min(H.degrees) >= p.nice_deg and not hanging_blocks(H, p.h):
        return PeelingReport((), NICE, H)
    alive = frozenset(range(H.n))
    steps = []
    while True:
        mv = p.first_move(alive)
        if mv is None:
            break
        steps.append(mv)
        alive = alive - set(mv[1])
    survivor = p.live_graph(alive)
    return PeelingReport(tuple(steps), STRONG if survivor.m else BAD, survivor)


def peeling_verdicts(H: Hypergraph, k: int, max_n: int = 8) -> set[str]:
    """Verdicts reachable over every deletion order (exhaustive, small n)."""
    if H.n > max_n:
        raise ParameterError(f"exhaustive peeling limited to n <= {max_n}")
    if not is_connected(H):
        raise ParameterError("peeling_verdicts needs a connected hypergraph")
    p = _Peeler(H, k)
    if min(H.degrees) >= p.nice_deg and not hanging_blocks(H, p.h):
        return {NICE}
    seen: dict[frozenset[int], frozenset[str]] = {}

    def explore(alive):
        if alive in seen:
            return seen[alive]
        mv = p.moves(alive)
        if not mv:
            res = frozenset({STRONG if p.live_graph(alive).m else BAD})
        else:
            res = frozenset().union(*(explore(alive - set(vs)) for _, vs in mv))
        seen[alive] = res
        return res

    return set(explore(frozenset(range(H.n))))


def find_berge_star(H: Hypergraph, x: int, ell: int) -> BergeStarCertificate | None:
    """Berge star with ``ell`` edges centred at ``x``, found by matching the
    hyperedges through ``x`` (in edge order) to distinct leaves."""
    if not 0 <= x < H.n:
        raise ParameterError(f"vertex {x} outside 0..{H.n - 1}")
    through = [H.edges[i] for i in H.incidence[x]]
    if len(through) < ell or ell < 1:
        return None
    adj = [[u for u in f if u != x] for f in through]
    match = max_bipartite_matching(adj, H.n)
    if len(match) < ell:
        return None
    match = match[:ell]
    return BergeStarCertificate(x, tuple(u for _, u in match), tuple(through[i] for i, _ in match))


def _path_arrays(H: Hypergraph):
    """Kernel arguments: edge table plus CSR incidence lists."""
    edges = np.array(H.edges, dtype=np.int64).reshape(H.m, H.r)
    inc = H.incidence
    inc_ptr = np.zeros(H.n + 1, dtype=np.int64)
    for v in range(H.n):
        inc_ptr[v + 1] = inc_ptr[v] + len(inc[v])
    inc_idx = np.array([i for v in range(H.n) for i in inc[v]], dtype=np.int64)
    return H.n, H.r, edges, inc_ptr, inc_idx


def _shadow_adjacency(H: Hypergraph) -> np.ndarray:
    adj = np.zeros(H.n, dtype=np.int64)
    for e in H.edges:
        for a in e:
            for b in e:
                if a != b:
                    adj[a] |= 1 << b
    return adj


def longest_berge_path(H: Hypergraph, budget: int | None = None) -> BergePathCertificate:
    """Maximum-length Berge path (in hyperedges), capped at ``budget``.

    Exhaustive backtracking over alternating vertex/hyperedge choices; the
    first path of maximum length in search order (start vertex, then edge
    index, then vertex id) is returned.
    """
    if budget is None:
        budget = H.n
    if H.n == 0:
        return BergePathCertificate((), ())
    _, verts, eidx = _kernels.longest_path(*_path_arrays(H), int(budget))
    return BergePathCertificate(tuple(int(v) for v in verts), tuple(H.edges[int(i)] for i in eidx))


def shadow_path_order(H: Hypergraph) -> int:
    """Vertex count of a longest path in the 2-shadow of H.

    The core of a Berge path is a path of the shadow, so H is Berge-P_k-free
    whenever this is below k. The converse fails in general.
    """
    return _kernels.longest_graph_path(H.n, _shadow_adjacency(H))
