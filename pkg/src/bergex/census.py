"""Exact copy counts: N(H, G), s-cliques of r-graphs, gamma and |Aut|."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._colex import binom_table, rank
from .canon import canonical_code, canonical_labeling
from .hypercore import Hypergraph, ParameterError, clique_expansion, shadow

__all__ = [
    "DEFAULT_PATTERN_BOUND",
    "EmbeddingCount",
    "count_copies",
    "find_copy",
    "iter_embeddings",
    "count_s_cliques",
    "iter_s_cliques",
    "clique_hypergraph",
    "gamma",
    "automorphism_count",
]

DEFAULT_PATTERN_BOUND = 8


@dataclass(frozen=True)
class EmbeddingCount:
    injective_maps: int
    automorphisms: int
    copies: int

    def to_dict(self) -> dict:
        return {
            "injective_maps": self.injective_maps,
            "automorphisms": self.automorphisms,
            "copies": self.copies,
        }


def automorphism_count(H: Hypergraph) -> int:
    return canonical_labeling(H).order


def _pattern_order(P: Hypergraph) -> list[int]:
    """Non-isolated vertices, each component contiguous, BFS inside it."""
    order: list[int] = []
    seen: set[int] = set()
    nb = [set() for _ in range(P.n)]
    for e in P.edges:
        for a in e:
            nb[a].update(x for x in e if x != a)
    for start in sorted(range(P.n), key=lambda v: -P.degrees[v]):
        if start in seen or not P.degrees[start]:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(nb[v], key=lambda w: (-P.degrees[w], w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


class _Embedder:
    """Backtracking over injective edge-preserving vertex maps P -> G."""

    def __init__(self, P: Hypergraph, G: Hypergraph):
        if P.r != G.r:
            raise ParameterError(f"uniformity mismatch: pattern {P.r}, host {G.r}")
        self.P, self.G = P, G
        self.order = _pattern_order(P)
        pos = {u: i for i, u in enumerate(self.order)}
        self.closing: list[list[tuple[int, ...]]] = [[] for _ in self.order]
        self.anchor: list[int | None] = [None] * len(self.order)
        for e in P.edges:
            last = max(e, key=lambda u: pos[u])
            self.closing[pos[last]].append(e)
        pnb = [set() for _ in range(P.n)]
        for e in P.edges:
            for a in e:
                pnb[a].update(x for x in e if x != a)
        for i, u in enumerate(self.order):
            earlier = [w for w in pnb[u] if pos[w] < i]
            if earlier:
                self.anchor[i] = min(earlier, key=lambda w: pos[w])
        gnb = [set() for _ in range(G.n)]
        for e in G.edges:
            for a in e:
                gnb[a].update(x for x in e if x != a)
        self.gnb = gnb
        self.gset = G.edge_set
        self.isolated = P.n - len(self.order)

    def maps(self, fixed: dict[int, int] | None = None):
        """Yield partial maps over the non-isolated pattern vertices."""
        fixed = fixed or {}
        cmap: dict[int, int] = {}
        used: set[int] = set()
        order, closing, anchor = self.order, self.closing, self.anchor
        gset, gnb, Gn = self.gset, self.gnb, self.G.n

        def rec(i):
            if i == len(order):
                yield cmap
                return
            u = order[i]
            if u in fixed:
                cands = (fixed[u],)
            elif anchor[i] is not None:
                cands = sorted(gnb[cmap[anchor[i]]])
            else:
                cands = range(Gn)
            for x in cands:
                if x in used:
                    continue
                cmap[u] = x
                ok = True
                for e in closing[i]:
                    if tuple(sorted(cmap[w] for w in e)) not in gset:
                        ok = False
                        break
                if ok:
                    used.add(x)
                    yield from rec(i + 1)
                    used.discard(x)
                del cmap[u]

        yield from rec(0)


def _falling(a: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= a - i
    return out


def iter_embeddings(P: Hypergraph, G: Hypergraph):
    """Injective edge-preserving maps of the non-isolated vertices of P."""
    yield from _Embedder(P, G).maps()


def count_copies(P: Hypergraph, G: Hypergraph, bound: int = DEFAULT_PATTERN_BOUND) -> EmbeddingCount:
    """Number of subhypergraphs of G isomorphic to P.

    Counted as injective edge-preserving vertex maps divided by |Aut(P)|;
    isolated vertices of P are placed on any unused vertices of G.
    """
    if P.r != G.r:
        raise ParameterError(f"uniformity mismatch: pattern {P.r}, host {G.r}")
    if P.n > bound:
        raise ParameterError(f"pattern has {P.n} vertices, bound is {bound}")
    emb = _Embedder(P, G)
    placed = len(emb.order)
    partial = sum(1 for _ in emb.maps())
    maps = partial * _falling(G.n - placed, emb.isolated) if G.n >= P.n else 0
    aut = automorphism_count(P)
    q, rem = divmod(maps, aut)
    if rem:  # pragma: no cover
        raise AssertionError("embedding count not divisible by |Aut|")
    return EmbeddingCount(maps, aut, q)


def find_copy(P: Hypergraph, G: Hypergraph, through=None) -> dict[int, int] | None:
    """Some embedding of P into G, optionally mapping an edge of P onto the
    G-edge ``through``."""
    if P.n > G.n:
        return None
    emb = _Embedder(P, G)
    if through is None:
        for m in emb.maps():
            return dict(m)
        return None
    target = tuple(through)
    for pe in P.edges:
        for img in itertools.permutations(target):
            fixed = dict(zip(pe, img))
            for m in emb.maps(fixed):
                return dict(m)
    return None


def iter_s_cliques(H: Hypergraph, s: int):
    """Sorted s-sets of V(H) all of whose r-subsets are edges."""
    r = H.r
    if s < r:
        raise ParameterError(f"clique size {s} below uniformity {r}")
    E = H.edge_set

    def extend(cur, cands):
        if len(cur) == s:
            yield tuple(cur)
            return
        for i, v in enumerate(cands):
            nxt = cur + [v]
            if len(nxt) >= r and any(sub + (v,) not in E for sub in itertools.combinations(cur, r - 1)):
                continue
            yield from extend(nxt, cands[i + 1:])

    yield from extend([], list(range(H.n)))


def count_s_cliques(H: Hypergraph, s: int) -> int:
    """Number of copies of K_s^r in the r-graph H."""
    r = H.r
    if s < r:
        raise ParameterError(f"clique size {s} below uniformity {r}")
    if s == r:
        return H.m
    if s > H.n or H.m == 0:
        return 0
    binom = binom_table(H.n, r)
    table = np.zeros(int(binom[H.n, r]), dtype=np.bool_)
    for e in H.edges:
        table[rank(e)] = True
    return _kernels.count_cliques(H.n, r, s, table, binom)


def clique_hypergraph(H: Hypergraph, s: int) -> Hypergraph:
    """The s-graph on V(H) whose edges are the s-cliques of H."""
    if s <= H.r:
        raise ParameterError(f"clique size must exceed uniformity {H.r}, got {s}")
    return Hypergraph(H.n, s, iter_s_cliques(H, s))


def gamma(H: Hypergraph, bound: int = DEFAULT_PATTERN_BOUND) -> int:
    """Copies of H whose 2-shadow is exactly one fixed copy of that shadow."""
    if H.n > bound:
        raise ParameterError(f"pattern has {H.n} vertices, bound is {bound}")
    if H.r == 2:
        return 1
    D = shadow(H, 2)
    pool = clique_expansion(D, H.r).edges
    target = canonical_code(H)
    count = 0
    for sub in itertools.combinations(pool, H.m):
        cand = Hypergraph(H.n, H.r, sub)
        if shadow(cand, 2).edge_set != D.edge_set:
            continue
        if canonical_code(cand) == target:
            count += 1
    return count
