"""Berge-F containment with certificates, and the red-blue decomposition.

Core embeddings of F are grown one vertex at a time. Each time both ends of
an F-edge are placed, the new core edge is matched to a hyperedge holding its
image pair by an augmenting path; a failed augmentation means Hall's
condition already fails on the placed core edges, so the branch is dead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .hypercore import Hypergraph, ParameterError, shadow

__all__ = [
    "BergeCertificate",
    "NotBergeFreeError",
    "RedBlueGraph",
    "contains_berge",
    "is_berge_free",
    "berge_copy_through",
    "verify_certificate",
    "max_bipartite_matching",
    "red_blue_decompose",
]

RED = "red"
BLUE = "blue"


@dataclass(frozen=True)
class BergeCertificate:
    """Core embedding plus an injective F-edge -> hyperedge assignment.

    ``core_map[u]`` is the image of F-vertex ``u``; ``assignment[i]`` is the
    hyperedge used for ``core[i]`` (the i-th edge of F).
    """

    core: tuple[tuple[int, int], ...]
    core_map: tuple[int, ...]
    assignment: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "core": [list(e) for e in self.core],
            "map": {str(u): x for u, x in enumerate(self.core_map)},
            "assign": [[i, list(h)] for i, h in enumerate(self.assignment)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "BergeCertificate":
        core = tuple(tuple(e) for e in d["core"])
        cmap = d["map"]
        core_map = tuple(cmap[str(u)] for u in range(len(cmap)))
        assign = dict((i, tuple(h)) for i, h in d["assign"])
        return cls(core, core_map, tuple(assign[i] for i in range(len(core))))


class NotBergeFreeError(ValueError):
    """The input contains a Berge copy of the forbidden graph."""

    def __init__(self, certificate: BergeCertificate):
        self.certificate = certificate
        super().__init__(f"hypergraph contains a Berge copy: {certificate.to_json()}")


def verify_certificate(H: Hypergraph, F: Hypergraph, cert: BergeCertificate) -> bool:
    """Independent validity check of a certificate against H and F."""
    if tuple(cert.core) != tuple(F.edges) or len(cert.core_map) != F.n:
        return False
    if len(set(cert.core_map)) != F.n or any(not 0 <= x < H.n for x in cert.core_map):
        return False
    if len(cert.assignment) != F.m or len(set(cert.assignment)) != F.m:
        return False
    for (u, v), h in zip(F.edges, cert.assignment):
        if tuple(h) not in H.edge_set:
            return False
        if cert.core_map[u] not in h or cert.core_map[v] not in h:
            return False
    return True


def max_bipartite_matching(adjacency: Sequence[Sequence[int]], n_right: int | None = None) -> list[tuple[int, int]]:
    """Maximum matching as sorted ``(left, right)`` pairs.

    Left vertices are augmented in index order and right neighbours are
    tried in ascending order, so the result is deterministic.
    """
    L = len(adjacency)
    if n_right is None:
        n_right = 1 + max((j for row in adjacency for j in row), default=-1)
    if L == 0 or n_right == 0:
        return []
    adj = np.zeros((L, n_right), dtype=np.bool_)
    for i, row in enumerate(adjacency):
        for j in row:
            adj[i, j] = True
    match = _kernels.max_matching(adj)
    return [(i, int(j)) for i, j in enumerate(match) if j >= 0]


# -- search -------------------------------------------------------------------

class _Host:
    """Pair -> hyperedge index lists and shadow adjacency of H."""

    __slots__ = ("H", "pair_edges", "nbrs", "sdeg")

    def __init__(self, H: Hypergraph):
        self.H = H
        pe: dict[tuple[int, int], list[int]] = {}
        for i, e in enumerate(H.edges):
            for a in range(len(e)):
                for b in range(a + 1, len(e)):
                    pe.setdefault((e[a], e[b]), []).append(i)
        self.pair_edges = pe
        nb = [set() for _ in range(H.n)]
        for a, b in pe:
            nb[a].add(b)
            nb[b].add(a)
        self.nbrs = nb
        self.sdeg = [len(x) for x in nb]

    def edges_of_pair(self, x: int, y: int) -> list[int]:
        return self.pair_edges.get((x, y) if x < y else (y, x), ())


def _check_pattern(F: Hypergraph):
    if F.r != 2:
        raise ParameterError("forbidden pattern must be a graph (uniformity 2)")
    if F.m == 0:
        raise ParameterError("forbidden graph must have at least one edge")


def _fast_order(F: Hypergraph, first: Sequence[int] = ()) -> list[int]:
    """Connectivity-respecting placement order, high degree first."""
    fdeg = F.degrees
    nb = [set() for _ in range(F.n)]
    for u, v in F.edges:
        nb[u].add(v)
        nb[v].add(u)
    order = list(first)
    placed = set(order)
    while len(order) < F.n:
        best = max(
            (u for u in range(F.n) if u not in placed),
            key=lambda u: (len(nb[u] & placed), fdeg[u], -u),
        )
        order.append(best)
        placed.add(best)
    return order


class _Search:
    def __init__(self, host: _Host, F: Hypergraph, order: Sequence[int], lexmin: bool):
        self.host = host
        self.F = F
        self.order = list(order)
        self.lexmin = lexmin
        pos = {u: i for i, u in enumerate(self.order)}
        # F-edges that close when order[i] is placed, as (edge index, other end)
        self.closing: list[list[tuple[int, int]]] = [[] for _ in self.order]
        self.back_nbrs: list[list[int]] = [[] for _ in self.order]
        for idx, (u, v) in enumerate(F.edges):
            a, b = (u, v) if pos[u] > pos[v] else (v, u)
            self.closing[pos[a]].append((idx, b))
            self.back_nbrs[pos[a]].append(b)
        self.fdeg = F.degrees
        H = host.H
        if lexmin:
            self.all_vertices = list(range(H.n))
        else:
            self.all_vertices = sorted(range(H.n), key=lambda x: (-H.degrees[x], x))

    def run(self, prefix: Mapping[int, int] | None = None):
        """First complete embedding (as a core map) admitting a full matching."""
        cmap: dict[int, int] = {}
        used: set[int] = set()
        # core edge -> hyperedge, hyperedge -> core edge
        match_c: dict[int, int] = {}
        match_h: dict[int, int] = {}
        return self._place(0, cmap, used, match_c, match_h, dict(prefix or {}))

    def _augment(self, c: int, cmap, match_c, match_h) -> bool:
        seen: set[int] = set()
        F = self.F

        def attempt(ce: int) -> bool:
            u, v = F.edges[ce]
            for h in self.host.edges_of_pair(cmap[u], cmap[v]):
                if h in seen:
                    continue
                seen.add(h)
                if h not in match_h or attempt(match_h[h]):
                    match_h[h] = ce
                    match_c[ce] = h
                    return True
            return False

        return attempt(c)

    def _place(self, i, cmap, used, match_c, match_h, prefix):
        if i == len(self.order):
            return dict(cmap)
        u = self.order[i]
        back = self.back_nbrs[i]
        if u in prefix:
            cands = [prefix[u]]
        elif back:
            common = set(self.host.nbrs[cmap[back[0]]])
            for w in back[1:]:
                common &= self.host.nbrs[cmap[w]]
            cands = sorted(common) if self.lexmin else [x for x in self.all_vertices if x in common]
        else:
            cands = self.all_vertices
        need = self.fdeg[u]
        sdeg = self.host.sdeg
        for x in cands:
            if x in used or sdeg[x] < need:
                continue
            if back and any(x not in self.host.nbrs[cmap[w]] for w in back):
                continue
            cmap[u] = x
            used.add(x)
            mc, mh = dict(match_c), dict(match_h)
            ok = True
            for ce, _ in self.closing[i]:
                if not self._augment(ce, cmap, mc, mh):
                    ok = False
                    break
            if ok:
                res = self._place(i + 1, cmap, used, mc, mh, prefix)
                if res is not None:
                    return res
            del cmap[u]
            used.discard(x)
        return None


def _lexmin_assignment(host: _Host, F: Hypergraph, cmap: Mapping[int, int]) -> tuple[tuple[int, ...], ...]:
    H = host.H
    options = [host.edges_of_pair(cmap[u], cmap[v]) for u, v in F.edges]
    chosen: list[int] = []
    for i in range(F.m):
        for h in options[i]:
            if h in chosen:
                continue
            rest = [[x for x in options[j] if x not in chosen and x != h] for j in range(i + 1, F.m)]
            if len(max_bipartite_matching(rest, H.m)) == len(rest):
                chosen.append(h)
                break
        else:  # pragma: no cover - cmap came from a feasible search
            raise AssertionError("core map without a matching")
    return tuple(H.edges[h] for h in chosen)


def contains_berge(H: Hypergraph, F: Hypergraph) -> BergeCertificate | None:
    """Certificate of a Berge copy of ``F`` in ``H``, or None.

    The certificate returned is the lexicographically smallest by core map
    (F-vertex order), then by assignment (F-edge order).
    """
    _check_pattern(F)
    if H.m < F.m or H.n < F.n:
        return None
    host = _Host(H)
    cmap = _Search(host, F, range(F.n), lexmin=True).run()
    if cmap is None:
        return None
    core_map = tuple(cmap[u] for u in range(F.n))
    return BergeCertificate(tuple(F.edges), core_map, _lexmin_assignment(host, F, cmap))


def is_berge_free(H: Hypergraph, F: Hypergraph) -> bool:
    _check_pattern(F)
    if H.m < F.m or H.n < F.n:
        return True
    return _Search(_Host(H), F, _fast_order(F), lexmin=False).run() is None


def berge_copy_through(H: Hypergraph, F: Hypergraph, edge: Sequence[int]) -> bool:
    """Whether H has a Berge copy of F whose core has an edge inside ``edge``.

    Every Berge copy that uses the hyperedge ``edge`` qualifies, so when
    ``H - edge`` is Berge-F-free this decides whether H is.
    """
    _check_pattern(F)
    if H.m < F.m or H.n < F.n:
        return False
    host = _Host(H)
    e = tuple(edge)
    tried = set()
    for u, v in F.edges:
        order = _fast_order(F, (u, v))
        search = _Search(host, F, order, lexmin=False)
        for x in e:
            for y in e:
                if x == y or (u, v, x, y) in tried:
                    continue
                tried.add((u, v, x, y))
                if search.run({u: x, v: y}) is not None:
                    return True
    return False


# -- red-blue decomposition ---------------------------------------------------

@dataclass(frozen=True)
class RedBlueGraph:
    graph: Hypergraph
    color: Mapping[tuple[int, int], str] = field(default_factory=dict)

    @property
    def red(self) -> Hypergraph:
        return self.graph.with_edges(e for e in self.graph.edges if self.color[e] == RED)

    @property
    def blue(self) -> Hypergraph:
        return self.graph.with_edges(e for e in self.graph.edges if self.color[e] == BLUE)

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [[list(e), self.color[e]] for e in self.graph.edges],
        }


def red_blue_decompose(H: Hypergraph, F: Hypergraph) -> RedBlueGraph:
    """Two-coloured F-free graph G with e(H) <= e(G_blue) + N(K_r, G_red).

    A = pairs of the 2-shadow, B = hyperedges, joined by containment. After a
    maximum matching M, the A-vertices reachable by alternating paths from
    uncovered hyperedges are red; the remaining covered A-vertices are blue.
    """
    from .census import count_s_cliques

    cert = contains_berge(H, F)
    if cert is not None:
        raise NotBergeFreeError(cert)
    if H.m == 0:
        return RedBlueGraph(Hypergraph(H.n, 2), {})
    pairs = list(shadow(H, 2).edges) if H.r > 2 else list(H.edges)
    pidx = {p: i for i, p in enumerate(pairs)}
    b_nbrs: list[list[int]] = [[] for _ in H.edges]
    a_nbrs: list[list[int]] = [[] for _ in pairs]
    for j, e in enumerate(H.edges):
        for a in range(len(e)):
            for b in range(a + 1, len(e)):
                i = pidx[(e[a], e[b])]
                a_nbrs[i].append(j)
                b_nbrs[j].append(i)
    match = max_bipartite_matching(a_nbrs, H.m)
    a_to_b = dict(match)
    b_to_a = {j: i for i, j in match}
    b1 = [j for j in range(H.m) if j not in b_to_a]
    # alternating search: B -> A along non-matching edges, A -> B along M
    red_set: set[int] = set()
    seen_b = set(b1)
    stack = list(b1)
    while stack:
        j = stack.pop()
        for i in b_nbrs[j]:
            if b_to_a.get(j) == i or i in red_set:
                continue
            red_set.add(i)
            nj = a_to_b.get(i)
            if nj is None:  # pragma: no cover - would be an augmenting path
                raise AssertionError("matching is not maximum")
            if nj not in seen_b:
                seen_b.add(nj)
                stack.append(nj)
    covered = sorted(a_to_b)
    color = {pairs[i]: (RED if i in red_set else BLUE) for i in covered}
    G = Hypergraph(H.n, 2, [pairs[i] for i in covered])
    rb = RedBlueGraph(G, color)
    if not is_berge_free(G, F):
        raise AssertionError("red-blue graph contains F")
    red = rb.red
    n_red = count_s_cliques(red, H.r) if H.r > 2 else red.m
    if H.m > rb.blue.m + n_red:
        raise AssertionError("red-blue edge bound violated")
    return rb
