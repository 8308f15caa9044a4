"""Hypergraph value type, shadow/expansion operators and named constructions.

Vertices are dense integer ids ``0..n-1``. Every edge is stored as a sorted
tuple and the edge list itself is kept sorted, so two hypergraphs with the
same edge set compare (and hash) equal.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

VertexSet = tuple[int, ...]
Edge = tuple[int, ...]

__all__ = [
    "ParameterError",
    "ParseError",
    "Hypergraph",
    "VertexSet",
    "complete",
    "shadow",
    "expansion",
    "turan_graph",
    "turan_hypergraph",
    "clique_expansion",
    "star_path_construction",
    "star_path_formula",
    "star_clique_formula",
    "components",
    "is_connected",
    "degree",
    "read_hypergraph",
    "write_hypergraph",
    "named_graph",
    "named_hypergraph",
]


class ParameterError(ValueError):
    """An argument is outside the operation's domain."""


class ParseError(ValueError):
    """Malformed hypergraph text. ``lineno`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


@dataclass(frozen=True)
class Hypergraph:
    """An ``r``-uniform hypergraph on vertices ``0..n-1``.

    ``edges`` may be passed as any iterable of vertex iterables; they are
    validated and normalised on construction.
    """

    n: int
    r: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if self.r < 2:
            raise ParameterError(f"uniformity must be >= 2, got {self.r}")
        if self.n < 0:
            raise ParameterError(f"vertex count must be >= 0, got {self.n}")
        norm = []
        for e in self.edges:
            t = tuple(sorted(int(x) for x in e))
            if len(t) != self.r:
                raise ParameterError(f"edge {t} does not have {self.r} vertices")
            if len(set(t)) != self.r:
                raise ParameterError(f"edge {t} repeats a vertex")
            if t[0] < 0 or t[-1] >= self.n:
                raise ParameterError(f"edge {t} has a vertex outside 0..{self.n - 1}")
            norm.append(t)
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ParameterError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(norm))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, the indices of the edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self.edge_set

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return Hypergraph(self.n, self.r, tuple(edges))

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Image under the vertex map ``v -> perm[v]``."""
        return Hypergraph(self.n, self.r, [[perm[v] for v in e] for e in self.edges])

    def induced(self, vertices: Iterable[int]) -> "Hypergraph":
        """Edges inside ``vertices``, on the same vertex ids."""
        keep = set(vertices)
        return Hypergraph(self.n, self.r, [e for e in self.edges if keep.issuperset(e)])

    def delete_vertices(self, vertices: Iterable[int]) -> "Hypergraph":
        """Drop every edge meeting ``vertices``; the vertex ids stay."""
        drop = set(vertices)
        return Hypergraph(self.n, self.r, [e for e in self.edges if drop.isdisjoint(e)])

    def non_isolated(self) -> VertexSet:
        return tuple(v for v in range(self.n) if self.degrees[v])

    def __str__(self) -> str:
        return write_hypergraph(self)


def complete(n: int, r: int) -> Hypergraph:
    """K_n^r: every r-subset of ``0..n-1``."""
    return Hypergraph(n, r, itertools.combinations(range(n), r))


def shadow(G: Hypergraph, r: int) -> Hypergraph:
    """The r-shadow: all r-sets contained in some edge of ``G``."""
    if not 2 <= r <= G.r:
        raise ParameterError(f"shadow uniformity must lie in [2, {G.r}], got {r}")
    if r == G.r:
        return G
    sets = {c for e in G.edges for c in itertools.combinations(e, r)}
    return Hypergraph(G.n, r, sets)


def expansion(F: Hypergraph, r: int) -> Hypergraph:
    """Add ``r-2`` fresh vertices to every edge of the graph ``F``.

    Fresh vertices are numbered from ``F.n`` upwards, in edge order.
    """
    if F.r != 2:
        raise ParameterError("expansion takes a graph (uniformity 2)")
    if r < 3:
        raise ParameterError(f"expansion needs r >= 3, got {r}")
    nxt = F.n
    edges = []
    for e in F.edges:
        edges.append(e + tuple(range(nxt, nxt + r - 2)))
        nxt += r - 2
    return Hypergraph(nxt, r, edges)


def _balanced_parts(n: int, parts: int) -> list[list[int]]:
    # contiguous blocks, larger parts first
    q, rem = divmod(n, parts)
    out, start = [], 0
    for i in range(parts):
        size = q + (1 if i < rem else 0)
        out.append(list(range(start, start + size)))
        start += size
    return out


def turan_graph(n: int, k: int) -> Hypergraph:
    """T(n, k-1): the balanced complete (k-1)-partite graph on n vertices."""
    if k < 2:
        raise ParameterError(f"turan_graph needs k >= 2, got {k}")
    if n < 1:
        raise ParameterError(f"turan_graph needs n >= 1, got {n}")
    part = [0] * n
    for i, p in enumerate(_balanced_parts(n, k - 1)):
        for v in p:
            part[v] = i
    return Hypergraph(n, 2, [(u, v) for u, v in itertools.combinations(range(n), 2) if part[u] != part[v]])


def clique_expansion(G: Hypergraph, r: int) -> Hypergraph:
    """The r-graph whose edges are the r-cliques of the graph ``G``."""
    if G.r != 2:
        raise ParameterError("clique_expansion takes a graph (uniformity 2)")
    if r < 2:
        raise ParameterError(f"clique size must be >= 2, got {r}")
    if r == 2:
        return G
    nbrs = [set() for _ in range(G.n)]
    for u, v in G.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    out = []

    def extend(clique: list[int], cand: list[int]):
        if len(clique) == r:
            out.append(tuple(clique))
            return
        for i, v in enumerate(cand):
            extend(clique + [v], [w for w in cand[i + 1:] if w in nbrs[v]])

    extend([], list(range(G.n)))
    return Hypergraph(G.n, r, out)


def turan_hypergraph(n: int, k: int, r: int) -> Hypergraph:
    """T_r(n, k-1): the r-cliques of T(n, k-1)."""
    return clique_expansion(turan_graph(n, k), r)


def star_path_construction(n: int, r: int, k: int) -> Hypergraph:
    """Connected Berge-P_k-free r-graph with many edges.

    S = {0, .., floor(k/2)-2}; every r-set with at least r-1 vertices in S is
    an edge. For odd k, u1 = floor(k/2)-1 and u2 = floor(k/2) are joined
    with every (r-2)-subset of S as well.
    """
    if r < 2:
        raise ParameterError(f"uniformity must be >= 2, got {r}")
    if k < 2 * r + 2:
        raise ParameterError(f"star_path_construction needs k >= 2r+2, got k={k}, r={r}")
    if n < k:
        raise ParameterError(f"star_path_construction needs n >= k, got n={n}, k={k}")
    h = k // 2
    S = list(range(h - 1))
    edges = set()
    for core in itertools.combinations(S, r - 1):
        for x in range(n):
            if x not in core:
                edges.add(tuple(sorted(core + (x,))))
    if k % 2:
        u1, u2 = h - 1, h
        for core in itertools.combinations(S, r - 2):
            edges.add(tuple(sorted(core + (u1, u2))))
    return Hypergraph(n, r, edges)


def star_path_formula(n: int, r: int, k: int) -> int:
    """C(floor(k/2)-1, r-1)(n - ceil(k/2)) + C(ceil(k/2), r)."""
    return comb(k // 2 - 1, r - 1) * (n - (k + 1) // 2) + comb((k + 1) // 2, r)


def star_clique_formula(n: int, s: int, k: int) -> int:
    """Same shape as :func:`star_path_formula`, counting s-cliques."""
    return star_path_formula(n, s, k)


def components(H: Hypergraph) -> list[VertexSet]:
    """Incidence-connected classes; isolated vertices are singletons.

    Sorted by smallest member.
    """
    parent = list(range(H.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in H.edges:
        a = find(e[0])
        for v in e[1:]:
            b = find(v)
            if a != b:
                parent[b] = a
    groups: dict[int, list[int]] = {}
    for v in range(H.n):
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def is_connected(H: Hypergraph) -> bool:
    """Spanning connectivity: one component covering all n vertices."""
    return H.n >= 1 and len(components(H)) == 1


def degree(H: Hypergraph, v: int) -> int:
    if not 0 <= v < H.n:
        raise ParameterError(f"vertex {v} outside 0..{H.n - 1}")
    return H.degrees[v]


# -- text format --------------------------------------------------------------

def read_hypergraph(text: str) -> Hypergraph:
    """Parse ``n r m`` followed by m edge lines (strictly increasing ids)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("missing header 'n r m'")
    lineno, header = rows[0]
    try:
        n, r, m = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(f"malformed header {header!r}, expected 'n r m'", lineno) from None
    if n < 0 or r < 2 or m < 0:
        raise ParseError(f"invalid header values n={n} r={r} m={m}", lineno)
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else lineno)
        raise ParseError(f"header announces {m} edges, found {len(body)}", where)
    seen = set()
    edges = []
    for lineno, line in body:
        try:
            e = tuple(int(x) for x in line.split())
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if len(e) != r:
            raise ParseError(f"edge has {len(e)} vertices, expected {r}", lineno)
        if len(set(e)) != r:
            raise ParseError("edge repeats a vertex", lineno)
        if any(b <= a for a, b in zip(e, e[1:])):
            raise ParseError("edge vertices must be strictly increasing", lineno)
        if e[0] < 0 or e[-1] >= n:
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        if e in seen:
            raise ParseError(f"duplicate edge {' '.join(map(str, e))}", lineno)
        seen.add(e)
        edges.append(e)
    return Hypergraph(n, r, edges)


def write_hypergraph(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.r} {H.m}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


# -- named objects ------------------------------------------------------------

_GRAPH_RE = re.compile(r"^([PKSCM])(\d+)$")
_HYPER_RE = re.compile(r"^K(\d+)\^(\d+)(-?)$")


def named_graph(name: str) -> Hypergraph:
    """Small graphs by name: ``Pk`` (path on k vertices), ``Kk``, ``Sl`` (star
    with l edges), ``Ck`` (cycle), ``Mk`` (k disjoint edges)."""
    m = _GRAPH_RE.match(name.strip())
    if not m:
        raise ParameterError(f"unknown graph name {name!r}")
    kind, k = m.group(1), int(m.group(2))
    if kind == "P":
        if k < 1:
            raise ParameterError("P needs k >= 1")
        return Hypergraph(k, 2, [(i, i + 1) for i in range(k - 1)])
    if kind == "K":
        return complete(k, 2)
    if kind == "S":
        return Hypergraph(k + 1, 2, [(0, i) for i in range(1, k + 1)])
    if kind == "C":
        if k < 3:
            raise ParameterError("C needs k >= 3")
        return Hypergraph(k, 2, [(i, (i + 1) % k) for i in range(k)])
    return Hypergraph(2 * k, 2, [(2 * i, 2 * i + 1) for i in range(k)])


def named_hypergraph(name: str) -> Hypergraph:
    """Graph names plus ``Ks^r`` (complete) and ``Ks^r-`` (one edge removed)."""
    m = _HYPER_RE.match(name.strip())
    if not m:
        return named_graph(name)
    s, r, minus = int(m.group(1)), int(m.group(2)), m.group(3)
    H = complete(s, r)
    if minus:
        if not H.edges:
            raise ParameterError(f"{name}: nothing to remove")
        H = H.with_edges(H.edges[:-1])
    return H
