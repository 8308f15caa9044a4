"""Brute-force reference implementations used only by the tests.

Everything here works from definitions with itertools and nothing else from
the package except the Hypergraph container, so a bug in the fast code cannot
hide behind a shared helper.
"""

import itertools
from math import comb

from bergex.hypercore import Hypergraph


def all_hypergraphs(n, r, max_edges=None):
    """Every labelled r-graph on n vertices (optionally capped in size)."""
    pool = list(itertools.combinations(range(n), r))
    top = len(pool) if max_edges is None else min(max_edges, len(pool))
    for m in range(top + 1):
        for sub in itertools.combinations(pool, m):
            yield Hypergraph(n, r, sub)


def naive_berge(H, F):
    """Certificate enumeration: injective core maps times ordered choices of
    distinct hyperedges. Returns (core map, hyperedge per F-edge) or None."""
    if F.n > H.n:
        return None
    hedges = [set(e) for e in H.edges]
    for img in itertools.permutations(range(H.n), F.n):
        pairs = [(img[u], img[v]) for u, v in F.edges]
        for pick in itertools.permutations(range(len(hedges)), F.m):
            if all(a in hedges[i] and b in hedges[i] for (a, b), i in zip(pairs, pick)):
                return img, [H.edges[i] for i in pick]
    return None


def brute_aut(H):
    E = H.edge_set
    return sum(
        1
        for p in itertools.permutations(range(H.n))
        if all(tuple(sorted(p[v] for v in e)) in E for e in H.edges)
    )


def brute_key(H):
    """Isomorphism invariant: lexicographically least relabelled edge list."""
    return min(
        tuple(sorted(tuple(sorted(p[v] for v in e)) for e in H.edges))
        for p in itertools.permutations(range(H.n))
    )


def brute_copies(P, G):
    """Distinct (vertex set, edge set) images of P under injective maps.
    Without isolated pattern vertices this is just the number of edge sets."""
    E = G.edge_set
    seen = set()
    for img in itertools.permutations(range(G.n), P.n):
        ims = frozenset(tuple(sorted(img[v] for v in e)) for e in P.edges)
        if ims <= E:
            seen.add((frozenset(img), ims))
    return len(seen)


def brute_injective_maps(P, G):
    E = G.edge_set
    return sum(
        1
        for img in itertools.permutations(range(G.n), P.n)
        if all(tuple(sorted(img[v] for v in e)) in E for e in P.edges)
    )


def brute_cliques(H, s):
    E = H.edge_set
    return sum(
        1
        for S in itertools.combinations(range(H.n), s)
        if all(t in E for t in itertools.combinations(S, H.r))
    )


def brute_shadow(H, r):
    return {t for e in H.edges for t in itertools.combinations(e, r)}


def brute_gamma(H):
    """Count r-graphs on the vertex set of H, with any r-sets as edges, whose
    2-shadow is exactly that of H and which are isomorphic to H."""
    D = brute_shadow(H, 2)
    key = brute_key(H)
    pool = list(itertools.combinations(range(H.n), H.r))
    out = 0
    for sub in itertools.combinations(pool, H.m):
        cand = Hypergraph(H.n, H.r, sub)
        if brute_shadow(cand, 2) == D and brute_key(cand) == key:
            out += 1
    return out


def brute_longest_path(H):
    """Longest Berge path length (in hyperedges) by trying every sequence."""
    best = 0
    edges = [set(e) for e in H.edges]

    def grow(path_v, used_e):
        nonlocal best
        best = max(best, len(used_e))
        last = path_v[-1]
        for i, e in enumerate(edges):
            if i in used_e or last not in e:
                continue
            for w in e:
                if w not in path_v:
                    grow(path_v + [w], used_e | {i})

    for v in range(H.n):
        grow([v], frozenset())
    return best


def brute_graph_path_vertices(n, edges):
    """Vertex count of a longest simple path of a graph."""
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    best = 1 if n else 0

    def go(path):
        nonlocal best
        best = max(best, len(path))
        for w in adj[path[-1]]:
            if w not in path:
                go(path + [w])

    for v in range(n):
        go([v])
    return best


def contains_subgraph(G, F):
    """Plain (non-Berge) copy of the graph F in the graph G."""
    E = G.edge_set
    for img in itertools.permutations(range(G.n), F.n):
        if all(tuple(sorted((img[a], img[b]))) in E for a, b in F.edges):
            return True
    return False


def pairwise_disjoint(H):
    seen = set()
    for e in H.edges:
        if seen.intersection(e):
            return False
        seen.update(e)
    return True


def max_disjoint_triples(n):
    """Largest family of pairwise disjoint 3-sets of range(n), by search."""
    pool = list(itertools.combinations(range(n), 3))
    best = 0
    for m in range(len(pool) + 1):
        if m * 3 > n:
            break
        if any(pairwise_disjoint(Hypergraph(n, 3, sub)) for sub in itertools.combinations(pool, m)):
            best = m
    return best


def star_path_brute_count(n, r, k):
    """Edges of the star-path construction counted from its description:
    r-sets with >= r-1 vertices in S, and for odd k the r-sets made of
    u1, u2 and r-2 vertices of S."""
    h = k // 2
    S = set(range(h - 1))
    u = {h - 1, h}
    count = 0
    for e in itertools.combinations(range(n), r):
        inside = len(S.intersection(e))
        if inside >= r - 1 or (k % 2 and u.issubset(e) and inside == r - 2):
            count += 1
    return count


def formula(n, r, k):
    return comb(k // 2 - 1, r - 1) * (n - (k + 1) // 2) + comb((k + 1) // 2, r)


def brute_path_from(H, start, cap):
    """Longest Berge path (in hyperedges) starting at ``start``, capped."""
    edges = [set(e) for e in H.edges]
    best = 0

    def grow(path_v, used_e):
        nonlocal best
        best = max(best, len(used_e))
        if best >= cap:
            return
        last = path_v[-1]
        for i, e in enumerate(edges):
            if i in used_e or last not in e:
                continue
            for w in e:
                if w not in path_v:
                    grow(path_v + [w], used_e | {i})

    grow([start], frozenset())
    return min(best, cap)
