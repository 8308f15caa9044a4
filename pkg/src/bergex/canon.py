"""Canonical labelling by individualisation-refinement.

Vertices are split into ordered cells by label-free signatures (degree
profile of incident edges against the current cells, plus pair-codegree
profile), then cells are individualised one vertex at a time. Every leaf is a
labelling; the canonical one minimises the colex edge-mask of the relabelled
hypergraph.

Subtrees are pruned with automorphisms found along the way. The first-path
levels are searched deepest first, and every sibling of a first-path vertex
is either shown to be in its orbit (a new generator) or not, so the
generators form a strong generating set along the first path and the group
order is the product of the first-path orbit sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb, prod

from ._colex import edges_of
from .hypercore import Hypergraph

__all__ = ["Canon", "canonical_labeling", "canonical_code", "canonical_form", "orbits"]


@dataclass(frozen=True)
class Canon:
    code: int  # colex edge mask of the canonical relabelling
    labeling: tuple[int, ...]  # vertex -> canonical label
    generators: tuple[tuple[int, ...], ...]  # generate Aut(H); may be empty
    order: int  # |Aut(H)|

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """The whole group, identity first (closure of the generators)."""
        n = len(self.labeling)
        ident = tuple(range(n))
        seen = {ident}
        out = [ident]
        for g in out:
            for s in self.generators:
                h = tuple(s[g[v]] for v in range(n))
                if h not in seen:
                    seen.add(h)
                    out.append(h)
        return tuple(out)


def orbits(n: int, gens) -> list[int]:
    """Orbit representative (smallest member) of each point under ``gens``."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Refiner:
    def __init__(self, H: Hypergraph):
        self.n = H.n
        self.edges = H.edges
        self.inc = H.incidence
        cod: list[dict[int, int]] = [dict() for _ in range(H.n)]
        for e in H.edges:
            for a in e:
                for b in e:
                    if a != b:
                        cod[a][b] = cod[a].get(b, 0) + 1
        self.codeg = [tuple(d.items()) for d in cod]

    def refine(self, cells: list[list[int]]) -> list[list[int]]:
        n = self.n
        edges, inc, codeg = self.edges, self.inc, self.codeg
        cell_of = [0] * n
        while True:
            for i, c in enumerate(cells):
                for v in c:
                    cell_of[v] = i
            out: list[list[int]] = []
            for c in cells:
                if len(c) == 1:
                    out.append(c)
                    continue
                groups: dict[tuple, list[int]] = {}
                for v in c:
                    sig = (
                        tuple(sorted(tuple(sorted(cell_of[u] for u in edges[ei] if u != v)) for ei in inc[v])),
                        tuple(sorted((cell_of[u], k) for u, k in codeg[v])),
                    )
                    groups.setdefault(sig, []).append(v)
                if len(groups) == 1:
                    out.append(c)
                else:
                    for sig in sorted(groups):
                        out.append(groups[sig])
            if len(out) == len(cells):
                return out
            cells = out


def _leaf_code(edges, lab) -> int:
    code = 0
    for e in edges:
        t = sorted(lab[v] for v in e)
        rk = 0
        for i, x in enumerate(t):
            rk += comb(x, i + 1)
        code |= 1 << rk
    return code


class _Found(Exception):
    """Unwinds a sibling subtree once it is shown equivalent to the first path."""


class _Search:
    def __init__(self, H: Hypergraph):
        self.n = H.n
        self.edges = H.edges
        self.ref = _Refiner(H)
        self.gens: list[tuple[int, ...]] = []
        self.first_lab: tuple[int, ...] | None = None
        self.first_code = -1
        self.best_lab: tuple[int, ...] | None = None
        self.best_code = -1

    def _leaf(self, cells) -> tuple[int, ...]:
        lab = [0] * self.n
        for i, c in enumerate(cells):
            lab[c[0]] = i
        return tuple(lab)

    def _aut(self, lab_a, lab_b) -> tuple[int, ...]:
        # maps the vertex labelled x in lab_a to the one labelled x in lab_b
        inv = [0] * self.n
        for v, x in enumerate(lab_b):
            inv[x] = v
        return tuple(inv[lab_a[v]] for v in range(self.n))

    def _stab_orbits(self, prefix):
        fixed = [g for g in self.gens if all(g[v] == v for v in prefix)]
        return orbits(self.n, fixed)

    def first_path(self):
        """Leftmost path: list of (cells, target index) per internal level."""
        path = []
        cells = self.ref.refine([list(range(self.n))])
        while len(cells) < self.n:
            t = next(i for i, c in enumerate(cells) if len(c) > 1)
            path.append((cells, t))
            v = cells[t][0]
            rest = cells[t][1:]
            cells = self.ref.refine(cells[:t] + [[v], rest] + cells[t + 1:])
        lab = self._leaf(cells)
        self.first_lab = self.best_lab = lab
        self.first_code = self.best_code = _leaf_code(self.edges, lab)
        return path

    def explore(self, cells, prefix):
        cells = self.ref.refine(cells)
        if len(cells) == self.n:
            lab = self._leaf(cells)
            code = _leaf_code(self.edges, lab)
            if code == self.first_code:
                self.gens.append(self._aut(self.first_lab, lab))
                raise _Found
            if code == self.best_code:
                self.gens.append(self._aut(self.best_lab, lab))
            elif code < self.best_code:
                self.best_code, self.best_lab = code, lab
            return
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[t]
        done: list[int] = []
        for v in target:
            orb = self._stab_orbits(prefix)
            if any(orb[v] == orb[u] for u in done):
                continue
            done.append(v)
            rest = [w for w in target if w != v]
            self.explore(cells[:t] + [[v], rest] + cells[t + 1:], prefix + (v,))

    def run(self) -> Canon:
        path = self.first_path()
        prefixes = []
        pre: tuple[int, ...] = ()
        for cells, t in path:
            prefixes.append(pre)
            pre = pre + (cells[t][0],)
        sizes = []
        for d in range(len(path) - 1, -1, -1):
            cells, t = path[d]
            target = cells[t]
            v0 = target[0]
            prefix = prefixes[d]
            for w in target[1:]:
                orb = self._stab_orbits(prefix)
                if orb[w] == orb[v0] or any(orb[w] == orb[u] for u in target[: target.index(w)] if orb[u] != orb[v0]):
                    continue
                rest = [x for x in target if x != w]
                try:
                    self.explore(cells[:t] + [[w], rest] + cells[t + 1:], prefix + (w,))
                except _Found:
                    pass
            orb = self._stab_orbits(prefix)
            sizes.append(sum(1 for x in target if orb[x] == orb[v0]))
        return Canon(self.best_code, self.best_lab, tuple(self.gens), prod(sizes))


def canonical_labeling(H: Hypergraph) -> Canon:
    """Canonical labelling, generators and order of Aut(H)."""
    if H.n == 0:
        return Canon(0, (), (), 1)
    return _Search(H).run()


def canonical_code(H: Hypergraph) -> int:
    return canonical_labeling(H).code


def canonical_form(H: Hypergraph) -> Hypergraph:
    """Isomorphism-invariant relabelling of ``H``."""
    return Hypergraph(H.n, H.r, edges_of(canonical_code(H), H.n, H.r))
