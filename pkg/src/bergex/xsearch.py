"""Exact extremal numbers by exhaustive search over r-graphs on n vertices.

Edge sets are bitmasks over the C(n, r) possible edges in colex order. Two
engines are provided and must agree:

* ``naive``: DFS over labelled edge sets, adding edges in increasing index
  order. A set that violates the forbidden spec is never extended, which is
  sound because containing a Berge copy or a subhypergraph is monotone.
* ``canonical``: canonical augmentation. Each isomorphism class is reached
  from exactly one parent class, by adding an edge that lies in the
  automorphism orbit of the child's canonical deletion edge (the edge mapped
  to the highest colex position by the canonical labelling).

Both report the maximum objective value and, among maximisers, the witness
with the smallest canonical code.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import _kernels
from ._colex import edges_of, rank_map, rsets
from .bergematch import berge_copy_through, is_berge_free
from .canon import canonical_form, canonical_labeling
from .census import count_copies, count_s_cliques, find_copy
from .hypercore import Hypergraph, ParameterError, is_connected, write_hypergraph
from .pathstruct import longest_berge_path, shadow_path_order

__all__ = [
    "ResourceError",
    "ForbiddenSpec",
    "Objective",
    "ExtremalResult",
    "canonical_form",
    "extremal",
    "extremal_table",
    "free_hypergraphs",
    "satisfies",
    "results_to_csv",
    "results_to_json",
    "SIZE_GUARD_N",
    "SIZE_GUARD_EDGES",
]

SIZE_GUARD_N = 20
SIZE_GUARD_EDGES = 64
FAMILY_LIMIT = 200_000
ENGINES = ("naive", "canonical")


class ResourceError(RuntimeError):
    """A search exceeded its size guard or budget; ``partial`` holds the best
    result seen so far (a lower bound, not an extremal value)."""

    def __init__(self, message: str, partial: "ExtremalResult | None" = None):
        self.partial = partial
        super().__init__(message)


@dataclass(frozen=True)
class ForbiddenSpec:
    kind: str = "none"  # berge | subhypergraph | none
    pattern: Hypergraph | None = None
    description: str = "none"

    def __post_init__(self):
        if self.kind not in ("berge", "subhypergraph", "none"):
            raise ParameterError(f"unknown forbidden kind {self.kind!r}")
        if self.kind == "berge":
            if self.pattern is None or self.pattern.r != 2:
                raise ParameterError("berge forbids a graph")
            if self.pattern.m == 0:
                raise ParameterError("berge pattern needs at least one edge")
        if self.kind == "subhypergraph" and self.pattern is None:
            raise ParameterError("subhypergraph needs a pattern")

    @classmethod
    def berge(cls, F: Hypergraph, name: str | None = None) -> "ForbiddenSpec":
        return cls("berge", F, f"berge({name or _describe(F)})")

    @classmethod
    def subhypergraph(cls, X: Hypergraph, name: str | None = None) -> "ForbiddenSpec":
        return cls("subhypergraph", X, f"sub({name or _describe(X)})")

    @classmethod
    def none(cls) -> "ForbiddenSpec":
        return cls()


@dataclass(frozen=True)
class Objective:
    kind: str = "edges"  # edges | copies
    pattern: Hypergraph | None = None
    description: str = "edges"

    def __post_init__(self):
        if self.kind not in ("edges", "copies"):
            raise ParameterError(f"unknown objective kind {self.kind!r}")
        if self.kind == "copies" and self.pattern is None:
            raise ParameterError("copies objective needs a pattern")

    @classmethod
    def edges(cls) -> "Objective":
        return cls()

    @classmethod
    def copies(cls, P: Hypergraph, name: str | None = None) -> "Objective":
        return cls("copies", P, f"copies({name or _describe(P)})")


def _describe(H: Hypergraph) -> str:
    body = ";".join("-".join(map(str, e)) for e in H.edges)
    return f"n{H.n}r{H.r}:{body}"


@dataclass(frozen=True)
class ExtremalResult:
    value: int
    witness: Hypergraph
    explored: int
    mode: str
    n: int = 0
    r: int = 0
    forbidden: str = ""
    objective: str = ""
    connected: bool = False
    seconds: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "n": self.n,
            "r": self.r,
            "forbidden": self.forbidden,
            "objective": self.objective,
            "connected": self.connected,
            "value": self.value,
            "witness": write_hypergraph(self.witness),
            "engine": self.mode,
            "nodes": self.explored,
        }
        if timing:
            d["seconds"] = round(self.seconds, 6)
        return d


# -- predicates over masks ----------------------------------------------------

def _copy_family(P: Hypergraph, n: int, r: int, limit: int):
    """Distinct (vertex mask, edge mask) placements of P inside K_n^r, or
    None when there would be more than ``limit`` labelled maps."""
    if P.n > n:
        return []
    if comb(n, P.n) * _fact(P.n) > limit:
        return None
    idx = rank_map(n, r)
    out = set()
    for img in itertools.permutations(range(n), P.n):
        em = 0
        for e in P.edges:
            em |= 1 << idx[tuple(sorted(img[v] for v in e))]
        vm = 0
        for x in img:
            vm |= 1 << x
        out.add((vm, em))
    return sorted(out)


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _berge_family(F: Hypergraph, n: int, r: int, limit: int):
    """Edge masks of every r-uniform Berge copy of F on n vertices, or None
    when the family would exceed ``limit``."""
    if F.n > n or F.m > comb(n, r):
        return []
    maps = comb(n, F.n) * _fact(F.n)
    per_pair = comb(n - 2, r - 2)
    if maps > limit * 50 or maps * per_pair ** F.m > limit * 50:
        return None
    cores = set()
    for img in itertools.permutations(range(n), F.n):
        cores.add(frozenset(tuple(sorted((img[u], img[v]))) for u, v in F.edges))
    if len(cores) * per_pair ** F.m > limit:
        return None
    idx = rank_map(n, r)
    through: dict[tuple[int, int], list[int]] = {}
    for e in rsets(n, r):
        for p in itertools.combinations(e, 2):
            through.setdefault(p, []).append(idx[e])
    out = set()
    for core in cores:
        core = sorted(core)
        for pick in itertools.product(*(through[p] for p in core)):
            if len(set(pick)) != len(pick):
                continue
            m = 0
            for i in pick:
                m |= 1 << i
            out.add(m)
    return sorted(out)


def _path_order(F: Hypergraph) -> int:
    """k when F is the path P_k on all of its vertices, else 0."""
    if F.m != F.n - 1 or F.m == 0 or max(F.degrees) > 2 or not is_connected(F):
        return 0
    return F.n


class _MaskSet:
    """Masks grouped by the edges they contain, for incremental tests."""

    def __init__(self, masks, N: int):
        self.N = N
        self.small = N <= 64
        groups: list[list[int]] = [[] for _ in range(N)]
        for m in masks:
            x = m
            i = 0
            while x:
                if x & 1:
                    groups[i].append(m)
                x >>= 1
                i += 1
        if self.small:
            self.by_edge = [np.array(g, dtype=np.uint64) for g in groups]
            self.all = np.array(sorted(set(masks)), dtype=np.uint64)
        else:
            self.by_edge = groups
            self.all = sorted(set(masks))

    def any_through(self, state: int, j: int) -> bool:
        g = self.by_edge[j]
        if self.small:
            return _kernels.any_submask(g, state)
        return any(m & state == m for m in g)

    def any_in(self, state: int) -> bool:
        if self.small:
            return _kernels.any_submask(self.all, state)
        return any(m & state == m for m in self.all)


class _Checker:
    """Forbidden-spec test on edge masks.

    ``strategy`` is ``masks`` (precomputed family of minimal violating edge
    sets), ``search`` (Berge detector / subhypergraph search through the new
    edge), ``path`` (Berge paths only: shadow-path bound, then the longest
    path kernel) or ``auto``. With ``debug`` every incremental answer is compared
    with a full recheck.
    """

    def __init__(self, n: int, r: int, spec: ForbiddenSpec, strategy: str = "auto", debug: bool = False,
                 limit: int = FAMILY_LIMIT):
        self.n, self.r, self.spec, self.debug = n, r, spec, debug
        self.N = comb(n, r)
        self.sets = rsets(n, r)
        self.family = None
        if spec.kind == "subhypergraph" and spec.pattern.r != r:
            raise ParameterError("subhypergraph pattern uniformity differs from the search")
        if spec.kind != "none" and strategy in ("auto", "masks"):
            if spec.kind == "berge":
                fam = _berge_family(spec.pattern, n, r, limit)
            else:
                cf = _copy_family(spec.pattern, n, r, limit)
                fam = None if cf is None else [em for _, em in cf]
            if fam is None and strategy == "masks":
                raise ResourceError("forbidden family too large for the masks strategy")
            if fam is not None:
                self.family = _MaskSet(fam, self.N)
        if spec.kind == "none":
            self.strategy = "none"
        elif self.family is not None:
            self.strategy = "masks"
        elif spec.kind == "berge" and strategy in ("auto", "path") and _path_order(spec.pattern):
            self.strategy = "path"
            self.path_k = _path_order(spec.pattern)
        elif strategy == "path":
            raise ParameterError("the path strategy needs a Berge path pattern")
        else:
            self.strategy = "search"

    def hypergraph(self, mask: int) -> Hypergraph:
        return Hypergraph(self.n, self.r, edges_of(mask, self.n, self.r))

    def full_violates(self, mask: int) -> bool:
        H = self.hypergraph(mask)
        return not satisfies(H, self.spec)

    def violates_with(self, mask: int, j: int) -> bool:
        """``mask`` contains edge j and ``mask - j`` satisfies the spec."""
        if self.strategy == "none":
            return False
        if self.strategy == "masks":
            res = self.family.any_through(mask, j)
        elif self.strategy == "path":
            # the parent is free, so any Berge path found here uses edge j
            H = self.hypergraph(mask)
            k = self.path_k
            res = (H.n > 24 or shadow_path_order(H) >= k) and longest_berge_path(H, budget=k - 1).length >= k - 1
        else:
            H = self.hypergraph(mask)
            e = self.sets[j]
            if self.spec.kind == "berge":
                res = berge_copy_through(H, self.spec.pattern, e)
            else:
                res = find_copy(self.spec.pattern, H, through=e) is not None
        if self.debug and res != self.full_violates(mask):
            raise AssertionError(f"incremental check disagrees with full recheck on mask {mask}")
        return res


def satisfies(H: Hypergraph, spec: ForbiddenSpec) -> bool:
    """Direct (non-incremental) check that H avoids the forbidden spec."""
    if spec.kind == "none":
        return True
    if spec.kind == "berge":
        return is_berge_free(H, spec.pattern)
    if spec.pattern.r != H.r:
        raise ParameterError("subhypergraph pattern uniformity differs from host")
    return find_copy(spec.pattern, H) is None


class _Evaluator:
    def __init__(self, n: int, r: int, obj: Objective, limit: int = FAMILY_LIMIT):
        self.n, self.r, self.obj = n, r, obj
        self.N = comb(n, r)
        self.masks = None
        self.clique_s = None
        if obj.kind == "copies":
            P = obj.pattern
            if P.r != r:
                raise ParameterError("objective pattern uniformity differs from the search")
            fam = _copy_family(P, n, r, limit)
            if fam is not None:
                ems = [em for _, em in fam]
                self.masks = np.array(ems, dtype=np.uint64) if self.N <= 64 else ems
            elif P.m == comb(P.n, r) and not any(d == 0 for d in P.degrees):
                self.clique_s = P.n

    def __call__(self, mask: int) -> int:
        if self.obj.kind == "edges":
            return bin(mask).count("1")
        if self.masks is not None:
            if self.N <= 64:
                return _kernels.count_submasks(self.masks, mask)
            return sum(1 for m in self.masks if m & mask == m)
        H = Hypergraph(self.n, self.r, edges_of(mask, self.n, self.r))
        if self.clique_s is not None:
            return count_s_cliques(H, self.clique_s)
        return count_copies(self.obj.pattern, H, bound=max(self.obj.pattern.n, 8)).copies

    def on(self, H: Hypergraph) -> int:
        if self.obj.kind == "edges":
            return H.m
        return count_copies(self.obj.pattern, H, bound=max(self.obj.pattern.n, 8)).copies


def _mask_connected(mask: int, n: int, sets) -> bool:
    if n == 1:
        return True
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    i = 0
    joined = 0
    while mask:
        if mask & 1:
            e = sets[i]
            a = find(e[0])
            for v in e[1:]:
                b = find(v)
                if a != b:
                    parent[b] = a
                    joined += 1
        mask >>= 1
        i += 1
    return joined == n - 1


def _code_of(mask: int, n: int, r: int) -> int:
    return canonical_labeling(Hypergraph(n, r, edges_of(mask, n, r))).code


class _Best:
    __slots__ = ("value", "code")

    def __init__(self):
        self.value = -1
        self.code = None

    def offer(self, value: int, mask_or_code: int, n: int, r: int, is_code: bool):
        if value < self.value:
            return
        if value == self.value:
            m_edges = bin(mask_or_code).count("1")
            # the smallest code with m edges is 2^m - 1
            if self.code is not None and self.code < (1 << m_edges) - 1:
                return
        code = mask_or_code if is_code else _code_of(mask_or_code, n, r)
        if value > self.value or code < self.code:
            self.value, self.code = value, code


class _Budget:
    def __init__(self, node_budget, time_budget):
        self.node_budget = node_budget
        self.deadline = None if time_budget is None else time.monotonic() + time_budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise _Abort(f"node budget {self.node_budget} exhausted")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Abort("time budget exhausted")


class _Abort(Exception):
    pass


# -- engines ------------------------------------------------------------------

def _naive_subtree(n, r, checker, ev, connected, best, budget, first: int | None):
    """DFS over labelled free sets; ``first`` restricts to sets whose smallest
    edge index is ``first`` (None: the whole tree)."""
    N = comb(n, r)
    sets = rsets(n, r)

    def visit(mask, cands):
        budget.tick()
        if not connected or _mask_connected(mask, n, sets):
            best.offer(ev(mask), mask, n, r, False)
        for t, j in enumerate(cands):
            child = mask | (1 << j)
            sub = [c for c in cands[t + 1:] if not checker.violates_with(child | (1 << c), c)]
            visit(child, sub)

    if first is None:
        root = [j for j in range(N) if not checker.violates_with(1 << j, j)]
        visit(0, root)
    else:
        if checker.violates_with(1 << first, first):
            return
        cands = [c for c in range(first + 1, N) if not checker.violates_with((1 << first) | (1 << c), c)]
        visit(1 << first, cands)


def _worker(args):
    n, r, spec, obj, connected, first, node_budget, strategy = args
    checker = _Checker(n, r, spec, strategy)
    ev = _Evaluator(n, r, obj)
    best = _Best()
    budget = _Budget(node_budget, None)
    try:
        _naive_subtree(n, r, checker, ev, connected, best, budget, first)
    except _Abort:
        return best.value, best.code, budget.nodes, True
    return best.value, best.code, budget.nodes, False


def _canonical_walk(n, r, checker, budget):
    """Yield (mask, Canon) once per isomorphism class of free r-graphs."""
    sets = rsets(n, r)
    idx = rank_map(n, r)
    N = len(sets)

    def image(e, a):
        return idx[tuple(sorted(a[v] for v in e))]

    def orbit(j, gens):
        out = 1 << j
        stack = [j]
        while stack:
            x = stack.pop()
            for g in gens:
                y = image(sets[x], g)
                if not out >> y & 1:
                    out |= 1 << y
                    stack.append(y)
        return out

    def visit(mask, can):
        budget.tick()
        yield mask, can
        seen = 0
        for j in range(N):
            if mask >> j & 1 or seen >> j & 1:
                continue
            seen |= orbit(j, can.generators)
            child = mask | (1 << j)
            if checker.violates_with(child, j):
                continue
            ch = canonical_labeling(Hypergraph(n, r, edges_of(child, n, r)))
            top = ch.code.bit_length() - 1
            inv = [0] * n
            for v, x in enumerate(ch.labeling):
                inv[x] = v
            deletion = idx[tuple(sorted(inv[x] for x in sets[top]))]
            if orbit(deletion, ch.generators) >> j & 1:
                yield from visit(child, ch)

    yield from visit(0, canonical_labeling(Hypergraph(n, r)))


def free_hypergraphs(n: int, r: int, forbidden: ForbiddenSpec | None = None, *, node_budget: int | None = None,
                     time_budget: float | None = None):
    """One representative per isomorphism class of r-graphs on n vertices
    satisfying ``forbidden``."""
    checker = _Checker(n, r, forbidden or ForbiddenSpec.none())
    budget = _Budget(node_budget, time_budget)
    try:
        for mask, _ in _canonical_walk(n, r, checker, budget):
            yield Hypergraph(n, r, edges_of(mask, n, r))
    except _Abort as exc:
        raise ResourceError(str(exc)) from None


def extremal(
    n: int,
    r: int,
    forbidden: ForbiddenSpec | None = None,
    objective: Objective | None = None,
    connected: bool = False,
    *,
    engine: str = "canonical",
    workers: int = 1,
    node_budget: int | None = None,
    time_budget: float | None = None,
    override_size_guard: bool = False,
    strategy: str = "auto",
    debug: bool = False,
) -> ExtremalResult:
    """Maximum of ``objective`` over n-vertex r-graphs avoiding ``forbidden``
    (spanning-connected ones when ``connected``)."""
    forbidden = forbidden or ForbiddenSpec.none()
    objective = objective or Objective.edges()
    if engine not in ENGINES:
        raise ParameterError(f"unknown engine {engine!r}")
    if r < 2 or n < 1:
        raise ParameterError(f"need n >= 1 and r >= 2, got n={n}, r={r}")
    N = comb(n, r)
    if not override_size_guard and (n > SIZE_GUARD_N or N > SIZE_GUARD_EDGES):
        raise ResourceError(
            f"n={n}, C(n,r)={N} exceeds the size guard (n <= {SIZE_GUARD_N}, C(n,r) <= {SIZE_GUARD_EDGES})"
        )
    t0 = time.perf_counter()
    checker = _Checker(n, r, forbidden, strategy, debug)
    ev = _Evaluator(n, r, objective)
    best = _Best()
    budget = _Budget(node_budget, time_budget)
    meta = dict(n=n, r=r, forbidden=forbidden.description, objective=objective.description, connected=connected)

    def result(nodes):
        if best.code is None:
            # only possible for connected searches with no connected state
            return ExtremalResult(0, Hypergraph(n, r), nodes, engine, seconds=time.perf_counter() - t0, **meta)
        W = Hypergraph(n, r, edges_of(best.code, n, r))
        return ExtremalResult(best.value, W, nodes, engine, seconds=time.perf_counter() - t0, **meta)

    try:
        if engine == "canonical":
            sets = rsets(n, r)
            for mask, can in _canonical_walk(n, r, checker, budget):
                if not connected or _mask_connected(mask, n, sets):
                    best.offer(ev(mask), can.code, n, r, True)
        elif workers <= 1:
            _naive_subtree(n, r, checker, ev, connected, best, budget, None)
        else:
            budget.tick()
            if not connected or n == 1:
                best.offer(ev(0), 0, n, r, True)
            tasks = [(n, r, forbidden, objective, connected, j, node_budget, strategy) for j in range(N)]
            aborted = False
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for value, code, nodes, ab in pool.map(_worker, tasks):
                    budget.nodes += nodes
                    aborted |= ab
                    if code is not None:
                        best.offer(value, code, n, r, True)
            if aborted or (node_budget is not None and budget.nodes > node_budget):
                raise _Abort(f"node budget {node_budget} exhausted")
    except _Abort as exc:
        raise ResourceError(f"{exc}; best value so far is a lower bound only", result(budget.nodes)) from None
    return result(budget.nodes)


def extremal_table(
    forbidden: ForbiddenSpec,
    objective: Objective,
    r: int,
    n_range,
    connected: bool = False,
    **kwargs,
) -> list[ExtremalResult]:
    return [extremal(n, r, forbidden, objective, connected, **kwargs) for n in n_range]


CSV_FIELDS = ["n", "r", "forbidden", "objective", "connected", "value", "witness", "engine", "nodes", "seconds"]


def results_to_csv(results) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    w.writeheader()
    for res in results:
        w.writerow(res.to_dict())
    return buf.getvalue()


def results_to_json(results) -> str:
    return json.dumps([res.to_dict() for res in results], indent=2)
