"""The ten acceptance criteria, each with its runtime limit.

Every test carries an ``acceptance`` marker; the conftest hook prints one
PASS/FAIL line per criterion at the end of the run.
"""

import itertools
import random
import time
from math import comb

import pytest

from bergex.bergematch import contains_berge, is_berge_free, red_blue_decompose, verify_certificate
from bergex.canon import canonical_code, canonical_form
from bergex.census import clique_hypergraph, count_copies, count_s_cliques, gamma
from bergex.hypercore import (
    Hypergraph,
    complete,
    is_connected,
    named_graph,
    named_hypergraph,
    star_clique_formula,
    star_path_construction,
    star_path_formula,
)
from bergex.pathstruct import find_berge_star, longest_berge_path, shadow_path_order
from bergex.veriflab import HOLDS, check_gp_sandwich, check_theorem_main
from bergex.xsearch import ForbiddenSpec, extremal, free_hypergraphs
from oracles import (
    all_hypergraphs,
    brute_cliques,
    brute_key,
    brute_longest_path,
    contains_subgraph,
    max_disjoint_triples,
    naive_berge,
    pairwise_disjoint,
)

P3, P4, K3, S3 = (named_graph(x) for x in ("P3", "P4", "K3", "S3"))
acceptance = pytest.mark.acceptance


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.seconds < self.limit, f"took {self.seconds:.1f} s, limit {self.limit} s"


@acceptance(1, "gamma oracle")
def test_gamma_oracle():
    with Clock(1.0):
        assert gamma(named_hypergraph("K4^3-")) == 4
        for name in ("K2", "P3", "P4", "K3", "S3", "C4", "M2", "K4"):
            assert gamma(named_graph(name)) == 1
        assert gamma(complete(5, 2)) == 1


@acceptance(2, "detection oracle equivalence")
def test_detection_oracle_equivalence():
    disagreements = 0
    with Clock(300):
        for n in range(3, 6):
            for H in all_hypergraphs(n, 3, max_edges=5):
                for F in (P3, P4, K3, S3):
                    cert = contains_berge(H, F)
                    if (cert is None) != (naive_berge(H, F) is None):
                        disagreements += 1
                    elif cert is not None and not verify_certificate(H, F, cert):
                        disagreements += 1
    assert disagreements == 0


@acceptance(3, "exhaustive extremal values for Berge-P3")
def test_extremal_p3_values():
    with Clock(600):
        # the structural oracle: Berge-P3-free iff pairwise disjoint, by brute force
        for n in range(3, 6):
            for H in all_hypergraphs(n, 3):
                assert (naive_berge(H, P3) is None) == pairwise_disjoint(H)
        for H in free_hypergraphs(6, 3):
            assert (naive_berge(H, P3) is None) == pairwise_disjoint(H)
        for n in range(3, 7):
            a = extremal(n, 3, ForbiddenSpec.berge(P3), engine="naive")
            b = extremal(n, 3, ForbiddenSpec.berge(P3), engine="canonical")
            assert a.value == b.value == n // 3 == max_disjoint_triples(n)
            assert pairwise_disjoint(a.witness) and pairwise_disjoint(b.witness)


@acceptance(4, "main inequality at desk scale")
def test_main_inequality():
    cases = [(P3, "P3", range(4, 7)), (P4, "P4", range(4, 7)), (K3, "K3", range(4, 6))]
    with Clock(1800):
        for F, name, ns in cases:
            for n in ns:
                c = check_theorem_main(3, 4, F, n, name=name)
                assert c.verdict == HOLDS, c.to_dict()
                assert c.lhs <= c.rhs


@acceptance(5, "clique-hypergraph transfer")
def test_clique_hypergraph_transfer():
    violations = 0
    seen = 0
    for F, k in ((P3, 3), (P4, 4)):
        for n in range(3, 7):
            for H in free_hypergraphs(n, 3, ForbiddenSpec.berge(F)):
                seen += 1
                C = clique_hypergraph(H, 4)
                assert C.m == brute_cliques(H, 4)
                # the path oracle works on sequences of hyperedges, not on matchings
                if not is_berge_free(C, F) or brute_longest_path(C) > k - 2:
                    violations += 1
    assert seen > 0 and violations == 0


@acceptance(6, "red-blue decomposition bound")
def test_red_blue_bound():
    violations = 0
    for F in (P3, K3):
        for n in range(3, 6):
            for H in all_hypergraphs(n, 3):
                if naive_berge(H, F) is not None:
                    continue
                rb = red_blue_decompose(H, F)
                G = rb.graph
                if contains_subgraph(G, F):
                    violations += 1
                assert set(rb.color) == set(G.edges)
                n_red = brute_cliques(rb.red, 3)
                assert n_red == count_copies(K3, rb.red).copies
                if H.m > rb.blue.m + n_red:
                    violations += 1
    assert violations == 0


@acceptance(7, "connected-path construction")
def test_star_path_construction():
    with Clock(600):
        C = star_path_construction(12, 3, 8)
        assert C.m == 28 == star_path_formula(12, 3, 8)
        assert C.m == comb(3, 2) * (12 - 4) + comb(4, 3)
        assert is_connected(C)
        cert = longest_berge_path(C)
        assert cert.is_valid(C) and cert.length <= 6
        assert shadow_path_order(C) < 8
        assert is_berge_free(C, named_graph("P8"))
        assert count_s_cliques(C, 4) == brute_cliques(C, 4) == 9
        assert star_clique_formula(12, 4, 8) == comb(3, 3) * 8 + comb(4, 4) == 9


@acceptance(8, "Berge star realization")
def test_berge_star_realization():
    ell = 4
    failures = 0
    tried = 0
    for n in range(3, 7):
        for H in free_hypergraphs(n, 3):
            for x in range(n):
                if H.degrees[x] <= comb(ell - 1, 2):
                    continue
                tried += 1
                cert = find_berge_star(H, x, ell)
                if cert is None or not cert.is_valid(H):
                    failures += 1
                    continue
                # check by hand: distinct leaves, distinct hyperedges, each holds x and its leaf
                leaves, edges = cert.leaves, cert.hyperedges
                ok = (
                    len(leaves) == len(set(leaves)) == ell
                    and len(set(edges)) == ell
                    and x not in leaves
                    and all(set(e) >= {x, u} and tuple(e) in H.edge_set for u, e in zip(leaves, edges))
                )
                failures += not ok
    assert tried > 0 and failures == 0


@acceptance(9, "sandwich bounds")
def test_gp_sandwich():
    failures = []
    for F, name in ((K3, "K3"), (P3, "P3"), (P4, "P4")):
        for n in range(3, 7):
            c = check_gp_sandwich(3, F, n, name=name)
            if c.verdict != HOLDS:
                failures.append(c.to_dict())
    assert failures == []


@acceptance(10, "canonical form soundness")
def test_canonical_form_soundness():
    wrong = 0
    for n in range(3, 6):
        groups = {}
        for H in all_hypergraphs(n, 3):
            groups.setdefault(canonical_code(H), set()).add(brute_key(H))
        keys = [k for ks in groups.values() for k in ks]
        # unify: one brute key per code; separate: no brute key under two codes
        wrong += sum(len(ks) != 1 for ks in groups.values())
        wrong += len(keys) - len(set(keys))
    rng = random.Random(2024)
    pool = list(itertools.combinations(range(6), 3))
    for i in range(500):
        a = Hypergraph(6, 3, rng.sample(pool, rng.randint(0, 20)))
        if i % 2:
            b = a.relabel(rng.sample(range(6), 6))
        else:
            b = Hypergraph(6, 3, rng.sample(pool, a.m))
        same = brute_key(a) == brute_key(b)
        if (canonical_form(a) == canonical_form(b)) != same:
            wrong += 1
    assert wrong == 0
