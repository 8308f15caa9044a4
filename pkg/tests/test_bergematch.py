import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bergex.bergematch import (
    RED,
    BergeCertificate,
    NotBergeFreeError,
    berge_copy_through,
    contains_berge,
    is_berge_free,
    max_bipartite_matching,
    red_blue_decompose,
    verify_certificate,
)
from bergex.census import count_s_cliques
from bergex.hypercore import Hypergraph, ParameterError, complete, named_graph, star_path_construction
from bergex.pathstruct import longest_berge_path
from oracles import naive_berge

P3, P4, K3, S3 = (named_graph(x) for x in ("P3", "P4", "K3", "S3"))


@st.composite
def hypergraphs(draw, max_n=6, r=3, max_edges=7):
    n = draw(st.integers(r, max_n))
    pool = list(itertools.combinations(range(n), r))
    return Hypergraph(n, r, draw(st.lists(st.sampled_from(pool), unique=True, max_size=max_edges)))


graphs = st.sampled_from([P3, P4, K3, S3, named_graph("C4"), named_graph("M2"), named_graph("K2")])


# -- contains_berge ---------------------------------------------------------------

def test_certificate_example():
    H = Hypergraph(6, 3, [(1, 2, 3), (3, 4, 5)])
    cert = contains_berge(H, P3)
    assert cert.core_map == (1, 3, 4)
    assert cert.assignment == ((1, 2, 3), (3, 4, 5))
    assert verify_certificate(H, P3, cert)


def test_negative_examples():
    assert contains_berge(Hypergraph(6, 3, [(0, 1, 2), (3, 4, 5)]), P3) is None
    assert contains_berge(complete(4, 3), complete(4, 2)) is None


def test_is_berge_free_examples():
    assert is_berge_free(Hypergraph(6, 3, [(0, 1, 2), (3, 4, 5)]), P3)
    assert not is_berge_free(Hypergraph(3, 3, [(0, 1, 2)]), named_graph("K2"))
    assert is_berge_free(star_path_construction(12, 3, 8), named_graph("P8"))


def test_edgeless_pattern_rejected():
    with pytest.raises(ParameterError):
        contains_berge(complete(4, 3), Hypergraph(3, 2))
    with pytest.raises(ParameterError):
        is_berge_free(complete(4, 3), Hypergraph(3, 2))


@given(hypergraphs(), graphs)
def test_certificates_are_valid_and_match_oracle(H, F):
    cert = contains_berge(H, F)
    if F.n <= 4 and H.m <= 5:
        assert (cert is None) == (naive_berge(H, F) is None)
    if cert is not None:
        assert verify_certificate(H, F, cert)
    assert is_berge_free(H, F) == (cert is None)


@given(hypergraphs(max_n=5, max_edges=5), st.sampled_from([P3, P4, K3]))
def test_certificate_is_lexicographically_smallest(H, F):
    # the oracle's first hit is the smallest core map; assignment order is by F-edge
    cert = contains_berge(H, F)
    if cert is None:
        return
    best = None
    hedges = [set(e) for e in H.edges]
    for img in itertools.permutations(range(H.n), F.n):
        pairs = [(img[u], img[v]) for u, v in F.edges]
        for pick in itertools.permutations(range(H.m), F.m):
            if all(a in hedges[i] and b in hedges[i] for (a, b), i in zip(pairs, pick)):
                cand = (img, tuple(H.edges[i] for i in pick))
                best = cand if best is None or cand < best else best
    assert (cert.core_map, cert.assignment) == best


def test_verify_certificate_rejects_tampering():
    H = Hypergraph(6, 3, [(1, 2, 3), (3, 4, 5)])
    cert = contains_berge(H, P3)
    assert not verify_certificate(H, P3, BergeCertificate(cert.core, (1, 3, 1), cert.assignment))
    assert not verify_certificate(H, P3, BergeCertificate(cert.core, cert.core_map, (cert.assignment[0],) * 2))
    assert not verify_certificate(H, P3, BergeCertificate(cert.core, cert.core_map, ((1, 2, 3), (2, 3, 4))))
    assert not verify_certificate(H, P3, BergeCertificate(cert.core, (4, 3, 1), cert.assignment))


def test_certificate_json_roundtrip():
    H = Hypergraph(6, 3, [(1, 2, 3), (3, 4, 5)])
    cert = contains_berge(H, P3)
    d = json.loads(cert.to_json())
    assert set(d) == {"core", "map", "assign"}
    assert BergeCertificate.from_dict(d) == cert


@given(hypergraphs(max_edges=8), graphs, st.randoms(use_true_random=False))
def test_monotone_under_edge_deletion(H2, F, rnd):
    H1 = H2.with_edges(e for e in H2.edges if rnd.random() < 0.6)
    if is_berge_free(H2, F):
        assert is_berge_free(H1, F)


@given(hypergraphs(max_edges=6), graphs)
def test_copy_through_an_edge(H, F):
    for e in H.edges:
        rest = H.with_edges(x for x in H.edges if x != e)
        if is_berge_free(rest, F):
            assert berge_copy_through(H, F, e) == (not is_berge_free(H, F))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_path_detection_agrees_with_longest_path(k):
    F = named_graph(f"P{k}")
    rng = random.Random(k)
    pool = list(itertools.combinations(range(5), 3))
    for _ in range(150):
        H = Hypergraph(5, 3, rng.sample(pool, rng.randint(0, 7)))
        assert is_berge_free(H, F) == (longest_berge_path(H).length <= k - 2)


# -- matching ----------------------------------------------------------------------

def test_matching_examples():
    assert len(max_bipartite_matching([[0, 1, 2]] * 3)) == 3
    assert max_bipartite_matching([]) == []
    assert len(max_bipartite_matching([[0], [0]])) == 1
    assert max_bipartite_matching([[1, 0], [0]]) == [(0, 1), (1, 0)]


# -- red-blue decomposition ----------------------------------------------------------

def _red_blue_bound_holds(H, rb):
    n_red = count_s_cliques(rb.red, H.r) if H.r > 2 else rb.red.m
    return H.m <= rb.blue.m + n_red


def test_red_blue_examples():
    rb = red_blue_decompose(Hypergraph(3, 3, [(0, 1, 2)]), P3)
    assert rb.graph.m == 1 and rb.blue.m == 1 and rb.red.m == 0
    rb = red_blue_decompose(Hypergraph(6, 3, [(0, 1, 2), (3, 4, 5)]), P3)
    assert rb.blue.m == 2 and rb.red.m == 0
    rb = red_blue_decompose(Hypergraph(4, 3), P3)
    assert rb.graph.m == 0


def test_red_blue_rejects_non_free_input():
    H = Hypergraph(5, 3, [(0, 1, 2), (2, 3, 4)])
    with pytest.raises(NotBergeFreeError) as info:
        red_blue_decompose(H, P3)
    assert verify_certificate(H, P3, info.value.certificate)


def test_red_edges_when_hyperedges_outnumber_pairs():
    # 20 triples against 15 pairs: five hyperedges stay unmatched
    H = complete(6, 3)
    rb = red_blue_decompose(H, named_graph("P7"))
    assert rb.graph.m == 15
    assert rb.red.m == 15 and rb.blue.m == 0
    assert set(rb.color.values()) == {RED}
    assert _red_blue_bound_holds(H, rb)


@given(hypergraphs(max_n=6, max_edges=9), graphs)
def test_red_blue_properties(H, F):
    if not is_berge_free(H, F):
        return
    rb = red_blue_decompose(H, F)
    assert set(rb.color) == set(rb.graph.edges)
    assert is_berge_free(rb.graph, F)
    assert _red_blue_bound_holds(H, rb)
    d = rb.to_dict()
    assert len(d["edges"]) == rb.graph.m
