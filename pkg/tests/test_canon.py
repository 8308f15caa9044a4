import itertools
import random
import time

from hypothesis import given
from hypothesis import strategies as st

from bergex.canon import canonical_code, canonical_form, canonical_labeling, orbits
from bergex.hypercore import Hypergraph, complete, named_hypergraph
from oracles import brute_aut, brute_key


@st.composite
def hypergraphs(draw, max_n=7, rs=(2, 3, 4), max_edges=14):
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(r, max_n))
    pool = list(itertools.combinations(range(n), r))
    return Hypergraph(n, r, draw(st.lists(st.sampled_from(pool), unique=True, max_size=max_edges)))


def test_examples():
    K = named_hypergraph("K4^3-")
    forms = {canonical_form(K.relabel(p)) for p in itertools.permutations(range(4))}
    assert len(forms) == 1
    pairs = list(itertools.combinations(complete(4, 3).edges, 2))
    assert len({canonical_code(Hypergraph(4, 3, p)) for p in pairs}) == 1
    E = Hypergraph(5, 3)
    assert canonical_form(E) == E
    assert canonical_labeling(Hypergraph(0, 2)).order == 1


@given(hypergraphs(), st.data())
def test_invariant_under_relabelling(H, data):
    perm = data.draw(st.permutations(range(H.n)))
    assert canonical_code(H.relabel(perm)) == canonical_code(H)


@given(hypergraphs())
def test_labeling_produces_the_form(H):
    can = canonical_labeling(H)
    assert sorted(can.labeling) == list(range(H.n))
    assert H.relabel(can.labeling) == canonical_form(H)
    assert canonical_form(canonical_form(H)) == canonical_form(H)


@given(hypergraphs(max_n=6))
def test_group_matches_brute_force(H):
    can = canonical_labeling(H)
    assert can.order == brute_aut(H)
    for g in can.generators:
        assert H.relabel(g) == H
    if can.order <= 720:
        assert len(can.automorphisms) == can.order


def test_orbits():
    assert orbits(4, [(1, 0, 2, 3)]) == [0, 0, 2, 3]
    assert orbits(3, []) == [0, 1, 2]
    can = canonical_labeling(complete(5, 3))
    assert orbits(5, can.generators) == [0] * 5


def test_separates_random_pairs():
    rng = random.Random(3)
    pool = list(itertools.combinations(range(7), 3))
    for _ in range(40):
        a = Hypergraph(7, 3, rng.sample(pool, rng.randint(0, 12)))
        b = Hypergraph(7, 3, rng.sample(pool, a.m)) if rng.random() < 0.5 else a.relabel(rng.sample(range(7), 7))
        same = (a.m == b.m) and brute_key(a) == brute_key(b)
        assert (canonical_code(a) == canonical_code(b)) == same


def test_large_symmetric_inputs_are_fast():
    t0 = time.perf_counter()
    assert canonical_labeling(Hypergraph(20, 2)).order == 2432902008176640000
    assert canonical_labeling(complete(9, 3)).order == 362880
    assert time.perf_counter() - t0 < 5
