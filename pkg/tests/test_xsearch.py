import csv
import io
import itertools
import json
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bergex.bergematch import is_berge_free
from bergex.canon import canonical_form
from bergex.census import count_copies
from bergex.hypercore import (
    Hypergraph,
    ParameterError,
    complete,
    expansion,
    is_connected,
    named_graph,
    turan_hypergraph,
)
from bergex.xsearch import (
    ExtremalResult,
    ForbiddenSpec,
    Objective,
    ResourceError,
    extremal,
    extremal_table,
    free_hypergraphs,
    results_to_csv,
    results_to_json,
    satisfies,
)
from oracles import brute_key, max_disjoint_triples, pairwise_disjoint

P3, P4, K3, S3 = (named_graph(x) for x in ("P3", "P4", "K3", "S3"))
berge = ForbiddenSpec.berge
sub = ForbiddenSpec.subhypergraph


def _value_of(W, obj):
    return W.m if obj.kind == "edges" else count_copies(obj.pattern, W).copies


# -- examples ------------------------------------------------------------------------

def test_examples():
    assert extremal(4, 3, berge(P3)).value == 1
    res = extremal(6, 3, berge(P3))
    assert res.value == 2 and pairwise_disjoint(res.witness)
    for n, r in [(4, 2), (5, 3), (6, 4), (5, 2)]:
        assert extremal(n, r).value == comb(n, r)


def test_table_examples():
    rows = extremal_table(berge(P3), Objective.edges(), 3, range(3, 7))
    assert [r.value for r in rows] == [1, 1, 1, 2]
    rows = extremal_table(ForbiddenSpec.none(), Objective.copies(K3), 2, range(2, 5))
    assert [r.value for r in rows] == [0, 1, 4]


def test_golden_berge_k4():
    # four triples carry at most four core edges, so nothing on 4 vertices holds a Berge-K4
    res = extremal(4, 3, berge(complete(4, 2)))
    assert res.value == 4
    assert res.witness == complete(4, 3)


# -- engines, workers, strategies ------------------------------------------------------

CONFIGS = [
    (3, berge(P3), Objective.edges(), False),
    (3, berge(P4), Objective.edges(), False),
    (3, berge(K3), Objective.edges(), False),
    (3, berge(S3), Objective.edges(), False),
    (3, berge(P3), Objective.copies(complete(4, 3)), False),
    (3, berge(P4), Objective.edges(), True),
    (3, sub(expansion(P3, 3)), Objective.edges(), False),
    (4, berge(P3), Objective.edges(), False),
    (4, berge(K3), Objective.edges(), False),
    (2, sub(K3), Objective.edges(), False),
    (2, sub(P4), Objective.copies(K3), False),
]


@pytest.mark.parametrize("r,forb,obj,conn", CONFIGS)
def test_engines_agree(r, forb, obj, conn):
    for n in range(r, 7):
        a = extremal(n, r, forb, obj, conn, engine="naive")
        b = extremal(n, r, forb, obj, conn, engine="canonical")
        assert a.value == b.value
        assert canonical_form(a.witness) == a.witness == b.witness
        assert satisfies(b.witness, forb)
        assert _value_of(b.witness, obj) == b.value
        if conn:
            assert is_connected(b.witness) or b.value == 0


@pytest.mark.parametrize("forb", [berge(P3), berge(P4), berge(K3)])
def test_workers_and_strategies_agree(forb):
    base = extremal(6, 3, forb, engine="naive")
    assert extremal(6, 3, forb, engine="naive", workers=2) == base
    for strategy in ("search", "masks"):
        assert extremal(6, 3, forb, strategy=strategy).value == base.value
    if forb.pattern.n == forb.pattern.m + 1 and max(forb.pattern.degrees) <= 2:
        assert extremal(6, 3, forb, strategy="path").value == base.value


def test_connected_workers_match():
    a = extremal(5, 3, berge(P4), connected=True, engine="naive")
    b = extremal(5, 3, berge(P4), connected=True, engine="naive", workers=3)
    assert a == b


@pytest.mark.parametrize("strategy", ["masks", "search", "path"])
def test_debug_mode_rechecks(strategy):
    forb = berge(P4)
    assert extremal(5, 3, forb, strategy=strategy, debug=True).value == extremal(5, 3, forb).value
    assert extremal(5, 3, forb, engine="naive", strategy=strategy, debug=True).value == extremal(5, 3, forb).value


def test_path_strategy_needs_a_path():
    with pytest.raises(ParameterError):
        extremal(5, 3, berge(K3), strategy="path")


# -- guards and budgets -----------------------------------------------------------------

def test_size_guard():
    with pytest.raises(ResourceError):
        extremal(9, 3, berge(P3))
    with pytest.raises(ResourceError):
        extremal(21, 2, berge(P3))


def test_node_budget_reports_lower_bound():
    with pytest.raises(ResourceError) as info:
        extremal(6, 3, berge(P4), node_budget=3)
    part = info.value.partial
    assert isinstance(part, ExtremalResult)
    assert part.explored > 3
    assert satisfies(part.witness, berge(P4)) and part.value <= extremal(6, 3, berge(P4)).value
    with pytest.raises(ResourceError):
        extremal(6, 3, berge(K3), engine="naive", workers=2, node_budget=5)


def test_time_budget():
    with pytest.raises(ResourceError):
        extremal(7, 3, berge(named_graph("P6")), time_budget=0.01, override_size_guard=True)


def test_bad_arguments():
    with pytest.raises(ParameterError):
        extremal(5, 3, engine="quantum")
    with pytest.raises(ParameterError):
        ForbiddenSpec.berge(Hypergraph(3, 2))
    with pytest.raises(ParameterError):
        ForbiddenSpec("other")
    with pytest.raises(ParameterError):
        Objective("triangles")
    with pytest.raises(ParameterError):
        extremal(5, 3, sub(K3))


# -- enumeration --------------------------------------------------------------------------

@pytest.mark.parametrize(
    "n,r,count",
    [(3, 3, 2), (4, 3, 5), (5, 3, 34), (6, 3, 2136), (4, 2, 11), (5, 2, 34), (6, 2, 156), (7, 2, 1044),
     (5, 4, 6), (6, 4, 156)],
)
def test_class_counts(n, r, count):
    assert sum(1 for _ in free_hypergraphs(n, r)) == count


def test_free_classes_are_distinct_and_complete():
    reps = list(free_hypergraphs(5, 3, berge(P4)))
    keys = [brute_key(H) for H in reps]
    assert len(set(keys)) == len(keys)
    pool = list(itertools.combinations(range(5), 3))
    every = set()
    for m in range(len(pool) + 1):
        for s in itertools.combinations(pool, m):
            H = Hypergraph(5, 3, s)
            if is_berge_free(H, P4):
                every.add(brute_key(H))
    assert every == set(keys)


@given(st.integers(3, 6), st.data())
def test_violation_is_monotone(n, data):
    pool = list(itertools.combinations(range(n), 3))
    edges = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=8))
    extra = data.draw(st.sampled_from(pool))
    H = Hypergraph(n, 3, edges)
    H2 = Hypergraph(n, 3, set(edges) | {extra})
    for spec in (berge(P3), berge(K3), sub(expansion(P3, 3)), sub(Hypergraph(4, 3, [(0, 1, 2), (1, 2, 3)]))):
        if not satisfies(H, spec):
            assert not satisfies(H2, spec)


def test_structural_oracle_for_p3():
    for n in range(3, 7):
        assert extremal(n, 3, berge(P3)).value == n // 3 == max_disjoint_triples(n)


# -- constructions never beat the optimum ------------------------------------------------------

@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("k", [4, 5])
def test_turan_construction_dominated(n, k):
    T = turan_hypergraph(n, k, 3)
    Kk = complete(k, 2)
    assert is_berge_free(T, Kk)
    assert extremal(n, 3, berge(Kk)).value >= T.m


# -- output -----------------------------------------------------------------------------------

def test_csv_and_json():
    rows = extremal_table(berge(P3), Objective.edges(), 3, range(3, 5))
    text = results_to_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert list(parsed[0]) == ["n", "r", "forbidden", "objective", "connected", "value", "witness", "engine",
                               "nodes", "seconds"]
    assert [p["value"] for p in parsed] == ["1", "1"]
    js = json.loads(results_to_json(rows))
    assert js[1]["witness"] == "4 3 1\n1 2 3\n"
    assert js[1]["witness"] == parsed[1]["witness"]
    assert "seconds" not in rows[0].to_dict(timing=False)
