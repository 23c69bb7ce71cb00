"""Canonical forms, enumeration, prediction, search, comparison."""

import itertools
import json

import networkx as nx
import numpy as np
import pytest

from kabminor.extremal import (
    BudgetAbort,
    CONNECTED_GRAPH_COUNTS,
    GRAPH_COUNTS,
    canonical_form,
    canonical_graph,
    compare_candidates,
    enumerate_graphs,
    ingest_graph6,
    parse_constraint,
    predict,
    search_max,
)
from kabminor.graphs import (
    CLAUSE_APEX_CLIQUES,
    CLAUSE_APEX_F_BLOCK,
    CLAUSE_APEX_PETERSEN,
    CLAUSE_APEX_STAR_FORESTS,
    CLAUSE_OUTSIDE,
    CLAUSE_STAR_FOREST,
    CLAUSE_SUBDIVIDED,
    complete,
    cycle,
    disjoint_union,
    from_edges,
    join,
    path_graph,
    petersen_complement,
    star_forest,
    subdivided_clique,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_canonical_form_labelings():
    c = cycle(4)
    relab = c.relabel([2, 0, 3, 1])
    assert canonical_form(c) == canonical_form(relab)
    assert canonical_form(c) != canonical_form(path_graph(4))


def test_canonical_form_distinct_on_n4():
    forms = {canonical_form(g) for g in enumerate_graphs(4)}
    assert len(forms) == 11


def test_canonical_graph_is_isomorphic_relabeling():
    g = subdivided_clique(5, 2)
    cg = canonical_graph(g)
    assert nx.is_isomorphic(to_nx(g), to_nx(cg))
    assert canonical_form(g) == canonical_form(cg)


def test_canonical_form_matches_networkx_oracle():
    rng = np.random.default_rng(4)
    corpus = enumerate_graphs(6)
    for _ in range(60):
        i, j = rng.integers(len(corpus), size=2)
        gi, gj = corpus[i], corpus[j]
        same = canonical_form(gi) == canonical_form(gj)
        assert same == nx.is_isomorphic(to_nx(gi), to_nx(gj))


def test_canonical_form_random_permutations():
    rng = np.random.default_rng(8)
    for g in [petersen_complement(), subdivided_clique(6, 3),
              join(complete(1), disjoint_union([complete(3), complete(4)]))]:
        base = canonical_form(g)
        for _ in range(5):
            perm = [int(v) for v in rng.permutation(g.n)]
            assert canonical_form(g.relabel(perm)) == base


def test_enumeration_counts():
    for n in range(1, 8):
        assert len(enumerate_graphs(n)) == GRAPH_COUNTS[n - 1]
        assert len(enumerate_graphs(n, connected_only=True)) == CONNECTED_GRAPH_COUNTS[n - 1]
    with pytest.raises(ValueError):
        enumerate_graphs(9)


def test_enumeration_no_isomorphic_duplicates():
    corpus = enumerate_graphs(5)
    for gi, gj in itertools.combinations(corpus, 2):
        assert not nx.is_isomorphic(to_nx(gi), to_nx(gj))


def test_ingest_graph6(tmp_path):
    corpus = enumerate_graphs(5)
    f = tmp_path / "corpus.g6"
    f.write_text("".join(g.to_graph6() + "\n" for g in corpus))
    back = ingest_graph6(str(f))
    assert [g.rows for g in back] == [g.rows for g in corpus]
    empty = tmp_path / "empty.g6"
    empty.write_text("")
    assert ingest_graph6(str(empty)) == []
    bad = tmp_path / "bad.g6"
    bad.write_text("C~\nC\x1f!\n")
    with pytest.raises(ValueError, match=":2:"):
        ingest_graph6(str(bad))


def test_predict_clauses():
    p = predict(1, 3, 7, 0.5)
    assert p.clause == CLAUSE_SUBDIVIDED
    assert nx.is_isomorphic(to_nx(p.graph), to_nx(cycle(7)))
    p = predict(1, 5, 6, 0.2)
    assert p.clause == CLAUSE_STAR_FOREST
    assert nx.is_isomorphic(to_nx(p.graph), to_nx(star_forest(1, 5).complement()))
    p = predict(2, 5, 18, 0.4)
    assert p.clause == CLAUSE_APEX_F_BLOCK and p.params.k == 3 and p.params.t == 2
    p = predict(2, 3, 8, 0.3)
    assert p.clause == CLAUSE_APEX_CLIQUES and p.graph.e == 13
    p = predict(4, 8, 21, 0.5)
    assert p.clause == CLAUSE_APEX_PETERSEN
    p = predict(2, 5, 17, 0.3)  # k=3, t=1, tau=2 -> star-forest complements
    assert p.clause == CLAUSE_APEX_STAR_FORESTS
    with pytest.raises(ValueError):
        predict(3, 2, 5, 0.1)


def test_predict_outside_clauses():
    p = predict(1, 4, 6, 0.1)  # alpha below the window for b >= 4
    assert p.clause == CLAUSE_OUTSIDE and p.graph is None and "alpha" in p.caveat
    p = predict(1, 4, 7, 0.5)
    assert p.clause == CLAUSE_SUBDIVIDED
    p = predict(2, 5, 8, 0.3)  # k=1 < t... decomposition 7=1*5+2, t=tau=2, k=1 ok
    assert p.clause == CLAUSE_APEX_F_BLOCK


def test_predict_large_n_caveat():
    assert predict(2, 3, 8, 0.3).caveat != ""
    assert predict(1, 3, 8, 0.3).caveat == ""


def test_predict_order_and_apex_shape():
    from kabminor.minors import find_clique_dominating_set

    for a, b, n in [(2, 3, 8), (2, 5, 18), (3, 4, 12), (1, 4, 5)]:
        p = predict(a, b, n, 0.5)
        assert p.graph.n == n
        if a >= 2:
            assert find_clique_dominating_set(p.graph, a - 1) is not None


def test_predicted_apex_edge_count_formula():
    for a, b, n in [(2, 3, 8), (3, 4, 14), (2, 4, 11)]:
        p = predict(a, b, n, 0.5)
        if p.clause != CLAUSE_APEX_CLIQUES:
            continue
        k, t = p.params.k, p.params.t
        expected = ((a - 1) * (a - 2) // 2 + (a - 1) * (k * b + t)
                    + k * b * (b - 1) // 2 + t * (t - 1) // 2)
        assert p.graph.e == expected


def test_parse_constraint():
    assert parse_constraint("star-minor-free:3") == ("star-minor-free", (3,))
    assert parse_constraint("kab-minor-free:2,5") == ("kab-minor-free", (2, 5))
    assert parse_constraint("ab-property:2,4") == ("ab-property", (2, 4))
    for bad in ("star-minor-free", "kab-minor-free:5,2", "nope:1", "K:x"):
        with pytest.raises(ValueError):
            parse_constraint(bad)


def test_search_small_orders():
    rep = search_max(enumerate_graphs(6, True), "star-minor-free:3", 0.5,
                     prediction=predict(1, 3, 6, 0.5))
    assert rep.maximizers == (canonical_graph(cycle(6)).to_graph6(),)
    assert abs(rep.lambda_max - 2) < 1e-9
    assert rep.prediction_agrees
    rep = search_max(enumerate_graphs(4, True), "star-minor-free:3", 0.3)
    assert rep.maximizers == (canonical_graph(cycle(4)).to_graph6(),)
    rep = search_max(enumerate_graphs(5, True), "star-minor-free:4", 0.0,
                     prediction=predict(1, 4, 5, 0.0))
    assert rep.prediction_agrees and len(rep.maximizers) == 1


def test_search_maximizers_satisfy_constraint():
    from kabminor.minors import star_minor_free
    from kabminor.graphs import from_graph6

    rep = search_max(enumerate_graphs(6, True), "star-minor-free:4", 0.2)
    for g6 in rep.maximizers:
        assert star_minor_free(from_graph6(g6), 4)


def test_search_deterministic_across_jobs():
    corpus = enumerate_graphs(6, True)
    r1 = search_max(corpus, "star-minor-free:3", 0.5, jobs=1)
    r2 = search_max(corpus, "star-minor-free:3", 0.5, jobs=4)
    assert r1.to_json() == r2.to_json()


def test_search_invariant_under_relabeling():
    rng = np.random.default_rng(17)
    corpus = enumerate_graphs(5, True)
    shuffled = [g.relabel([int(v) for v in rng.permutation(g.n)]) for g in corpus]
    r1 = search_max(corpus, "star-minor-free:4", 0.4)
    r2 = search_max(shuffled, "star-minor-free:4", 0.4)
    assert r1.maximizers == r2.maximizers
    assert abs(r1.lambda_max - r2.lambda_max) < 1e-12


def test_search_budget_abort():
    corpus = [join(complete(2), cycle(8))]
    with pytest.raises(BudgetAbort):
        search_max(corpus, "kab-minor-free:3,4", 0.1, budget=3)


def test_compare_candidates():
    g = complete(5)
    rows = compare_candidates([("a", g), ("b", g)], 0.3)
    assert abs(rows[0]["lambda"] - rows[1]["lambda"]) < 1e-12
    assert rows[0]["strictly_above_next"] is False
    rows = compare_candidates([("dense", complete(5)), ("sparse", cycle(5))], 0.2)
    assert rows[0]["id"] == "dense" and rows[0]["strictly_above_next"]
    with pytest.raises(ValueError):
        compare_candidates([("a", complete(4)), ("b", complete(5))], 0.1)
    assert compare_candidates([], 0.1) == []


def test_compare_candidates_jobs_invariant():
    cands = [("a", complete(6)), ("b", cycle(6)), ("c", subdivided_clique(4, 2))]
    r1 = compare_candidates(cands, 0.4, jobs=1)
    r2 = compare_candidates(cands, 0.4, jobs=3)
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_order_ten_block_edge_counts():
    a = disjoint_union([complete(8), complete(2)])
    assert a.e == 29
    assert petersen_complement().e == 30
