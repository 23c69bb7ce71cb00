"""Minor containment, star fast path, (a,b)-property, apex reduction."""

import json

import numpy as np
import pytest

from kabminor.extremal import enumerate_graphs
from kabminor.graphs import (
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    from_edges,
    join,
    petersen,
    petersen_complement,
    star,
    star_forest,
    subdivided_clique,
)
from kabminor.minors import (
    VERDICT_BUDGET,
    VERDICT_CONTAINS,
    VERDICT_FREE,
    MinorWitness,
    ab_property,
    ab_property_complement_criterion,
    find_clique_dominating_set,
    has_minor,
    minor_free_given_apex,
    star_minor_free,
    validate_witness,
)


def test_has_minor_basics():
    assert has_minor(cycle(4), star(3)).verdict == VERDICT_FREE
    assert has_minor(complete(5), complete_bipartite(2, 3)).verdict == VERDICT_CONTAINS
    w = has_minor(petersen(), complete(5))
    assert w.verdict == VERDICT_CONTAINS
    assert validate_witness(petersen(), complete(5), w)


def test_petersen_k5_by_matching_contraction():
    # contracting a perfect matching of the Petersen graph yields K_5
    import networkx as nx

    p = petersen()
    g = p
    nxg = nx.Graph(p.edges())
    matching = [tuple(sorted(e)) for e in
                nx.max_weight_matching(nxg, maxcardinality=True)]
    assert len(matching) == 5
    # contract in descending order of the removed (larger) endpoint so
    # earlier contractions never shift later edge indices
    for u, v in sorted(matching, key=lambda e: -max(e)):
        g = g.contract_edge(u, v)
    assert g.n == 5 and g.e == 10


def test_witness_validation_rejects_garbage():
    g, h = complete(4), complete(3)
    w = has_minor(g, h)
    assert validate_witness(g, h, w)
    bad = MinorWitness(VERDICT_CONTAINS, ((0,), (0,), (1,)), 0)
    assert not validate_witness(g, h, bad)  # overlap
    bad = MinorWitness(VERDICT_CONTAINS, ((0,), (1,)), 0)
    assert not validate_witness(g, h, bad)  # wrong count
    # opposite vertices of a 4-cycle are not connected as a branch set
    bad = MinorWitness(VERDICT_CONTAINS, ((0, 2), (1,), (3,)), 0)
    assert not validate_witness(cycle(4), h, bad)


def test_star_minor_free_basics():
    for n in (4, 5, 6, 8):
        assert star_minor_free(cycle(n), 3)
    assert not star_minor_free(star(4), 4)
    for b in (3, 4, 5):
        for k in (1, 2, 3):
            assert star_minor_free(subdivided_clique(b, k), b)
    assert not star_minor_free(complete(5), 4)


def test_star_fast_path_agrees_with_generic():
    for n in range(2, 7):
        for g in enumerate_graphs(n):
            for b in range(1, n + 1):
                fast = star_minor_free(g, b)
                generic = has_minor(g, star(b)).verdict == VERDICT_FREE
                assert fast == generic, (g.to_graph6(), b)


def test_star_fast_path_spot_n7():
    rng = np.random.default_rng(1)
    corpus = enumerate_graphs(7)
    for idx in rng.choice(len(corpus), 40, replace=False):
        g = corpus[idx]
        for b in (3, 4, 6):
            assert star_minor_free(g, b) == (has_minor(g, star(b)).verdict == VERDICT_FREE)


def test_ab_property_examples():
    rep = ab_property(star_forest(2, 5).complement(), 2, 5)
    assert rep.overall and rep.checked_pairs == ((1, 5), (2, 4))
    rep = ab_property(complete(6), 2, 5)
    assert not rep.overall
    rep = ab_property(complete(4), 1, 3)
    assert not rep.overall  # K_{b+1} contains the b-leaf star minor


def test_ab_property_report_json():
    rep = ab_property(cycle(4), 2, 3)
    data = json.loads(rep.to_json())
    assert data["omega"] == 2
    assert data["overall"] == rep.overall


def test_complement_criterion_examples():
    g = star_forest(2, 5).complement()
    assert ab_property_complement_criterion(g, 2, 5)
    assert not ab_property_complement_criterion(complete(6), 2, 5)
    with pytest.raises(ValueError):
        ab_property_complement_criterion(complete(5), 2, 5)


def test_complement_criterion_agreement_small():
    for g in enumerate_graphs(5, connected_only=True):
        crit = ab_property_complement_criterion(g, 2, 4)
        direct = ab_property(g, 2, 4).overall
        assert crit == direct, g.to_graph6()


def test_find_clique_dominating_set():
    g = join(complete(2), cycle(5))
    assert find_clique_dominating_set(g, 2) == (0, 1)
    assert find_clique_dominating_set(cycle(5), 1) is None
    assert find_clique_dominating_set(cycle(5), 0) == ()
    g = join(complete(1), disjoint_union([complete(3), complete(3), complete(1)]))
    assert find_clique_dominating_set(g, 1) == (0,)


def test_minor_free_given_apex():
    g = join(complete(1), disjoint_union([complete(3), complete(3), complete(1)]))
    assert minor_free_given_apex(g, (0,), 2, 3)
    assert has_minor(g, complete_bipartite(2, 3)).verdict == VERDICT_FREE
    h = join(complete(1), complete(4))
    assert not minor_free_given_apex(h, (0,), 2, 3)
    assert has_minor(h, complete_bipartite(2, 3)).verdict == VERDICT_CONTAINS
    with pytest.raises(ValueError):
        minor_free_given_apex(g, (1,), 2, 3)


def test_apex_route_agrees_with_generic_enumerated():
    # every connected 6-vertex graph with a dominating vertex
    for g in enumerate_graphs(6, connected_only=True):
        S = find_clique_dominating_set(g, 1)
        if S is None:
            continue
        apex = minor_free_given_apex(g, S, 2, 4)
        generic = has_minor(g, complete_bipartite(2, 4)).verdict == VERDICT_FREE
        assert apex == generic, g.to_graph6()


def test_minor_monotone_under_subgraphs():
    rng = np.random.default_rng(2)
    host = subdivided_clique(5, 2)  # star-minor free at b=5
    for _ in range(20):
        g = host
        for _ in range(int(rng.integers(1, 4))):
            edges = g.edges()
            u, v = edges[int(rng.integers(len(edges)))]
            g = g.delete_edge(u, v)
        assert star_minor_free(g, 5)


def test_budget_verdict():
    g = join(complete(2), cycle(10))
    w = has_minor(g, complete_bipartite(3, 4), budget=5)
    assert w.verdict == VERDICT_BUDGET
    assert w.branch_sets is None


def test_edge_count_quick_rejection():
    # a minor never has more edges than its host
    w = has_minor(petersen(), complete_bipartite(5, 5), budget=1)
    assert w.verdict == VERDICT_FREE and w.expansions == 0


def test_petersen_complement_property():
    # the cheap pair of the full order-10 check; the full (3,8) sweep
    # runs in the acceptance suite
    assert star_minor_free(petersen_complement(), 8)


def test_witness_json_roundtrip():
    w = has_minor(complete(4), complete(3))
    data = json.loads(w.to_json())
    assert data["verdict"] == "contains"
    assert len(data["branch_sets"]) == 3
