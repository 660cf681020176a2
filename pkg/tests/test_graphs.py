import random

import pytest

from lombardi.errors import InvalidRotation, MultiEdge, ParseError
from lombardi.graphs import (
    bridges,
    build_graph,
    classify,
    degeneracy_order,
    graph_to_document,
    load_graph,
)
from oracles import brute_force_degeneracy
from sample_graphs import (
    complete_bipartite,
    corpus_graph,
    cube,
    maximal_outerplanar_fan,
    octahedron,
    random_graph,
)


def test_load_triangle():
    g = load_graph('{"vertices": [0, 1, 2], "edges": [[0,1],[1,2],[2,0]]}')
    assert g.n == 3 and g.m == 3
    assert not g.rotation_specified


def test_load_rejects_bad_rotation():
    doc = '{"vertices": [0,1,2], "edges": [[0,1],[1,2]], "rotation": {"0": [1, 2]}}'
    with pytest.raises(InvalidRotation):
        load_graph(doc)


def test_load_rejects_multi_edge_and_loop():
    with pytest.raises(MultiEdge):
        load_graph('{"vertices": [0,1], "edges": [[0,1],[1,0]]}')
    with pytest.raises(MultiEdge):
        load_graph('{"vertices": [0], "edges": [[0,0]]}')


def test_load_rejects_malformed():
    with pytest.raises(ParseError):
        load_graph('{"vertices": [0,1]}')
    with pytest.raises(ParseError):
        load_graph('not json')


def test_petersen_corpus():
    g = corpus_graph("petersen")
    assert g.n == 10 and g.m == 15
    assert classify(g).regular_degree == 3


def test_document_round_trip():
    g = corpus_graph("nested3")
    doc = graph_to_document(g)
    again = load_graph(doc)
    assert again.edges() == g.edges()
    assert again.rotation == g.rotation


def test_degeneracy_tree():
    g = build_graph(list(range(6)), [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    _, d = degeneracy_order(g)
    assert d == 1


def test_degeneracy_octahedron_matches_oracle():
    g = octahedron()
    _, d = degeneracy_order(g)
    assert d == brute_force_degeneracy(g.n, g.edges())
    assert d == 4  # 4-regular, so the whole graph is the densest subgraph


def test_degeneracy_fan_matches_oracle():
    g = maximal_outerplanar_fan(6)
    _, d = degeneracy_order(g)
    assert d == brute_force_degeneracy(g.n, g.edges()) == 2


def test_degeneracy_order_is_valid_elimination():
    rng = random.Random(4)
    for _ in range(50):
        g = random_graph(rng.randint(2, 12), rng.uniform(0.1, 0.7), rng)
        order, d = degeneracy_order(g)
        seen = set()
        for v in order:
            residual = len([w for w in g.adjacency[v] if w not in seen])
            assert residual <= d
            seen.add(v)


def test_degeneracy_randomized_against_oracle():
    rng = random.Random(8)
    for _ in range(200):
        g = random_graph(rng.randint(2, 12), rng.uniform(0.1, 0.8), rng)
        if g.m == 0:
            continue
        _, d = degeneracy_order(g)
        assert d == brute_force_degeneracy(g.n, g.edges())


def test_classify_k44():
    prof = classify(complete_bipartite(4, 4))
    assert prof.regular_degree == 4
    assert prof.bipartite
    assert prof.bridgeless


def test_classify_no_pm_cubic():
    g = corpus_graph("no_pm_cubic")
    prof = classify(g)
    assert g.n == 16
    assert prof.regular_degree == 3
    assert not prof.bridgeless
    bs = bridges(g)
    assert len(bs) == 3  # the three center spokes
    assert all(0 in e for e in bs)


def test_classify_paley13():
    prof = classify(corpus_graph("paley13"))
    assert prof.regular_degree == 6
    assert not prof.bipartite
    assert prof.bridgeless


def test_classify_cube():
    prof = classify(cube())
    assert prof.regular_degree == 3 and prof.bipartite and prof.bridgeless
    assert prof.degeneracy == 3


def test_classify_agrees_with_recomputation_on_corpus():
    for name in ("petersen", "wagner", "k44", "paley13", "nauru",
                 "nested2", "nested3", "nested4", "no_pm_cubic"):
        g = corpus_graph(name)
        prof = classify(g)
        degs = [g.degree(v) for v in range(g.n)]
        assert prof.n == g.n and prof.m == g.m
        if prof.regular_degree is not None:
            assert all(dd == prof.regular_degree for dd in degs)
        if prof.coloring is not None:
            assert all(prof.coloring[u] != prof.coloring[v] for u, v in g.edges())
        assert sum(len(c) for c in prof.components) == g.n
        assert prof.bridgeless == (len(bridges(g)) == 0)
