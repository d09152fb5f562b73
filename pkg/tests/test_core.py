import numpy as np
import pytest

import rectaspec as rs
from rectaspec.core import (components, disjoint_union, is_rectagraph,
                            quadrangle_count, quadrangles)
from rectaspec.switching import switch


def c4_one_negative():
    return rs.SignedGraph.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, -1)])


def test_signed_graph_validation():
    with pytest.raises(ValueError):
        rs.SignedGraph(np.array([[0, 1], [0, 0]], dtype=np.int8))  # asymmetric
    with pytest.raises(ValueError):
        rs.SignedGraph(np.array([[1]], dtype=np.int8))  # diagonal
    with pytest.raises(ValueError):
        rs.SignedGraph(np.array([[0, 2], [2, 0]], dtype=np.int8))  # entry range
    with pytest.raises(ValueError):
        rs.SignedGraph.from_edges(3, [(0, 1, 1), (0, 1, -1)])  # duplicate


def test_underlying_erases_signs():
    assert rs.underlying(c4_one_negative()) == rs.underlying(
        rs.UnderlyingGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).all_positive())
    tetra = rs.signed_tetrahedron()
    u = rs.underlying(tetra)
    assert u.degrees == (3, 3, 3, 3)
    assert np.all(np.abs(tetra.adj) == u.adj)


def test_structure_report_k22():
    rep = rs.structure_report(rs.catalog("K22"))
    assert rep.regular and rep.degree == 2
    assert rep.bipartite and rep.triangle_free and rep.zero_two
    assert rep.quadrangle_count == 1


def test_structure_report_k4():
    rep = rs.structure_report(rs.catalog("K4"))
    assert rep.regular and rep.degree == 3
    assert rep.zero_two and not rep.triangle_free


def test_structure_report_q4():
    rep = rs.structure_report(rs.hypercube(4))
    assert rep.regular and rep.degree == 4
    assert rep.zero_two
    # brute-force 4-cycle count over all vertex quadruples as the oracle
    q4 = rs.hypercube(4)
    from itertools import combinations, permutations
    count = 0
    for quad in combinations(range(16), 4):
        for perm in permutations(quad):
            if perm[0] == min(perm) and perm[1] < perm[3]:
                a, b, c, d = perm
                if all(q4.adj[x, y] for x, y in [(a, b), (b, c), (c, d), (d, a)]):
                    count += 1
    assert rep.quadrangle_count == count == 24


def test_common_neighbour_profile():
    # four cross pairs share nothing, the two within-side pairs share both
    # opposite vertices
    assert rs.common_neighbour_profile(rs.catalog("K22")) == [0, 0, 0, 0, 2, 2]
    p3 = rs.UnderlyingGraph.from_edges(3, [(0, 1), (1, 2)])
    assert rs.common_neighbour_profile(p3) == [0, 0, 1]
    clebsch = rs.clebsch_graph()
    assert set(rs.common_neighbour_profile(clebsch)) == {0, 2}


def test_zero_two_vacuous_small_orders():
    k1 = rs.SignedGraph(np.zeros((1, 1), dtype=np.int8))
    assert rs.structure_report(k1).zero_two
    with pytest.raises(ValueError):
        rs.common_neighbour_profile(k1)


def test_zero_two_implies_regular_on_random_graphs():
    # every zero-two graph seen in a random sweep must be regular
    import random

    rng = random.Random(7)
    seen_zero_two = 0
    for _ in range(300):
        n = rng.randint(2, 8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.45]
        g = rs.UnderlyingGraph.from_edges(n, edges)
        rep = rs.structure_report(g)
        if rep.zero_two and rep.connected:
            seen_zero_two += 1
            assert rep.regular
    assert seen_zero_two > 0


def test_quadrangle_count_invariant_under_relabel_and_switch():
    from rectaspec.switching import relabel

    g = rs.signed_cube(3)
    assert quadrangle_count(g) == 6
    assert quadrangle_count(relabel(g, [3, 1, 0, 2, 7, 5, 4, 6])) == 6
    assert quadrangle_count(switch(g, {0, 5})) == 6


def test_quadrangle_listing_matches_count():
    for g in [rs.hypercube(3), rs.clebsch_graph(), rs.catalog("K4")]:
        assert len(quadrangles(g)) == quadrangle_count(g)


def test_components_and_disconnected_inputs():
    g = disjoint_union(c4_one_negative(), rs.signed_cube(1))
    comps = components(g)
    assert sorted(map(len, comps)) == [2, 4]
    rep = rs.structure_report(g)
    assert not rep.connected
    assert not rep.regular  # degrees 2 and 1


def test_delete_vertices():
    g = rs.signed_cube(2)
    h = rs.delete_vertices(g, {0})
    assert h.n == 3
    with pytest.raises(ValueError):
        rs.delete_vertices(g, {0, 1, 2, 3})


def test_is_rectagraph():
    assert is_rectagraph(rs.hypercube(3))
    assert is_rectagraph(rs.clebsch_graph())
    assert not is_rectagraph(rs.catalog("K4"))  # triangles
