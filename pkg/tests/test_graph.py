import collections

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkcomp.graph import (
    GraphError,
    blocks,
    build_graph,
    connected_components,
    contract_edge,
    delete_edge,
    delete_vertex,
    disjoint_union,
    is_tree,
    leaves,
    prufer_to_edges,
    random_tree,
)
from linkcomp.rng import SplitMix64, derive_seed

from conftest import cycle, path, star


def test_build_path_degrees():
    g = build_graph(3, [[0, 1], [1, 2]])
    assert g.degrees() == [1, 2, 1]


def test_loop_counts_twice():
    g = build_graph(1, [[0, 0]])
    assert g.degree(0) == 2
    assert g.degrees() == [2]


def test_double_edge_distinct_ids():
    g = build_graph(2, [[0, 1], [0, 1]])
    assert g.m == 2
    assert g.incident(0) == (0, 1)


def test_isolated_vertices_allowed():
    g = build_graph(5, [[0, 1]])
    assert g.degrees() == [1, 1, 0, 0, 0]


@pytest.mark.parametrize("edges", [[[0, 3]], [[-1, 0]], [[0, 1, 2]]])
def test_build_rejects_bad_endpoints(edges):
    with pytest.raises(GraphError):
        build_graph(3, edges)


def test_leaves():
    assert leaves(path(3)) == [0, 2]
    assert leaves(path(2)) == [0, 1]
    assert leaves(star(3)) == [1, 2, 3]


def test_contract_p3_gives_k2():
    for e in (0, 1):
        h = contract_edge(path(3), e)
        assert h.n == 2 and h.edges == ((0, 1),)


def test_contract_triangle_makes_double_edge():
    h = contract_edge(cycle(3), 0)
    assert h.n == 2
    assert sorted(tuple(sorted(e)) for e in h.edges) == [(0, 1), (0, 1)]


def test_contract_parallel_becomes_loop():
    h = contract_edge(build_graph(2, [[0, 1], [0, 1]]), 0)
    assert h.edges == ((0, 0),)


def test_contract_loop_rejected():
    with pytest.raises(GraphError):
        contract_edge(build_graph(1, [[0, 0]]), 0)


def test_contract_lower_id_survives():
    g = build_graph(4, [[1, 3], [3, 0], [2, 1]])
    h = contract_edge(g, 0)
    # 3 merges into 1; nothing above 3 shifts
    assert h.edges == ((1, 0), (2, 1))


def test_deletions():
    assert delete_vertex(path(3), 1) == build_graph(2, [])
    assert delete_edge(build_graph(2, [[0, 1], [0, 1]]), 1) == build_graph(2, [[0, 1]])
    assert delete_vertex(star(3), 3) == star(2)
    with pytest.raises(GraphError):
        delete_edge(path(3), 5)
    with pytest.raises(GraphError):
        delete_vertex(path(3), 3)


def test_components_and_is_tree():
    assert is_tree(path(5))
    assert not is_tree(cycle(4))
    two = disjoint_union(path(2), path(2))
    assert connected_components(two) == [[0, 1], [2, 3]]
    assert not is_tree(two)
    assert not is_tree(build_graph(2, [[0, 1], [0, 1]]))
    assert is_tree(build_graph(1, []))


def test_blocks_bowtie():
    bowtie = build_graph(5, [[0, 1], [1, 2], [2, 0], [2, 3], [3, 4], [4, 2]])
    bd = blocks(bowtie)
    assert len(bd.blocks) == 2
    assert bd.cut_vertices == {2}


def test_blocks_tree_and_cycle():
    bd = blocks(path(5))
    assert bd.blocks == ((0,), (1,), (2,), (3,))
    assert bd.cut_vertices == {1, 2, 3}
    bd = blocks(cycle(4))
    assert bd.blocks == ((0, 1, 2, 3),)
    assert bd.cut_vertices == frozenset()


def test_blocks_parallel_and_loops():
    g = build_graph(3, [[0, 1], [0, 1], [1, 2], [2, 2], [0, 0]])
    bd = blocks(g)
    assert bd.blocks == ((0, 1, 4), (2, 3))
    assert bd.cut_vertices == {1}
    only_loops = blocks(build_graph(2, [[0, 0], [0, 0]]))
    assert only_loops.blocks == ((0, 1),)


def _random_multigraph(n, m, seed):
    rng = SplitMix64(seed)
    return build_graph(n, [[rng.below(n), rng.below(n)] for _ in range(m)])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 9), st.integers(0, 14), st.integers(0, 2**32))
def test_blocks_match_networkx(n, m, seed):
    g = _random_multigraph(n, m, seed)
    bd = blocks(g)
    assert sorted(e for b in bd.blocks for e in b) == list(range(g.m))
    simple = nx.Graph([(a, b) for a, b in g.edges if a != b])
    simple.add_nodes_from(range(n))
    assert bd.cut_vertices == set(nx.articulation_points(simple))
    ours = sorted(tuple(bd.block_vertices(g, i)) for i, b in enumerate(bd.blocks) if not all(g.is_loop(e) for e in b))
    theirs = sorted(tuple(sorted(c)) for c in nx.biconnected_components(simple))
    assert ours == theirs
    base = len(connected_components(g))
    for v in bd.cut_vertices:
        assert len(connected_components(delete_vertex(g, v))) > base - (1 if g.degree(v) == 0 else 0)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 9), st.integers(0, 14), st.integers(0, 2**32))
def test_edit_size_invariants(n, m, seed):
    g = _random_multigraph(n, m, seed)
    for e in range(g.m):
        assert delete_edge(g, e).m == g.m - 1
        if not g.is_loop(e):
            h = contract_edge(g, e)
            assert (h.n, h.m) == (g.n - 1, g.m - 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 30), st.integers(0, 2**64 - 1))
def test_leaf_deletion_keeps_tree(n, seed):
    t = random_tree(n, seed)
    for leaf in leaves(t):
        assert is_tree(delete_vertex(t, leaf))


def test_random_tree_contract():
    assert random_tree(2, 12345).edges == ((0, 1),)
    assert random_tree(7, 99) == random_tree(7, 99)
    t = random_tree(50, 4)
    assert t.m == 49 and is_tree(t)
    with pytest.raises(GraphError):
        random_tree(0, 1)


def test_random_tree_frozen_output():
    # pins the documented Prüfer + SplitMix64 pipeline
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
    assert random_tree(6, 3).edges == ((0, 3), (1, 3), (2, 3), (3, 5), (4, 5))


def test_prufer_decode_known():
    # sequence (3, 3, 3, 4) on 6 vertices: leaves 0, 1, 2 hang off 3; 3-4; 4-5
    assert prufer_to_edges([3, 3, 3, 4], 6) == [(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]


def test_random_tree_uniform_on_four_vertices():
    draws = 10_000
    counts = collections.Counter(random_tree(4, derive_seed(2024, i)).edges for i in range(draws))
    assert len(counts) == 16
    p = 1 / 16
    sigma = (draws * p * (1 - p)) ** 0.5
    for c in counts.values():
        assert abs(c - draws * p) <= 5 * sigma
