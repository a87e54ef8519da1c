import pytest

from linkcomp.corpus import random_apex_graph
from linkcomp.embedding import default_embedding, random_embedding, strand_components, validate_genus0
from linkcomp.graph import build_graph, disjoint_union, is_simple, leaves, random_tree
from linkcomp.oracles import l_from_bicycle
from linkcomp.reduction import l_suspended
from linkcomp.rng import derive_seed
from linkcomp.suspension import (
    LeafUntwistContraction,
    ParallelPairDeletion,
    PathAttachment,
    SuspensionError,
    base_tree,
    embed_suspended,
    normalize_apex,
    replay_normalization,
    step_from_json,
    step_to_json,
    suspend_forest,
    suspend_forest_embedded,
    suspend_tree,
    suspend_tree_embedded,
)

from conftest import cycle, path, star


def _same_graph(a, b):
    return a.n == b.n and sorted(tuple(sorted(e)) for e in a.edges) == sorted(tuple(sorted(e)) for e in b.edges)


def test_k2_suspends_to_triangle():
    st = suspend_tree(path(2))
    assert _same_graph(st.graph, cycle(3))
    assert st.apex == 2 and st.base == (0, 1)


def test_p4_suspends_to_c5():
    st, rot = suspend_tree_embedded(path(4), default_embedding(path(4)))
    assert _same_graph(st.graph, cycle(5))
    assert validate_genus0(st.graph, rot) == 2


def test_star_suspends_to_k2n():
    st, rot = suspend_tree_embedded(star(3), default_embedding(star(3)))
    assert sorted(st.graph.degrees()) == [1 + 1] * 3 + [3, 3]
    assert strand_components(st.graph, rot).l == 3


def test_k1_and_non_tree_rejected():
    with pytest.raises(SuspensionError):
        suspend_tree(build_graph(1, []))
    with pytest.raises(SuspensionError):
        suspend_tree(cycle(3))
    with pytest.raises(SuspensionError):
        suspend_forest(disjoint_union(path(2), build_graph(1, [])))


def test_suspend_forest_examples():
    st = suspend_forest(disjoint_union(path(2), path(2)))
    assert st.graph.degree(st.apex) == 4
    bowtie_degrees = sorted(st.graph.degrees())
    assert bowtie_degrees == [2, 2, 2, 2, 4]
    assert suspend_forest(star(3)) == suspend_tree(star(3))
    assert suspend_forest(disjoint_union(path(3), path(2))).graph.degree(5) == 4


def test_apex_degree_matches_leaf_count():
    for s in range(30):
        t = random_tree(2 + s % 20, s)
        st = suspend_tree(t)
        assert st.graph.degree(st.apex) == len(leaves(t))
        assert base_tree(st.graph, st.apex) == t


@pytest.mark.parametrize("s", range(100))
def test_embedded_suspension_is_plane(s):
    t = random_tree(20, derive_seed(5, s))
    st, rot = suspend_tree_embedded(t, random_embedding(t, s))
    validate_genus0(st.graph, rot)
    assert strand_components(st.graph, rot).l == l_from_bicycle(st.graph).l <= len(leaves(t))


def test_forest_embedding_is_plane():
    f = disjoint_union(random_tree(6, 1), random_tree(4, 2), path(2))
    st, rot = suspend_forest_embedded(f, random_embedding(f, 9))
    validate_genus0(st.graph, rot)
    assert strand_components(st.graph, rot).l == l_from_bicycle(st.graph).l


def test_base_tree_rejects_wrong_shapes():
    with pytest.raises(SuspensionError):
        base_tree(star(3), 0)
    g = build_graph(4, [[0, 1], [1, 2], [3, 0], [3, 1], [3, 2]])
    with pytest.raises(SuspensionError):
        base_tree(g, 3)


def test_normalize_identity_on_suspended_tree():
    st = suspend_tree(star(3))
    norm = normalize_apex(st.graph, st.apex)
    assert norm.trace == ()
    assert norm.graph == st.graph


def test_normalize_double_edge_to_leaf():
    # P4 0-1-2-3 with apex 4 joined twice to 0 and once to 3
    g = build_graph(5, [[0, 1], [1, 2], [2, 3], [4, 0], [4, 0], [4, 3]])
    norm = normalize_apex(g, 4)
    assert isinstance(norm.trace[0], ParallelPairDeletion)
    assert isinstance(norm.trace[1], LeafUntwistContraction)
    assert l_from_bicycle(norm.graph).l == l_from_bicycle(g).l


def test_normalize_p3_apex_on_all_three():
    # a=0, m=1, b=2, apex 3
    g = build_graph(4, [[0, 1], [1, 2], [3, 0], [3, 2], [3, 1]])
    norm = normalize_apex(g, 3)
    assert norm.trace == (PathAttachment(1, 4, 5),)
    assert norm.graph.n == 6
    assert set(g.other(e, 3) for e in [2, 3, 4]) == {0, 1, 2}
    assert {norm.graph.other(e, 3) for e in norm.graph.incident(3)} == {0, 2, 5}
    assert l_from_bicycle(g).l == l_from_bicycle(norm.graph).l == 2
    assert l_suspended(norm.tree).l == 2


def test_normalize_degenerate_outcomes():
    # apex joined twice to one leaf of K2: everything untwists away
    g = build_graph(3, [[0, 1], [2, 0], [2, 0]])
    norm = normalize_apex(g, 2)
    assert norm.suspended is None
    assert norm.degenerate_l == l_from_bicycle(g).l == 2
    # apex joined once to one leaf of K2: collapses to K2
    g = build_graph(3, [[0, 1], [2, 0]])
    norm = normalize_apex(g, 2)
    assert norm.degenerate_l == l_from_bicycle(g).l == 1


def test_normalize_rejects_non_tree():
    with pytest.raises(SuspensionError):
        normalize_apex(build_graph(4, [[0, 1], [1, 2], [2, 0], [3, 0]]), 3)
    with pytest.raises(SuspensionError):
        normalize_apex(build_graph(3, [[0, 1], [0, 1], [2, 0]]), 2)


@pytest.mark.parametrize("s", range(60))
def test_normalize_preserves_l_and_replays(s):
    g, apex = random_apex_graph(3 + s % 12, derive_seed(17, s))
    norm = normalize_apex(g, apex)
    assert l_from_bicycle(norm.graph).l == l_from_bicycle(g).l
    assert replay_normalization(g, apex, norm.trace) == (norm.graph, norm.apex)
    steps = [step_from_json(step_to_json(x)) for x in norm.trace]
    assert tuple(steps) == norm.trace
    if norm.suspended is not None:
        assert is_simple(norm.graph)
        rot = embed_suspended(norm.graph, norm.apex)
        assert strand_components(norm.graph, rot).l == l_suspended(norm.tree).l == l_from_bicycle(g).l
