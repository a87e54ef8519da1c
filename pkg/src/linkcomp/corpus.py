"""Seeded instance generators shared by the cross-check harness, bench and tests."""

from __future__ import annotations

from .embedding import RotationSystem, faces, insert_at_corners, random_embedding
from .graph import Multigraph, disjoint_union, random_tree
from .rng import SplitMix64, derive_seed
from .suspension import SuspendedTree, suspend_forest_embedded, suspend_tree_embedded


def random_plane_graph(n: int, extra_edges: int, seed: int) -> tuple[Multigraph, RotationSystem]:
    """Random tree in a random embedding, then ``extra_edges`` face insertions.

    Each insertion picks a face uniformly, then two corners of its walk
    uniformly (equal corners give a loop). The result is always spherical.
    """
    rng = SplitMix64(seed)
    g = random_tree(n, rng.next_u64())
    rot = random_embedding(g, rng.next_u64())
    for _ in range(extra_edges):
        if g.m == 0:
            g, rot = insert_at_corners(g, rot, None, None, 0)
            continue
        walks = faces(g, rot)
        walk = walks[rng.below(len(walks))]
        du = walk[rng.below(len(walk))]
        dw = walk[rng.below(len(walk))]
        g, rot = insert_at_corners(g, rot, du, dw)
    return g, rot


def random_suspended_tree(n: int, seed: int) -> tuple[Multigraph, SuspendedTree, RotationSystem]:
    """Random tree on ``n >= 2`` vertices with its suspension in a random embedding."""
    tree = random_tree(n, seed)
    st, rot = suspend_tree_embedded(tree, random_embedding(tree, derive_seed(seed, 1)))
    return tree, st, rot


def random_forest(sizes: list[int], seed: int) -> Multigraph:
    return disjoint_union(*(random_tree(k, derive_seed(seed, i)) for i, k in enumerate(sizes)))


def random_suspended_forest(sizes: list[int], seed: int) -> tuple[Multigraph, SuspendedTree, RotationSystem]:
    forest = random_forest(sizes, seed)
    st, rot = suspend_forest_embedded(forest, random_embedding(forest, derive_seed(seed, 99)))
    return forest, st, rot


def random_apex_graph(n: int, seed: int, max_mult: int = 3, max_loops: int = 2) -> tuple[Multigraph, int]:
    """Tree on ``n`` vertices plus apex ``n`` joined to each tree vertex
    0..max_mult times, carrying 0..max_loops loops."""
    rng = SplitMix64(seed)
    tree = random_tree(n, rng.next_u64())
    apex = n
    edges = list(tree.edges)
    for x in range(n):
        edges.extend([(x, apex)] * rng.below(max_mult + 1))
    edges.extend([(apex, apex)] * rng.below(max_loops + 1))
    return Multigraph(n + 1, tuple(edges)), apex


def glue(
    g1: Multigraph, rot1: RotationSystem, u1: int, g2: Multigraph, rot2: RotationSystem, u2: int
) -> tuple[Multigraph, RotationSystem]:
    """Identify ``u2`` of ``g2`` with ``u1`` of ``g1``; ``g2`` sits in one corner of ``u1``."""
    index = {}
    nxt = g1.n
    for v in range(g2.n):
        if v == u2:
            index[v] = u1
        else:
            index[v] = nxt
            nxt += 1
    shift = 2 * g1.m
    edges = g1.edges + tuple((index[a], index[b]) for a, b in g2.edges)
    cycles = [list(c) for c in rot1.cycles] + [[] for _ in range(g2.n - 1)]
    for v in range(g2.n):
        cycles[index[v]].extend(d + shift for d in rot2.cycles[v])
    return Multigraph(nxt, edges), RotationSystem(tuple(tuple(c) for c in cycles))


def random_glued_graph(parts: int, max_n: int, seed: int) -> tuple[Multigraph, RotationSystem]:
    """Chain of small plane graphs glued at random vertices (cut vertices guaranteed)."""
    rng = SplitMix64(seed)

    def piece() -> tuple[Multigraph, RotationSystem]:
        n = 2 + rng.below(max(1, max_n - 1))
        return random_plane_graph(n, rng.below(4), rng.next_u64())

    g, rot = piece()
    for _ in range(parts - 1):
        h, hrot = piece()
        g, rot = glue(g, rot, rng.below(g.n), h, hrot, rng.below(h.n))
    return g, rot


def suspended_tree_with_edges(m: int, seed: int) -> Multigraph:
    """Random recursive tree grown until its suspension has exactly ``m`` edges.

    Attaching a vertex to a leaf adds one suspension edge, to an inner vertex
    two; the final step attaches to a leaf when only one edge is missing.
    """
    if m < 3:
        raise ValueError("a suspended tree has at least 3 edges")
    rng = SplitMix64(seed)
    edges = [(0, 1)]
    deg = [1, 1]
    leaf_list = [0, 1]
    where = {0: 0, 1: 1}
    total = 3
    while total < m:
        parent = rng.below(len(deg))
        if m - total == 1 and deg[parent] != 1:
            parent = leaf_list[rng.below(len(leaf_list))]
        child = len(deg)
        edges.append((parent, child))
        total += 1 if deg[parent] == 1 else 2
        if deg[parent] == 1:
            i = where.pop(parent)
            last = leaf_list.pop()
            if last != parent:
                leaf_list[i] = last
                where[last] = i
        deg[parent] += 1
        deg.append(1)
        where[child] = len(leaf_list)
        leaf_list.append(child)
    return Multigraph(len(deg), tuple(edges))

