"""Suspended trees and forests, their sphere embeddings, and apex normalisation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union

from .embedding import RotationSystem, faces, make_rotation, tail
from .graph import (
    GraphError,
    Multigraph,
    connected_components,
    contract_edge,
    delete_edge,
    induced_subgraph,
    is_forest,
    is_tree,
    leaves,
)


class SuspensionError(GraphError):
    """Input is not of the shape a suspension operation requires."""


@dataclass(frozen=True)
class SuspendedTree:
    """A tree (or forest) plus an apex joined once to each of its leaves."""

    graph: Multigraph
    apex: int
    base: tuple[int, ...]
    leaf_map: dict[int, int] = field(compare=False)  # leaf -> apex edge id

    def to_json(self) -> dict[str, Any]:
        return {"apex": self.apex, "base_vertices": list(self.base)}


def suspend_forest(forest: Multigraph) -> SuspendedTree:
    """Add one apex adjacent to every leaf of every component."""
    if not is_forest(forest):
        raise SuspensionError("input is not a forest")
    for comp in connected_components(forest):
        if len(comp) == 1:
            raise SuspensionError(f"component {{{comp[0]}}} is a single vertex; every tree needs an edge")
    apex = forest.n
    lvs = leaves(forest)
    edges = forest.edges + tuple((leaf, apex) for leaf in lvs)
    leaf_map = {leaf: forest.m + i for i, leaf in enumerate(lvs)}
    return SuspendedTree(Multigraph(forest.n + 1, edges), apex, tuple(range(forest.n)), leaf_map)


def suspend_tree(tree: Multigraph) -> SuspendedTree:
    if tree.n == 1:
        raise SuspensionError("K1 has no leaves to suspend; the tree needs at least one edge")
    if not is_tree(tree):
        raise SuspensionError("input is not a tree")
    return suspend_forest(tree)


def _leaf_order(forest: Multigraph, rot: RotationSystem, comp: list[int]) -> list[int]:
    """Leaves of one tree component in the order its single face walk meets them."""
    members = set(comp)
    walk = next(w for w in faces(forest, rot) if tail(forest, w[0]) in members)
    deg = forest.degrees()
    return [tail(forest, d) for d in walk if deg[tail(forest, d)] == 1]


def suspend_forest_embedded(
    forest: Multigraph, rot: RotationSystem
) -> tuple[SuspendedTree, RotationSystem]:
    """Suspend with the apex drawn inside the outer face of every tree.

    Around the apex each tree contributes its leaves in the reverse of their
    face-walk order; trees follow one another by smallest vertex.
    """
    st = suspend_forest(forest)
    g = st.graph
    cycles = [list(c) for c in rot.cycles] + [[]]
    for comp in connected_components(forest):
        order = _leaf_order(forest, rot, comp)
        for leaf in reversed(order):
            e = st.leaf_map[leaf]
            cycles[st.apex].append(2 * e + 1)
        for leaf in order:
            cycles[leaf].append(2 * st.leaf_map[leaf])
    return st, make_rotation(g, cycles)


def suspend_tree_embedded(tree: Multigraph, rot: RotationSystem) -> tuple[SuspendedTree, RotationSystem]:
    if tree.n == 1:
        raise SuspensionError("K1 has no leaves to suspend; the tree needs at least one edge")
    if not is_tree(tree):
        raise SuspensionError("input is not a tree")
    return suspend_forest_embedded(tree, rot)


def base_tree(g: Multigraph, apex: int) -> Multigraph:
    """Return ``T`` for ``g = S_T`` with the given apex, or raise."""
    if not 0 <= apex < g.n:
        raise SuspensionError(f"apex {apex} does not exist")
    rest = [v for v in range(g.n) if v != apex]
    tree, _ = induced_subgraph(g, rest)
    if tree.m == 0 or not is_tree(tree):
        raise SuspensionError("graph minus the apex is not a tree with an edge")
    nbrs = []
    for e in g.incident(apex):
        if g.is_loop(e):
            raise SuspensionError("apex carries a loop")
        nbrs.append(g.other(e, apex))
    expected = [v if v < apex else v + 1 for v in leaves(tree)]
    if sorted(nbrs) != expected:
        raise SuspensionError("apex must be joined exactly once to each leaf of the tree")
    return tree


# -- apex normalisation -----------------------------------------------------


@dataclass(frozen=True)
class LoopDeletion:
    edge: int
    kind: str = field(default="LoopDeletion", init=False)


@dataclass(frozen=True)
class ParallelPairDeletion:
    vertex: int
    edges: tuple[int, int]
    kind: str = field(default="ParallelPairDeletion", init=False)


@dataclass(frozen=True)
class LeafUntwistContraction:
    edge: int
    kind: str = field(default="LeafUntwistContraction", init=False)


@dataclass(frozen=True)
class PathAttachment:
    vertex: int
    p: int
    q: int
    kind: str = field(default="PathAttachment", init=False)


NormalizationStep = Union[LoopDeletion, ParallelPairDeletion, LeafUntwistContraction, PathAttachment]


def step_to_json(step: NormalizationStep) -> dict[str, Any]:
    if isinstance(step, LoopDeletion):
        return {"kind": step.kind, "edge": step.edge}
    if isinstance(step, ParallelPairDeletion):
        return {"kind": step.kind, "vertex": step.vertex, "edges": list(step.edges)}
    if isinstance(step, LeafUntwistContraction):
        return {"kind": step.kind, "edge": step.edge}
    return {"kind": step.kind, "vertex": step.vertex, "p": step.p, "q": step.q}


def step_from_json(obj: dict[str, Any]) -> NormalizationStep:
    kind = obj.get("kind")
    if kind == "LoopDeletion":
        return LoopDeletion(int(obj["edge"]))
    if kind == "ParallelPairDeletion":
        e1, e2 = obj["edges"]
        return ParallelPairDeletion(int(obj["vertex"]), (int(e1), int(e2)))
    if kind == "LeafUntwistContraction":
        return LeafUntwistContraction(int(obj["edge"]))
    if kind == "PathAttachment":
        return PathAttachment(int(obj["vertex"]), int(obj["p"]), int(obj["q"]))
    raise ValueError(f"unknown normalisation step kind {kind!r}")


@dataclass(frozen=True)
class NormalizedApex:
    """Outcome of :func:`normalize_apex`.

    ``suspended`` is ``None`` exactly when the tree collapsed to one vertex;
    ``degenerate_l`` then holds the link count read off directly.
    """

    graph: Multigraph
    apex: int
    trace: tuple[NormalizationStep, ...]
    suspended: SuspendedTree | None
    tree: Multigraph | None
    degenerate_l: int | None = None


def _apex_edges_to(g: Multigraph, apex: int, x: int) -> list[int]:
    return [e for e in g.incident(apex) if g.other(e, apex) == x and not g.is_loop(e)]


def _tree_degree(g: Multigraph, apex: int, x: int) -> int:
    return sum(1 for e in g.incident(x) if g.other(e, x) != apex)


def _shift_after_contract(g: Multigraph, e: int, v: int) -> int:
    gone = max(g.edges[e])
    return v - 1 if v > gone else v


def apply_step(g: Multigraph, apex: int, step: NormalizationStep) -> tuple[Multigraph, int]:
    """Apply one normalisation step; returns the new graph and apex id."""
    if isinstance(step, LoopDeletion):
        a, b = g.edges[step.edge]
        if not a == b == apex:
            raise SuspensionError(f"edge {step.edge} is not a loop at the apex")
        return delete_edge(g, step.edge), apex
    if isinstance(step, ParallelPairDeletion):
        e1, e2 = step.edges
        both = _apex_edges_to(g, apex, step.vertex)
        if e1 >= e2 or e1 not in both or e2 not in both:
            raise SuspensionError(f"edges {step.edges} are not parallel apex edges at {step.vertex}")
        return delete_edge(delete_edge(g, e2), e1), apex
    if isinstance(step, LeafUntwistContraction):
        e = step.edge
        a, b = g.edges[e]
        if apex in (a, b) or a == b or not (g.degree(a) == 1 or g.degree(b) == 1):
            raise SuspensionError(f"edge {e} is not a pendant tree edge")
        return contract_edge(g, e), _shift_after_contract(g, e, apex)
    x, p, q = step.vertex, step.p, step.q
    found = _apex_edges_to(g, apex, x)
    if len(found) != 1 or (p, q) != (g.n, g.n + 1):
        raise SuspensionError(f"path attachment at {x} does not match the graph")
    e = found[0]
    a, b = g.edges[e]
    rerouted = (a, q) if a == apex else (q, b)
    edges = g.edges[:e] + (rerouted,) + g.edges[e + 1 :] + ((x, p), (p, q))
    return Multigraph(g.n + 2, edges), apex


def replay_normalization(
    g: Multigraph, apex: int, steps: tuple[NormalizationStep, ...] | list[NormalizationStep]
) -> tuple[Multigraph, int]:
    for step in steps:
        g, apex = apply_step(g, apex, step)
    return g, apex


def normalize_apex(g: Multigraph, apex: int) -> NormalizedApex:
    """Rewrite an apex-plus-tree graph into a suspended tree with the same link count.

    Moves run to a fixpoint in this order: drop apex loops, drop apex
    parallel pairs, untwist tree leaves the apex misses, then give every apex
    edge that lands on an inner tree vertex a private two-edge path.
    """
    if not 0 <= apex < g.n:
        raise SuspensionError(f"apex {apex} does not exist")
    rest, _ = induced_subgraph(g, [v for v in range(g.n) if v != apex])
    if not is_tree(rest):
        raise SuspensionError("graph minus the apex is not a tree")

    trace: list[NormalizationStep] = []

    def do(step: NormalizationStep) -> None:
        nonlocal g, apex
        g, apex = apply_step(g, apex, step)
        trace.append(step)

    while True:
        loops = [e for e in g.incident(apex) if g.is_loop(e)]
        if not loops:
            break
        do(LoopDeletion(loops[0]))

    for x in range(g.n):
        if x == apex:
            continue
        while len(found := _apex_edges_to(g, apex, x)) >= 2:
            do(ParallelPairDeletion(x, (found[0], found[1])))

    while g.n > 2:
        pendant = None
        for x in range(g.n):
            if x != apex and g.degree(x) == 1 and _tree_degree(g, apex, x) == 1:
                pendant = x
                break
        if pendant is None:
            break
        do(LeafUntwistContraction(g.incident(pendant)[0]))

    if g.n == 2:
        l = 1 if g.m == 1 else 2
        return NormalizedApex(g, apex, tuple(trace), None, None, l)

    inner = [
        x
        for x in range(g.n)
        if x != apex and _apex_edges_to(g, apex, x) and _tree_degree(g, apex, x) >= 2
    ]
    for x in inner:
        do(PathAttachment(x, g.n, g.n + 1))

    tree = base_tree(g, apex)
    base = tuple(v for v in range(g.n) if v != apex)
    leaf_map = {g.other(e, apex): e for e in g.incident(apex)}
    return NormalizedApex(g, apex, tuple(trace), SuspendedTree(g, apex, base, leaf_map), tree)


def embed_suspended(g: Multigraph, apex: int, tree_rot: RotationSystem | None = None) -> RotationSystem:
    """Sphere rotation for ``g = S_T`` under its own vertex and edge ids.

    The suspension is built on the base tree with :func:`suspend_tree_embedded`
    (default tree rotation unless ``tree_rot`` is given) and carried back.
    """
    from .embedding import default_embedding

    tree = base_tree(g, apex)
    base = [v for v in range(g.n) if v != apex]
    st, rot = suspend_tree_embedded(tree, tree_rot or default_embedding(tree))
    tree_edges = [e for e in range(g.m) if apex not in g.edges[e]]
    apex_edge = {g.other(e, apex): e for e in g.incident(apex)}
    to_g_vertex = base + [apex]
    edge_map = list(tree_edges) + [apex_edge[base[leaf]] for leaf in sorted(st.leaf_map)]
    cycles: list[list[int]] = [[] for _ in range(g.n)]
    for v, cyc in enumerate(rot.cycles):
        gv = to_g_vertex[v]
        for d in cyc:
            e = edge_map[d >> 1]
            cycles[gv].append(2 * e + (0 if g.edges[e][0] == gv else 1))
    return make_rotation(g, cycles)
