"""Multigraphs with dense integer ids, elementary edits and structural queries.

Graphs are immutable values. Every edit returns a new graph whose vertex and
edge ids are re-compacted deterministically: surviving ids keep their relative
order, so traces that name ids at the time of each step replay byte-for-byte.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .rng import SplitMix64

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph input or an edit whose precondition fails."""


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices ``0..n-1``; loops and parallels allowed."""

    n: int
    edges: tuple[Edge, ...] = ()
    _incidence: tuple[tuple[int, ...], ...] = field(
        default=(), init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for eid, (a, b) in enumerate(self.edges):
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GraphError(f"edge {eid} = ({a}, {b}) has an endpoint outside 0..{self.n - 1}")
            inc[a].append(eid)
            if b != a:
                inc[b].append(eid)
        object.__setattr__(self, "_incidence", tuple(tuple(x) for x in inc))

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids touching ``v`` (a loop is listed once)."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return sum(2 if self.edges[e][0] == self.edges[e][1] else 1 for e in self._incidence[v])

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> list[int]:
        """Neighbours of ``v`` with multiplicity, loops excluded."""
        return [self.other(e, v) for e in self._incidence[v] if self.edges[e][0] != self.edges[e][1]]

    def is_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return a == b

    def adjacency(self) -> dict[int, set[int]]:
        """Simple adjacency sets (multiplicity and loops dropped)."""
        adj: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for a, b in self.edges:
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return adj


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks as sorted edge-id tuples, cut vertices, and block-cut tree edges."""

    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset[int]
    tree: tuple[tuple[int, int], ...]  # (block index, cut vertex)

    def block_vertices(self, g: Multigraph, i: int) -> list[int]:
        return sorted({x for e in self.blocks[i] for x in g.edges[e]})


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Multigraph:
    edges = []
    for pair in edge_list:
        if len(pair) != 2:
            raise GraphError(f"edge {list(pair)!r} must have exactly two endpoints")
        a, b = int(pair[0]), int(pair[1])
        edges.append((a, b))
    return Multigraph(n, tuple(edges))


def leaves(g: Multigraph) -> list[int]:
    """Degree-one vertices, ascending."""
    return [v for v, d in enumerate(g.degrees()) if d == 1]


def _check_edge(g: Multigraph, e: int) -> None:
    if not 0 <= e < g.m:
        raise GraphError(f"edge {e} does not exist")


def _check_vertex(g: Multigraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} does not exist")


def delete_edge(g: Multigraph, e: int) -> Multigraph:
    _check_edge(g, e)
    return Multigraph(g.n, g.edges[:e] + g.edges[e + 1 :])


def delete_vertex(g: Multigraph, v: int) -> Multigraph:
    """Remove ``v`` and its edges; higher vertex ids shift down by one."""
    _check_vertex(g, v)

    def shift(x: int) -> int:
        return x - 1 if x > v else x

    edges = tuple((shift(a), shift(b)) for a, b in g.edges if a != v and b != v)
    return Multigraph(g.n - 1, edges)


def contract_edge(g: Multigraph, e: int) -> Multigraph:
    """Merge the endpoints of non-loop edge ``e``; the lower id survives.

    Other edges between the two endpoints become loops.
    """
    _check_edge(g, e)
    a, b = g.edges[e]
    if a == b:
        raise GraphError(f"cannot contract loop edge {e}")
    keep, gone = min(a, b), max(a, b)

    def relabel(x: int) -> int:
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    edges = tuple((relabel(x), relabel(y)) for i, (x, y) in enumerate(g.edges) if i != e)
    return Multigraph(g.n - 1, edges)


def add_vertices(g: Multigraph, count: int = 1) -> Multigraph:
    return Multigraph(g.n + count, g.edges)


def add_edges(g: Multigraph, new_edges: Iterable[Edge]) -> Multigraph:
    return Multigraph(g.n, g.edges + tuple((int(a), int(b)) for a, b in new_edges))


def induced_edge_subgraph(g: Multigraph, edge_ids: Iterable[int]) -> tuple[Multigraph, list[int]]:
    """Subgraph spanned by ``edge_ids``; returns it with new-to-old vertex map."""
    ids = sorted(edge_ids)
    verts = sorted({x for e in ids for x in g.edges[e]})
    index = {v: i for i, v in enumerate(verts)}
    sub = Multigraph(len(verts), tuple((index[g.edges[e][0]], index[g.edges[e][1]]) for e in ids))
    return sub, verts


def induced_subgraph(g: Multigraph, vertices: Iterable[int]) -> tuple[Multigraph, list[int]]:
    """Subgraph induced on ``vertices`` (kept in ascending order)."""
    verts = sorted(set(vertices))
    index = {v: i for i, v in enumerate(verts)}
    edges = tuple(
        (index[a], index[b]) for a, b in g.edges if a in index and b in index
    )
    return Multigraph(len(verts), edges), verts


def connected_components(g: Multigraph) -> list[list[int]]:
    """Vertex classes, each sorted, listed by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in g.incident(u):
                w = g.other(e, u)
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_simple(g: Multigraph) -> bool:
    seen = set()
    for a, b in g.edges:
        if a == b:
            return False
        key = (min(a, b), max(a, b))
        if key in seen:
            return False
        seen.add(key)
    return True


def is_forest(g: Multigraph) -> bool:
    return is_simple(g) and g.m == g.n - len(connected_components(g))


def is_tree(g: Multigraph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_simple(g) and len(connected_components(g)) == 1


def blocks(g: Multigraph) -> BlockDecomposition:
    """Block-cut decomposition; bridges are one-edge blocks.

    Loops are attached to the first block holding their vertex (Reidemeister I
    makes them inert for counting); a vertex carrying only loops gets one
    block of its own.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    found: list[list[int]] = []
    estack: list[int] = []
    clock = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        # frame: vertex, edge used to enter it, next incidence position
        stack = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            u, pe, i = frame
            inc = g.incident(u)
            if i < len(inc):
                frame[2] += 1
                e = inc[i]
                if e == pe or g.is_loop(e):
                    continue
                w = g.other(e, u)
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    estack.append(e)
                    stack.append([w, e, 0])
                elif disc[w] < disc[u]:
                    estack.append(e)
                    low[u] = min(low[u], disc[w])
                continue
            stack.pop()
            if not stack:
                continue
            parent = stack[-1][0]
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                comp = []
                while True:
                    x = estack.pop()
                    comp.append(x)
                    if x == pe:
                        break
                found.append(comp)

    owner: dict[int, int] = {}
    for i, comp in enumerate(found):
        for e in comp:
            for x in g.edges[e]:
                owner.setdefault(x, i)
    loop_only: dict[int, int] = {}
    for e, (a, b) in enumerate(g.edges):
        if a != b:
            continue
        if a in owner:
            found[owner[a]].append(e)
        else:
            if a not in loop_only:
                loop_only[a] = len(found)
                found.append([])
            found[loop_only[a]].append(e)

    ordered = sorted((tuple(sorted(c)) for c in found), key=lambda c: c[0])
    membership: dict[int, list[int]] = {}
    for i, comp in enumerate(ordered):
        for x in sorted({x for e in comp for x in g.edges[e]}):
            membership.setdefault(x, []).append(i)
    cuts = frozenset(v for v, bs in membership.items() if len(bs) > 1)
    tree = tuple(sorted((i, v) for v in cuts for i in membership[v]))
    return BlockDecomposition(tuple(ordered), cuts, tree)


def prufer_to_edges(seq: Sequence[int], n: int) -> list[Edge]:
    """Decode a Prüfer sequence of length ``n - 2`` (smallest leaf first)."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    a, b = heapq.heappop(heap), heapq.heappop(heap)
    edges.append((min(a, b), max(a, b)))
    return edges


def random_tree(n: int, seed: int) -> Multigraph:
    """Uniform labelled tree: ``n - 2`` draws of ``below(n)`` form a Prüfer sequence.

    The draws come from ``SplitMix64(seed)`` and are decoded by
    :func:`prufer_to_edges`, so the edge list is fixed by ``(n, seed)``.
    """
    if n < 1:
        raise GraphError("a tree needs at least one vertex")
    if n == 1:
        return Multigraph(1)
    rng = SplitMix64(seed)
    seq = [rng.below(n) for _ in range(n - 2)]
    return Multigraph(n, tuple(prufer_to_edges(seq, n)))


def disjoint_union(*graphs: Multigraph) -> Multigraph:
    edges: list[Edge] = []
    offset = 0
    for h in graphs:
        edges.extend((a + offset, b + offset) for a, b in h.edges)
        offset += h.n
    return Multigraph(offset, tuple(edges))
