"""Rotation systems on the sphere and strand tracing of the associated diagram.

Darts: edge ``e = (a, b)`` owns darts ``2e`` (tail ``a``) and ``2e + 1``
(tail ``b``); the mate of ``d`` is ``d ^ 1``. A rotation lists, for every
vertex, its darts in counterclockwise order. Faces are the orbits of
``d -> succ(mate(d))``.

Strand tracing identifies dart ``d`` with the corner of the medial graph that
lies counterclockwise after ``d`` at its tail. The crossing sitting on edge
``e`` with darts ``g, h = 2e, 2e + 1`` joins opposite corners, which are
``{g, h}`` and ``{pred(g), pred(h)}``. Worked check on the triangle 0-1-2 with
edges (0,1), (1,2), (2,0) and rotations [0, 5], [2, 1], [4, 3]: the two
diagonals glue all six corners into one class, so the diagram is a single
strand (a trefoil shadow). Pairing ``{g, pred(h)}`` instead gives two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import GraphError, Multigraph, connected_components
from .linkcount import LinkCount
from .rng import SplitMix64


class EmbeddingError(ValueError):
    """Rotation is malformed or does not describe a sphere embedding."""


def tail(g: Multigraph, d: int) -> int:
    return g.edges[d >> 1][d & 1]


def mate(d: int) -> int:
    return d ^ 1


@dataclass(frozen=True)
class RotationSystem:
    cycles: tuple[tuple[int, ...], ...]
    succ: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)
    pred: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        size = sum(len(c) for c in self.cycles)
        succ = [-1] * size
        pred = [-1] * size
        for cyc in self.cycles:
            k = len(cyc)
            for i, d in enumerate(cyc):
                if not 0 <= d < size or succ[d] != -1:
                    raise EmbeddingError(f"dart {d} is out of range or repeated")
                succ[d] = cyc[(i + 1) % k]
            for d in cyc:
                pred[succ[d]] = d
        object.__setattr__(self, "succ", tuple(succ))
        object.__setattr__(self, "pred", tuple(pred))

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.cycles]


def make_rotation(g: Multigraph, cycles: Sequence[Sequence[int]]) -> RotationSystem:
    """Build a rotation and check it matches ``g`` dart for dart."""
    if len(cycles) != g.n:
        raise EmbeddingError(f"rotation has {len(cycles)} vertex entries, graph has {g.n}")
    seen = set()
    for v, cyc in enumerate(cycles):
        for d in cyc:
            if not isinstance(d, int) or not 0 <= d < 2 * g.m:
                raise EmbeddingError(f"dart {d!r} at vertex {v} does not exist")
            if d in seen:
                raise EmbeddingError(f"dart {d} appears twice")
            if tail(g, d) != v:
                raise EmbeddingError(f"dart {d} listed at vertex {v} but its tail is {tail(g, d)}")
            seen.add(d)
    if len(seen) != 2 * g.m:
        missing = sorted(set(range(2 * g.m)) - seen)
        raise EmbeddingError(f"darts {missing} missing from the rotation")
    return RotationSystem(tuple(tuple(int(d) for d in c) for c in cycles))


def _vertex_darts(g: Multigraph, v: int) -> list[int]:
    out = []
    for e in g.incident(v):
        a, b = g.edges[e]
        if a == v:
            out.append(2 * e)
        if b == v:
            out.append(2 * e + 1)
    return out


def default_embedding(g: Multigraph) -> RotationSystem:
    """Darts at each vertex in edge-id order."""
    return RotationSystem(tuple(tuple(_vertex_darts(g, v)) for v in range(g.n)))


def random_embedding(g: Multigraph, seed: int) -> RotationSystem:
    """Independent uniform shuffle of every vertex cycle, vertices in id order."""
    rng = SplitMix64(seed)
    cycles = []
    for v in range(g.n):
        darts = _vertex_darts(g, v)
        rng.shuffle(darts)
        cycles.append(tuple(darts))
    return RotationSystem(tuple(cycles))


def faces(g: Multigraph, rot: RotationSystem) -> list[list[int]]:
    """Face boundary walks, each from its smallest dart, sorted by that dart."""
    seen = [False] * (2 * g.m)
    out = []
    for start in range(2 * g.m):
        if seen[start]:
            continue
        walk = []
        d = start
        while not seen[d]:
            seen[d] = True
            walk.append(d)
            d = rot.succ[d ^ 1]
        out.append(walk)
    return out


def validate_genus0(g: Multigraph, rot: RotationSystem) -> int:
    """Check Euler's formula per component; return the number of faces.

    An isolated vertex counts as one face of its own.
    """
    if len(rot.succ) != 2 * g.m or len(rot.cycles) != g.n:
        raise EmbeddingError("rotation does not match the graph size")
    for v, cyc in enumerate(rot.cycles):
        for d in cyc:
            if tail(g, d) != v:
                raise EmbeddingError(f"dart {d} listed at vertex {v} but its tail is {tail(g, d)}")
    comp_of = [0] * g.n
    comps = connected_components(g)
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    v_count = [len(c) for c in comps]
    e_count = [0] * len(comps)
    f_count = [0] * len(comps)
    for a, _ in g.edges:
        e_count[comp_of[a]] += 1
    for walk in faces(g, rot):
        f_count[comp_of[tail(g, walk[0])]] += 1
    total = 0
    for i, comp in enumerate(comps):
        if e_count[i] == 0:
            total += 1
            continue
        euler = v_count[i] - e_count[i] + f_count[i]
        if euler != 2:
            raise EmbeddingError(
                f"component containing vertex {comp[0]} has Euler characteristic {euler}, not 2"
            )
        total += f_count[i]
    return total


class _DisjointSet:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


def _crossing_pairs(g_dart: int, pred: Sequence[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    h_dart = g_dart ^ 1
    return (g_dart, h_dart), (pred[g_dart], pred[h_dart])


def strand_components(g: Multigraph, rot: RotationSystem) -> LinkCount:
    """Count closed strands of the diagram drawn by ``rot``.

    The certificate lists every strand as its corners (darts) in traversal
    order from the strand's smallest dart.
    """
    validate_genus0(g, rot)
    ds = _DisjointSet(2 * g.m)
    links: list[tuple[int, int]] = []
    at: list[list[int]] = [[] for _ in range(2 * g.m)]
    for e in range(g.m):
        for x, y in _crossing_pairs(2 * e, rot.pred):
            ds.union(x, y)
            at[x].append(len(links))
            at[y].append(len(links))
            links.append((x, y))

    classes: dict[int, list[int]] = {}
    for d in range(2 * g.m):
        classes.setdefault(ds.find(d), []).append(d)
    strands = [_walk(min(c), links, at) for c in classes.values()]
    strands.sort(key=lambda w: w[0])
    isolated = sum(1 for v in range(g.n) if not rot.cycles[v])
    return LinkCount(len(strands) + isolated, "strand", {"strands": strands, "isolated": isolated})


def _walk(start: int, links: list[tuple[int, int]], at: list[list[int]]) -> list[int]:
    """Darts of one strand in traversal order; each dart carries two links."""
    order = [start]
    used = {at[start][1]}
    link = at[start][0]
    d = start
    while link not in used:
        used.add(link)
        x, y = links[link]
        d = y if x == d else x
        if d == start:
            break
        order.append(d)
        link = at[d][0] if at[d][0] not in used else at[d][1]
    return order


def insert_at_corners(
    g: Multigraph, rot: RotationSystem, du: int | None, dw: int | None, u: int | None = None
) -> tuple[Multigraph, RotationSystem]:
    """Add an edge whose new darts sit just before ``du`` and ``dw``.

    ``du`` and ``dw`` must lie on one face walk. ``du = dw = None`` with
    vertex ``u`` adds a loop at an isolated vertex.
    """
    m = g.m
    cycles = [list(c) for c in rot.cycles]
    if du is None:
        if u is None or cycles[u]:
            raise EmbeddingError("a corner dart is required unless the vertex is isolated")
        cycles[u] = [2 * m, 2 * m + 1]
        a = b = u
    else:
        a, b = tail(g, du), tail(g, dw)
        cu = cycles[a]
        cu.insert(cu.index(du), 2 * m)
        cw = cycles[b]
        cw.insert(cw.index(dw), 2 * m + 1)
    h = Multigraph(g.n, g.edges + ((a, b),))
    return h, RotationSystem(tuple(tuple(c) for c in cycles))


def insert_edge_in_face(
    g: Multigraph, rot: RotationSystem, u: int, w: int, face: int | None
) -> tuple[Multigraph, RotationSystem]:
    """Draw a new edge ``u``-``w`` inside the face whose walk contains dart ``face``.

    Each endpoint uses its first corner along the walk. ``face=None`` is only
    meaningful for a loop at an isolated vertex.
    """
    for x in (u, w):
        if not 0 <= x < g.n:
            raise GraphError(f"vertex {x} does not exist")
    if face is None:
        if u == w and not rot.cycles[u]:
            return insert_at_corners(g, rot, None, None, u)
        raise EmbeddingError("face must be given by one of its darts")
    if not 0 <= face < 2 * g.m:
        raise EmbeddingError(f"dart {face} does not exist")
    walk = [face]
    d = rot.succ[face ^ 1]
    while d != face:
        walk.append(d)
        d = rot.succ[d ^ 1]
    corner = {}
    for d in walk:
        corner.setdefault(tail(g, d), d)
    for x in (u, w):
        if x not in corner:
            raise EmbeddingError(f"vertex {x} is not on the boundary of the face through dart {face}")
    return insert_at_corners(g, rot, corner[u], corner[w])
