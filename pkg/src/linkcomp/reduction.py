"""Reduction calculus for suspended trees.

A tree ``T`` is shrunk to ``K2`` by four local moves, each with a known effect
on the link count of its suspension ``S_T``:

* ``Contract`` a degree-2 vertex whose neighbours are both inner vertices
  (count unchanged);
* ``TypeI`` at ``w`` adjacent to a leaf and to a degree-2 vertex ``u`` that
  hangs a leaf: delete ``u`` and that leaf (unchanged);
* ``TypeII`` at ``w`` with two such degree-2 neighbours: delete both
  two-edge paths, and ``w`` too when it had degree 3 (unchanged);
* ``TypeIII`` at ``w`` adjacent to two leaves: delete one of them (count
  drops by one).

Contractions run first, so whenever a Type move is needed every degree-2
vertex touches a leaf and some vertex has one of the three types. Hence
``l(S_T) = #TypeIII + 1``.

Traces name vertices by their ids in the initial tree. Ids never shift
during a reduction; a contraction keeps the smallest of the three ids.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Any, Callable, Iterable, Union

from .graph import (
    GraphError,
    Multigraph,
    blocks,
    connected_components,
    induced_edge_subgraph,
    induced_subgraph,
    is_forest,
    is_tree,
)
from .linkcount import LinkCount
from .rng import SplitMix64


class ReductionError(GraphError):
    """Operation precondition failed, or a tree admitted no move."""


@dataclass(frozen=True)
class Contract:
    v: int
    x: int
    y: int


@dataclass(frozen=True)
class TypeI:
    w: int
    u: int
    leaf: int


@dataclass(frozen=True)
class TypeII:
    w: int
    u1: int
    l1: int
    u2: int
    l2: int
    w_deleted: bool


@dataclass(frozen=True)
class TypeIII:
    w: int
    deleted_leaf: int


ReductionOp = Union[Contract, TypeI, TypeII, TypeIII]
_KINDS = {cls.__name__: cls for cls in (Contract, TypeI, TypeII, TypeIII)}


def op_to_json(op: ReductionOp) -> dict[str, Any]:
    return {"kind": type(op).__name__, **asdict(op)}


def op_from_json(obj: dict[str, Any]) -> ReductionOp:
    fields = dict(obj)
    kind = fields.pop("kind", None)
    if kind not in _KINDS:
        raise ValueError(f"unknown reduction op kind {kind!r}")
    return _KINDS[kind](**fields)


# -- move semantics on adjacency sets ----------------------------------------

Adj = dict[int, set[int]]


def _other(adj: Adj, u: int, w: int) -> int:
    (o,) = adj[u] - {w}
    return o


def _is_leaf(adj: Adj, z: int) -> bool:
    return len(adj[z]) == 1


def _contractible(adj: Adj, v: int) -> bool:
    return len(adj[v]) == 2 and all(len(adj[x]) >= 2 for x in adj[v])


def _witness(adj: Adj, w: int, u: int) -> bool:
    """``u`` is a degree-2 neighbour of ``w`` whose other neighbour is a leaf."""
    return u in adj[w] and len(adj[u]) == 2 and _is_leaf(adj, _other(adj, u, w))


def _type2_allowed(adj: Adj, w: int, u1: int, u2: int) -> bool:
    # deleting both paths (and w at degree 3) must leave an edge behind
    d = len(adj[w])
    if d >= 4:
        return True
    if d == 3:
        (x,) = adj[w] - {u1, u2}
        return not _is_leaf(adj, x)
    return False


def _type_op(adj: Adj, w: int, leaf_nbrs: list[int], witnesses: list[int]) -> ReductionOp | None:
    """First type of ``w`` in priority I, II, III given its sorted witnesses."""
    if leaf_nbrs and witnesses:
        u = witnesses[0]
        return TypeI(w, u, _other(adj, u, w))
    if len(witnesses) >= 2 and _type2_allowed(adj, w, witnesses[0], witnesses[1]):
        u1, u2 = witnesses[0], witnesses[1]
        return TypeII(w, u1, _other(adj, u1, w), u2, _other(adj, u2, w), len(adj[w]) == 3)
    if len(leaf_nbrs) >= 2:
        return TypeIII(w, leaf_nbrs[0])
    return None


def _classify(adj: Adj, w: int) -> ReductionOp | None:
    leaf_nbrs = sorted(z for z in adj[w] if _is_leaf(adj, z))
    witnesses = sorted(u for u in adj[w] if _witness(adj, w, u))
    return _type_op(adj, w, leaf_nbrs, witnesses)


def _check(adj: Adj, op: ReductionOp) -> None:
    """Raise unless ``op`` is a legal move on ``adj``."""

    def alive(*vs: int) -> bool:
        return all(v in adj for v in vs)

    ok = False
    if isinstance(op, Contract):
        ok = alive(op.v) and _contractible(adj, op.v) and adj[op.v] == {op.x, op.y} and op.x < op.y
    elif isinstance(op, TypeI):
        ok = (
            alive(op.w, op.u, op.leaf)
            and any(_is_leaf(adj, z) for z in adj[op.w])
            and _witness(adj, op.w, op.u)
            and _other(adj, op.u, op.w) == op.leaf
        )
    elif isinstance(op, TypeII):
        ok = (
            alive(op.w, op.u1, op.u2, op.l1, op.l2)
            and op.u1 != op.u2
            and _witness(adj, op.w, op.u1)
            and _witness(adj, op.w, op.u2)
            and _other(adj, op.u1, op.w) == op.l1
            and _other(adj, op.u2, op.w) == op.l2
            and op.w_deleted == (len(adj[op.w]) == 3)
            and _type2_allowed(adj, op.w, op.u1, op.u2)
        )
    elif isinstance(op, TypeIII):
        ok = (
            alive(op.w, op.deleted_leaf)
            and op.deleted_leaf in adj[op.w]
            and _is_leaf(adj, op.deleted_leaf)
            and sum(1 for z in adj[op.w] if _is_leaf(adj, z)) >= 2
        )
    if not ok:
        raise ReductionError(f"{op} is not applicable")


def _delete(adj: Adj, doomed: Iterable[int]) -> set[int]:
    doomed = set(doomed)
    touched = set()
    for d in doomed:
        for z in adj.pop(d):
            if z not in doomed:
                adj[z].discard(d)
                touched.add(z)
    return touched


def _apply(adj: Adj, op: ReductionOp) -> tuple[set[int], int | None]:
    """Mutate ``adj``; return vertices whose neighbourhood changed and the
    merged vertex of a contraction."""
    if isinstance(op, Contract):
        v, x, y = op.v, op.x, op.y
        s = min(v, x, y)
        merged = (adj.pop(x) | adj.pop(y)) - {v, x, y}
        del adj[v]
        for z in merged:
            nbrs = adj[z]
            nbrs.discard(x)
            nbrs.discard(y)
            nbrs.add(s)
        adj[s] = merged
        return {s}, s
    if isinstance(op, TypeI):
        return _delete(adj, (op.u, op.leaf)), None
    if isinstance(op, TypeII):
        doomed = [op.u1, op.l1, op.u2, op.l2] + ([op.w] if op.w_deleted else [])
        return _delete(adj, doomed), None
    return _delete(adj, (op.deleted_leaf,)), None


# -- public moves on Multigraph values --------------------------------------


def _tree_adjacency(t: Multigraph) -> Adj:
    if not is_tree(t):
        raise ReductionError("input is not a tree")
    return t.adjacency()


def _compact(adj: Adj) -> Multigraph:
    order = sorted(adj)
    rank = {v: i for i, v in enumerate(order)}
    edges = sorted((rank[a], rank[b]) for a in adj for b in adj[a] if a < b)
    return Multigraph(len(order), tuple(edges))


def find_contraction_site(t: Multigraph) -> int | None:
    """Smallest degree-2 vertex whose two neighbours are not leaves."""
    adj = _tree_adjacency(t)
    return next((v for v in sorted(adj) if _contractible(adj, v)), None)


def classify_type(t: Multigraph, w: int) -> ReductionOp | None:
    """The move available at ``w`` (priority I, II, III, smallest witnesses)."""
    adj = _tree_adjacency(t)
    if w not in adj:
        raise ReductionError(f"vertex {w} does not exist")
    return _classify(adj, w)


def apply_op(t: Multigraph, op: ReductionOp) -> Multigraph:
    """Apply ``op`` and re-compact ids in order (edges listed sorted)."""
    adj = _tree_adjacency(t)
    _check(adj, op)
    _apply(adj, op)
    return _compact(adj)


# -- reduction driver -------------------------------------------------------


@dataclass(frozen=True)
class ReductionTrace:
    initial: Multigraph
    ops: tuple[ReductionOp, ...]
    final: tuple[int, int]
    type3_count: int

    def to_json(self) -> dict[str, Any]:
        a, b = self.final
        return {
            "initial": {"n": self.initial.n, "edges": [list(e) for e in self.initial.edges]},
            "ops": [op_to_json(op) for op in self.ops],
            "final": {"vertices": [a, b], "edges": [[a, b]]},
            "type3_count": self.type3_count,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "ReductionTrace":
        init = obj["initial"]
        initial = Multigraph(int(init["n"]), tuple((int(a), int(b)) for a, b in init["edges"]))
        a, b = obj["final"]["vertices"]
        return cls(
            initial,
            tuple(op_from_json(o) for o in obj["ops"]),
            (int(a), int(b)),
            int(obj["type3_count"]),
        )


class _AscendingReducer:
    """Lowest-id policy driven by lazily validated heaps.

    Global heaps hold candidate contraction sites and candidate type
    vertices; per-vertex heaps hold candidate leaf neighbours and witnesses.
    Entries go stale freely and are discarded when popped; every event that
    can make a candidate valid pushes it again, so the minimum valid entry is
    always present.
    """

    def __init__(self, adj: Adj) -> None:
        self.adj = adj
        self.sites: list[int] = []
        self.types: list[int] = []
        self.leafh: dict[int, list[int]] = defaultdict(list)
        self.wit: dict[int, list[int]] = defaultdict(list)
        for z in list(adj):
            self.touch(z)

    def touch(self, z: int) -> None:
        adj = self.adj
        heapq.heappush(self.sites, z)
        heapq.heappush(self.types, z)
        nbrs = adj[z]
        if len(nbrs) == 1:
            (w,) = nbrs
            heapq.heappush(self.leafh[w], z)
            heapq.heappush(self.types, w)
            if len(adj[w]) == 2:
                o = _other(adj, w, z)
                heapq.heappush(self.wit[o], w)
                heapq.heappush(self.types, o)
        elif len(nbrs) == 2:
            a, b = nbrs
            for w, far in ((a, b), (b, a)):
                if len(adj[far]) == 1:
                    heapq.heappush(self.wit[w], z)
                    heapq.heappush(self.types, w)

    def rebuild(self, s: int) -> None:
        adj = self.adj
        self.leafh[s] = sorted(z for z in adj[s] if len(adj[z]) == 1)
        self.wit[s] = sorted(u for u in adj[s] if _witness(adj, s, u))

    def _valid_min(self, heap: list[int], ok: Callable[[int], bool], skip: int | None = None) -> int | None:
        while heap and (heap[0] == skip or not ok(heap[0])):
            heapq.heappop(heap)
        return heap[0] if heap else None

    def _first_two(self, heap: list[int], ok: Callable[[int], bool]) -> list[int]:
        first = self._valid_min(heap, ok)
        if first is None:
            return []
        heapq.heappop(heap)
        second = self._valid_min(heap, ok, skip=first)
        heapq.heappush(heap, first)
        return [first] if second is None else [first, second]

    def classify(self, w: int) -> ReductionOp | None:
        adj = self.adj
        leaf_ok = lambda z: z in adj and z in adj[w] and len(adj[z]) == 1
        wit_ok = lambda u: u in adj and _witness(adj, w, u)
        leaf_nbrs = self._first_two(self.leafh[w], leaf_ok)
        witnesses = self._first_two(self.wit[w], wit_ok)
        return _type_op(adj, w, leaf_nbrs, witnesses)

    def next_op(self) -> ReductionOp | None:
        adj = self.adj
        v = self._valid_min(self.sites, lambda z: z in adj and _contractible(adj, z))
        if v is not None:
            x, y = sorted(adj[v])
            return Contract(v, x, y)
        while self.types:
            w = self.types[0]
            if w in adj:
                op = self.classify(w)
                if op is not None:
                    return op
            heapq.heappop(self.types)
        return None

    def apply(self, op: ReductionOp) -> None:
        touched, merged = _apply(self.adj, op)
        if merged is not None:
            self.rebuild(merged)
        for z in touched:
            if z in self.adj:
                self.touch(z)


def _all_moves(adj: Adj) -> list[ReductionOp]:
    """Every legal move, contractions alone if any exist."""
    sites = [Contract(v, *sorted(adj[v])) for v in sorted(adj) if _contractible(adj, v)]
    if sites:
        return sites
    moves: list[ReductionOp] = []
    for w in sorted(adj):
        leaf_nbrs = sorted(z for z in adj[w] if _is_leaf(adj, z))
        wits = sorted(u for u in adj[w] if _witness(adj, w, u))
        if leaf_nbrs:
            moves.extend(TypeI(w, u, _other(adj, u, w)) for u in wits)
        for i, u1 in enumerate(wits):
            for u2 in wits[i + 1 :]:
                if _type2_allowed(adj, w, u1, u2):
                    moves.append(
                        TypeII(w, u1, _other(adj, u1, w), u2, _other(adj, u2, w), len(adj[w]) == 3)
                    )
        if len(leaf_nbrs) >= 2:
            moves.extend(TypeIII(w, z) for z in leaf_nbrs)
    return moves


def reduce(t: Multigraph, policy: str = "ascending", seed: int = 0) -> ReductionTrace:
    """Reduce tree ``t`` to ``K2``, recording every move.

    ``policy="ascending"`` contracts at the smallest site, else applies the
    type move of the smallest typed vertex. ``policy="random"`` picks
    uniformly among all legal moves (contractions first) from ``seed``.
    """
    if t.n < 2:
        raise ReductionError("the tree needs at least one edge")
    adj = _tree_adjacency(t)
    ops: list[ReductionOp] = []
    if policy == "ascending":
        engine = _AscendingReducer(adj)
        while len(adj) > 2:
            op = engine.next_op()
            if op is None:
                raise ReductionError(f"no move applies to a tree with {len(adj)} vertices")
            engine.apply(op)
            ops.append(op)
    elif policy == "random":
        rng = SplitMix64(seed)
        while len(adj) > 2:
            moves = _all_moves(adj)
            if not moves:
                raise ReductionError(f"no move applies to a tree with {len(adj)} vertices")
            op = moves[rng.below(len(moves))]
            _apply(adj, op)
            ops.append(op)
    else:
        raise ValueError(f"unknown policy {policy!r}")
    a, b = sorted(adj)
    return ReductionTrace(t, tuple(ops), (a, b), sum(isinstance(op, TypeIII) for op in ops))


def replay(trace: ReductionTrace) -> tuple[int, int]:
    """Re-apply a trace with full precondition checks; return the final edge."""
    adj = _tree_adjacency(trace.initial)
    for i, op in enumerate(trace.ops):
        before = sum(len(s) for s in adj.values())
        try:
            _check(adj, op)
        except ReductionError as exc:
            raise ReductionError(f"step {i}: {exc}") from None
        _apply(adj, op)
        if sum(len(s) for s in adj.values()) >= before:
            raise ReductionError(f"step {i} did not shrink the tree")
    if len(adj) != 2:
        raise ReductionError(f"trace ends with {len(adj)} vertices, not K2")
    a, b = sorted(adj)
    if (a, b) != tuple(trace.final) or b not in adj[a]:
        raise ReductionError(f"trace ends at {(a, b)}, recorded {trace.final}")
    count = sum(isinstance(op, TypeIII) for op in trace.ops)
    if count != trace.type3_count:
        raise ReductionError(f"trace records {trace.type3_count} TypeIII moves but holds {count}")
    return a, b


def l_suspended(t: Multigraph, policy: str = "ascending", seed: int = 0) -> LinkCount:
    """Link count of the suspension of ``t``: TypeIII moves plus one."""
    trace = reduce(t, policy, seed)
    return LinkCount(trace.type3_count + 1, "reduce", trace)


def l_suspended_forest(f: Multigraph) -> LinkCount:
    """Sum over the suspended trees, less one per extra tree sharing the apex."""
    if not is_forest(f):
        raise ReductionError("input is not a forest")
    parts = []
    for comp in connected_components(f):
        if len(comp) == 1:
            raise ReductionError(f"component {{{comp[0]}}} is a single vertex")
        sub, _ = induced_subgraph(f, comp)
        parts.append(l_suspended(sub).l)
    return LinkCount(sum(parts) - (len(parts) - 1), "reduce-forest", {"trees": parts})


def l_by_blocks(g: Multigraph, per_block: Callable[[Multigraph], LinkCount] | None = None) -> LinkCount:
    """Glue block counts at cut vertices: sum minus (blocks - 1)."""
    if per_block is None:
        from .oracles import l_from_bicycle as per_block
    if len(connected_components(g)) != 1:
        raise ReductionError("block composition needs a connected graph")
    parts = []
    for edge_ids in blocks(g).blocks:
        sub, _ = induced_edge_subgraph(g, edge_ids)
        parts.append({"edges": list(edge_ids), "l": per_block(sub).l})
    total = sum(p["l"] for p in parts) - (len(parts) - 1)
    return LinkCount(total, "blocks", {"blocks": parts})

