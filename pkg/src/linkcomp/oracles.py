"""Embedding-free link counts: Tutte value at (-1, -1) and bicycle dimension.

For a plane graph ``G`` with ``c`` connected components (isolated vertices
included) and ``l`` link components,

    T(G; -1, -1) = (-1)^|E| * (-2)^(l - c)
    |T(G; -1, -1)| = 2^dim B(G)

where ``B(G)`` is the bicycle space, the intersection of the cycle and cut
spaces over GF(2). Both give ``l`` without looking at the embedding; the
bicycle route is polynomial and is the reference for every cross-check.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .graph import Multigraph, connected_components, is_forest
from .linkcount import LinkCount

DEFAULT_TUTTE_CAP = 18


class TutteCapExceeded(RuntimeError):
    """Deliberate refusal: the graph has more edges than the configured cap."""


class ConsistencyError(AssertionError):
    """An internal identity failed; this is a bug, never a property of the input."""


def tutte_cap() -> int:
    raw = os.environ.get("LINKCOMP_TUTTE_CAP")
    return int(raw) if raw else DEFAULT_TUTTE_CAP


@dataclass(frozen=True)
class TutteValue:
    t: int
    edges: int


# -- Tutte ------------------------------------------------------------------


def _bridges(edges: list[tuple[int, int]]) -> set[int]:
    """Indices of bridges in a loop-free edge list over arbitrary labels."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for i, (a, b) in enumerate(edges):
        adj.setdefault(a, []).append((b, i))
        adj.setdefault(b, []).append((a, i))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out = set()
    clock = 0
    for root in adj:
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, pe, it = stack[-1]
            for w, i in it:
                if i == pe:
                    continue
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, i, iter(adj[w])))
                    break
                low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        out.add(pe)
    return out


def _contract_many(edges: list[tuple[int, int]], merge: list[tuple[int, int]]) -> list[tuple[int, int]]:
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for a, b in merge:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [(find(a), find(b)) for a, b in edges]


def _canonical_key(edges: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Relabel by (degree, neighbour-degree profile, label) and sort.

    Equal keys imply isomorphic graphs, so sharing a memo entry is exact.
    """
    deg: dict[int, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    nbr: dict[int, list[int]] = {v: [] for v in deg}
    for a, b in edges:
        nbr[a].append(deg[b])
        nbr[b].append(deg[a])
    order = sorted(deg, key=lambda v: (deg[v], sorted(nbr[v]), v))
    rank = {v: i for i, v in enumerate(order)}
    return tuple(sorted((min(rank[a], rank[b]), max(rank[a], rank[b])) for a, b in edges))


def _tutte(edges: list[tuple[int, int]], memo: dict | None) -> int:
    sign = 1
    kept = []
    for a, b in edges:
        if a == b:
            sign = -sign
        else:
            kept.append((a, b))
    bridges = _bridges(kept)
    if bridges:
        if len(bridges) % 2:
            sign = -sign
        kept = _contract_many(
            [e for i, e in enumerate(kept) if i not in bridges],
            [e for i, e in enumerate(kept) if i in bridges],
        )
        # contracting a bridge never creates loops or new bridges
    if not kept:
        return sign
    if memo is not None:
        key = _canonical_key(kept)
        hit = memo.get(key)
        if hit is not None:
            return sign * hit
    a, b = kept[0]
    rest = kept[1:]
    value = _tutte(rest, memo) + _tutte(_contract_many(rest, [(a, b)]), memo)
    if memo is not None:
        memo[key] = value
    return sign * value


def tutte_neg1(g: Multigraph, cap: int | None = None, memo: bool = False) -> TutteValue:
    """Exact ``T(g; -1, -1)`` by deletion-contraction on the lowest-id edge.

    Loops and bridges are peeled off first (factors ``y = -1`` and
    ``x = -1``). ``memo`` shares results between isomorphic minors.
    """
    limit = tutte_cap() if cap is None else cap
    if g.m > limit:
        raise TutteCapExceeded(f"{g.m} edges exceeds the Tutte cap of {limit}")
    return TutteValue(_tutte(list(g.edges), {} if memo else None), g.m)


def l_from_tutte(g: Multigraph, cap: int | None = None, memo: bool = False) -> LinkCount:
    tv = tutte_neg1(g, cap, memo)
    mag = abs(tv.t)
    if mag == 0 or mag & (mag - 1):
        raise ConsistencyError(f"|T(-1,-1)| = {mag} is not a power of two")
    k = mag.bit_length() - 1
    c = len(connected_components(g))
    expected = (-1) ** g.m * (-2) ** k
    if tv.t != expected:
        raise ConsistencyError(f"T(-1,-1) = {tv.t} violates the sign identity (expected {expected})")
    return LinkCount(k + c, "tutte", {"t": tv.t})


# -- bicycle space ----------------------------------------------------------


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of integer bitset rows."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def gf2_nullspace(rows: list[int], ncols: int) -> list[int]:
    """Basis of ``{x : row . x = 0 for every row}`` as bitsets."""
    pivots: dict[int, int] = {}  # pivot column -> fully reduced row
    for r in rows:
        for col, pr in pivots.items():
            if (r >> col) & 1:
                r ^= pr
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        for c in list(pivots):
            if (pivots[c] >> col) & 1:
                pivots[c] ^= r
        pivots[col] = r
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = 1 << free
        for col, pr in pivots.items():
            if (pr >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def incidence_rows(g: Multigraph) -> list[int]:
    rows = [0] * g.n
    for e, (a, b) in enumerate(g.edges):
        if a != b:
            rows[a] ^= 1 << e
            rows[b] ^= 1 << e
    return rows


def bicycle_dim(g: Multigraph) -> int:
    """``dim(cycle space & cut space)`` over GF(2)."""
    cut = incidence_rows(g)
    cycles = gf2_nullspace(cut, g.m)
    return len(cycles) + gf2_rank(cut) - gf2_rank(cycles + cut)


def l_from_bicycle(g: Multigraph) -> LinkCount:
    k = bicycle_dim(g)
    c = len(connected_components(g))
    return LinkCount(k + c, "bicycle", {"bicycle_dim": k, "components": c})


# -- cross-check ------------------------------------------------------------


@dataclass
class ConsistencyReport:
    instance: str
    values: dict[str, int] = field(default_factory=dict)
    micros: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) <= 1

    def to_json(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "values": dict(self.values),
            "agree": self.agree,
            "micros": dict(self.micros),
        }


def cross_check(
    g: Multigraph,
    rot=None,
    apex: int | None = None,
    instance: str = "",
    tutte: bool = True,
    cap: int | None = None,
) -> ConsistencyReport:
    """Run every method that applies to ``g`` and compare the counts.

    Strand tracing runs when a rotation is given or ``g`` is a forest; the
    reduction runs when ``apex`` marks ``g`` as a suspended tree.
    """
    from . import embedding, reduction, suspension

    report = ConsistencyReport(instance)

    def run(name: str, fn: Callable[[], LinkCount]) -> None:
        start = time.perf_counter_ns()
        try:
            result = fn()
        except TutteCapExceeded as exc:
            report.skipped[name] = str(exc)
            return
        report.micros[name] = (time.perf_counter_ns() - start) // 1000
        report.values[name] = result.l

    run("bicycle", lambda: l_from_bicycle(g))
    if rot is None and is_forest(g):
        rot = embedding.default_embedding(g)
    if rot is not None:
        run("strand", lambda: embedding.strand_components(g, rot))
    if tutte:
        run("tutte", lambda: l_from_tutte(g, cap))
    if len(connected_components(g)) == 1:
        run("blocks", lambda: reduction.l_by_blocks(g))
    if apex is not None:
        tree = suspension.base_tree(g, apex)
        run("reduce", lambda: reduction.l_suspended(tree))
    return report
