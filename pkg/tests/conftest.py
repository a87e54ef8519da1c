from __future__ import annotations

import itertools

import pytest

from linkcomp.graph import Multigraph, build_graph
from linkcomp.reduction import _apply, _classify, _contractible, Contract


def path(n: int) -> Multigraph:
    return build_graph(n, [[i, i + 1] for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    return build_graph(n, [[i, (i + 1) % n] for i in range(n)])


def star(n: int) -> Multigraph:
    return build_graph(n + 1, [[0, i] for i in range(1, n + 1)])


def k2n(n: int) -> Multigraph:
    return build_graph(n + 2, [[0, i] for i in range(2, n + 2)] + [[1, i] for i in range(2, n + 2)])


def spider(legs: int, length: int) -> Multigraph:
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append([prev, nxt])
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


def chair() -> Multigraph:
    # c=0, a=1, b=2, d=3, e=4
    return build_graph(5, [[0, 1], [0, 2], [0, 3], [3, 4]])


def convex_cycle_rotation(n: int) -> list[list[int]]:
    """Rotation of ``cycle(n)``: vertex i holds darts of edges i-1 and i."""
    return [[2 * i, 2 * ((i - 1) % n) + 1] for i in range(n)]


# -- independent oracles (brute force, no shared code with the library) -------


def _components(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(n)})


def brute_bicycle_dim(g: Multigraph) -> int:
    """Enumerate edge subsets lying in both the cycle space and the cut space."""
    cuts = set()
    for mask in range(1 << g.n):
        cuts.add(sum(1 << e for e, (a, b) in enumerate(g.edges) if ((mask >> a) ^ (mask >> b)) & 1))
    count = 0
    for sub in range(1 << g.m):
        deg = [0] * g.n
        for e, (a, b) in enumerate(g.edges):
            if (sub >> e) & 1:
                deg[a] += 1
                deg[b] += 1
        if all(d % 2 == 0 for d in deg) and sub in cuts:
            count += 1
    return count.bit_length() - 1


def brute_tutte_neg1(g: Multigraph) -> int:
    """Rank-generating sum: T(-1,-1) = sum_A (-2)^(r(E)-r(A)) (-2)^(|A|-r(A))."""
    c_all = _components(g.n, g.edges)
    r_e = g.n - c_all
    total = 0
    for k in range(g.m + 1):
        for subset in itertools.combinations(g.edges, k):
            r_a = g.n - _components(g.n, subset)
            total += (-2) ** (r_e - r_a) * (-2) ** (k - r_a)
    return total


def naive_reduce_ops(t: Multigraph) -> list:
    """Lowest-id scan applied literally: contract if possible, else first typed vertex."""
    adj = t.adjacency()
    ops = []
    while len(adj) > 2:
        sites = [v for v in sorted(adj) if _contractible(adj, v)]
        if sites:
            v = sites[0]
            op = Contract(v, *sorted(adj[v]))
        else:
            op = next(o for o in (_classify(adj, w) for w in sorted(adj)) if o is not None)
        _apply(adj, op)
        ops.append(op)
    return ops


@pytest.fixture
def triangle_rotation():
    return [[0, 5], [2, 1], [4, 3]]
