"""Timing of the counting methods on seeded suspended trees.

Size is the edge count of the suspended tree, the quantity the Tutte cap is
stated in.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

from .corpus import suspended_tree_with_edges
from .embedding import default_embedding, strand_components
from .oracles import l_from_bicycle, l_from_tutte, tutte_cap
from .reduction import l_by_blocks, l_suspended
from .rng import derive_seed
from .suspension import suspend_tree, suspend_tree_embedded

METHODS = ("reduce", "tutte", "bicycle", "strand", "blocks")


@dataclass(frozen=True)
class BenchRow:
    size: int
    method: str
    instances: int
    mean_seconds: float | None
    status: str  # "ok" or "infeasible"


def _runner(method: str, tree):
    if method == "reduce":
        return lambda: l_suspended(tree)
    if method == "strand":
        st, rot = suspend_tree_embedded(tree, default_embedding(tree))
        return lambda: strand_components(st.graph, rot)
    g = suspend_tree(tree).graph
    if method == "tutte":
        return lambda: l_from_tutte(g)
    if method == "bicycle":
        return lambda: l_from_bicycle(g)
    return lambda: l_by_blocks(g)


def run_bench(sizes: list[int], methods: list[str], seed: int, trials: int = 3) -> list[BenchRow]:
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown methods: {', '.join(unknown)}")
    cap = tutte_cap()
    rows = []
    for size in sizes:
        trees = [suspended_tree_with_edges(size, derive_seed(seed, size, k)) for k in range(trials)]
        for method in methods:
            if method == "tutte" and size > cap:
                rows.append(BenchRow(size, method, 0, None, "infeasible"))
                continue
            total = 0.0
            for tree in trees:
                fn = _runner(method, tree)
                start = time.perf_counter()
                fn()
                total += time.perf_counter() - start
            rows.append(BenchRow(size, method, len(trees), total / len(trees), "ok"))
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["size", "method", "instances", "mean_seconds", "status"])
    for r in rows:
        mean = "" if r.mean_seconds is None else f"{r.mean_seconds:.9f}"
        writer.writerow([r.size, r.method, r.instances, mean, r.status])
    return buf.getvalue()


def speedup_at_largest_common(rows: list[BenchRow], fast: str = "reduce", slow: str = "tutte") -> tuple[int, float] | None:
    """Ratio of mean times slow/fast at the largest size where both ran."""
    timed = {(r.size, r.method): r.mean_seconds for r in rows if r.status == "ok"}
    common = [s for (s, m) in timed if m == fast and (s, slow) in timed]
    if not common:
        return None
    size = max(common)
    return size, timed[(size, slow)] / timed[(size, fast)]
