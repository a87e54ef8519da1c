"""Seeded cross-check campaign over mixed instance families."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from . import corpus
from .embedding import random_embedding, strand_components
from .graph import Multigraph, random_tree
from .io import GraphFile
from .oracles import ConsistencyReport, cross_check, l_from_bicycle, l_from_tutte, TutteCapExceeded
from .reduction import l_suspended, l_suspended_forest, reduce
from .rng import SplitMix64, derive_seed
from .suspension import normalize_apex, suspend_tree_embedded

log = logging.getLogger(__name__)

KINDS = ("tree", "suspended-tree", "suspended-forest", "plane", "apex", "glued")


@dataclass
class XcheckResult:
    trials: int
    seed: int
    max_n: int
    reports: list[ConsistencyReport] = field(default_factory=list)
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict[str, Any]:
        by_kind: dict[str, int] = {}
        for rep in self.reports:
            kind = rep.instance.split()[0]
            by_kind[kind] = by_kind.get(kind, 0) + 1
        return {
            "trials": self.trials,
            "seed": self.seed,
            "max_n": self.max_n,
            "instances": by_kind,
            "disagreements": len(self.failures),
            "failures": self.failures,
        }


def _fail(result: XcheckResult, rep: ConsistencyReport, graph: GraphFile, note: str) -> None:
    result.failures.append({"report": rep.to_json(), "graph": graph.to_json(), "note": note})


def _probe_embeddings(tree: Multigraph, seed: int, count: int) -> set[int]:
    counts = set()
    for k in range(count):
        st, rot = suspend_tree_embedded(tree, random_embedding(tree, derive_seed(seed, 7, k)))
        counts.add(strand_components(st.graph, rot).l)
    return counts


def run_instance(index: int, seed: int, max_n: int, result: XcheckResult) -> None:
    kind = KINDS[index % len(KINDS)]
    s = derive_seed(seed, index)
    rng = SplitMix64(s)
    n = 2 + rng.below(max(1, max_n - 1))
    label = f"{kind} #{index} n={n} seed={s}"

    if kind == "tree":
        g = random_tree(n, s)
        rep = cross_check(g, instance=label)
        gf = GraphFile(g)
    elif kind == "suspended-tree":
        tree, st, rot = corpus.random_suspended_tree(n, s)
        rep = cross_check(st.graph, rot, apex=st.apex, instance=label)
        gf = GraphFile(st.graph, rot, st.apex, st.base)
        embed = _probe_embeddings(tree, s, 5)
        if len(embed) != 1:
            _fail(result, rep, gf, f"strand counts vary across embeddings: {sorted(embed)}")
        policies = {reduce(tree, "random", derive_seed(s, 3, k)).type3_count for k in range(3)}
        policies.add(reduce(tree).type3_count)
        if len(policies) != 1:
            _fail(result, rep, gf, f"TypeIII counts vary across policies: {sorted(policies)}")
    elif kind == "suspended-forest":
        sizes = [2 + rng.below(max(1, n // 2)) for _ in range(1 + rng.below(3))]
        forest, st, rot = corpus.random_suspended_forest(sizes, s)
        rep = cross_check(st.graph, rot, instance=label)
        rep.values["reduce-forest"] = l_suspended_forest(forest).l
        gf = GraphFile(st.graph, rot, st.apex)
    elif kind == "plane":
        g, rot = corpus.random_plane_graph(n, rng.below(n + 2), s)
        rep = cross_check(g, rot, instance=label)
        gf = GraphFile(g, rot)
    elif kind == "apex":
        g, apex = corpus.random_apex_graph(n, s)
        rep = ConsistencyReport(label)
        rep.values["bicycle"] = l_from_bicycle(g).l
        try:
            rep.values["tutte"] = l_from_tutte(g).l
        except TutteCapExceeded:
            pass
        norm = normalize_apex(g, apex)
        if norm.suspended is None:
            rep.values["normalized"] = norm.degenerate_l
        else:
            rep.values["normalized-bicycle"] = l_from_bicycle(norm.graph).l
            rep.values["normalized-reduce"] = l_suspended(norm.tree).l
        gf = GraphFile(g, apex=apex)
    else:
        g, rot = corpus.random_glued_graph(2 + rng.below(3), max(2, min(max_n, 8)), s)
        rep = cross_check(g, rot, instance=label)
        gf = GraphFile(g, rot)

    result.reports.append(rep)
    if not rep.agree:
        _fail(result, rep, gf, "methods disagree")


def run_xcheck(trials: int, max_n: int, seed: int) -> XcheckResult:
    result = XcheckResult(trials, seed, max_n)
    for i in range(trials):
        run_instance(i, seed, max_n, result)
        if result.failures and i % 50 == 0:
            log.warning("%d disagreements after %d instances", len(result.failures), i + 1)
    return result


def format_table(result: XcheckResult) -> str:
    rows = [("kind", "instances", "disagreements")]
    failed: dict[str, int] = {}
    for f in result.failures:
        k = f["report"]["instance"].split()[0]
        failed[k] = failed.get(k, 0) + 1
    counts = result.summary()["instances"]
    for kind in KINDS:
        if kind in counts:
            rows.append((kind, str(counts[kind]), str(failed.get(kind, 0))))
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows)
