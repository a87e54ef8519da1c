"""``linkcomp`` command line.

stdout carries JSON (CSV for ``bench``); diagnostics go to stderr.
Exit codes: 0 success, 1 semantic failure (inapplicable method, failed
precondition, disagreement), 2 usage or malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from . import __version__
from .embedding import EmbeddingError, default_embedding, strand_components
from .graph import GraphError, connected_components, is_forest, random_tree
from .io import GraphFile, InputError, dumps, loads_graph, parse_graph
from .oracles import ConsistencyError, TutteCapExceeded, l_from_bicycle, l_from_tutte
from .reduction import ReductionError, ReductionTrace, l_by_blocks, l_suspended, reduce, replay
from .suspension import (
    SuspensionError,
    base_tree,
    embed_suspended,
    normalize_apex,
    replay_normalization,
    step_from_json,
    step_to_json,
    suspend_tree_embedded,
)

log = logging.getLogger("linkcomp")

METHODS = ("strand", "tutte", "bicycle", "reduce", "blocks", "auto")


class Inapplicable(Exception):
    """The requested method cannot run on this input."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _emit(obj: Any) -> None:
    sys.stdout.write(dumps(obj))


def _compute(gf: GraphFile, method: str):
    g = gf.graph
    if method == "auto":
        if gf.apex is not None:
            try:
                base_tree(g, gf.apex)
                method = "reduce"
            except SuspensionError:
                method = "bicycle"
        else:
            method = "blocks" if len(connected_components(g)) == 1 else "bicycle"
    if method == "bicycle":
        return l_from_bicycle(g)
    if method == "tutte":
        return l_from_tutte(g)
    if method == "blocks":
        if len(connected_components(g)) != 1:
            raise Inapplicable("blocks needs a connected graph")
        return l_by_blocks(g)
    if method == "reduce":
        if gf.apex is None:
            raise Inapplicable("reduce needs an apex-annotated suspended tree")
        lc = l_suspended(base_tree(g, gf.apex))
        return type(lc)(lc.l, lc.method, lc.certificate.to_json())
    rot = gf.rotation
    if rot is None:
        if is_forest(g):
            rot = default_embedding(g)
        elif gf.apex is not None:
            rot = embed_suspended(g, gf.apex)
        else:
            raise Inapplicable("strand needs a rotation, a forest, or an apex-annotated suspended tree")
    return strand_components(g, rot)


def cmd_compute(args: argparse.Namespace) -> int:
    gf = loads_graph(_read(args.file))
    result = _compute(gf, args.method)
    _emit(result.to_json(certificate=args.certificate))
    return 0


def cmd_suspend(args: argparse.Namespace) -> int:
    gf = loads_graph(_read(args.file))
    rot = gf.rotation or default_embedding(gf.graph)
    st, srot = suspend_tree_embedded(gf.graph, rot)
    _emit(GraphFile(st.graph, srot, st.apex, st.base).to_json())
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    gf = loads_graph(_read(args.file))
    tree = base_tree(gf.graph, gf.apex) if gf.apex is not None else gf.graph
    trace = reduce(tree, args.policy, args.seed)
    if args.trace:
        _emit({"l": trace.type3_count + 1, **trace.to_json()})
    else:
        _emit({"l": trace.type3_count + 1, "type3_count": trace.type3_count})
    return 0


def cmd_normalize(args: argparse.Namespace) -> int:
    gf = loads_graph(_read(args.file))
    apex = args.apex if args.apex is not None else gf.apex
    if apex is None:
        raise InputError("give --apex or an 'apex' field")
    if not 0 <= apex < gf.graph.n:
        raise InputError(f"apex {apex} is not a vertex")
    norm = normalize_apex(gf.graph, apex)
    out: dict[str, Any] = {
        "source": GraphFile(gf.graph, apex=apex).to_json(),
        "trace": [step_to_json(s) for s in norm.trace],
    }
    if norm.suspended is None:
        out["graph"] = GraphFile(norm.graph, apex=norm.apex).to_json()
        out["l"] = norm.degenerate_l
    else:
        rot = embed_suspended(norm.graph, norm.apex)
        out["graph"] = GraphFile(norm.graph, rot, norm.apex, norm.suspended.base).to_json()
        out["l"] = l_suspended(norm.tree).l
    _emit(out)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    from .corpus import random_plane_graph

    if args.n < 1 or getattr(args, "extra_edges", 0) < 0:
        raise InputError("sizes must be positive")
    if args.family == "tree":
        _emit(GraphFile(random_tree(args.n, args.seed)).to_json())
    else:
        g, rot = random_plane_graph(args.n, args.extra_edges, args.seed)
        _emit(GraphFile(g, rot).to_json())
    return 0


def cmd_xcheck(args: argparse.Namespace) -> int:
    from .harness import format_table, run_xcheck

    if args.trials < 0 or args.max_n < 2:
        raise InputError("--trials must be >= 0 and --max-n >= 2")
    result = run_xcheck(args.trials, args.max_n, args.seed)
    print(format_table(result), file=sys.stderr)
    for f in result.failures:
        log.error("disagreement: %s", json.dumps(f, separators=(",", ":")))
    _emit(result.summary())
    return 0 if result.ok else 1


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_bench(args: argparse.Namespace) -> int:
    from .bench import METHODS as BENCH_METHODS, rows_to_csv, run_bench

    methods = [m for m in args.methods.split(",") if m]
    bad = [m for m in methods if m not in BENCH_METHODS]
    if bad or not methods:
        raise InputError(f"unknown methods {bad}; choose from {', '.join(BENCH_METHODS)}")
    if any(s < 3 for s in args.sizes) or args.trials < 1:
        raise InputError("sizes must be >= 3 edges and --trials >= 1")
    rows = run_bench(args.sizes, methods, args.seed, args.trials)
    sys.stdout.write(rows_to_csv(rows))
    if args.figure:
        from .plotting import plot_bench

        plot_bench(rows, args.figure)
        log.info("figure written to %s", args.figure)
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    try:
        obj = json.loads(_read(args.file))
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InputError("trace file must hold a JSON object")
    if "ops" in obj:
        try:
            trace = ReductionTrace.from_json(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed reduction trace: {exc}") from None
        a, b = replay(trace)
        _emit({"ok": True, "kind": "reduction", "final": [a, b], "type3_count": trace.type3_count})
        return 0
    if "trace" in obj and "source" in obj:
        source = parse_graph(obj["source"])
        try:
            steps = [step_from_json(s) for s in obj["trace"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed normalisation trace: {exc}") from None
        g, apex = replay_normalization(source.graph, source.apex, steps)
        if "graph" in obj:
            expected = parse_graph(obj["graph"])
            if expected.graph != g or expected.apex != apex:
                raise ReductionError("replayed graph differs from the recorded output")
        _emit({"ok": True, "kind": "normalization", "graph": GraphFile(g, apex=apex).to_json()})
        return 0
    raise InputError("unrecognised trace file")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linkcomp", description="Link component numbers of plane graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute l(G) for a graph file")
    c.add_argument("file")
    c.add_argument("--method", choices=METHODS, default="auto")
    c.add_argument("--certificate", action="store_true", help="include the method's certificate")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("suspend", help="suspend a tree; output carries rotation and apex")
    s.add_argument("file")
    s.set_defaults(func=cmd_suspend)

    r = sub.add_parser("reduce", help="reduce a tree (or suspended tree) to K2")
    r.add_argument("file")
    r.add_argument("--policy", choices=("ascending", "random"), default="ascending")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trace", action="store_true", help="emit the full replayable trace")
    r.set_defaults(func=cmd_reduce)

    nm = sub.add_parser("normalize", help="rewrite an apex-plus-tree graph as a suspended tree")
    nm.add_argument("file")
    nm.add_argument("--apex", type=int)
    nm.set_defaults(func=cmd_normalize)

    g = sub.add_parser("gen", help="generate a seeded tree or plane graph")
    gsub = g.add_subparsers(dest="family", required=True)
    gt = gsub.add_parser("tree")
    gt.add_argument("--n", type=int, required=True)
    gt.add_argument("--seed", type=int, default=0)
    gp = gsub.add_parser("plane")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--extra-edges", type=int, default=0)
    gp.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    x = sub.add_parser("xcheck", help="cross-check all methods on seeded instances")
    x.add_argument("--trials", type=int, default=500)
    x.add_argument("--max-n", type=int, default=30)
    x.add_argument("--seed", type=int, default=7)
    x.set_defaults(func=cmd_xcheck)

    b = sub.add_parser("bench", help="time methods on seeded suspended trees (CSV)")
    b.add_argument("--sizes", type=_int_list, default=[10, 14, 18])
    b.add_argument("--methods", default="reduce,tutte")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--figure", help="also render a PNG/PDF of the timings to this path")
    b.set_defaults(func=cmd_bench)

    rp = sub.add_parser("replay", help="re-apply a reduction or normalisation trace")
    rp.add_argument("file")
    rp.set_defaults(func=cmd_replay)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except InputError as exc:
        print(f"linkcomp: error: {exc}", file=sys.stderr)
        return 2
    except (Inapplicable, TutteCapExceeded, ConsistencyError, GraphError, EmbeddingError) as exc:
        print(f"linkcomp: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
