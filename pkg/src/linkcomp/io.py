"""Graph file format.

A graph file is one JSON object with keys in the fixed order ``n``,
``edges``, ``rotation``, ``apex``, ``base_vertices`` (the last three
optional). Canonical files are written compactly, one object per file with
a trailing newline, so parsing and re-serialising reproduces them exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .embedding import EmbeddingError, RotationSystem, make_rotation
from .graph import GraphError, Multigraph, build_graph


class InputError(ValueError):
    """Malformed file contents."""


@dataclass(frozen=True)
class GraphFile:
    graph: Multigraph
    rotation: RotationSystem | None = None
    apex: int | None = None
    base_vertices: tuple[int, ...] | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges]}
        if self.rotation is not None:
            out["rotation"] = self.rotation.to_json()
        if self.apex is not None:
            out["apex"] = self.apex
        if self.base_vertices is not None:
            out["base_vertices"] = list(self.base_vertices)
        return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


def parse_graph(obj: Any) -> GraphFile:
    if not isinstance(obj, dict):
        raise InputError("graph file must hold a JSON object")
    if "n" not in obj or "edges" not in obj:
        raise InputError("graph object needs 'n' and 'edges'")
    n = _int(obj["n"], "n")
    if not isinstance(obj["edges"], list):
        raise InputError("'edges' must be a list of [u, v] pairs")
    pairs = []
    for item in obj["edges"]:
        if not isinstance(item, list) or len(item) != 2:
            raise InputError(f"edge {item!r} must be a [u, v] pair")
        pairs.append((_int(item[0], "edge endpoint"), _int(item[1], "edge endpoint")))
    try:
        g = build_graph(n, pairs)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    rot = None
    if obj.get("rotation") is not None:
        cycles = obj["rotation"]
        if not isinstance(cycles, list) or not all(isinstance(c, list) for c in cycles):
            raise InputError("'rotation' must be a list of dart lists")
        try:
            rot = make_rotation(g, [[_int(d, "dart") for d in c] for c in cycles])
        except EmbeddingError as exc:
            raise InputError(str(exc)) from None
    apex = None
    if obj.get("apex") is not None:
        apex = _int(obj["apex"], "apex")
        if not 0 <= apex < n:
            raise InputError(f"apex {apex} is not a vertex")
    base = None
    if obj.get("base_vertices") is not None:
        base = tuple(_int(v, "base vertex") for v in obj["base_vertices"])
    return GraphFile(g, rot, apex, base)


def loads_graph(text: str) -> GraphFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None
    return parse_graph(obj)


def read_graph(path: str) -> GraphFile:
    with open(path, encoding="utf-8") as fh:
        return loads_graph(fh.read())
