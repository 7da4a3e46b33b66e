"""JSON documents for resolution data and Enriques clusters.

Rationals always travel as strings (``"13/30"``, ``"4"``), never as JSON
numbers with a decimal point.  Component ids are 1-based on disk.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .builders import EnriquesCluster
from .core import DualGraph, Divisor, ResolutionData, as_rational
from .errors import MalformedInput


def rat(x: Fraction | int) -> str:
    return str(Fraction(x))


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc


def _no_float(text: str) -> Any:
    raise MalformedInput(f"floating point literal {text} not allowed; write rationals as \"p/q\"")


def dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInput(f"{what} must be an integer, got {value!r}")
    return value


def _dense_ids(items: list[Any], what: str) -> None:
    ids = [_int(item.get("id"), f"{what} id") for item in items]
    if ids != list(range(1, len(ids) + 1)):
        raise MalformedInput(f"{what} ids must be 1..{len(ids)} in order, got {ids}")


def resolution_from_doc(doc: Any, *, check_excess: bool = True) -> ResolutionData:
    if not isinstance(doc, dict):
        raise MalformedInput("resolution document must be a JSON object")
    try:
        comps = doc["components"]
        edges = doc.get("edges", [])
        F = doc["F"]
    except KeyError as exc:
        raise MalformedInput(f"resolution document is missing {exc}") from exc
    if not isinstance(comps, list) or not all(isinstance(c, dict) for c in comps):
        raise MalformedInput("components must be a list of objects")
    _dense_ids(comps, "component")
    n = len(comps)
    self_int = tuple(_int(c.get("self_int"), "self_int") for c in comps)
    pairs = []
    for edge in edges:
        if not isinstance(edge, list) or len(edge) != 2:
            raise MalformedInput(f"edge {edge!r} must be a pair of ids")
        i, j = (_int(v, "edge endpoint") for v in edge)
        pairs.append((i - 1, j - 1))
    graph = DualGraph(self_int, tuple(pairs))
    if not isinstance(F, list) or len(F) != n:
        raise MalformedInput(f"F must list {n} values")
    F_div = Divisor.of(_int(v, "F entry") for v in F)
    K = doc.get("K")
    K_div = None
    if K is not None:
        if not isinstance(K, list) or len(K) != n:
            raise MalformedInput(f"K must list {n} values")
        K_div = Divisor.of(as_rational(v) for v in K)
    flags = doc.get("flags", {}) or {}
    smooth = bool(flags.get("smooth_origin", False))
    root = flags.get("root")
    root_idx = None if root is None else _int(root, "root") - 1
    return ResolutionData.from_graph(
        graph, F_div, K_div, smooth_origin=smooth, root=root_idx, check_excess=check_excess
    )


def resolution_to_doc(rd: ResolutionData) -> dict[str, Any]:
    flags: dict[str, Any] = {"smooth_origin": rd.smooth_origin}
    if rd.root is not None:
        flags["root"] = rd.root + 1
    return {
        "components": [{"id": i + 1, "self_int": s} for i, s in enumerate(rd.graph.self_int)],
        "edges": [[i + 1, j + 1] for i, j in rd.graph.edges],
        "F": [int(e) for e in rd.F],
        "K": [rat(k) for k in rd.K],
        "flags": flags,
    }


def cluster_from_doc(doc: Any) -> EnriquesCluster:
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise MalformedInput("cluster document must have a list of points")
    points = doc["points"]
    if not all(isinstance(p, dict) for p in points):
        raise MalformedInput("points must be objects")
    _dense_ids(points, "point")
    mult = []
    prox = []
    for p in points:
        mult.append(_int(p.get("mult"), "mult"))
        raw = p.get("prox", [])
        if not isinstance(raw, list):
            raise MalformedInput("prox must be a list of ids")
        prox.append(tuple(_int(j, "prox id") - 1 for j in raw))
    return EnriquesCluster(tuple(mult), tuple(prox))


def cluster_to_doc(cl: EnriquesCluster) -> dict[str, Any]:
    return {
        "points": [
            {"id": i + 1, "mult": m, "prox": [j + 1 for j in p]}
            for i, (m, p) in enumerate(zip(cl.mult, cl.prox))
        ]
    }


def read_resolution(path: str | Path, *, check_excess: bool = True) -> ResolutionData:
    return resolution_from_doc(load_json(path), check_excess=check_excess)


def write_resolution(rd: ResolutionData, path: str | Path) -> None:
    Path(path).write_text(dump_json(resolution_to_doc(rd)) + "\n", encoding="utf-8")


def read_cluster(path: str | Path) -> EnriquesCluster:
    return cluster_from_doc(load_json(path))
