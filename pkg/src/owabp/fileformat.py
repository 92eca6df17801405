"""JSON instance and report files (format_version 1).

Rationals are always strings (``"p/q"`` or an integer literal); graph links
are ``[tail, head, element_id]`` triples with string node names.

Instance file::

    {
      "format_version": 1,
      "problem": {"kind": "path", "nodes": [...], "arcs": [[u, v, id], ...],
                  "source": "s", "sink": "t"},
      "scenarios": [[c_00, c_01, ...], ...],          # K rows of n ints
      "weights": {"preset": "hurwicz", "alpha": "1/3"},
      "metadata": {"name": "...", "seed": 7, "provenance": "random"}
    }

``problem`` variants: ``selection`` (``n``, ``p``), ``path`` / ``st_cut``
(``nodes``, ``arcs``, ``source``, ``sink``), ``spanning_tree`` (``nodes``,
``edges``), ``assignment`` (``left``, ``right``, ``edges``). ``weights.preset``
is one of max, min, average, median, quantile (+ ``k``), hurwicz (+ ``alpha``),
explicit (+ ``values``, K rational strings).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import InvalidInstance
from .families import AssignmentFamily, CutFamily, Family, PathFamily, SelectionFamily, SpanningTreeFamily
from .instance import Instance
from .model import ScenarioMatrix, WeightPreset, format_rational, parse_rational
from .solvers import SolveReport

FORMAT_VERSION = 1


def family_to_dict(fam: Family) -> dict:
    if isinstance(fam, SelectionFamily):
        return {"kind": "selection", "n": fam.n, "p": fam.p}
    if isinstance(fam, (PathFamily, CutFamily)):
        return {
            "kind": fam.kind,
            "nodes": list(fam.nodes),
            "arcs": [list(a) for a in fam.arcs],
            "source": fam.source,
            "sink": fam.sink,
        }
    if isinstance(fam, SpanningTreeFamily):
        return {"kind": "spanning_tree", "nodes": list(fam.nodes), "edges": [list(e) for e in fam.edges]}
    if isinstance(fam, AssignmentFamily):
        return {
            "kind": "assignment",
            "left": list(fam.left),
            "right": list(fam.right),
            "edges": [list(e) for e in fam.edges],
        }
    raise TypeError(f"unknown family {fam!r}")


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise InvalidInstance(f"{where}: missing field {key!r}")
    return d[key]


def family_from_dict(d: dict) -> Family:
    if not isinstance(d, dict):
        raise InvalidInstance("problem must be an object")
    kind = _need(d, "kind", "problem")
    try:
        if kind == "selection":
            return SelectionFamily(int(_need(d, "n", kind)), int(_need(d, "p", kind)))
        if kind in ("path", "st_cut"):
            cls = PathFamily if kind == "path" else CutFamily
            return cls(
                tuple(_need(d, "nodes", kind)),
                tuple(tuple(a) for a in _need(d, "arcs", kind)),
                _need(d, "source", kind),
                _need(d, "sink", kind),
            )
        if kind == "spanning_tree":
            return SpanningTreeFamily(tuple(_need(d, "nodes", kind)), tuple(tuple(e) for e in _need(d, "edges", kind)))
        if kind == "assignment":
            return AssignmentFamily(
                tuple(_need(d, "left", kind)),
                tuple(_need(d, "right", kind)),
                tuple(tuple(e) for e in _need(d, "edges", kind)),
            )
    except TypeError as exc:
        raise InvalidInstance(f"{kind}: malformed structure ({exc})")
    raise InvalidInstance(f"unknown problem kind {kind!r}")


def preset_to_dict(p: WeightPreset) -> dict:
    out: dict[str, Any] = {"preset": p.kind}
    if p.kind == "hurwicz":
        out["alpha"] = format_rational(p.alpha)
    elif p.kind == "quantile":
        out["k"] = p.k
    elif p.kind == "explicit":
        out["values"] = [format_rational(v) for v in p.values]
    return out


def _rational_field(v) -> Fraction:
    # floats are refused on purpose; only strings or JSON integers
    if isinstance(v, float):
        raise InvalidInstance(f"rational given as float {v!r}; use a \"p/q\" string")
    return parse_rational(v)


def preset_from_dict(d: dict) -> WeightPreset:
    if not isinstance(d, dict):
        raise InvalidInstance("weights must be an object")
    kind = _need(d, "preset", "weights")
    if kind == "hurwicz":
        return WeightPreset.hurwicz(_rational_field(_need(d, "alpha", "weights")))
    if kind == "quantile":
        k = _need(d, "k", "weights")
        if isinstance(k, bool) or not isinstance(k, int):
            raise InvalidInstance("quantile k must be an integer")
        return WeightPreset.quantile(k)
    if kind == "explicit":
        return WeightPreset.explicit(_rational_field(v) for v in _need(d, "values", "weights"))
    return WeightPreset(kind)


def instance_to_dict(inst: Instance) -> dict:
    meta = dict(inst.metadata)
    if inst.name:
        meta["name"] = inst.name
    return {
        "format_version": FORMAT_VERSION,
        "problem": family_to_dict(inst.family),
        "scenarios": [list(r) for r in inst.scenarios.costs],
        "weights": preset_to_dict(inst.weights),
        "metadata": meta,
    }


def instance_from_dict(d: dict) -> Instance:
    if not isinstance(d, dict):
        raise InvalidInstance("instance must be a JSON object")
    version = _need(d, "format_version", "instance")
    if version != FORMAT_VERSION:
        raise InvalidInstance(f"unsupported format_version {version!r}")
    scenarios = _need(d, "scenarios", "instance")
    if not isinstance(scenarios, list) or not all(isinstance(r, list) for r in scenarios):
        raise InvalidInstance("scenarios must be a list of integer rows")
    meta = dict(d.get("metadata") or {})
    return Instance(
        family_from_dict(_need(d, "problem", "instance")),
        ScenarioMatrix(tuple(tuple(r) for r in scenarios)),
        preset_from_dict(_need(d, "weights", "instance")),
        name=str(meta.get("name", "")),
        metadata=meta,
    )


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2, sort_keys=True) + "\n"


def loads_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"not valid JSON: {exc}")
    return instance_from_dict(data)


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def write_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_instance(inst))


def _param_value(v):
    return format_rational(v) if isinstance(v, Fraction) else v


def report_to_dict(rep: SolveReport, instance_name: str = "", params: dict | None = None) -> dict:
    merged = {**rep.params, **(params or {})}
    return {
        "format_version": FORMAT_VERSION,
        "instance": instance_name,
        "algorithm": rep.algorithm,
        "params": {k: _param_value(v) for k, v in sorted(merged.items())},
        "solution": list(rep.solution.elements),
        "value": format_rational(rep.value),
        "certified_ratio": None if rep.certified_ratio is None else format_rational(rep.certified_ratio),
        "per_scenario_costs": list(rep.per_scenario_costs),
        "oracle_calls": rep.oracle_calls,
        "elapsed_ns": rep.elapsed_ns,
    }


def dumps_report(rep: SolveReport, instance_name: str = "", params: dict | None = None) -> str:
    return json.dumps(report_to_dict(rep, instance_name, params), indent=2, sort_keys=True) + "\n"


def report_text(rep: SolveReport, instance_name: str = "", params: dict | None = None) -> str:
    d = report_to_dict(rep, instance_name, params)
    lines = [
        f"instance:   {d['instance']}",
        f"algorithm:  {d['algorithm']}",
        f"params:     " + " ".join(f"{k}={v}" for k, v in d["params"].items()),
        f"solution:   {' '.join(map(str, d['solution']))}",
        f"value:      {d['value']}",
        f"ratio:      {d['certified_ratio'] if d['certified_ratio'] is not None else '-'}",
        f"costs:      {' '.join(map(str, d['per_scenario_costs']))}",
        f"calls:      {d['oracle_calls']}",
        f"elapsed_ns: {d['elapsed_ns']}",
    ]
    return "\n".join(lines) + "\n"
