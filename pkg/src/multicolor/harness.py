"""Experiment runner: pairs instances with algorithms and oracle-generated
tapes, validates the output, and reports metrics.

Instance files are JSON:
  { "graph": { "kind": ..., "nodes": [...], "edges": [["u","w"], ...],
               "partition": {"u": "L", ...}, "cells": {"u": [q, r], ...} },
    "requests": [ {"node": "u", "op": "color"}
                | {"node": "u", "op": "cancel", "color": 3} ],
    "tape": "0110..."   (optional, for golden tests) }
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field

from .advice import AdviceTape, enc_len
from .algorithms import run_player
from .errors import DomainError, MalformedInstanceError, MultiColorError
from .graph import Graph, build_bipartite, build_hexagonal
from .instance import (
    CancelAction,
    ColorAction,
    Instance,
    Request,
    demand_clique_weight,
    peak_clique_load,
    validate_full,
)
from . import oracle


# ---------------------------------------------------------------------------
# serialization

def instance_to_dict(instance: Instance, tape: str | None = None) -> dict:
    g = instance.graph
    gd = {"kind": g.kind, "nodes": list(g.nodes)}
    if g.kind in ("path", "bipartite"):
        gd["edges"] = [list(e) for e in g.edge_list()]
        gd["partition"] = {v: g.partition[v] for v in g.nodes}
    else:
        gd["cells"] = {v: [g.cell_of[v].q, g.cell_of[v].r] for v in g.nodes}
    if g.kind == "path":
        # preserve path order so the alternation invariant can be re-checked
        gd["nodes"] = list(g.nodes)
    reqs = []
    for r in instance.requests:
        if r.op == "color":
            reqs.append({"node": r.node, "op": "color"})
        else:
            reqs.append({"node": r.node, "op": "cancel", "color": r.cancel_color})
    out = {"graph": gd, "requests": reqs, "name": instance.name}
    if tape is not None:
        out["tape"] = tape
    return out


def instance_from_dict(data: dict) -> Instance:
    gd = data["graph"]
    kind = gd["kind"]
    if kind == "hexagonal":
        graph = build_hexagonal({v: tuple(c) for v, c in gd["cells"].items()})
    elif kind in ("path", "bipartite"):
        if kind == "path":
            nodes = gd["nodes"]
            edges = gd.get("edges") or [[nodes[i], nodes[i + 1]] for i in range(len(nodes) - 1)]
            partition = gd.get("partition") or {
                v: ("L" if i % 2 == 0 else "U") for i, v in enumerate(nodes)
            }
        else:
            nodes, edges, partition = gd["nodes"], gd["edges"], gd["partition"]
        graph = build_bipartite(nodes, edges, partition)
        if kind == "path":
            graph = Graph(kind="path", nodes=tuple(gd["nodes"]), edges=graph.edges,
                          partition=graph.partition)
    else:
        raise MalformedInstanceError(f"unknown graph kind {kind!r}")
    requests = tuple(
        Request(node=r["node"], op=r["op"], cancel_color=r.get("color"))
        for r in data["requests"]
    )
    return Instance(graph=graph, requests=requests, name=data.get("name", "instance"))


def save_instance(instance: Instance, path: str, tape: str | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(instance, tape=tape), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_instance(path: str) -> Instance:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def actions_to_dicts(actions) -> list[dict]:
    out = []
    for a in actions:
        if isinstance(a, ColorAction):
            out.append({"op": "color", "color": a.color})
        else:
            out.append({"op": "cancel", "recolor": list(a.recolor) if a.recolor else None})
    return out


def actions_from_dicts(items) -> list:
    actions = []
    for a in items:
        if a["op"] == "color":
            actions.append(ColorAction(a["color"]))
        else:
            rec = a.get("recolor")
            actions.append(CancelAction(recolor=tuple(rec) if rec else None))
    return actions


# ---------------------------------------------------------------------------
# running

@dataclass(frozen=True)
class RunReport:
    algorithm: str
    instance: str
    max_color: int
    distinct_colors: int
    advice_bits_read: int
    opt_value: int | None
    strict_ratio: float | None
    valid: bool
    runtime_millis: float = field(compare=False, default=0.0)


def make_advice(instance: Instance, algo: str, b: int | None = None,
                max_nodes: int = oracle.DEFAULT_MAX_NODES,
                max_requests: int = oracle.DEFAULT_MAX_REQUESTS) -> AdviceTape:
    if algo == "greedy_opt":
        return oracle.advice_greedyopt(instance)
    if algo == "greedy_truncated":
        if b is None:
            raise DomainError("greedy_truncated needs the truncation width b")
        return oracle.advice_truncated(instance, b)
    if algo == "greedy_cancel":
        return oracle.advice_cancel(instance)
    if algo == "trivial":
        return oracle.advice_trivial(instance, max_nodes=max_nodes, max_requests=max_requests)
    if algo == "fpa":
        return oracle.advice_fpa(instance)
    if algo == "hex43":
        return oracle.advice_43(instance)
    raise DomainError(f"unknown algorithm {algo!r}")


def advice_bound(instance: Instance, algo: str, b: int | None = None) -> int | None:
    """Declared worst-case advice length for the algorithm on this instance."""
    n = instance.n
    if algo == "greedy_opt":
        return enc_len(oracle.opt_bipartite(instance))
    if algo == "greedy_truncated":
        opt = oracle.opt_bipartite(instance)
        a = max(0, opt.bit_length() - b)
        return b + enc_len(a)
    if algo == "greedy_cancel":
        return enc_len(peak_clique_load(instance))
    if algo == "trivial":
        opt = oracle.opt_value(instance)
        if opt is None:
            return None
        w = opt.bit_length()
        return enc_len(w) + n * w
    if algo == "fpa":
        omega = demand_clique_weight(instance)
        return enc_len((omega + 1) // 2)
    if algo == "hex43":
        return n + 2 * len(instance.graph.nodes)
    return None


def _metrics(actions):
    colors = set()
    max_color = 0
    for a in actions:
        if isinstance(a, ColorAction):
            colors.add(a.color)
            max_color = max(max_color, a.color)
        elif isinstance(a, CancelAction) and a.recolor is not None:
            colors.add(a.recolor[1])
            max_color = max(max_color, a.recolor[1])
    return max_color, len(colors)


def run(instance: Instance, algo: str, b: int | None = None,
        max_nodes: int = oracle.DEFAULT_MAX_NODES,
        max_requests: int = oracle.DEFAULT_MAX_REQUESTS) -> RunReport:
    """Generate the tape, run the player, validate, and measure."""
    start = time.perf_counter()
    tape = make_advice(instance, algo, b=b, max_nodes=max_nodes, max_requests=max_requests)
    actions = run_player(algo, instance.graph, tape, instance.requests, b=b)
    violation = validate_full(instance, actions)
    max_color, distinct = _metrics(actions)
    opt = oracle.opt_value(instance, max_nodes=max_nodes, max_requests=max_requests)
    ratio = (max_color / opt) if opt else None
    elapsed = (time.perf_counter() - start) * 1000.0
    return RunReport(
        algorithm=algo,
        instance=instance.name,
        max_color=max_color,
        distinct_colors=distinct,
        advice_bits_read=tape.high_water,
        opt_value=opt,
        strict_ratio=ratio,
        valid=violation is None,
        runtime_millis=elapsed,
    )


CSV_COLUMNS = ("algorithm", "instance", "max_color", "distinct_colors",
               "advice_bits_read", "opt_value", "strict_ratio", "valid", "status")


def batch(manifest: dict, base_dir: str = ".") -> tuple[str, bool]:
    """Run every manifest entry; returns (csv_text, all_ok).

    Rows keep manifest order.  A failing entry becomes an error row and the
    batch continues.  runtime is deliberately not a CSV column so reruns are
    byte-identical.
    """
    import os

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    all_ok = True
    for entry in manifest["runs"]:
        algo = entry.get("algo", "?")
        try:
            instance = load_instance(os.path.join(base_dir, entry["instance"]))
            report = run(instance, algo, b=entry.get("b"))
            bound = advice_bound(instance, algo, b=entry.get("b"))
            within = bound is None or report.advice_bits_read <= bound
            writer.writerow({
                "algorithm": report.algorithm,
                "instance": report.instance,
                "max_color": report.max_color,
                "distinct_colors": report.distinct_colors,
                "advice_bits_read": report.advice_bits_read,
                "opt_value": "" if report.opt_value is None else report.opt_value,
                "strict_ratio": "" if report.strict_ratio is None else f"{report.strict_ratio:.6f}",
                "valid": str(report.valid).lower(),
                "status": "ok",
            })
            all_ok = all_ok and report.valid and within
        except (MultiColorError, OSError, KeyError, json.JSONDecodeError) as exc:
            writer.writerow({
                "algorithm": algo,
                "instance": entry.get("instance", "?"),
                "max_color": "", "distinct_colors": "", "advice_bits_read": "",
                "opt_value": "", "strict_ratio": "", "valid": "",
                "status": f"error: {exc}",
            })
            all_ok = False
    return buf.getvalue(), all_ok
