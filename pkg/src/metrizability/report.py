"""Verdict serialization: a JSON document that round-trips, and stable text."""
from __future__ import annotations

from typing import Any

from .certificates import (DominanceConstraint, FarkasCertificate, format_certificate,
                           format_linear_form)
from .graph import Graph, ReductionTrace
from .pathsys import PathSystem, format_path_system, parse_path_system
from .structure import (UNCLASSIFIED_REDUCTION, TWO_DISJOINT_CYCLES_11, Metrizable, MetrizableWitness,
                        NonMetrizable, Reason, StructClass, Unknown, Verdict)
from .subdivision import Embedding


def _graph_json(g: Graph) -> dict:
    return {"vertices": g.sorted_vertices(), "edges": [list(e) for e in g.edge_list()]}


def _graph_from(d: dict) -> Graph:
    return Graph.from_edges(d["vertices"], [tuple(e) for e in d["edges"]])


def _class_json(c: StructClass) -> dict:
    return {"kind": c.kind, "n": c.n, "pattern": c.pattern,
            "embedding": c.embedding.to_json() if c.embedding else None}


def _class_from(d: dict) -> StructClass:
    emb = Embedding.from_json(d["embedding"]) if d.get("embedding") else None
    return StructClass(d["kind"], d.get("n"), d.get("pattern"), emb)


def reason_to_json(r: Reason) -> dict:
    out: dict[str, Any] = {"rule": r.tag, "zoo_id": r.zoo_id}
    if isinstance(r.witness, Embedding):
        out["pattern"] = _graph_json(r.pattern)
        out["embedding"] = r.witness.to_json()
    elif r.tag == TWO_DISJOINT_CYCLES_11:
        out["cycles"] = [list(c) for c in r.witness]
    elif r.tag == UNCLASSIFIED_REDUCTION:
        t: ReductionTrace = r.witness
        out["removed"] = [list(e) for e in t.removed]
        out["final"] = _graph_json(t.final)
        out["class"] = _class_json(r.reduced_class)
    return out


def reason_from_json(d: dict, g: Graph) -> Reason:
    tag = d["rule"]
    if "embedding" in d:
        return Reason(tag, Embedding.from_json(d["embedding"]), _graph_from(d["pattern"]), d.get("zoo_id"))
    if "cycles" in d:
        return Reason(tag, tuple(tuple(c) for c in d["cycles"]))
    trace = ReductionTrace(g, tuple(tuple(e) for e in d["removed"]), _graph_from(d["final"]))
    return Reason(tag, trace, reduced_class=_class_from(d["class"]))


def certificate_to_json(c: FarkasCertificate) -> dict:
    return {"rows": [{"pair": list(con.pair), "system_path": list(con.system_path),
                      "alternative": list(con.alternative), "coefficient": k} for con, k in c.rows],
            "residual": [[list(e), v] for e, v in sorted(c.residual.items())],
            "text": format_certificate(c.to_doc())}


def certificate_from_json(d: dict) -> FarkasCertificate:
    rows = tuple((DominanceConstraint(tuple(r["pair"]), tuple(r["system_path"]), tuple(r["alternative"])),
                  r["coefficient"]) for r in d["rows"])
    return FarkasCertificate(rows, {tuple(e): v for e, v in d["residual"]})


def verdict_to_json(v: Verdict, g: Graph, budget: dict | None = None) -> dict:
    out: dict[str, Any] = {"graph": _graph_json(g)}
    if budget is not None:
        out["budget"] = budget
    if isinstance(v, NonMetrizable):
        out["verdict"] = "NonMetrizable"
        out["reason"] = reason_to_json(v.reason) if v.reason else None
        out["system"] = format_path_system(v.system) if v.system else None
        out["certificate"] = certificate_to_json(v.certificate) if v.certificate else None
    elif isinstance(v, Metrizable):
        w = v.witness
        out["verdict"] = "Metrizable"
        out["witness"] = {"kind": w.kind, "n": w.n, "fact": w.fact, "count": w.count}
    else:
        out["verdict"] = "Unknown"
        out["notes"] = list(v.notes)
    return out


def verdict_from_json(d: dict) -> Verdict:
    g = _graph_from(d["graph"])
    kind = d["verdict"]
    if kind == "NonMetrizable":
        reason = reason_from_json(d["reason"], g) if d.get("reason") else None
        system = parse_path_system(d["system"], g) if d.get("system") is not None else None
        cert = certificate_from_json(d["certificate"]) if d.get("certificate") else None
        return NonMetrizable(reason, system, cert)
    if kind == "Metrizable":
        w = d["witness"]
        return Metrizable(MetrizableWitness(w["kind"], w.get("n"), w.get("fact"), w.get("count")))
    if kind == "Unknown":
        return Unknown(tuple(d.get("notes", ())))
    raise ValueError(f"unknown verdict kind {kind!r}")


def format_embedding(e: Embedding) -> list[str]:
    lines = ["  branch map: " + ", ".join(f"{k}->{v}" for k, v in sorted(e.branch.items()))]
    for (a, b), p in sorted(e.paths.items()):
        lines.append(f"  {a}-{b}: " + "-".join(map(str, p)))
    return lines


def format_reason(r: Reason) -> list[str]:
    lines = [f"rule: {r.label()}"]
    if r.zoo_id is not None:
        lines[0] += f" (contains zoo graph {r.zoo_id} as a topological minor)"
    if isinstance(r.witness, Embedding):
        lines += format_embedding(r.witness)
    elif r.tag == TWO_DISJOINT_CYCLES_11:
        for c in r.witness:
            lines.append("  cycle: " + "-".join(map(str, c + c[:1])))
    elif r.tag == UNCLASSIFIED_REDUCTION:
        t: ReductionTrace = r.witness
        lines.append("  removed compliant edges: " + (" ".join(f"{u}-{v}" for u, v in t.removed) or "none"))
        lines.append(f"  reduced graph: {t.final.n} vertices, {t.final.m} edges, structural class Other")
    return lines


def format_verdict(v: Verdict) -> str:
    """Stable human-readable report."""
    if isinstance(v, NonMetrizable):
        lines = ["verdict: NonMetrizable"]
        if v.reason is not None:
            lines += format_reason(v.reason)
        if v.system is not None:
            lines.append("non-metric path system:")
            lines += ["  " + ln for ln in format_path_system(v.system).splitlines()]
        if v.certificate is not None:
            lines.append("certificate:")
            lines += ["  " + ln for ln in format_certificate(v.certificate.to_doc()).splitlines()]
            lines.append("residual: " + format_linear_form(v.certificate.residual) + " <= 0")
    elif isinstance(v, Metrizable):
        lines = [f"verdict: Metrizable({v.witness.label()})"]
    else:
        lines = ["verdict: Unknown"] + [f"  note: {n}" for n in v.notes]
    return "\n".join(lines) + "\n"
