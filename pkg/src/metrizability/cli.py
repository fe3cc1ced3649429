"""Command-line interface.

Exit codes: 0 definite answer or valid certificate, 1 definite negative
(invalid certificate, non-metrizable graph, tie in geodesics), 2 unknown
because of a budget, 64 usage error, 65 input parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .certificates import (CertificateSyntaxError, NonPathSide, UnknownEdgeSymbol, format_certificate,
                           format_linear_form, parse_certificate, verify_certificate)
from .graph import Graph, GraphParseError, NotTwoConnected, parse_graph, reduce_compliant
from .pathsys import (MalformedSystem, PathSystemParseError, TieError, format_path_system,
                      geodesic_system, parse_path_system, parse_weights)
from .report import certificate_to_json, format_reason, format_verdict, reason_to_json, verdict_to_json
from .structure import (Budget, Metrizable, NonMetrizable, classify_reduced, decide,
                        screen_nonmetrizable, search_nonmetric)
from .subdivision import BudgetExceeded
from .zoo import load_zoo, zoo_entry

EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    budget: Budget
    json: bool


def _common(suppress: bool) -> argparse.ArgumentParser:
    """Shared flags; the per-command copy suppresses defaults so flags given
    before the command are not overwritten."""
    common = _Parser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common.add_argument("--budget-nodes", type=_positive, default=d(None), metavar="N",
                        help="search-node cap for subdivision searches (default 10^6)")
    common.add_argument("--budget-paths", type=_positive, default=d(None), metavar="N",
                        help="cap on simple paths per vertex pair (default 10^5)")
    common.add_argument("--limit", type=_nonneg, default=d(None), metavar="N",
                        help="stop exhaustive search after N path systems")
    common.add_argument("--exhaustive-max", type=_nonneg, default=d(None), metavar="N",
                        help="largest vertex count searched exhaustively (default 7)")
    common.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    p = _Parser(prog="metrizability", description="Decide and certify graph metrizability.",
                parents=[_common(suppress=False)])
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    for name, helptext in (("check", "run the full decision pipeline"),
                           ("reduce", "remove compliant edges until none remain"),
                           ("classify", "structural class of the reduced graph"),
                           ("screen", "apply the non-metrizability rules")):
        s = sub.add_parser(name, help=helptext, parents=[common])
        s.add_argument("graph")
    s = sub.add_parser("verify-cert", help="check a certificate against a path system", parents=[common])
    s.add_argument("graph")
    s.add_argument("system")
    s.add_argument("certificate")
    s = sub.add_parser("search", help="find a non-metric consistent path system", parents=[common])
    s.add_argument("graph")
    s.add_argument("--neighborly", action="store_true", help="only systems choosing every edge")
    s.add_argument("--out", metavar="DIR", help="also write system.txt and certificate.txt here")
    s = sub.add_parser("geodesics", help="path system of unique shortest paths", parents=[common])
    s.add_argument("graph")
    s.add_argument("weights")
    s = sub.add_parser("zoo", help="embedded non-metrizable graphs", parents=[common])
    s.add_argument("action", choices=["list", "dump", "selftest"])
    s.add_argument("id", nargs="?", type=int)
    s.add_argument("--out", metavar="DIR", default=".", help="directory for dump (default .)")
    return p


def _budget(ns) -> Budget:
    kw = {}
    if ns.budget_nodes is not None:
        kw["node_cap"] = ns.budget_nodes
    if ns.budget_paths is not None:
        kw["path_cap"] = ns.budget_paths
    if ns.limit is not None:
        kw["limit"] = ns.limit
    if ns.exhaustive_max is not None:
        kw["exhaustive_max"] = ns.exhaustive_max
    return Budget(**kw)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _emit(out, payload: dict | None, text: str, as_json: bool) -> None:
    out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n" if as_json else text)


def cmd_check(cfg: RunConfig, ns, out) -> int:
    g = _graph(ns.graph)
    v = decide(g, cfg.budget)
    _emit(out, verdict_to_json(v, g), format_verdict(v), cfg.json)
    if isinstance(v, Metrizable):
        return EXIT_OK
    return EXIT_NEGATIVE if isinstance(v, NonMetrizable) else EXIT_UNKNOWN


def cmd_reduce(cfg: RunConfig, ns, out) -> int:
    g = _graph(ns.graph)
    trace = reduce_compliant(g)
    f = trace.final
    text = "removed: " + (" ".join(f"{u}-{v}" for u, v in trace.removed) or "none") + "\n"
    text += "final" + (" (cycle)" if f.is_cycle() else "") + ":\n" + f.to_text()
    payload = {"removed": [list(e) for e in trace.removed], "final": {"n": f.n, "edges": [list(e) for e in f.edge_list()]},
               "cycle": f.is_cycle()}
    _emit(out, payload, text, cfg.json)
    return EXIT_OK


def cmd_classify(cfg: RunConfig, ns, out) -> int:
    g = _graph(ns.graph)
    trace = reduce_compliant(g)
    cls = classify_reduced(trace.final, node_cap=cfg.budget.node_cap)
    text = (f"removed compliant edges: {len(trace.removed)}\n"
            f"structural class: {cls.label()}\n"
            "(a structural class is not a metrizability verdict)\n")
    payload = {"removed": [list(e) for e in trace.removed], "class": cls.kind, "n": cls.n, "pattern": cls.pattern}
    _emit(out, payload, text, cfg.json)
    return EXIT_OK


def cmd_screen(cfg: RunConfig, ns, out) -> int:
    g = _graph(ns.graph)
    notes: list[str] = []
    r = screen_nonmetrizable(g, cfg.budget, notes)
    if r is not None:
        _emit(out, {"fired": True, "reason": reason_to_json(r), "notes": notes},
              "\n".join(format_reason(r)) + "\n", cfg.json)
        return EXIT_NEGATIVE
    text = "no rule fires\n" + "".join(f"  note: {n}\n" for n in notes)
    _emit(out, {"fired": False, "reason": None, "notes": notes}, text, cfg.json)
    return EXIT_UNKNOWN if notes else EXIT_OK


def cmd_verify(cfg: RunConfig, ns, out) -> int:
    g = _graph(ns.graph)
    ps = parse_path_system(_read(ns.system), g)
    doc = parse_certificate(_read(ns.certificate))
    try:
        rep = verify_certificate(ps, doc)
    except (UnknownEdgeSymbol, NonPathSide) as exc:
        _emit(out, {"valid": False, "problems": [str(exc)], "residual": None}, f"invalid: {exc}\n", cfg.json)
        return EXIT_NEGATIVE
    text = ("valid\n" if rep.valid else "invalid\n") + f"residual: {rep.residual_text()}\n"
    text += "".join(f"  problem: {p}\n" for p in rep.problems)
    payload = {"valid": rep.valid, "residual": format_linear_form(rep.residual) + " <= 0",
               "target": list(doc.target), "problems": list(rep.problems)}
    _emit(out, payload, text, cfg.json)
    return EXIT_OK if rep.valid else EXIT_NEGATIVE


def cmd_search(cfg: RunConfig, ns, out) -> int:
    g = _graph(ns.graph)
    res = search_nonmetric(g, cfg.budget, neighborly=ns.neighborly)
    if res.system is not None:
        sys_text = format_path_system(res.system)
        cert_text = format_certificate(res.certificate.to_doc())
        if ns.out:
            d = Path(ns.out)
            d.mkdir(parents=True, exist_ok=True)
            (d / "system.txt").write_text(sys_text)
            (d / "certificate.txt").write_text(cert_text)
        text = (f"non-metric consistent system found after {res.checked} systems\n"
                f"system:\n{sys_text}certificate:\n{cert_text}"
                f"residual: {format_linear_form(res.certificate.residual)} <= 0\n")
        payload = {"found": True, "checked": res.checked, "system": sys_text,
                   "certificate": certificate_to_json(res.certificate)}
        _emit(out, payload, text, cfg.json)
        return EXIT_OK
    if res.complete:
        _emit(out, {"found": False, "checked": res.checked, "complete": True},
              f"all {res.checked} consistent systems are metric\n", cfg.json)
        return EXIT_NEGATIVE
    _emit(out, {"found": False, "checked": res.checked, "complete": False, "notes": res.notes},
          f"no non-metric system among {res.checked} checked\n" + "".join(f"  note: {n}\n" for n in res.notes),
          cfg.json)
    return EXIT_UNKNOWN


def cmd_geodesics(cfg: RunConfig, ns, out) -> int:
    g = _graph(ns.graph)
    w = parse_weights(_read(ns.weights), g)
    try:
        ps = geodesic_system(g, w)
    except TieError as exc:
        payload = {"unique": False, "pair": list(exc.pair), "paths": [list(p) for p in exc.paths]}
        _emit(out, payload, f"tie: {exc}\n", cfg.json)
        return EXIT_NEGATIVE
    text = format_path_system(ps)
    _emit(out, {"unique": True, "system": text}, text, cfg.json)
    return EXIT_OK


def cmd_zoo(cfg: RunConfig, ns, out) -> int:
    if ns.action == "list":
        entries = load_zoo()
        lines = [f"{e.id:2d}  n={e.graph.n:2d}  m={e.graph.m:2d}  target w_{{{e.target[0]},{e.target[1]}}}"
                 for e in entries]
        payload = [{"id": e.id, "n": e.graph.n, "m": e.graph.m, "target": list(e.target)} for e in entries]
        _emit(out, {"entries": payload}, "\n".join(lines) + "\n", cfg.json)
        return EXIT_OK
    if ns.action == "dump":
        if ns.id is None:
            raise UsageError("zoo dump needs an entry id")
        try:
            entry = zoo_entry(ns.id)
        except KeyError:
            raise UsageError(f"no zoo entry {ns.id} (ids are 1..16)")
        d = Path(ns.out) / f"zoo{entry.id:02d}"
        files = entry.dump(d)
        _emit(out, {"files": [str(f) for f in files]}, "".join(f"{f}\n" for f in files), cfg.json)
        return EXIT_OK
    entries = load_zoo(verify=False)
    ok = [e.id for e in entries if not e.self_check()]
    bad = [e.id for e in entries if e.id not in ok]
    text = f"{len(ok)}/{len(entries)} certificates valid\n" + "".join(f"  entry {i} FAILED\n" for i in bad)
    _emit(out, {"valid": len(ok), "total": len(entries), "failed": bad}, text, cfg.json)
    return EXIT_OK if not bad else EXIT_NEGATIVE


COMMANDS = {"check": cmd_check, "reduce": cmd_reduce, "classify": cmd_classify, "screen": cmd_screen,
            "verify-cert": cmd_verify, "search": cmd_search, "geodesics": cmd_geodesics, "zoo": cmd_zoo}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    inputs = tuple(str(getattr(ns, k)) for k in ("graph", "system", "certificate", "weights") if hasattr(ns, k))
    try:
        cfg = RunConfig(ns.command, inputs, _budget(ns), ns.json)
        return COMMANDS[ns.command](cfg, ns, out)
    except UsageError as exc:
        err.write(f"metrizability: error: {exc}\n")
        return EXIT_USAGE
    except (InputError, GraphParseError, PathSystemParseError, MalformedSystem, CertificateSyntaxError) as exc:
        err.write(f"metrizability: parse error: {exc}\n")
        return EXIT_PARSE
    except NotTwoConnected as exc:
        err.write(f"metrizability: {exc}\n")
        return EXIT_NEGATIVE
    except BudgetExceeded as exc:
        err.write(f"metrizability: budget exceeded: {exc}\n")
        return EXIT_UNKNOWN


def main() -> None:
    sys.exit(run())
