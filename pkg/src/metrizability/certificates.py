"""Metric realizability of path systems as exact linear feasibility.

A system is metric when some w > 0 makes every chosen path a w-shortest
path, i.e. ``w(chosen) <= w(alternative)`` for every alternative path with
the same ends.  The inequalities are homogeneous, so ``w > 0`` may be
replaced by ``w >= 1``.  Infeasibility is witnessed by a nonnegative integer
combination of inequalities whose sum reads ``sum c_e w_e <= 0`` with
``c >= 0, c != 0``: the printed certificate shape.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .graph import Edge, Graph, Path, edge, path_edges
from .pathsys import (DEFAULT_PATH_CAP, CapExceeded, PathSystem, all_simple_paths,
                      check_consistency, path_weight)
from .simplex import Feasible, feasibility

__all__ = [
    "CapExceeded", "CertificateDoc", "CertificateSyntaxError", "ConstantTermError",
    "DominanceConstraint", "FarkasCertificate", "InconsistentSystem", "Metric", "NonMetric",
    "NonPathSide", "UnknownEdgeSymbol", "VerifyReport", "build_dominance_constraints",
    "check_metric", "format_certificate", "format_linear_form", "parse_certificate",
    "verify_certificate",
]


class InconsistentSystem(ValueError):
    pass


class CertificateSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ConstantTermError(CertificateSyntaxError):
    pass


class UnknownEdgeSymbol(ValueError):
    def __init__(self, symbol: Edge, index: int | None = None):
        where = "target" if index is None else f"inequality {index}"
        super().__init__(f"w_{{{symbol[0]},{symbol[1]}}} in {where} is not an edge")
        self.symbol = symbol
        self.index = index


class NonPathSide(ValueError):
    def __init__(self, index: int, side: str, why: str):
        super().__init__(f"inequality {index}: {side} side {why}")
        self.index = index
        self.side = side


@dataclass(frozen=True)
class DominanceConstraint:
    """``w(system_path) <= w(alternative)`` for one pair."""
    pair: tuple[int, int]
    system_path: Path
    alternative: Path

    def vector(self) -> dict[Edge, int]:
        """Edge coefficients of ``w(system_path) - w(alternative)``."""
        out: dict[Edge, int] = {}
        for e in path_edges(self.system_path):
            out[e] = out.get(e, 0) + 1
        for e in path_edges(self.alternative):
            out[e] = out.get(e, 0) - 1
        return {e: c for e, c in out.items() if c}


def build_dominance_constraints(ps: PathSystem, cap: int = DEFAULT_PATH_CAP, *, check: bool = True,
                                paths: Mapping[tuple[int, int], Sequence[Path]] | None = None
                                ) -> list[DominanceConstraint]:
    """One constraint per pair and per alternative simple path, in pair then path order.

    ``paths`` may supply the simple paths per pair (as all_simple_paths
    returns them) when many systems on one graph are checked.
    """
    if check:
        report = check_consistency(ps)
        if not report.consistent:
            v = report.violations[0]
            raise InconsistentSystem(f"paths for {v.first} and {v.second}: {v.reason}")
    out = []
    for pair in ps.pairs():
        chosen = ps.choice[pair]
        alts = paths[pair] if paths is not None else all_simple_paths(ps.host, pair[0], pair[1], cap)
        for alt in alts:
            if alt != chosen:
                out.append(DominanceConstraint(pair, chosen, alt))
    return out


# -- documents ---------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateDoc:
    """Printed certificate: rows ``left <= right`` of edge symbols and a target edge.

    ``coefficients`` (default all 1) are the multipliers used when summing rows.
    """
    inequalities: tuple[tuple[tuple[Edge, ...], tuple[Edge, ...]], ...]
    target: Edge
    coefficients: tuple[int, ...] | None = None

    def multipliers(self) -> tuple[int, ...]:
        return self.coefficients if self.coefficients is not None else (1,) * len(self.inequalities)


def _term(e: Edge) -> str:
    return f"w_{{{e[0]},{e[1]}}}"


def format_linear_form(form: Mapping[Edge, int]) -> str:
    """``2*w_{6,7} + w_{1,2}``; zero renders as ``0``."""
    parts = []
    for e in sorted(form):
        c = form[e]
        if c:
            parts.append(_term(e) if c == 1 else f"{c}*{_term(e)}")
    return " + ".join(parts) if parts else "0"


def format_certificate(doc: CertificateDoc) -> str:
    lines = []
    unit = doc.coefficients is None or all(c == 1 for c in doc.coefficients)
    for (left, right), c in zip(doc.inequalities, doc.multipliers()):
        row = " + ".join(map(_term, left)) + " <= " + " + ".join(map(_term, right))
        lines.append(row if unit else f"[{c}] {row}")
    lines.append(f"=> {_term(doc.target)} <= 0")
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"\s*(?:(?P<term>w_\{\s*(?P<i>-?\d+)\s*,\s*(?P<j>-?\d+)\s*\})|(?P<le><=)"
                    r"|(?P<plus>\+)|(?P<arrow>=>)|(?P<coef>\[\s*(?P<k>-?\d+)\s*\])"
                    r"|(?P<num>-?\d+(?:/\d+)?)|(?P<other>\S))")


_KINDS = ("term", "le", "plus", "arrow", "coef", "num", "other")


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = next(k for k in _KINDS if m.group(k) is not None)
        yield kind, m, m.start(kind) + 1
        pos = m.end()


def _parse_side(toks: list, lineno: int, end_col: int) -> tuple[Edge, ...]:
    terms: list[Edge] = []
    expect_term = True
    for kind, m, col in toks:
        if expect_term:
            if kind == "num":
                raise ConstantTermError(f"constant term {m.group('num')} not allowed", lineno, col)
            if kind != "term":
                raise CertificateSyntaxError(f"expected w_{{i,j}}, got {m.group(kind)!r}", lineno, col)
            i, j = int(m.group("i")), int(m.group("j"))
            if i == j or i < 1 or j < 1:
                raise CertificateSyntaxError(f"bad edge symbol w_{{{i},{j}}}", lineno, col)
            terms.append(edge(i, j))
            expect_term = False
        else:
            if kind == "term" or kind == "num":
                raise CertificateSyntaxError("missing '+' between terms", lineno, col)
            if kind != "plus":
                raise CertificateSyntaxError(f"unexpected {m.group(kind)!r}", lineno, col)
            expect_term = True
    if expect_term:
        raise CertificateSyntaxError("expected a term", lineno, end_col)
    return tuple(terms)


def parse_certificate(text: str) -> CertificateDoc:
    """Parse rows ``w_{a,b} + ... <= w_{c,d} + ...`` and a closing ``=> w_{i,j} <= 0``.

    A row may start with ``[k]``, an integer multiplier for that row.
    """
    rows = []
    coefs: list[int] = []
    target = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if target is not None:
            raise CertificateSyntaxError("text after the target line", lineno, 1)
        toks = list(_tokens(line))
        end_col = len(line.rstrip()) + 1
        if toks and toks[0][0] == "arrow":
            body = toks[1:]
            if len(body) != 3 or body[0][0] != "term" or body[1][0] != "le" or body[2][0] != "num":
                raise CertificateSyntaxError("target line must read '=> w_{i,j} <= 0'", lineno, toks[0][2])
            if body[2][1].group("num") != "0":
                raise CertificateSyntaxError("target bound must be 0", lineno, body[2][2])
            m = body[0][1]
            i, j = int(m.group("i")), int(m.group("j"))
            if i == j or i < 1 or j < 1:
                raise CertificateSyntaxError(f"bad edge symbol w_{{{i},{j}}}", lineno, body[0][2])
            target = edge(i, j)
            continue
        coef = 1
        if toks and toks[0][0] == "coef":
            coef = int(toks[0][1].group("k"))
            toks = toks[1:]
        splits = [t for t in toks if t[0] == "le"]
        if len(splits) != 1:
            col = splits[1][2] if splits else end_col
            raise CertificateSyntaxError("each row needs exactly one '<='", lineno, col)
        k = next(idx for idx, t in enumerate(toks) if t[0] == "le")
        left = _parse_side(toks[:k], lineno, toks[k][2])
        right = _parse_side(toks[k + 1:], lineno, end_col)
        rows.append((left, right))
        coefs.append(coef)
    if target is None:
        raise CertificateSyntaxError("missing target line '=> w_{i,j} <= 0'", len(text.splitlines()) + 1, 1)
    return CertificateDoc(tuple(rows), target, None if all(c == 1 for c in coefs) else tuple(coefs))


# -- verification ----------------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    residual: dict[Edge, int]
    problems: tuple[str, ...] = ()

    def residual_text(self) -> str:
        return format_linear_form(self.residual) + " <= 0"


def path_from_edges(edges: Sequence[Edge]) -> Path | None:
    """The simple path using exactly these edges, oriented from its smaller end; None otherwise."""
    es = set(edges)
    if not es or len(es) != len(edges):
        return None
    adj: dict[int, list[int]] = {}
    for u, v in es:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    ends = sorted(v for v, nb in adj.items() if len(nb) == 1)
    if len(ends) != 2 or any(len(nb) > 2 for nb in adj.values()):
        return None
    path = [ends[0]]
    prev = None
    while len(path) <= len(es):
        nxt = [y for y in adj[path[-1]] if y != prev]
        if not nxt:
            break
        prev = path[-1]
        path.append(nxt[0])
    if len(path) != len(es) + 1 or path[-1] != ends[1]:
        return None
    return tuple(path)


def verify_certificate(ps: PathSystem, doc: CertificateDoc) -> VerifyReport:
    """Check a printed certificate against a path system.

    Each left side must be the chosen path for its ends, each right side a
    simple path with the same ends; the rows, weighted by their multipliers,
    must sum to a nonnegative nonzero form on the left whose support holds
    the target edge.
    """
    g = ps.host
    for idx, (left, right) in enumerate(doc.inequalities):
        for e in left + right:
            if e not in g.edges:
                raise UnknownEdgeSymbol(e, idx)
    if doc.target not in g.edges:
        raise UnknownEdgeSymbol(doc.target)
    mults = doc.multipliers()
    if len(mults) != len(doc.inequalities):
        raise ValueError("one multiplier per inequality is required")
    problems = []
    total: dict[Edge, int] = {}
    for idx, ((left, right), c) in enumerate(zip(doc.inequalities, mults)):
        lp = path_from_edges(left)
        if lp is None:
            raise NonPathSide(idx, "left", "is not a simple path")
        rp = path_from_edges(right)
        if rp is None:
            raise NonPathSide(idx, "right", "is not a simple path")
        if (lp[0], lp[-1]) != (rp[0], rp[-1]):
            raise NonPathSide(idx, "right", f"joins {rp[0]},{rp[-1]} instead of {lp[0]},{lp[-1]}")
        if ps.edge_set(lp[0], lp[-1]) != frozenset(left):
            problems.append(f"inequality {idx}: left side is not the chosen path for {lp[0]},{lp[-1]}")
        if c < 0:
            problems.append(f"inequality {idx}: negative multiplier {c}")
        for e in left:
            total[e] = total.get(e, 0) + c
        for e in right:
            total[e] = total.get(e, 0) - c
    residual = {e: v for e, v in sorted(total.items()) if v}
    neg = [e for e, v in residual.items() if v < 0]
    if neg:
        problems.append("terms remain on the right: " + format_linear_form({e: -residual[e] for e in neg}))
    if not residual:
        problems.append("rows cancel completely")
    elif residual.get(doc.target, 0) <= 0:
        problems.append(f"target {_term(doc.target)} is not in the residual")
    return VerifyReport(not problems, residual, tuple(problems))


# -- deciding metricity --------------------------------------------------------------


@dataclass(frozen=True)
class FarkasCertificate:
    rows: tuple[tuple[DominanceConstraint, int], ...]
    residual: dict[Edge, int] = field(hash=False)

    def recompute_residual(self) -> dict[Edge, int]:
        total: dict[Edge, int] = {}
        for con, c in self.rows:
            for e, v in con.vector().items():
                total[e] = total.get(e, 0) + c * v
        return {e: v for e, v in sorted(total.items()) if v}

    def is_valid(self) -> bool:
        res = self.recompute_residual()
        return (all(c > 0 for _, c in self.rows) and res == self.residual and bool(res)
                and all(v > 0 for v in res.values()))

    def to_doc(self) -> CertificateDoc:
        rows = tuple((path_edges(con.system_path), path_edges(con.alternative)) for con, _ in self.rows)
        coefs = tuple(c for _, c in self.rows)
        return CertificateDoc(rows, min(self.residual), None if all(c == 1 for c in coefs) else coefs)


@dataclass(frozen=True)
class Metric:
    """Integer weights >= 1 realizing the system.

    ``strict`` means every chosen path is the unique shortest path for its ends.
    """
    weights: dict[Edge, int]
    strict: bool


@dataclass(frozen=True)
class NonMetric:
    certificate: FarkasCertificate


def _integral(values: Sequence[Fraction]) -> list[int]:
    den = lcm(*(v.denominator for v in values)) if values else 1
    ints = [int(v * den) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def _solve(g: Graph, cons: list[DominanceConstraint], margin: int):
    """Feasibility of w(sys) - w(alt) <= -margin with w >= 1, via u = w - 1."""
    index = {e: k for k, e in enumerate(g.edge_list())}
    rows, rhs = [], []
    for con in cons:
        vec = con.vector()
        rows.append({index[e]: c for e, c in vec.items()})
        rhs.append(-sum(vec.values()) - margin)
    return index, feasibility(rows, rhs, len(index))


def check_metric(ps: PathSystem, cap: int = DEFAULT_PATH_CAP, *, check: bool = True,
                 paths: Mapping[tuple[int, int], Sequence[Path]] | None = None,
                 strict: bool = True) -> Metric | NonMetric:
    """Decide whether a consistent system is metric, with a witness either way.

    With ``strict`` (the default) a metric system gets a witness with unique
    shortest paths when one exists; otherwise any witness is returned.
    """
    cons = build_dominance_constraints(ps, cap, check=check, paths=paths)
    index, res = _solve(ps.host, cons, 0)
    if not isinstance(res, Feasible):
        ys = _integral(list(res.multipliers))
        rows = tuple((con, y) for con, y in zip(cons, ys) if y)
        total: dict[Edge, int] = {}
        for con, y in rows:
            for e, v in con.vector().items():
                total[e] = total.get(e, 0) + y * v
        cert = FarkasCertificate(rows, {e: v for e, v in sorted(total.items()) if v})
        if not cert.is_valid():
            raise ArithmeticError("solver returned an invalid Farkas certificate")
        return NonMetric(cert)
    tight = _solve(ps.host, cons, 1)[1] if strict else None
    is_strict = isinstance(tight, Feasible)
    point = tight.point if is_strict else res.point
    ws = _integral([u + 1 for u in point])
    weights = {e: ws[k] for e, k in index.items()}
    for con in cons:
        a, b = path_weight(weights, con.system_path), path_weight(weights, con.alternative)
        if a > b or (is_strict and a == b):
            raise ArithmeticError(f"witness violates {con}")
    return Metric(weights, is_strict)
