"""Exact rational simplex for sparse linear feasibility problems.

The one question asked here is whether ``{u >= 0 : A u <= b}`` is nonempty.
It is answered through the dual ``min b.y  s.t.  A^T y >= 0, y >= 0``, whose
origin is feasible, so no first phase is needed.  An unbounded dual ray is a
Farkas vector proving the primal empty; at a dual optimum the reduced costs
of the surplus columns are a primal point.  Bland's rule guarantees
termination on these highly degenerate problems.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

SparseRow = Mapping[int, int | Fraction]


@dataclass(frozen=True)
class Feasible:
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    """Nonnegative multipliers y with y^T A >= 0 and y.b < 0."""
    multipliers: tuple[Fraction, ...]


class PivotLimit(RuntimeError):
    pass


def feasibility(rows: Sequence[SparseRow], rhs: Sequence[int | Fraction], n: int,
                max_pivots: int | None = None) -> Feasible | Infeasible:
    """Decide ``{u in Q^n : u >= 0, rows[i].u <= rhs[i]}`` exactly."""
    m = len(rows)
    zero = Fraction(0)
    # Each row (with its bound) is scaled to integers, which leaves the primal
    # set unchanged; multipliers are mapped back at the end.
    scale: list[int] = []
    cols: list[dict[int, int]] = []
    cost: list[int] = []
    for r, b in zip(rows, rhs):
        vals = [Fraction(v) for v in r.values()] + [Fraction(b)]
        lam = lcm(*(v.denominator for v in vals))
        col = {}
        for k, val in r.items():
            if not 0 <= k < n:
                raise IndexError(f"variable index {k} out of range")
            if val:
                col[k] = -int(Fraction(val) * lam)
        scale.append(lam)
        cols.append(col)
        cost.append(int(Fraction(b) * lam))
    # Dual in equality form: -A^T y + s = 0 with columns y_0..y_{m-1}, s_0..s_{n-1}.
    cols += [{k: 1} for k in range(n)]
    cost += [0] * n
    basis = list(range(m, m + n))
    binv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    xb = [zero] * n
    pivots = 0

    while True:
        # simplex multipliers pi = c_B B^-1
        pi = [zero] * n
        for r, bj in enumerate(basis):
            cb = cost[bj]
            if cb:
                row = binv[r]
                for k in range(n):
                    if row[k]:
                        pi[k] += cb * row[k]
        # pricing in integers: sign of D*(c_j - pi.col_j) with D a common denominator
        den = lcm(*(p.denominator for p in pi))
        ipi = [int(p * den) for p in pi]
        in_basis = set(basis)
        entering = None
        for j, col in enumerate(cols):
            if j in in_basis:
                continue
            if cost[j] * den < sum(ipi[k] * v for k, v in col.items()):
                entering = j
                break
        if entering is None:
            # optimal: reduced cost of surplus column k is -pi[k]
            return Feasible(tuple(-p for p in pi))
        col = cols[entering]
        direction = [sum((binv[r][k] * v for k, v in col.items()), zero) for r in range(n)]
        leave = None
        best = None
        for r in range(n):
            if direction[r] > 0:
                ratio = xb[r] / direction[r]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            ray = [zero] * m
            if entering < m:
                ray[entering] = Fraction(1)
            for r, bj in enumerate(basis):
                if bj < m:
                    ray[bj] = -direction[r]
            return Infeasible(tuple(y * lam for y, lam in zip(ray, scale)))
        pivots += 1
        if max_pivots is not None and pivots > max_pivots:
            raise PivotLimit(f"more than {max_pivots} pivots")
        piv = direction[leave]
        theta = xb[leave] / piv
        prow = [x / piv for x in binv[leave]]
        for r in range(n):
            if r == leave:
                continue
            f = direction[r]
            if f:
                row = binv[r]
                for k in range(n):
                    if prow[k]:
                        row[k] -= f * prow[k]
                xb[r] -= f * theta
        binv[leave] = prow
        xb[leave] = theta
        basis[leave] = entering
