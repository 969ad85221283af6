"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` with
Bland's rule. Small problems only (tens of variables); every geometric
predicate in the package goes through here so that no floating-point value
ever decides containment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "Constraint", "solve_lp", "feasible_point"]

Constraint = tuple  # (coeffs, op, rhs) with op in {"<=", ">=", "=="}


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            self.rows[r] = row = [v * inv for v in row]
            self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def optimize(self, cost, allowed):
        """Maximize ``cost . x`` over the current basis; Bland's rule."""
        while True:
            # reduced costs c_j - c_B B^-1 A_j, with the tableau already in B^-1 A form
            cb = [cost[b] for b in self.basis]
            enter = None
            for j in allowed:
                if j in self.basis:
                    continue
                red = cost[j] - sum(cb[i] * self.rows[i][j] for i in range(len(self.rows)))
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best, leave = ratio, i
            if leave is None:
                return "unbounded"
            self.pivot(leave, enter)


def solve_lp(
    objective: Sequence,
    constraints: Sequence[Constraint],
    n: int,
    free: Sequence[int] = (),
) -> LPResult:
    """Maximize ``objective . x`` subject to linear constraints.

    Parameters
    ----------
    objective : sequence of rationals, length ``n``
    constraints : sequence of ``(coeffs, op, rhs)``
        ``op`` is one of ``"<="``, ``">="``, ``"=="``.
    n : int
        Number of variables. Variables are nonnegative unless listed in ``free``.
    free : indices of unrestricted variables.

    Returns
    -------
    LPResult
        ``x`` is a vertex of the feasible region when the status is optimal.
    """
    free = set(free)
    # column map: original var -> list of (column, sign)
    colmap: list[list[tuple[int, int]]] = []
    ncol = 0
    for j in range(n):
        if j in free:
            colmap.append([(ncol, 1), (ncol + 1, -1)])
            ncol += 2
        else:
            colmap.append([(ncol, 1)])
            ncol += 1
    nstruct = ncol

    norm = []
    for coeffs, op, rhs in constraints:
        row = [Fraction(0)] * nstruct
        for j, a in enumerate(coeffs):
            a = Fraction(a)
            if a:
                for c, sgn in colmap[j]:
                    row[c] += sgn * a
        rhs = Fraction(rhs)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            op = {"<=": ">=", ">=": "<=", "==": "=="}[op]
        norm.append((row, op, rhs))

    nslack = sum(1 for _, op, _ in norm if op != "==")
    nart = sum(1 for _, op, _ in norm if op != "<=")
    total = nstruct + nslack + nart
    rows, rhs, basis = [], [], []
    s_idx, a_idx = nstruct, nstruct + nslack
    art_cols = []
    for row, op, b in norm:
        full = row + [Fraction(0)] * (nslack + nart)
        if op == "<=":
            full[s_idx] = Fraction(1)
            basis.append(s_idx)
            s_idx += 1
        else:
            if op == ">=":
                full[s_idx] = Fraction(-1)
                s_idx += 1
            full[a_idx] = Fraction(1)
            basis.append(a_idx)
            art_cols.append(a_idx)
            a_idx += 1
        rows.append(full)
        rhs.append(b)

    tab = _Tableau(rows, rhs, basis)
    if art_cols:
        cost1 = [Fraction(0)] * total
        for c in art_cols:
            cost1[c] = Fraction(-1)
        tab.optimize(cost1, range(total))
        if sum(tab.rhs[i] for i, b in enumerate(tab.basis) if b in art_cols) != 0:
            return LPResult("infeasible")
        # drive remaining (zero-level) artificials out of the basis
        art = set(art_cols)
        keep = []
        for i in range(len(tab.rows)):
            if tab.basis[i] in art:
                col = next((j for j in range(nstruct + nslack) if tab.rows[i][j] != 0), None)
                if col is None:
                    continue  # redundant row
                tab.pivot(i, col)
            keep.append(i)
        tab.rows = [tab.rows[i] for i in keep]
        tab.rhs = [tab.rhs[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    cost = [Fraction(0)] * total
    for j, a in enumerate(objective):
        a = Fraction(a)
        for c, sgn in colmap[j]:
            cost[c] += sgn * a
    status = tab.optimize(cost, range(nstruct + nslack))
    values = [Fraction(0)] * total
    for i, b in enumerate(tab.basis):
        values[b] = tab.rhs[i]
    x = tuple(sum((sgn * values[c] for c, sgn in colmap[j]), Fraction(0)) for j in range(n))
    if status == "unbounded":
        return LPResult("unbounded", x, None)
    val = sum((Fraction(a) * xi for a, xi in zip(objective, x)), Fraction(0))
    return LPResult("optimal", x, val)


def feasible_point(constraints: Sequence[Constraint], n: int, free: Sequence[int] = ()):
    """Return a feasible vertex or ``None``."""
    res = solve_lp([0] * n, constraints, n, free)
    return res.x if res.feasible else None
