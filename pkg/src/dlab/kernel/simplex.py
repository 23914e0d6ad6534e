"""Exact two-phase simplex on integer (fraction-free) tableaux.

Every tableau entry is stored as an integer ``T[i][j]`` whose true value is
``T[i][j] / D`` for the current common denominator ``D``. Pivots follow
Edmonds' integer-preserving update, so divisions by ``D`` are exact and no
gcd work is done inside the hot loop.

Entering columns are picked by Bland's rule over a *lexicographic* vector of
objectives, which both prevents cycling and yields a canonical optimum when
several optimal bases exist.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _int_row(values: Sequence[Fraction]) -> tuple[list[int], int]:
    scale = 1
    for v in values:
        if not isinstance(v, int):
            scale = lcm(scale, v.denominator)
    if scale == 1:
        return [int(v) for v in values], 1
    return [v * scale if isinstance(v, int) else v.numerator * (scale // v.denominator)
            for v in values], scale


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.den = 1
        self.objs: list[list[int]] = []

    def pivot(self, r: int, s: int) -> None:
        rows, den = self.rows, self.den
        prow = rows[r]
        p = prow[s]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[s]
            if f == 0:
                rows[i] = [(p * x) // den for x in row]
            else:
                rows[i] = [(p * x - f * y) // den for x, y in zip(row, prow)]
        for k, obj in enumerate(self.objs):
            f = obj[s]
            if f == 0:
                self.objs[k] = [(p * x) // den for x in obj]
            else:
                self.objs[k] = [(p * x - f * y) // den for x, y in zip(obj, prow)]
        self.basis[r] = s
        if p < 0:
            self.rows = [[-x for x in row] for row in self.rows]
            self.objs = [[-x for x in obj] for obj in self.objs]
            p = -p
        self.den = p

    def price(self, costs: list[list[int]]) -> None:
        """Install objective rows ``D * (c_B B^-1 A - c)`` for each cost vector."""
        self.objs = []
        for c in costs:
            obj = [-cj * self.den for cj in c] + [0]
            for i, b in enumerate(self.basis):
                cb = c[b]
                if cb:
                    obj = [o + cb * t for o, t in zip(obj, self.rows[i])]
            self.objs.append(obj)

    def entering(self, allowed: list[bool]) -> int | None:
        basic = set(self.basis)
        for j in range(self.ncols):
            if not allowed[j] or j in basic:
                continue
            for obj in self.objs:
                v = obj[j]
                if v < 0:
                    return j
                if v > 0:
                    break
        return None

    def leaving(self, s: int) -> int | None:
        best = None
        for i, row in enumerate(self.rows):
            a = row[s]
            if a <= 0:
                continue
            if best is None:
                best = i
                continue
            lhs = row[-1] * self.rows[best][s]
            rhs = self.rows[best][-1] * a
            if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                best = i
        return best

    def run(self, allowed: list[bool]) -> str:
        while True:
            s = self.entering(allowed)
            if s is None:
                return OPTIMAL
            r = self.leaving(s)
            if r is None:
                return UNBOUNDED
            self.pivot(r, s)


def simplex(
    objectives: Sequence[Sequence[Fraction]],
    a_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
    free: Sequence[bool] | None = None,
) -> tuple[str, list[Fraction] | None]:
    """Lexicographically maximise ``objectives`` over a polyhedron.

    Variables are nonnegative unless flagged in ``free``. Returns
    ``(status, z)`` with ``z`` the optimal point when status is OPTIMAL.
    Later objectives only break ties among optima of earlier ones.
    """
    nvar = len(objectives[0])
    free = list(free) if free is not None else [False] * nvar
    # column layout: one column per variable, a mirror column per free var,
    # then slacks, then artificials
    mirror = {}
    ncol = nvar
    for j in range(nvar):
        if free[j]:
            mirror[j] = ncol
            ncol += 1

    def expand(coeffs):
        out = list(coeffs) + [Fraction(0)] * (ncol - nvar)
        for j, m in mirror.items():
            out[m] = -Fraction(coeffs[j])
        return out

    raw = []
    for a, b in zip(a_ub, b_ub):
        raw.append((expand(a), Fraction(b), True))
    for a, b in zip(a_eq, b_eq):
        raw.append((expand(a), Fraction(b), False))

    nslack = sum(1 for _, _, ub in raw if ub)
    needs_art = [(not ub) or b < 0 for _, b, ub in raw]
    nart = sum(needs_art)
    total = ncol + nslack + nart
    first_art = ncol + nslack

    rows: list[list[int]] = []
    basis: list[int] = []
    si, ai = ncol, first_art
    for (a, b, ub), art in zip(raw, needs_art):
        row = a + [Fraction(0)] * (nslack + nart) + [b]
        if b < 0:
            row = [-x for x in row]
        ints, _ = _int_row(row)
        # slacks and artificials are rescaled per row so each keeps a unit
        # coefficient in the integer row; the basis starts as the identity
        if ub:
            ints[si] = -1 if b < 0 else 1
            slack_col = si
            si += 1
        if art:
            ints[ai] = 1
            basis.append(ai)
            ai += 1
        else:
            basis.append(slack_col)
        rows.append(ints)

    tab = _Tableau(rows, basis, total)
    if nart:
        phase1 = [0] * first_art + [-1] * nart
        tab.price([phase1])
        tab.run([True] * total)
        if tab.objs[0][-1] < 0:
            return INFEASIBLE, None
        # drive zero-level artificials out of the basis
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= first_art:
                row = tab.rows[r]
                s = next((j for j in range(first_art) if row[j] != 0), None)
                if s is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, s)
            r += 1

    costs = []
    for obj in objectives:
        ints, _ = _int_row(expand(obj))
        costs.append(ints + [0] * (total - ncol))
    tab.price(costs)
    allowed = [j < first_art for j in range(total)]
    status = tab.run(allowed)
    if status != OPTIMAL:
        return status, None

    col_val = [Fraction(0)] * total
    for i, b in enumerate(tab.basis):
        col_val[b] = Fraction(tab.rows[i][-1], tab.den)
    z = col_val[:nvar]
    for j, m in mirror.items():
        z[j] -= col_val[m]
    return OPTIMAL, z
