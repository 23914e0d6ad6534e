"""Cutting planes derived from a disjunction applied to a relaxation."""

from __future__ import annotations

from fractions import Fraction
from math import floor
from typing import Sequence

from .disjunctions import Disjunction
from .kernel import HPolytope, Ineq, dot, empty_ineq, intersect_all, is_empty, lp_max, simplex
from .kernel.simplex import OPTIMAL


def is_derivable(P: HPolytope, D: Disjunction, cut: Ineq) -> bool:
    """Exact check that ``cut`` is valid on ``P`` intersected with every piece of ``D``."""
    for Q in D.pieces:
        val, _ = lp_max(intersect_all(P, Q), cut.a)
        if val is not None and val > cut.b:
            return False
    return True


def tightest_rhs(P: HPolytope, D: Disjunction, normal: Sequence[Fraction]) -> Fraction | None:
    """``max_j max{<normal, x> : x in P and Q_j}``, or None if every piece is empty."""
    best = None
    for Q in D.pieces:
        val, _ = lp_max(intersect_all(P, Q), normal)
        if val is not None and (best is None or val > best):
            best = val
    return best


def cglp_cut(P: HPolytope, D: Disjunction, x: Sequence[Fraction]) -> Ineq | None:
    """Most violated disjunctive cut at ``x`` under the unit-sum multiplier normalisation.

    Solves the cut-generating LP over Farkas multipliers for each nonempty
    piece, then tightens the right-hand side to the exact piecewise maximum
    (one LP per piece). Returns None when ``x`` lies in the disjunctive hull
    and ``0 <= -1`` when ``P`` misses every piece.
    """
    return cglp_separate(P, D, x)[0]


def cglp_separate(P: HPolytope, D: Disjunction, x: Sequence[Fraction]) -> tuple[Ineq | None, Fraction]:
    """``cglp_cut`` plus the CGLP optimum (violation in the normalised scale)."""
    n = P.dim
    x = tuple(Fraction(v) for v in x)
    systems = []
    for Q in D.pieces:
        R = intersect_all(P, Q)
        if not is_empty(R):
            systems.append(R.ineqs)
    if not systems:
        return empty_ineq(n), Fraction(1)

    # variables: alpha (n, free), beta (free), then one multiplier per row per piece
    nmult = sum(len(s) for s in systems)
    nvar = n + 1 + nmult
    free = [True] * (n + 1) + [False] * nmult
    a_eq, b_eq, a_ub, b_ub = [], [], [], []
    offset = n + 1
    for rows in systems:
        for k in range(n):
            row = [Fraction(0)] * nvar
            row[k] = Fraction(1)
            for r, h in enumerate(rows):
                row[offset + r] = -h.a[k]
            a_eq.append(row)
            b_eq.append(Fraction(0))
        row = [Fraction(0)] * nvar
        row[n] = Fraction(-1)
        for r, h in enumerate(rows):
            row[offset + r] = h.b
        a_ub.append(row)
        b_ub.append(Fraction(0))
        offset += len(rows)
    a_eq.append([Fraction(0)] * (n + 1) + [Fraction(1)] * nmult)
    b_eq.append(Fraction(1))

    violation = list(x) + [Fraction(-1)] + [Fraction(0)] * nmult
    objectives = [violation]
    for k in range(n):
        tie = [Fraction(0)] * nvar
        tie[k] = Fraction(-1)
        objectives.append(tie)
    status, z = simplex(objectives, a_ub, b_ub, a_eq, b_eq, free=free)
    if status != OPTIMAL:
        raise RuntimeError(f"cut-generating LP ended {status}")
    alpha = z[:n]
    depth = dot(alpha, x) - z[n]
    if depth <= 0:
        return None, depth
    beta = tightest_rhs(P, D, alpha)
    cut = Ineq(alpha, beta).normalized()
    if not cut.value(x) > cut.b:
        return None, Fraction(0)
    return cut, dot(alpha, x) - beta


def cg_cut(P: HPolytope, a: Sequence) -> Ineq:
    """Chvatal-Gomory rounding ``<a, x> <= floor(max_P <a, x>)`` for an integer ``a``."""
    a = tuple(Fraction(v) for v in a)
    if any(v.denominator != 1 for v in a):
        raise ValueError("Chvatal-Gomory cuts need an integer normal")
    val, _ = lp_max(P, a)
    if val is None:
        return empty_ineq(P.dim)
    return Ineq(a, floor(val))


def coupled_block(P: HPolytope, start: Sequence[int]) -> set[int]:
    """Coordinates connected to ``start`` through inequalities with two or more nonzeros."""
    adj: dict[int, set[int]] = {i: set() for i in range(P.dim)}
    for h in P.ineqs:
        supp = [i for i, v in enumerate(h.a) if v]
        if len(supp) > 1:
            for i in supp:
                adj[i].update(supp)
    seen = set(start)
    stack = list(start)
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def block_cg_cut(P: HPolytope, D: Disjunction, x: Sequence[Fraction],
                 objective: Sequence[Fraction], pattern: Sequence[bool]) -> Ineq | None:
    """CG cut on the objective restricted to the block touched by ``D``, if derivable from ``D``.

    Falls back to ``cglp_cut`` when the rounded objective block does not cut
    off ``x`` or cannot be derived from ``D`` on ``P``.
    """
    start = [i for Q in D.pieces for h in Q.ineqs for i, v in enumerate(h.a) if v]
    block = coupled_block(P, start)
    a = [Fraction(objective[i]) if i in block else Fraction(0) for i in range(P.dim)]
    if any(a) and all(v.denominator == 1 for v in a) and all(
            p or not v for v, p in zip(a, pattern)):
        cut = cg_cut(P, a)
        if cut.value(x) > cut.b and is_derivable(P, D, cut):
            return cut.normalized()
    return cglp_cut(P, D, x)
