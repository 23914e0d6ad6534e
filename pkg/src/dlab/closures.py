"""Iterated disjunctive closures with their rank, plus sequential convexification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from .disjunctions import (
    Disjunction,
    DisjunctionFamily,
    split_disjunction,
    split_normals,
    variable_disjunction,
)
from .kernel import (
    HPolytope,
    Ineq,
    canonical,
    canonical_empty,
    coordinate_bounds,
    disjunctive_hull,
    enumerate_vertices,
    is_empty,
    is_valid,
    lp_max,
)


@dataclass(frozen=True)
class Exceeds:
    """Rank above ``cap``."""

    cap: int

    def __str__(self) -> str:
        return f">{self.cap}"


def family_members(P: HPolytope, family: DisjunctionFamily) -> list[Disjunction]:
    """Members of ``family`` that can cut ``P``: both sides meet ``P``'s bounding box."""
    if is_empty(P):
        return []
    bounds = coordinate_bounds(P)
    n = P.dim
    out = []
    if family.kind == "variable":
        for i in range(n):
            if not family.pattern[i]:
                continue
            lo, hi = bounds[i]
            for K in range(ceil(lo), floor(hi)):
                if Fraction(K) < hi and Fraction(K + 1) > lo:
                    out.append(variable_disjunction(i + 1, K, n))
    elif family.kind == "split":
        for pi in split_normals(family.pattern, family.width):
            lo_v, _ = lp_max(P, [-v for v in pi])
            hi_v, _ = lp_max(P, pi)
            lo_v = -lo_v
            for k in range(ceil(lo_v), floor(hi_v)):
                out.append(split_disjunction(pi, k, n))
    else:
        out = list(family.members)
    return out


def closure(P: HPolytope, family: DisjunctionFamily) -> HPolytope:
    """Intersection of the disjunctive hulls of ``P`` over every relevant family member.

    Only disjunctions with both pieces meeting the interior of ``P``'s
    coordinate range matter; any other gives back ``P`` itself.
    """
    if is_empty(P):
        return canonical_empty(P.dim)
    ineqs = list(canonical(P).ineqs)
    for D in family_members(P, family):
        ineqs += disjunctive_hull(P, D).ineqs
    return canonical(HPolytope(P.dim, ineqs))


def iterated_closure(P: HPolytope, family: DisjunctionFamily, rounds: int) -> list[HPolytope]:
    """``[P, CP^1, ..., CP^rounds]``; each inclusion is checked by LP."""
    chain = [P]
    for _ in range(rounds):
        nxt = closure(chain[-1], family)
        if not all(is_valid(nxt, h) for h in chain[-1].ineqs):
            raise AssertionError("closure round is not contained in its predecessor")
        chain.append(nxt)
    return chain


def rank(P: HPolytope, family: DisjunctionFamily, target: Ineq, cap: int) -> int | Exceeds:
    """Smallest number of closure rounds after which ``target`` holds, up to ``cap``."""
    cur = P
    for r in range(cap + 1):
        if is_valid(cur, target):
            return r
        if r == cap:
            break
        nxt = closure(cur, family)
        if enumerate_vertices(nxt) == enumerate_vertices(cur):
            break  # fixed point reached without the target
        cur = nxt
    return Exceeds(cap)


def sequential_convexify(P: HPolytope, order: Sequence[int]) -> list[HPolytope]:
    """``P_0 = P`` and ``P_i = conv(P_{i-1} with x_{order[i]} = 0 or 1)`` for a 0/1 polytope.

    ``order`` holds 1-based coordinates.
    """
    for lo, hi in coordinate_bounds(P):
        if lo < 0 or hi > 1:
            raise ValueError("sequential convexification needs P inside the unit cube")
    chain = [P]
    for i in order:
        chain.append(disjunctive_hull(chain[-1], variable_disjunction(i, 0, P.dim)))
    return chain
