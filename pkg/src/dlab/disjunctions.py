"""Disjunctions over the mixed-integer lattice and the families they come in."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import Iterator, Sequence

from .kernel import HPolytope, Ineq, dot, remove_redundant

Pattern = tuple[bool, ...]


class DisjunctionError(ValueError):
    """A disjunction is malformed or not valid for the integrality pattern."""


@dataclass(frozen=True)
class Disjunction:
    """``Q_1 u ... u Q_k`` with polyhedral pieces, tagged with a canonical label."""

    dim: int
    pieces: tuple[HPolytope, ...]
    label: str

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise DisjunctionError("a disjunction needs at least one piece")
        if any(Q.dim != self.dim for Q in self.pieces):
            raise DisjunctionError("all pieces must share the ambient dimension")

    def contains(self, x: Sequence[Fraction]) -> bool:
        return any(Q.contains(x) for Q in self.pieces)


def variable_disjunction(i: int, K: int, n: int, pattern: Sequence[bool] | None = None) -> Disjunction:
    """``{x_i <= K} u {x_i >= K+1}``; ``i`` is 1-based as in ``D_{i,K}``."""
    if not 1 <= i <= n:
        raise DisjunctionError(f"coordinate {i} outside 1..{n}")
    if pattern is not None and not pattern[i - 1]:
        raise DisjunctionError(f"coordinate {i} is continuous; no variable disjunction on it")
    K = int(K)
    e = [0] * n
    e[i - 1] = 1
    lo = HPolytope(n, [Ineq(e, K)])
    hi = HPolytope(n, [Ineq([-v for v in e], -(K + 1))])
    return Disjunction(n, (lo, hi), f"var(i={i},K={K})")


def split_disjunction(pi: Sequence, pi0: int, n: int, pattern: Sequence[bool] | None = None) -> Disjunction:
    """``{<pi, x> <= pi0} u {<pi, x> >= pi0 + 1}`` for an integer ``pi``."""
    pi = [Fraction(v) for v in pi]
    if len(pi) != n:
        raise DisjunctionError("pi has the wrong length")
    if any(v.denominator != 1 for v in pi) or Fraction(pi0).denominator != 1:
        raise DisjunctionError("split disjunctions need integer pi and pi0")
    if not any(pi):
        raise DisjunctionError("pi must be nonzero")
    if pattern is not None and any(v and not p for v, p in zip(pi, pattern)):
        raise DisjunctionError("pi must vanish on continuous coordinates")
    pi0 = int(pi0)
    lo = HPolytope(n, [Ineq(pi, pi0)])
    hi = HPolytope(n, [Ineq([-v for v in pi], -(pi0 + 1))])
    ints = ",".join(str(int(v)) for v in pi)
    return Disjunction(n, (lo, hi), f"split(pi=[{ints}],pi0={pi0})")


_VAR_RE = re.compile(r"^var\(i=(\d+),K=(-?\d+)\)$")
_SPLIT_RE = re.compile(r"^split\(pi=\[(-?\d+(?:,-?\d+)*)\],pi0=(-?\d+)\)$")


def from_label(label: str, n: int, pattern: Sequence[bool] | None = None) -> Disjunction | None:
    """Rebuild a variable or split disjunction from its label, or None for other labels."""
    m = _VAR_RE.match(label)
    if m:
        return variable_disjunction(int(m.group(1)), int(m.group(2)), n, pattern)
    m = _SPLIT_RE.match(label)
    if m:
        pi = [int(v) for v in m.group(1).split(",")]
        return split_disjunction(pi, int(m.group(2)), n, pattern)
    return None


def variable_index(D: Disjunction) -> tuple[int, int] | None:
    """``(i, K)`` (1-based ``i``) if ``D`` is a variable disjunction."""
    m = _VAR_RE.match(D.label)
    return (int(m.group(1)), int(m.group(2))) if m else None


def complexity(D: Disjunction) -> int:
    """Total number of irredundant inequalities over all pieces."""
    return sum(len(remove_redundant(Q).ineqs) if Q.ineqs else 0 for Q in D.pieces)


def _lattice_points(pattern: Sequence[bool], bounds: Sequence[tuple[int, int]]):
    ranges = [range(int(lo), int(hi) + 1) if p else (None,)
              for p, (lo, hi) in zip(pattern, bounds)]
    return itertools.product(*ranges)


def _covers_slice(Q: HPolytope, fixed: tuple, bounds) -> bool:
    """Whether ``Q`` contains the whole continuous slice through ``fixed``."""
    n = Q.dim
    for h in Q.ineqs:
        # max of <a, x> over the slice: fixed coordinates plus box bounds elsewhere
        total = Fraction(0)
        for j in range(n):
            if fixed[j] is not None:
                total += h.a[j] * fixed[j]
            else:
                lo, hi = bounds[j]
                total += h.a[j] * (hi if h.a[j] > 0 else lo)
        if total > h.b:
            return False
    return True


def check_validity(D: Disjunction, pattern: Sequence[bool], bounds: Sequence[tuple]) -> bool:
    """Whether every lattice point of the box lies in some piece.

    Continuous coordinates range over the whole box interval; for them a
    single piece must cover the entire slice, which is exact for splits and
    a sufficient condition otherwise.
    """
    for pt in _lattice_points(pattern, bounds):
        if all(v is not None for v in pt):
            if not D.contains([Fraction(v) for v in pt]):
                return False
        elif not any(_covers_slice(Q, pt, bounds) for Q in D.pieces):
            return False
    return True


@dataclass(frozen=True)
class DisjunctionFamily:
    """Variable, bounded-split (``||pi||_inf <= width``) or explicit-list families."""

    kind: str
    pattern: Pattern
    width: int = 2
    members: tuple[Disjunction, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(bool(p) for p in self.pattern))
        object.__setattr__(self, "members", tuple(self.members))
        if self.kind not in ("variable", "split", "explicit"):
            raise DisjunctionError(f"unknown family kind {self.kind!r}")
        if self.kind == "split" and self.width < 1:
            raise DisjunctionError("split width must be positive")

    @classmethod
    def variable(cls, pattern) -> "DisjunctionFamily":
        return cls("variable", pattern)

    @classmethod
    def split(cls, pattern, width: int = 2) -> "DisjunctionFamily":
        return cls("split", pattern, width)

    @classmethod
    def explicit(cls, pattern, members) -> "DisjunctionFamily":
        return cls("explicit", pattern, members=members)

    @property
    def dim(self) -> int:
        return len(self.pattern)

    def describe(self) -> str:
        if self.kind == "split":
            return f"split:{self.width}"
        return self.kind

    def is_member(self, D: Disjunction, bounds=None) -> bool:
        if self.kind == "explicit":
            return D in self.members
        try:
            rebuilt = from_label(D.label, self.dim, self.pattern)
        except DisjunctionError:
            return False
        if rebuilt is None or rebuilt.pieces != D.pieces:
            return False
        if self.kind == "variable":
            return variable_index(D) is not None
        pi = [abs(v) for v in D.pieces[0].ineqs[0].a]
        return max(pi) <= self.width


def split_normals(pattern: Sequence[bool], width: int) -> Iterator[tuple[int, ...]]:
    """Primitive integer normals with ``||pi||_inf <= width``, first nonzero entry positive."""
    ranges = [range(-width, width + 1) if p else (0,) for p in pattern]
    for pi in itertools.product(*ranges):
        nz = [v for v in pi if v]
        if not nz or nz[0] < 0:
            continue
        g = 0
        for v in nz:
            g = gcd(g, v)
        if g == 1:
            yield pi


def candidate_disjunctions(family: DisjunctionFamily, P: HPolytope, x: Sequence[Fraction]) -> Iterator[Disjunction]:
    """Family members that exclude ``x``, in canonical order.

    ``P`` is accepted for interface symmetry; membership only depends on ``x``.
    """
    n = family.dim
    if family.kind == "variable":
        for i in range(n):
            if family.pattern[i] and x[i].denominator != 1:
                yield variable_disjunction(i + 1, floor(x[i]), n)
    elif family.kind == "split":
        for pi in split_normals(family.pattern, family.width):
            v = dot(pi, x)
            if v.denominator != 1:
                yield split_disjunction(pi, floor(v), n)
    else:
        for D in family.members:
            if not D.contains(x):
                yield D


def fractional_coords(x: Sequence[Fraction], pattern: Sequence[bool]) -> list[int]:
    return [i for i, (v, p) in enumerate(zip(x, pattern)) if p and v.denominator != 1]


def is_lattice_point(x: Sequence[Fraction], pattern: Sequence[bool]) -> bool:
    return not fractional_coords(x, pattern)
