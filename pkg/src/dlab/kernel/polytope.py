"""Exact H-polytopes and the operations every other module builds on."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Iterable, Sequence

from . import dd
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, simplex

Vector = tuple[Fraction, ...]

DEFAULT_DIM_LIMIT = 6


class ScaleLimitError(ValueError):
    """Raised when an exact geometric routine is asked to work above its size guard."""


class UnboundedError(RuntimeError):
    """An LP over something assumed bounded turned out to be unbounded."""


def dim_limit() -> int:
    raw = os.environ.get("DLAB_SCALE_GUARD")
    if raw:
        try:
            return max(DEFAULT_DIM_LIMIT, int(raw))
        except ValueError:
            raise ScaleLimitError(f"DLAB_SCALE_GUARD must be an integer, got {raw!r}")
    return DEFAULT_DIM_LIMIT


def _guard(dim: int) -> None:
    if dim > dim_limit():
        raise ScaleLimitError(
            f"scale limit: exact vertex/facet enumeration is capped at dim {dim_limit()} "
            f"(got {dim}); set DLAB_SCALE_GUARD to raise it")


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_integral(x: Fraction) -> bool:
    return x.denominator == 1


@dataclass(frozen=True)
class Ineq:
    """The halfspace ``<a, x> <= b``. A zero normal is allowed."""

    a: Vector
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", vec(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @property
    def dim(self) -> int:
        return len(self.a)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.a, x)

    def holds(self, x: Sequence[Fraction]) -> bool:
        return dot(self.a, x) <= self.b

    def tight(self, x: Sequence[Fraction]) -> bool:
        return dot(self.a, x) == self.b

    def negated(self) -> "Ineq":
        """The reverse inequality ``<a, x> >= b`` written as ``<-a, x> <= -b``."""
        return Ineq(tuple(-v for v in self.a), -self.b)

    def scaled(self, t: Fraction) -> "Ineq":
        if t <= 0:
            raise ValueError("inequalities may only be scaled by positive factors")
        return Ineq(tuple(t * v for v in self.a), t * self.b)

    def normalized(self) -> "Ineq":
        """Positive rescaling with an integer normal of gcd 1.

        Zero normals collapse to ``0 <= 1``, ``0 <= 0`` or ``0 <= -1``.
        """
        if not any(self.a):
            return Ineq(self.a, Fraction((self.b > 0) - (self.b < 0)))
        den = 1
        for v in self.a:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in self.a]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return Ineq(tuple(Fraction(v // g) for v in ints), self.b * den / g)

    def __str__(self) -> str:
        terms = " ".join(f"{'+' if v > 0 else '-'}{abs(v)}*x{i + 1}"
                         for i, v in enumerate(self.a) if v)
        return f"{terms or '0'} <= {self.b}"


def trivial_ineq(n: int) -> Ineq:
    return Ineq((0,) * n, 1)


def empty_ineq(n: int) -> Ineq:
    return Ineq((0,) * n, -1)


def bound_ineqs(i: int, lo, hi, n: int) -> list[Ineq]:
    e = [0] * n
    e[i] = 1
    out = []
    if hi is not None:
        out.append(Ineq(e, hi))
    if lo is not None:
        out.append(Ineq([-v for v in e], -Fraction(lo)))
    return out


@dataclass(frozen=True)
class HPolytope:
    """``{x in R^dim : <a, x> <= b for every (a, b) in ineqs}``."""

    dim: int
    ineqs: tuple[Ineq, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ineqs", tuple(self.ineqs))
        for h in self.ineqs:
            if h.dim != self.dim:
                raise ValueError(f"inequality of dim {h.dim} in a dim-{self.dim} polytope")

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(h.holds(x) for h in self.ineqs)

    def with_ineqs(self, extra: Iterable[Ineq]) -> "HPolytope":
        return HPolytope(self.dim, self.ineqs + tuple(extra))

    def __len__(self) -> int:
        return len(self.ineqs)


def canonical_empty(n: int) -> HPolytope:
    return HPolytope(n, (empty_ineq(n),))


def box(bounds: Sequence[tuple]) -> HPolytope:
    n = len(bounds)
    ineqs = []
    for i, (lo, hi) in enumerate(bounds):
        ineqs += bound_ineqs(i, lo, hi, n)
    return HPolytope(n, ineqs)


# -- linear programming -------------------------------------------------------

@dataclass(frozen=True)
class LPOutcome:
    tag: str  # "Optimal" or "Infeasible"
    point: Vector | None = None
    value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.tag == "Optimal"

    @property
    def infeasible(self) -> bool:
        return self.tag == "Infeasible"


def _lp(P: HPolytope, objectives: list[Sequence[Fraction]]):
    a_ub = [h.a for h in P.ineqs]
    b_ub = [h.b for h in P.ineqs]
    status, z = simplex(objectives, a_ub, b_ub, free=[True] * P.dim)
    if status == UNBOUNDED:
        raise UnboundedError("LP over a polytope reported unbounded")
    return status, z


def solve_lp(P: HPolytope, objective: Sequence, sense: str = "max") -> LPOutcome:
    """Exact LP over ``P`` returning the lexicographically smallest optimal vertex.

    Ties between optimal vertices are broken by minimising x1, then x2, ...,
    so equal inputs always give the same vertex.
    """
    c = vec(objective)
    if len(c) != P.dim:
        raise ValueError(f"objective has length {len(c)}, polytope has dim {P.dim}")
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    primary = c if sense == "max" else tuple(-v for v in c)
    objs = [primary]
    for i in range(P.dim):
        e = [Fraction(0)] * P.dim
        e[i] = Fraction(-1)
        objs.append(e)
    status, z = _lp(P, objs)
    if status == INFEASIBLE:
        return LPOutcome("Infeasible")
    x = tuple(z)
    return LPOutcome("Optimal", x, dot(c, x))


def lp_max(P: HPolytope, objective: Sequence) -> tuple[Fraction | None, Vector | None]:
    """Optimal value and some optimal point, or ``(None, None)`` if ``P`` is empty.

    Skips the canonical-vertex tie-break, so it is cheaper than ``solve_lp``.
    """
    c = vec(objective)
    status, z = _lp(P, [c])
    if status == INFEASIBLE:
        return None, None
    x = tuple(z)
    return dot(c, x), x


def is_empty(P: HPolytope) -> bool:
    status, _ = simplex([[Fraction(0)] * P.dim], [h.a for h in P.ineqs],
                        [h.b for h in P.ineqs], free=[True] * P.dim)
    return status == INFEASIBLE


def is_valid(P: HPolytope, h: Ineq) -> bool:
    """Whether ``h`` holds on all of ``P`` (vacuously true when ``P`` is empty)."""
    if not any(h.a):
        return h.b >= 0 or is_empty(P)
    val, _ = lp_max(P, h.a)
    return val is None or val <= h.b


def coordinate_bounds(P: HPolytope) -> list[tuple[Fraction, Fraction]]:
    """Exact ``(min, max)`` of every coordinate; raises if ``P`` is unbounded or empty."""
    out = []
    for i in range(P.dim):
        e = [Fraction(0)] * P.dim
        e[i] = Fraction(1)
        status, z = simplex([e], [h.a for h in P.ineqs], [h.b for h in P.ineqs],
                            free=[True] * P.dim)
        if status == UNBOUNDED:
            raise UnboundedError(f"coordinate {i + 1} is unbounded above")
        if status == INFEASIBLE:
            raise ValueError("polytope is empty")
        hi = z[i]
        e[i] = Fraction(-1)
        status, z = simplex([e], [h.a for h in P.ineqs], [h.b for h in P.ineqs],
                            free=[True] * P.dim)
        if status == UNBOUNDED:
            raise UnboundedError(f"coordinate {i + 1} is unbounded below")
        out.append((z[i], hi))
    return out


def integer_box(P: HPolytope) -> list[tuple[int, int]]:
    return [(-floor(-lo), floor(hi)) for lo, hi in coordinate_bounds(P)]


# -- vertex and facet enumeration ---------------------------------------------

def _scaled_ints(values: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    return [int(v * den) for v in values]


def _rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(dd._independent_rows([_scaled_ints(r) for r in rows], len(rows[0])))


def enumerate_vertices(P: HPolytope) -> list[Vector]:
    """All vertices of the bounded polytope ``P``, sorted lexicographically."""
    n = P.dim
    _guard(n)
    if _rank([h.a for h in P.ineqs]) < n:
        if is_empty(P):
            return []
        raise UnboundedError("polyhedron has a nontrivial recession cone")
    # homogenise: (t, x) with b t - <a, x> >= 0 and t >= 0
    rows = [_scaled_ints([h.b] + [-v for v in h.a]) for h in P.ineqs]
    rows.append([1] + [0] * n)
    rays = dd.extreme_rays(rows, n + 1)
    verts = set()
    recession = False
    for r in rays:
        t = r[0]
        if t > 0:
            verts.add(tuple(Fraction(v, t) for v in r[1:]))
        elif any(r[1:]):
            recession = True
    if recession and verts:
        raise UnboundedError("polyhedron is unbounded")
    return sorted(verts)


def _nullspace(rows: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    """Basis of ``{w : <r, w> = 0 for every row r}`` via reduced row echelon form."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        w = [Fraction(0)] * n
        w[f] = Fraction(1)
        for i, c in enumerate(pivots):
            w[c] = -m[i][f]
        basis.append(w)
    return basis, pivots


def convex_hull(points: Iterable[Sequence], dim: int) -> HPolytope:
    """Irredundant H-description of ``conv(points)``.

    Lower-dimensional hulls get their affine hull as pairs of opposite
    inequalities plus the facets of the projection onto pivot coordinates.
    """
    _guard(dim)
    pts = sorted({vec(p) for p in points})
    if not pts:
        return canonical_empty(dim)
    for p in pts:
        if len(p) != dim:
            raise ValueError("point dimension mismatch")
    p0 = pts[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in pts[1:]]
    normals, pivots = _nullspace(diffs, dim) if diffs else (
        [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)], [])
    ineqs = []
    for w in normals:
        h = Ineq(w, dot(w, p0)).normalized()
        ineqs += [h, h.negated()]
    k = len(pivots)
    if k > 0:
        proj = [[p[j] for j in pivots] for p in pts]
        rows = [_scaled_ints([Fraction(1)] + [-v for v in q]) for q in proj]
        # dual cone over (beta, a): beta - <a, q> >= 0
        for ray in dd.extreme_rays(rows, k + 1):
            beta, a = ray[0], ray[1:]
            if not any(a):
                continue
            full = [Fraction(0)] * dim
            for j, v in zip(pivots, a):
                full[j] = Fraction(v)
            ineqs.append(Ineq(full, beta).normalized())
    return HPolytope(dim, sorted(set(ineqs), key=_ineq_key))


def _ineq_key(h: Ineq):
    return (h.a, h.b)


def canonical(P: HPolytope) -> HPolytope:
    """Canonical irredundant description: the hull of ``P``'s own vertices."""
    return convex_hull(enumerate_vertices(P), P.dim)


def remove_redundant(P: HPolytope) -> HPolytope:
    """Drop inequalities implied by the others (LP test, works for unbounded sets too).

    Duplicates are removed one at a time, so one copy always survives.
    """
    kept = [h.normalized() for h in P.ineqs]
    i = 0
    while i < len(kept):
        h = kept[i]
        rest = HPolytope(P.dim, kept[:i] + kept[i + 1:])
        if not any(h.a):
            redundant = h.b >= 0
        else:
            status, z = simplex([h.a], [g.a for g in rest.ineqs], [g.b for g in rest.ineqs],
                                free=[True] * P.dim)
            redundant = status == INFEASIBLE or (status == OPTIMAL and dot(h.a, z) <= h.b)
        if redundant and rest.ineqs:
            del kept[i]
        else:
            i += 1
    return HPolytope(P.dim, kept)


def same_set(P: HPolytope, Q: HPolytope) -> bool:
    """Double inclusion between two polytopes, decided by LP."""
    return all(is_valid(P, h) for h in Q.ineqs) and all(is_valid(Q, h) for h in P.ineqs)


# -- constructions -------------------------------------------------------------

def intersect(P: HPolytope, H: Ineq) -> HPolytope:
    if H.dim != P.dim:
        raise ValueError("dimension mismatch")
    return P.with_ineqs([H])


def intersect_all(P: HPolytope, Q: HPolytope) -> HPolytope:
    if Q.dim != P.dim:
        raise ValueError("dimension mismatch")
    return P.with_ineqs(Q.ineqs)


def disjunctive_hull(P: HPolytope, D) -> HPolytope:
    """``conv`` of the union of ``P`` intersected with each piece of ``D``.

    ``D`` is a Disjunction or a plain sequence of piece polytopes. Empty
    pieces drop out; if all are empty the canonical empty polytope results.
    """
    pts = []
    for Q in getattr(D, "pieces", D):
        pts += enumerate_vertices(intersect_all(P, Q))
    return convex_hull(pts, P.dim)


def cartesian_product(P: HPolytope, Q: HPolytope) -> HPolytope:
    n, m = P.dim, Q.dim
    z_n = (Fraction(0),) * n
    z_m = (Fraction(0),) * m
    ineqs = [Ineq(h.a + z_m, h.b) for h in P.ineqs]
    ineqs += [Ineq(z_n + h.a, h.b) for h in Q.ineqs]
    return HPolytope(n + m, ineqs)
