"""Instance families: stable-set polytopes, the B and tetrahedron examples, random 0/1 polytopes."""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .kernel import (
    HPolytope,
    Ineq,
    UnboundedError,
    box,
    cartesian_product,
    convex_hull,
    coordinate_bounds,
    dot,
    vec,
)


class InstanceError(ValueError):
    """Generator precondition violated or instance fails load validation."""


@dataclass(frozen=True)
class Instance:
    """``sup <c, x>`` over ``x in C`` with the coordinates flagged in ``pattern`` integral."""

    C: HPolytope
    objective: tuple[Fraction, ...]
    pattern: tuple[bool, ...]
    claimed_bound: Fraction | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "objective", vec(self.objective))
        object.__setattr__(self, "pattern", tuple(bool(p) for p in self.pattern))
        if self.claimed_bound is not None:
            object.__setattr__(self, "claimed_bound", Fraction(self.claimed_bound))

    @property
    def dim(self) -> int:
        return self.C.dim

    def validate(self) -> "Instance":
        """Check dimensions and boundedness (2n LPs); returns self for chaining."""
        n = self.C.dim
        if len(self.objective) != n or len(self.pattern) != n:
            raise InstanceError("objective, pattern and polytope dimensions differ")
        try:
            coordinate_bounds(self.C)
        except UnboundedError as exc:
            raise InstanceError(f"relaxation is unbounded: {exc}") from None
        except ValueError:
            pass  # an empty relaxation is a legitimate (infeasible) instance
        return self

    def box(self) -> list[tuple[int, int]]:
        """Integer bounding box of ``C`` (continuous coordinates keep exact bounds)."""
        out = []
        for p, (lo, hi) in zip(self.pattern, coordinate_bounds(self.C)):
            out.append((-floor(-lo), floor(hi)) if p else (lo, hi))
        return out

    def target(self) -> Ineq | None:
        if self.claimed_bound is None:
            return None
        return Ineq(self.objective, self.claimed_bound)


@dataclass(frozen=True)
class GraphSpec:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise InstanceError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceError(f"edge ({u},{v}) leaves the vertex range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceError(f"duplicate edge {key}")
            seen.add(key)


def clique_edges(vertices: Sequence[int]) -> list[tuple[int, int]]:
    return list(itertools.combinations(vertices, 2))


def stable_set_polytope(G: GraphSpec, claimed_bound=None, name: str = "") -> Instance:
    n = G.n
    ineqs = []
    for u, v in G.edges:
        a = [0] * n
        a[u] = a[v] = 1
        ineqs.append(Ineq(a, 1))
    C = box([(0, 1)] * n).with_ineqs(ineqs)
    return Instance(C, [1] * n, [True] * n, claimed_bound, name or f"stable(n={n})").validate()


def gen_k3_copies(m: int) -> Instance:
    if m < 1:
        raise InstanceError("need at least one triangle")
    edges = []
    for k in range(m):
        edges += clique_edges(range(3 * k, 3 * k + 3))
    return stable_set_polytope(GraphSpec(3 * m, tuple(edges)), m, f"k3copies(m={m})")


def gen_center_variant(m: int, center_edges: Sequence[int]) -> Instance:
    """``m`` triangles plus a center vertex (the last coordinate) joined to ``center_edges``."""
    if m < 1:
        raise InstanceError("need at least one triangle")
    center = 3 * m
    hit: dict[int, int] = {}
    for v in center_edges:
        if not 0 <= v < center:
            raise InstanceError(f"center edge endpoint {v} is not a clique vertex")
        k = v // 3
        hit[k] = hit.get(k, 0) + 1
        if hit[k] > 1:
            raise InstanceError(f"clique {k} has more than one vertex joined to the center")
    edges = []
    for k in range(m):
        edges += clique_edges(range(3 * k, 3 * k + 3))
    edges += [(v, center) for v in center_edges]
    return stable_set_polytope(GraphSpec(3 * m + 1, tuple(edges)), m + 1,
                               f"center(m={m})")


def gen_km_copies_alpha(m: int, alpha, cross_edges: Sequence[tuple[int, int]]) -> Instance:
    """``m`` disjoint ``K_m`` plus cross edges touching at most ``alpha*m`` vertices per clique."""
    alpha = Fraction(alpha)
    if not 0 <= alpha < 1:
        raise InstanceError("alpha must lie in [0, 1)")
    n = m * m
    touched: dict[int, set[int]] = {}
    for u, v in cross_edges:
        if u // m == v // m:
            raise InstanceError(f"cross edge ({u},{v}) stays inside one clique")
        for w in (u, v):
            touched.setdefault(w // m, set()).add(w)
    for k, vs in touched.items():
        if len(vs) > alpha * m:
            raise InstanceError(f"clique {k} has {len(vs)} vertices with cross edges, "
                                f"more than alpha*m = {alpha * m}")
    if m < 3 / (1 - alpha):
        warnings.warn(f"m = {m} is below 3/(1-alpha) = {3 / (1 - alpha)}; "
                      "the rank lower bound does not apply", stacklevel=2)
    edges = []
    for k in range(m):
        edges += clique_edges(range(k * m, k * m + m))
    edges += [tuple(e) for e in cross_edges]
    return stable_set_polytope(GraphSpec(n, tuple(edges)), m, f"kmalpha(m={m},alpha={alpha})")


B_VERTICES = ((0, 0), (Fraction(3, 2), 1), (2, 2), (1, Fraction(3, 2)))


def b_polytope() -> HPolytope:
    return convex_hull(B_VERTICES, 2)


def gen_b_cross_cube(n: int) -> Instance:
    if n < 2:
        raise InstanceError("n must be at least 2")
    C = b_polytope()
    if n > 2:
        half = Fraction(1, 2)
        C = cartesian_product(C, box([(-half, half)] * (n - 2)))
    c = [1, -1] + [0] * (n - 2)
    return Instance(C, c, [True] * n, 0, f"bcube(n={n})").validate()


def tetra_vertices(h) -> list[tuple]:
    h = Fraction(h)
    t = 1 - 1 / h
    return [(0, 0, 0), (0, 2, 0), (2, 0, 0), (t, t, h)]


def gen_tetra_h(h) -> Instance:
    """Tetrahedron with apex ``(1-1/h, 1-1/h, h)``; maximise ``x3`` with claimed bound 0."""
    h = Fraction(h)
    if h <= 1:
        raise InstanceError("h must exceed 1")
    C = convex_hull(tetra_vertices(h), 3)
    return Instance(C, [0, 0, 1], [True] * 3, 0, f"tetra(h={h})").validate()


def gen_reverse_split(h) -> Instance:
    h = Fraction(h)
    if h <= 0:
        raise InstanceError("h must be positive")
    half = Fraction(1, 2)
    C = convex_hull([(0, 0, 0), (2, 0, 0), (0, 2, 0), (half, half, h)], 3)
    return Instance(C, [0, 0, 1], [True] * 3, 0, f"revsplit(h={h})").validate()


def random_01_polytope(seed: int, n: int, density) -> Instance:
    """Unit cube cut by ``round(density * 2n)`` random rows, each satisfied by a random 0/1 point.

    The claimed bound is the integer optimum found by enumerating the cube.
    """
    if not 1 <= n <= 6:
        raise InstanceError("random 0/1 polytopes are limited to 1 <= n <= 6")
    rng = random.Random(seed)
    rows = round(Fraction(density) * 2 * n)
    ineqs = []
    anchor = [rng.randint(0, 1) for _ in range(n)]
    for _ in range(rows):
        a = [rng.randint(-3, 3) for _ in range(n)]
        if not any(a):
            a[rng.randrange(n)] = 1
        # keep the anchor feasible, so the instance is never integer-infeasible
        slack = rng.randint(0, 2)
        ineqs.append(Ineq(a, dot(a, anchor) + Fraction(slack, 2)))
    c = [rng.randint(-3, 3) for _ in range(n)]
    C = box([(0, 1)] * n).with_ineqs(ineqs)
    best = max(dot(c, p) for p in itertools.product((0, 1), repeat=n) if C.contains(p))
    return Instance(C, c, [True] * n, best, f"rand01(seed={seed},n={n},density={density})").validate()


def lattice_points(inst: Instance) -> list[tuple[Fraction, ...]]:
    """Integer points of ``C`` (all-integral instances only), by box enumeration."""
    if not all(inst.pattern):
        raise InstanceError("lattice enumeration needs an all-integral pattern")
    ranges = [range(lo, hi + 1) for lo, hi in inst.box()]
    return [tuple(Fraction(v) for v in p) for p in itertools.product(*ranges)
            if inst.C.contains(p)]
