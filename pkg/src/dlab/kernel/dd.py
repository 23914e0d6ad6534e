"""Double-description method for pointed polyhedral cones, in exact integers.

The cone is ``{y : <r, y> >= 0 for every row r}``. Rays are kept as
primitive integer tuples; tight-constraint sets are Python int bitmasks and
adjacency uses the combinatorial test.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


class NotPointed(ValueError):
    pass


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _independent_rows(rows: Sequence[Sequence[int]], d: int) -> list[int]:
    """Greedy choice of row indices spanning the row space (in input order)."""
    chosen: list[int] = []
    reduced: list[tuple[int, list[Fraction]]] = []  # (pivot col, echelon row)
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for col, e in reduced:
            if v[col]:
                f = v[col] / e[col]
                v = [x - f * y for x, y in zip(v, e)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            continue
        chosen.append(idx)
        reduced.append((piv, v))
        if len(chosen) == d:
            break
    return chosen


def _inverse_columns(mat: list[list[int]]) -> list[tuple[int, ...]]:
    """Columns of ``mat^-1``, each scaled to a primitive integer vector."""
    d = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)]
           for i, row in enumerate(mat)]
    for c in range(d):
        p = next(r for r in range(c, d) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(d):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    cols = []
    for k in range(d):
        col = [aug[i][d + k] for i in range(d)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        cols.append(primitive([int(x * den) for x in col]))
    return cols


def extreme_rays(rows: Sequence[Sequence[int]], d: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y in R^d : rows @ y >= 0}``.

    Raises NotPointed when the rows do not span ``R^d``.
    """
    rows = [tuple(r) for r in rows]
    base = _independent_rows(rows, d)
    if len(base) < d:
        raise NotPointed("cone has a nontrivial lineality space")
    rays = _inverse_columns([list(rows[i]) for i in base])
    full = (1 << d) - 1
    # ray k is tight on every base row except the k-th
    tight = [full & ~(1 << k) for k in range(d)]
    # bit positions: base rows take 0..d-1, later rows d, d+1, ...
    bit = d
    in_base = set(base)
    rest = [i for i in range(len(rows)) if i not in in_base]
    for idx in rest:
        row = rows[idx]
        vals = [_dot(row, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos]
        new_tight = [tight[k] for k in pos]
        for k in zero:
            new_rays.append(rays[k])
            new_tight.append(tight[k] | (1 << bit))
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if bin(common).count("1") < d - 2:
                    continue
                if any(k != p and k != q and (tight[k] & common) == common
                       for k in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                r = primitive([vp * b - vq * a for a, b in zip(rays[p], rays[q])])
                new_rays.append(r)
                new_tight.append(common | (1 << bit))
        rays, tight = new_rays, new_tight
        bit += 1
    return rays
