import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dlab.instances import b_polytope, tetra_vertices
from dlab.kernel import (
    HPolytope,
    Ineq,
    ScaleLimitError,
    box,
    canonical,
    cartesian_product,
    convex_hull,
    coordinate_bounds,
    disjunctive_hull,
    enumerate_vertices,
    integer_box,
    is_empty,
    is_valid,
    lp_max,
    remove_redundant,
    same_set,
    simplex,
    solve_lp,
)
from dlab.disjunctions import variable_disjunction


def square():
    return box([(0, 1), (0, 1)])


def test_unit_square_vertices():
    assert enumerate_vertices(square()) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_b_vertices_match_generator():
    assert set(enumerate_vertices(b_polytope())) == {
        (0, 0), (F(3, 2), 1), (2, 2), (1, F(3, 2))}


def test_tetra_vertices_h4():
    P = convex_hull(tetra_vertices(4), 3)
    assert set(enumerate_vertices(P)) == {(0, 0, 0), (0, 2, 0), (2, 0, 0), (F(3, 4), F(3, 4), 4)}


def test_lp_on_triangle():
    P = HPolytope(2, [Ineq([-1, 0], 0), Ineq([0, -1], 0), Ineq([2, 2], 3)])
    assert lp_max(P, [1, 1])[0] == F(3, 2)
    assert solve_lp(P, [1, 1]).point == (0, F(3, 2))  # lex-min optimal vertex
    out = solve_lp(P, [1, 0], sense="min")
    assert out.value == 0


def test_scaled_rows_regression():
    # rows with large common factors used to corrupt the slack basis
    P = HPolytope(2, [Ineq([4, 0], 6), Ineq([0, 6], 9), Ineq([-1, 0], 0), Ineq([0, -1], 0)])
    assert lp_max(P, [1, 0])[0] == F(3, 2)
    assert lp_max(P, [0, 1])[0] == F(3, 2)


def test_infeasible_and_empty():
    P = HPolytope(1, [Ineq([1], 0), Ineq([-1], -1)])
    assert solve_lp(P, [1]).infeasible
    assert is_empty(P)
    assert enumerate_vertices(P) == []


def test_simplex_raw_interface():
    # max x1 s.t. x1 + x2 <= 4, x1 - x2 <= 0, x >= 0
    status, z = simplex([[1, 0]], [[1, 1], [1, -1]], [4, 0])
    assert status == "optimal" and tuple(z) == (2, 2)


def test_validity_and_bounds():
    P = b_polytope()
    assert is_valid(P, Ineq([1, 0], 2))
    assert not is_valid(P, Ineq([1, -1], 0))
    assert coordinate_bounds(P) == [(0, 2), (0, 2)]
    assert integer_box(P) == [(0, 2), (0, 2)]


def test_hull_of_square_corners_is_square():
    H = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 2))], 2)
    assert same_set(H, square())
    assert len(remove_redundant(H).ineqs) == 4


def test_product_of_squares():
    P = cartesian_product(square(), square())
    assert P.dim == 4 and len(enumerate_vertices(P)) == 16


def test_disjunctive_hull_of_b_at_x1_one():
    P = b_polytope()
    H = disjunctive_hull(P, variable_disjunction(1, 1, 2))
    assert set(enumerate_vertices(H)) == {(0, 0), (1, F(2, 3)), (1, F(3, 2)), (2, 2)}


def test_canonical_is_order_free():
    a = HPolytope(2, [Ineq([1, 0], 1), Ineq([0, 2], 2), Ineq([-1, 0], 0), Ineq([0, -1], 0)])
    b = HPolytope(2, list(reversed(a.ineqs)))
    assert canonical(a) == canonical(b)


def test_scale_guard(monkeypatch):
    with pytest.raises(ScaleLimitError):
        enumerate_vertices(box([(0, 1)] * 7))
    monkeypatch.setenv("DLAB_SCALE_GUARD", "7")
    assert len(enumerate_vertices(box([(0, 1)] * 7))) == 128


def test_lp_matches_oracle_on_seeded_polytopes():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 3)
        rows = oracles.random_polytope(rng, n, rng.randint(0, 3), box=3)
        P = HPolytope(n, [Ineq(a, b) for a, b in rows])
        c = [rng.randint(-2, 2) for _ in range(n)]
        want = oracles.lp_max(P, c)
        got, x = lp_max(P, c)
        assert got == want
        out = solve_lp(P, c)
        if x is not None:
            assert P.contains(x)
            vs = oracles.poly_vertices(P)
            best = [v for v in vs if sum(a * b for a, b in zip(c, v)) == want]
            assert out.point == min(best)


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(small, small), min_size=1, max_size=6), st.tuples(small, small))
def test_hull_contains_points_and_lp_agrees(points, c):
    pts = [tuple(F(v) for v in p) for p in points]
    H = convex_hull(pts, 2)
    assert all(H.contains(p) for p in pts)
    val, _ = lp_max(H, c)
    assert val == max(c[0] * p[0] + c[1] * p[1] for p in pts)
