from fractions import Fraction as F

import pytest

from dlab.closures import Exceeds, closure, family_members, iterated_closure, rank, sequential_convexify
from dlab.disjunctions import DisjunctionFamily
from dlab.instances import b_polytope, gen_k3_copies, gen_reverse_split
from dlab.kernel import HPolytope, Ineq, box, enumerate_vertices, lp_max, same_set


def test_members_of_b():
    fam = DisjunctionFamily.variable([True, True])
    labels = [D.label for D in family_members(b_polytope(), fam)]
    assert labels == ["var(i=1,K=0)", "var(i=1,K=1)", "var(i=2,K=0)", "var(i=2,K=1)"]


def test_integral_polytope_is_fixed_point():
    P = box([(0, 1), (0, 2)])
    assert same_set(closure(P, DisjunctionFamily.variable([True, True])), P)


def test_triangle_closes_in_one_round():
    inst = gen_k3_copies(1)
    P1 = closure(inst.C, DisjunctionFamily.variable(inst.pattern))
    assert lp_max(P1, inst.objective)[0] == 1
    assert rank(inst.C, DisjunctionFamily.variable(inst.pattern), Ineq([1, 1, 1], 1), 3) == 1


def test_rank_reports_cap_on_b():
    fam = DisjunctionFamily.variable([True, True])
    r = rank(b_polytope(), fam, Ineq([1, -1], 0), 3)
    assert r == Exceeds(3) and str(r) == ">3"


def test_split_closure_is_stronger_on_reverse_split():
    inst = gen_reverse_split(2)
    var = closure(inst.C, DisjunctionFamily.variable(inst.pattern))
    spl = closure(inst.C, DisjunctionFamily.split(inst.pattern, 1))
    assert lp_max(spl, inst.objective)[0] <= lp_max(var, inst.objective)[0]


def test_iterated_chain_is_nested():
    chain = iterated_closure(b_polytope(), DisjunctionFamily.variable([True, True]), 3)
    vals = [lp_max(P, [1, -1])[0] for P in chain]
    assert vals == [F(1, 2), F(1, 3), F(1, 4), F(1, 5)]


def test_sequential_convexify_needs_unit_cube():
    with pytest.raises(ValueError):
        sequential_convexify(b_polytope(), [1, 2])


def test_sequential_convexify_reaches_hull_of_k3():
    P = gen_k3_copies(1).C
    chain = sequential_convexify(P, [1, 2, 3])
    assert len(chain) == 4
    assert sorted(enumerate_vertices(chain[1])) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
