"""Acceptance suite: one group of checks per criterion, summarised as PASS/FAIL lines.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
``criterion k PASS|FAIL`` for k = 1..7.
"""

from __future__ import annotations

import csv
import itertools
import math
import random
from fractions import Fraction

import pytest

import oracles
from corpus import cp_corpus, k3_cp, tree_corpus
from dlab.closures import closure, iterated_closure, sequential_convexify
from dlab.disjunctions import DisjunctionFamily, variable_disjunction
from dlab.engine import (
    BOUND_PROVED,
    BRANCH_RULES,
    NODE_SELECT,
    OPTIMAL,
    Stop,
    default_config,
    min_bb_tree_size,
    run_bb,
    run_bc,
    run_cp,
)
from dlab.experiment import write_table1
from dlab.instances import gen_b_cross_cube, gen_k3_copies, gen_tetra_h, stable_set_polytope, GraphSpec, clique_edges
from dlab.kernel import HPolytope, Ineq, convex_hull, enumerate_vertices, lp_max, solve_lp
from dlab.proofs import BRANCH, proof_size, verify
from dlab.transforms import bc_to_cp, cp_to_bb, size_bound
from perturb import bc_perturbations, cp_perturbations

F = Fraction


def crit(k, title):
    return pytest.mark.criterion(k, title)


# -- 1 ------------------------------------------------------------------------

C1 = crit(1, "CP-vs-BB separation on copies of K3")


@C1
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_c1_cp_iterations_equal_m(m):
    inst, res = k3_cp(m)
    assert res.status == OPTIMAL
    assert res.iterations == m
    assert res.bound == m
    assert verify(inst, res.proof)


@C1
@pytest.mark.parametrize("m", [1, 2])
def test_c1_minbb_exact(m):
    assert min_bb_tree_size(gen_k3_copies(m), m) == 2 ** (m + 1) - 2


@C1
@pytest.mark.parametrize("m", [3, 4])
def test_c1_every_bb_config_is_large(m):
    inst = gen_k3_copies(m)
    for ns, br in itertools.product(NODE_SELECT, BRANCH_RULES):
        res = run_bb(inst, default_config(inst, node_select=ns, branch_rule=br))
        assert res.status == OPTIMAL and res.bound == m
        assert proof_size(res.proof) >= 2 ** (m + 1) - 2, (ns, br)


# -- 2 ------------------------------------------------------------------------

C2 = crit(2, "BB beats CP on B")


@C2
def test_c2_bb_fixed_order():
    inst = gen_b_cross_cube(2)
    order = (variable_disjunction(1, 1, 2), variable_disjunction(2, 0, 2))
    res = run_bb(inst, default_config(inst, branch_rule="fixed-order", branch_order=order,
                                      stop=Stop.prove_bound(0)))
    assert res.status == BOUND_PROVED
    assert res.proof.target == Ineq([1, -1], 0)
    assert proof_size(res.proof) + 1 <= 5
    assert verify(inst, res.proof)


# vertices of the round-r closure other than (0,0) and (2,2); round 1 checked by hand
B_DISPLACED = {
    0: {(F(3, 2), 1), (1, F(3, 2))},
    1: {(1, F(2, 3)), (F(2, 3), 1)},
    2: {(F(5, 4), 1), (1, F(5, 4))},
    4: {(F(7, 6), 1), (1, F(7, 6))},
    8: {(F(11, 10), 1), (1, F(11, 10))},
}


@C2
def test_c2_closure_never_reaches_zero():
    inst = gen_b_cross_cube(2)
    chain = iterated_closure(inst.C, DisjunctionFamily.variable(inst.pattern), 8)
    assert len(chain) == 9
    dists = []
    for r, P in enumerate(chain):
        val, _ = lp_max(P, inst.objective)
        assert val == F(1, r + 2) > 0
        verts = set(enumerate_vertices(P))
        assert {(0, 0), (2, 2)} <= verts and len(verts) == 4
        moving = verts - {(0, 0), (2, 2)}
        if r in B_DISPLACED:
            assert moving == B_DISPLACED[r]
        dists.append(max(abs(x - 1) + abs(y - 1) for x, y in moving))
    assert all(a > b for a, b in zip(dists, dists[1:]))  # strictly toward (1, 1)


@C2
def test_c2_closure_round_one_by_hand():
    # B with x1 <= 1 or x1 >= 2, then x2 <= 0 or x2 >= 1 etc.: the hull of the pieces
    # of D_{1,1} is conv{(0,0),(1,2/3),(1,3/2),(2,2)}; intersecting over all members
    # leaves the quadrilateral with (1,2/3) and (2/3,1).
    inst = gen_b_cross_cube(2)
    P1 = closure(inst.C, DisjunctionFamily.variable(inst.pattern))
    expect = convex_hull([(0, 0), (1, F(2, 3)), (F(2, 3), 1), (2, 2)], 2)
    assert set(enumerate_vertices(P1)) == set(enumerate_vertices(expect))


@C2
def test_c2_cp_stalls_positive():
    inst = gen_b_cross_cube(2)
    res = run_cp(inst, default_config(inst, max_iters=12))
    assert res.status == "ITERATION_CAP"
    assert res.bound > 0


# -- 3 ------------------------------------------------------------------------

C3 = crit(3, "BB constant vs CP growing on the tetrahedra")


@C3
@pytest.mark.parametrize("h", [4, 16, 64])
def test_c3_bb_small(h):
    inst = gen_tetra_h(h)
    order = (variable_disjunction(1, 0, 3), variable_disjunction(2, 0, 3))
    res = run_bb(inst, default_config(inst, branch_rule="fixed-order", branch_order=order,
                                      stop=Stop.prove_bound(0)))
    assert res.status in (BOUND_PROVED, OPTIMAL)
    assert proof_size(res.proof) + 1 <= 7
    assert verify(inst, res.proof)


def _apex_after_round(h, hp):
    t = 1 - F(1, h)
    C = convex_hull([(0, 0, 0), (0, 2, 0), (2, 0, 0), (t, t, hp)], 3)
    P = closure(C, DisjunctionFamily.variable([True] * 3))
    line = [Ineq([1, 0, 0], t), Ineq([-1, 0, 0], -t), Ineq([0, 1, 0], t), Ineq([0, -1, 0], -t)]
    val, _ = lp_max(P.with_ineqs(line), [0, 0, 1])
    return val


@C3
@pytest.mark.parametrize("h", [4, 16, 64])
def test_c3_one_round_formula(h):
    for hp in (F(h), F(3 * h, 4), F(h + 1, 2)):
        assert _apex_after_round(h, hp) == hp - max(hp * 2 / (h + 1), 1)


@C3
@pytest.mark.parametrize("h", [4, 16, 64])
def test_c3_cp_iterations_lower_bound(h):
    inst = gen_tetra_h(h)
    gamma = F(h + 1, 2)
    res = run_cp(inst, default_config(inst, max_iters=500, stop=Stop.prove_bound(gamma)))
    assert res.status == BOUND_PROVED
    assert verify(inst, res.proof)
    lower = math.ceil(F(h + 1, 4) - F(h + 1, 4 * h))
    assert res.iterations >= lower
    assert res.iterations == {4: 2, 16: 14, 64: 72}[h]


# -- 4 ------------------------------------------------------------------------

C4 = crit(4, "BC trees convert to CP proofs")


@C4
def test_c4_bc_to_cp_corpus():
    pairs = tree_corpus()
    assert len(pairs) >= 4 * 22  # run_bb plus three run_bc rules on 22 instances
    for inst, tree in pairs:
        cp = bc_to_cp(inst, tree)
        assert verify(inst, cp), inst.name
        assert cp.target == tree.target
        assert proof_size(cp) <= proof_size(tree)


# -- 5 ------------------------------------------------------------------------

C5 = crit(5, "CP proofs simulate as BB trees")


def _no_repeat(node, seen=()):
    if node.kind == BRANCH:
        if node.disjunction.label in seen:
            return False
        seen = seen + (node.disjunction.label,)
    return all(_no_repeat(ch, seen) for ch in node.children)


@C5
def test_c5_cp_to_bb_corpus():
    pairs = cp_corpus()
    assert len(pairs) >= 20
    for inst, proof in pairs:
        tree = cp_to_bb(inst, proof)
        assert tree.is_branching_only()
        assert tree.target == proof.target
        assert verify(inst, tree), inst.name
        assert proof_size(tree) <= size_bound(proof, inst.dim)
        assert _no_repeat(tree.root)


# -- 6 ------------------------------------------------------------------------

C6 = crit(6, "sequential convexification of P(K_m)")


def _system(m, i):
    rows = []
    for j in range(m):
        e = [0] * m
        e[j] = 1
        rows.append((tuple(F(v) for v in e), F(1)))
        rows.append((tuple(F(-v) for v in e), F(0)))
    for u, v in itertools.combinations(range(i, m), 2):
        a = [1 if j < i or j in (u, v) else 0 for j in range(m)]
        rows.append((tuple(F(x) for x in a), F(1)))
    return rows


@C6
@pytest.mark.parametrize("m", [3, 4, 5])
def test_c6_chain_matches_system(m):
    inst = stable_set_polytope(GraphSpec(m, tuple(clique_edges(range(m)))), 1)
    chain = sequential_convexify(inst.C, list(range(1, m + 1)))
    for i in range(m - 1):
        P = chain[i]
        rows = _system(m, i)
        sys_verts = oracles.vertices(rows, m)
        got = enumerate_vertices(P)
        assert all(all(sum(a * x for a, x in zip(ar, v)) <= b for ar, b in rows) for v in got)
        assert all(P.contains(v) for v in sys_verts)
        assert sorted(got) == sys_verts
    hull = [tuple(F(int(j == k)) for j in range(m)) for k in range(m)] + [(F(0),) * m]
    assert sorted(enumerate_vertices(chain[m - 2])) == sorted(hull)


# -- 7 ------------------------------------------------------------------------

C7 = crit(7, "kernel soundness, verifier fuzz and determinism")


@C7
def test_c7_lp_vs_vertex_enumeration():
    rng = random.Random(20240607)
    checked = 0
    for _ in range(100):
        n = rng.randint(1, 4)
        rows = oracles.random_polytope(rng, n, rng.randint(0, 4))
        P = HPolytope(n, [Ineq(a, b) for a, b in rows])
        c = [F(rng.randint(-3, 3)) for _ in range(n)]
        want = max((sum(ci * xi for ci, xi in zip(c, x)) for x in oracles.vertices(rows, n)),
                   default=None)
        lp = solve_lp(P, c)
        if want is None:
            assert lp.infeasible
        else:
            assert lp.value == want
            assert P.contains(lp.point)
            checked += 1
        assert sorted(enumerate_vertices(P)) == oracles.vertices(rows, n)
    assert checked >= 80


def _fuzz_pairs():
    cps = [(i, p) for i, p in cp_corpus() if i.dim <= 4 and len(p.steps) > 0]
    bcs = [(i, t) for i, t in tree_corpus() if i.dim <= 4 and proof_size(t) > 0]
    return cps, bcs


@C7
def test_c7_verifier_fuzz():
    cps, bcs = _fuzz_pairs()
    defects = rejected = still_valid = 0
    for inst, proof in cps:
        assert oracles.cp_sound(inst, proof)
        for what, bad in cp_perturbations(proof):
            sound = oracles.cp_sound(inst, bad)
            ok = bool(verify(inst, bad))
            assert ok == sound, (inst.name, what)
            defects += not sound
            rejected += not ok
            still_valid += sound
    for inst, tree in bcs:
        assert oracles.bc_sound(inst, tree)
        for what, bad in bc_perturbations(tree):
            sound = oracles.bc_sound(inst, bad)
            ok = bool(verify(inst, bad))
            assert ok == sound, (inst.name, what)
            defects += not sound
            rejected += not ok
            still_valid += sound
    print(f"fuzz: {defects} defective perturbations, {rejected} rejected, "
          f"{still_valid} still valid and accepted")
    assert defects > 100 and rejected == defects


@C7
def test_c7_tight_rhs_always_rejected():
    # every cut emitted by run_cp is tight, so lowering any rhs must be rejected
    for inst, proof in cp_corpus():
        for k, (D, h) in enumerate(proof.steps):
            steps = list(proof.steps)
            steps[k] = (D, Ineq(h.a, h.b - F(1, 100)))
            v = verify(inst, type(proof)(steps, proof.target))
            assert not v and v.where == k


@C7
def test_c7_engine_determinism():
    for inst in (gen_k3_copies(2), gen_b_cross_cube(2), gen_tetra_h(4)):
        cfg = default_config(inst, max_iters=8)
        a, b = run_cp(inst, cfg), run_cp(inst, cfg)
        assert a.trace == b.trace and a.proof == b.proof
        a, b = run_bc(inst, cfg, "rounds(1)"), run_bc(inst, cfg, "rounds(1)")
        assert a.trace == b.trace and a.proof.root == b.proof.root


@C7
def test_c7_kernel_determinism():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(2, 4)
        P = HPolytope(n, [Ineq(a, b) for a, b in oracles.random_polytope(rng, n, 3)])
        c = [rng.randint(-2, 2) for _ in range(n)]
        assert solve_lp(P, c) == solve_lp(P, c)
        assert enumerate_vertices(P) == enumerate_vertices(P)
        assert closure(P, DisjunctionFamily.variable([True] * n)).ineqs == \
            closure(P, DisjunctionFamily.variable([True] * n)).ineqs


@C7
def test_c7_experiment_csv_deterministic(tmp_path):
    def body(path):
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("#")
        rows = list(csv.reader(lines[1:]))
        k = rows[0].index("wall_ms")
        return [r[:k] + r[k + 1:] for r in rows]

    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_table1(a)
    write_table1(b)
    assert body(a) == body(b)
    assert len(body(a)) == 24
