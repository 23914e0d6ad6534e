import itertools
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

import oracles
from corpus import cp_corpus, k3_cp, tree_corpus
from dlab.disjunctions import Disjunction, variable_disjunction
from dlab.engine import default_config, run_bb
from dlab.instances import gen_k3_copies, lattice_points, random_01_polytope
from dlab.kernel import HPolytope, Ineq
from dlab.proofs import (
    BRANCH,
    CUT,
    LEAF,
    BCNode,
    BCProofTree,
    CPProof,
    leaf_regions,
    proof_size,
    verify,
)
from perturb import bc_perturbations, cp_perturbations


def test_k3_cp_proof_accepts_and_tight_rhs_rejects_at_step():
    inst, res = k3_cp(2)
    assert verify(inst, res.proof)
    D, h = res.proof.steps[1]
    bad = CPProof([res.proof.steps[0], (D, Ineq(h.a, h.b - F(1, 100)))], res.proof.target)
    v = verify(inst, bad)
    assert not v and v.where == 1 and v.witness is not None
    assert str(v).startswith("REJECT at 1")


def test_empty_proof_with_valid_target():
    inst = gen_k3_copies(1)
    assert verify(inst, CPProof([], Ineq([1, 1, 1], 3)))
    assert not verify(inst, CPProof([], Ineq([1, 1, 1], 1)))


def test_bc_missing_child_is_rejected():
    inst = gen_k3_copies(1)
    tree = run_bb(inst, default_config(inst)).proof
    assert verify(inst, tree)
    tree.root.children.pop()
    v = verify(inst, tree)
    assert not v and v.where == ()


def test_unlabelled_disjunction_needs_lattice_cover():
    inst = gen_k3_copies(1)
    half = Disjunction(3, (HPolytope(3, [Ineq([1, 0, 0], 0)]),), "half")
    assert not verify(inst, CPProof([(half, Ineq([1, 0, 0], 0))], Ineq([1, 1, 1], 3)))
    ok = Disjunction(3, variable_disjunction(1, 0, 3).pieces, "custom")
    assert verify(inst, CPProof([(ok, Ineq([1, 0, 0], 1))], Ineq([1, 1, 1], 3)))


def test_sizes():
    leaf = BCNode()
    chain = BCNode(CUT, variable_disjunction(1, 0, 1), Ineq([1], 1),
                   [BCNode(CUT, variable_disjunction(1, 0, 1), Ineq([1], 1), [leaf])])
    assert proof_size(BCProofTree(chain, Ineq([1], 1))) == 2
    inst, res = k3_cp(3)
    assert proof_size(res.proof) == 3


def _full_tree(depth, n, i=1):
    if depth == 0:
        return BCNode()
    return BCNode(BRANCH, variable_disjunction(i, 0, n),
                  children=[_full_tree(depth - 1, n, i + 1), _full_tree(depth - 1, n, i + 1)])


def test_full_binary_tree_size():
    for m in range(1, 5):
        assert proof_size(BCProofTree(_full_tree(m, 4), Ineq([0] * 4, 0))) == 2 ** (m + 1) - 2


def test_leaf_regions_cover_lattice():
    inst = gen_k3_copies(1)
    tree = run_bb(inst, default_config(inst)).proof
    regions = leaf_regions(inst.C, tree)
    for z in lattice_points(inst):
        assert any(R.contains(z) for R in regions)


def test_accepted_proofs_are_sound_by_lattice_enumeration():
    # accepted implies the target holds on every lattice point of C (dim <= 4)
    for inst, proof in list(cp_corpus()) + list(tree_corpus()):
        if inst.dim > 4:
            continue
        assert verify(inst, proof)
        t = proof.target
        assert all(t.holds(z) for z in lattice_points(inst))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 5000))
def test_fuzz_matches_oracle(seed):
    inst = random_01_polytope(seed, 3, 1)
    tree = run_bb(inst, default_config(inst)).proof
    for what, bad in itertools.islice(bc_perturbations(tree), 40):
        assert bool(verify(inst, bad)) == oracles.bc_sound(inst, bad), what
