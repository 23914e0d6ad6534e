"""Exact rotations on polytope faces, lifting CP proofs, BC to CP and CP to BB conversions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .disjunctions import Disjunction, variable_index
from .kernel import (
    HPolytope,
    Ineq,
    coordinate_bounds,
    dot,
    enumerate_vertices,
    intersect_all,
    is_empty,
    is_valid,
    lp_max,
    solve_lp,
)
from .proofs import BRANCH, CUT, LEAF, BCNode, BCProofTree, CPProof, verify_bc_tree, verify_steps


class TransformError(ValueError):
    """Precondition of a transformation failed (with an optional witness point)."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class FaceSpec:
    """Face ``F = C and {<a, x> = b}`` of a carrier, given by a valid ``<a, x> <= b``."""

    face_ineq: Ineq

    def face_of(self, C: HPolytope) -> HPolytope:
        h = self.face_ineq
        return C.with_ineqs([h, h.negated()])


@dataclass(frozen=True)
class Rotation:
    lam: Fraction
    rotated: Ineq


def _rotate(h: Ineq, face: Ineq, lam: Fraction) -> Ineq:
    return Ineq(tuple(x + lam * y for x, y in zip(h.a, face.a)), h.b + lam * face.b)


def rotation_multiplier(C: HPolytope, face: FaceSpec, target: Ineq) -> Fraction:
    """Smallest ``lam >= 0`` making the rotated target valid on ``C`` (vertex formula)."""
    a, b = face.face_ineq.a, face.face_ineq.b
    lam = Fraction(0)
    for x in enumerate_vertices(C):
        slack = b - dot(a, x)
        if slack > 0:
            r = (target.value(x) - target.b) / slack
            if r > lam:
                lam = r
    return lam


def rotate_valid_on_face(C: HPolytope, face: FaceSpec, target: Ineq) -> Rotation:
    """Rotate ``target`` (valid on the face) about the face hyperplane until valid on ``C``."""
    fi = face.face_ineq
    val, pt = lp_max(C, fi.a)
    if val is not None and val > fi.b:
        raise TransformError(f"face inequality {fi} is not valid for the carrier", pt)
    val, pt = lp_max(face.face_of(C), target.a)
    if val is not None and val > target.b:
        raise TransformError(f"target {target} is not valid on the face", pt)
    lam = rotation_multiplier(C, face, target)
    rotated = _rotate(target, fi, lam)
    if not is_valid(C, rotated):
        raise AssertionError("rotated inequality is not valid on the carrier")
    return Rotation(lam, rotated)


def lift_cp_proof(C: HPolytope, face: FaceSpec, proof_on_F: CPProof,
                  pattern: Sequence[bool]) -> CPProof:
    """Lift a proof with base ``F`` to base ``C``; step ``k`` becomes a rotation of step ``k``."""
    F = face.face_of(C)
    verdict = verify_steps(F, proof_on_F.steps, proof_on_F.target, pattern)
    if not verdict:
        raise TransformError(f"proof on the face does not verify: {verdict}", verdict.witness)
    cur = C
    steps = []
    for D, h in proof_on_F.steps:
        lam = Fraction(0)
        for Q in D.pieces:
            R = intersect_all(cur, Q)
            if is_empty(R):
                continue
            lam = max(lam, rotation_multiplier(R, face, h))
        lifted = _rotate(h, face.face_ineq, lam)
        steps.append((D, lifted))
        cur = cur.with_ineqs([lifted])
    target = rotate_valid_on_face(cur, face, proof_on_F.target).rotated
    return CPProof(steps, target)


# -- branch-and-cut trees to cutting-plane proofs ------------------------------------

def _piece_face(R: HPolytope, D: Disjunction, j: int) -> FaceSpec | None | str:
    """Face inequality describing ``R`` cut with piece ``j`` of a variable disjunction.

    Returns ``"empty"`` for an empty piece and None when the piece contains ``R``.
    """
    i, K = variable_index(D)
    Q = D.pieces[j]
    if is_empty(intersect_all(R, Q)):
        return "empty"
    if all(is_valid(R, h) for h in Q.ineqs):
        return None
    n = R.dim
    e = [0] * n
    e[i - 1] = 1
    lo, hi = coordinate_bounds(R)[i - 1]
    if j == 0 and lo == K:
        return FaceSpec(Ineq([-v for v in e], -K))
    if j == 1 and hi == K + 1:
        return FaceSpec(Ineq(e, K + 1))
    raise TransformError(f"piece {j} of {D.label} is not a face of the node relaxation")


def bc_to_cp(inst, tree: BCProofTree) -> CPProof:
    """Turn a verified BC tree over variable branchings on a 0/1 polytope into a CP proof.

    Branching nodes are removed bottom-up: the children's proofs are lifted
    from the faces ``x_i = 0`` and ``x_i = 1`` one after the other, and the
    node's target is then derived as a cut from the branching disjunction.
    """
    n = inst.dim
    for lo, hi in coordinate_bounds(inst.C):
        if lo < 0 or hi > 1:
            raise TransformError("bc_to_cp needs a polytope inside the unit cube")
    verdict = verify_bc_tree(inst.C, tree, inst.pattern)
    if not verdict:
        raise TransformError(f"input tree does not verify: {verdict}", verdict.witness)
    target = tree.target

    def convert(node: BCNode, R: HPolytope) -> list:
        if node.kind == LEAF:
            return []
        if node.kind == CUT:
            return [(node.disjunction, node.cut)] + convert(node.children[0],
                                                            R.with_ineqs([node.cut]))
        D = node.disjunction
        if variable_index(D) is None:
            raise TransformError(f"branching on {D.label} is not a variable disjunction")
        cur = R
        steps = []
        for j, (Q, child) in enumerate(zip(D.pieces, node.children)):
            face = _piece_face(R, D, j)
            if face == "empty":
                continue
            sub = convert(child, intersect_all(R, Q))
            if face is None:
                lifted = sub  # the piece is the whole node
            else:
                lifted = list(lift_cp_proof(cur, face, CPProof(sub, target), inst.pattern).steps)
            steps += lifted
            cur = cur.with_ineqs([h for _, h in lifted])
        if not is_valid(cur, target):
            steps.append((D, target))
        return steps

    proof = CPProof(convert(tree.root, inst.C), target)
    verdict = verify_steps(inst.C, proof.steps, proof.target, inst.pattern)
    if not verdict:
        raise AssertionError(f"bc_to_cp produced an invalid proof: {verdict}")
    return proof


# -- simulating a cutting-plane proof by branch and bound ----------------------------

def cp_to_bb(inst, proof: CPProof, max_nodes: int = 200000) -> BCProofTree:
    """Branch-only tree proving the target of ``proof`` by simulating its cuts.

    For each prefix ``C_i`` of the proof, the node with the largest LP bound
    (oldest on ties) is split by the earliest stored disjunction whose cut
    its LP vertex violates, until no node beats ``max{c x : x in C_i}``.
    """
    verdict = verify_steps(inst.C, proof.steps, proof.target, inst.pattern)
    if not verdict:
        raise TransformError(f"input proof does not verify: {verdict}", verdict.witness)
    c = inst.objective
    counter = itertools.count()

    def make(region):
        lp = solve_lp(region, c)
        node = BCNode()
        if lp.infeasible:
            return [next(counter), region, node, None, None]
        return [next(counter), region, node, lp.value, lp.point]

    root = make(inst.C)
    open_nodes = [root]
    R = inst.C
    total = 1
    for i, (_, h) in enumerate(proof.steps, start=1):
        R = R.with_ineqs([h])
        z_cp, _ = lp_max(R, c)
        while True:
            live = [nd for nd in open_nodes if nd[3] is not None]
            if not live:
                break
            top = max(live, key=lambda nd: (nd[3], -nd[0]))
            if z_cp is not None and top[3] <= z_cp:
                break
            v = top[4]
            j = next((k for k, (_, hk) in enumerate(proof.steps[:i]) if not hk.holds(v)), None)
            if j is None:
                raise AssertionError("LP vertex outside C_i violates none of the cuts")
            D = proof.steps[j][0]
            open_nodes.remove(top)
            kids = [make(intersect_all(top[1], Q)) for Q in D.pieces]
            top[2].kind, top[2].disjunction = BRANCH, D
            top[2].children = [k[2] for k in kids]
            open_nodes.extend(kids)
            total += len(kids)
            if total > max_nodes:
                raise TransformError(f"simulation exceeded {max_nodes} nodes")
    return BCProofTree(root[2], proof.target)


def size_bound(proof: CPProof, n: int) -> int:
    """``(M K)^(n+1)`` with ``M`` the largest piece count and ``K`` the proof length."""
    from .disjunctions import complexity

    if not proof.steps:
        return 1
    M = max(complexity(D) for D, _ in proof.steps)
    return (M * len(proof.steps)) ** (n + 1)
