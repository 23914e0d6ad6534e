"""Cutting-plane proofs and branch-and-cut proof trees, with exact LP verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, floor
from typing import Sequence

from .disjunctions import Disjunction, DisjunctionError, check_validity, from_label
from .kernel import HPolytope, Ineq, coordinate_bounds, intersect_all, lp_max

LEAF, CUT, BRANCH = "leaf", "cut", "branch"


@dataclass(frozen=True)
class CPProof:
    """Cuts ``H_1..H_N``, each stored with the disjunction it was derived from."""

    steps: tuple[tuple[Disjunction, Ineq], ...]
    target: Ineq

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((D, h) for D, h in self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def cuts(self) -> list[Ineq]:
        return [h for _, h in self.steps]


@dataclass
class BCNode:
    kind: str = LEAF
    disjunction: Disjunction | None = None
    cut: Ineq | None = None
    children: list["BCNode"] = field(default_factory=list)

    def count(self) -> int:
        return 1 + sum(ch.count() for ch in self.children)

    def walk(self, path=()):
        yield path, self
        for k, ch in enumerate(self.children):
            yield from ch.walk(path + (k,))

    def __eq__(self, other):
        if not isinstance(other, BCNode):
            return NotImplemented
        return (self.kind, self.disjunction, self.cut, self.children) == (
            other.kind, other.disjunction, other.cut, other.children)


@dataclass
class BCProofTree:
    root: BCNode
    target: Ineq

    def is_branching_only(self) -> bool:
        return all(node.kind != CUT for _, node in self.root.walk())


@dataclass(frozen=True)
class Verdict:
    ok: bool
    where: object = None  # step index (CP) or node path (BC)
    reason: str = ""
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ACCEPT"
        return f"REJECT at {self.where}: {self.reason}"


ACCEPT = Verdict(True)


def proof_size(proof) -> int:
    if isinstance(proof, CPProof):
        return len(proof.steps)
    return proof.root.count() - 1


def _bounds(C: HPolytope):
    try:
        return coordinate_bounds(C)
    except ValueError:
        return None


def disjunction_problem(D: Disjunction, n: int, pattern: Sequence[bool], C: HPolytope) -> str | None:
    """Why ``D`` is not an admissible disjunction for the lattice, or None if it is.

    Labelled variable and split disjunctions must rebuild to exactly their
    pieces (so swapped or edited pieces are caught); other disjunctions are
    checked for lattice coverage on the integer box of ``C``.
    """
    if D.dim != n:
        return "disjunction has the wrong dimension"
    try:
        rebuilt = from_label(D.label, n, pattern)
    except DisjunctionError as exc:
        return f"label {D.label!r} is not admissible: {exc}"
    if rebuilt is not None:
        if rebuilt.pieces != D.pieces:
            return f"pieces do not match label {D.label!r}"
        return None
    b = _bounds(C)
    if b is None:
        return None  # nothing to cover
    box = [(ceil(lo), floor(hi)) if p else (lo, hi) for p, (lo, hi) in zip(pattern, b)]
    if not check_validity(D, pattern, box):
        return f"disjunction {D.label!r} misses a lattice point of the box"
    return None


def _violation(R: HPolytope, h: Ineq):
    """LP witness that ``h`` fails on ``R``, or None when ``h`` is valid there."""
    val, pt = lp_max(R, h.a)
    if val is not None and val > h.b:
        return pt
    return None


def check_cut(R: HPolytope, D: Disjunction, cut: Ineq) -> tuple[int, tuple] | None:
    """First piece index (and witness) where ``cut`` fails on ``R`` cut with the piece."""
    for j, Q in enumerate(D.pieces):
        w = _violation(intersect_all(R, Q), cut)
        if w is not None:
            return j, w
    return None


def verify_steps(C: HPolytope, steps, target: Ineq, pattern: Sequence[bool]) -> Verdict:
    """Verify a cut sequence plus target starting from base ``C``."""
    n = C.dim
    if target.dim != n:
        return Verdict(False, "target", "target has the wrong dimension")
    R = C
    for k, (D, cut) in enumerate(steps):
        if cut.dim != n:
            return Verdict(False, k, "cut has the wrong dimension")
        why = disjunction_problem(D, n, pattern, C)
        if why:
            return Verdict(False, k, why)
        bad = check_cut(R, D, cut)
        if bad is not None:
            j, w = bad
            return Verdict(False, k, f"cut {cut} fails on piece {j} of {D.label}", w)
        R = R.with_ineqs([cut])
    w = _violation(R, target)
    if w is not None:
        return Verdict(False, "target", f"target {target} fails on the final relaxation", w)
    return ACCEPT


def verify_cp_proof(inst, proof: CPProof) -> Verdict:
    return verify_steps(inst.C, proof.steps, proof.target, inst.pattern)


def verify_bc_tree(C: HPolytope, tree: BCProofTree, pattern: Sequence[bool]) -> Verdict:
    n = C.dim
    target = tree.target
    if target.dim != n:
        return Verdict(False, (), "target has the wrong dimension")
    stack = [((), tree.root, C)]
    while stack:
        path, node, R = stack.pop()
        if node.kind == LEAF:
            if node.children:
                return Verdict(False, path, "leaf with children")
            w = _violation(R, target)
            if w is not None:
                return Verdict(False, path, f"target {target} fails at a leaf", w)
            continue
        D = node.disjunction
        if D is None:
            return Verdict(False, path, f"{node.kind} node without a disjunction")
        why = disjunction_problem(D, n, pattern, C)
        if why:
            return Verdict(False, path, why)
        if node.kind == CUT:
            if node.cut is None or len(node.children) != 1:
                return Verdict(False, path, "cutting node needs a cut and exactly one child")
            bad = check_cut(R, D, node.cut)
            if bad is not None:
                j, w = bad
                return Verdict(False, path, f"cut {node.cut} fails on piece {j} of {D.label}", w)
            stack.append((path + (0,), node.children[0], R.with_ineqs([node.cut])))
        elif node.kind == BRANCH:
            if len(node.children) != len(D.pieces):
                return Verdict(False, path, f"branching on {D.label} needs {len(D.pieces)} "
                                            f"children, found {len(node.children)}")
            for k in reversed(range(len(D.pieces))):
                stack.append((path + (k,), node.children[k], intersect_all(R, D.pieces[k])))
        else:
            return Verdict(False, path, f"unknown node kind {node.kind!r}")
    return ACCEPT


def verify_bc_proof(inst, tree: BCProofTree) -> Verdict:
    return verify_bc_tree(inst.C, tree, inst.pattern)


def verify(inst, proof) -> Verdict:
    if isinstance(proof, CPProof):
        return verify_cp_proof(inst, proof)
    return verify_bc_proof(inst, proof)


def leaf_regions(C: HPolytope, tree: BCProofTree) -> list[HPolytope]:
    """Polytopes represented by the leaves, in depth-first order."""
    out = []

    def rec(node, R):
        if node.kind == LEAF:
            out.append(R)
        elif node.kind == CUT:
            rec(node.children[0], R.with_ineqs([node.cut]))
        else:
            for Q, ch in zip(node.disjunction.pieces, node.children):
                rec(ch, intersect_all(R, Q))

    rec(tree.root, C)
    return out

