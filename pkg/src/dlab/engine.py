"""Cutting-plane and tree-search (BB, BC) algorithms over a disjunction family.

Every run returns a proof object that the verifiers in ``proofs`` accept,
plus a per-iteration trace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Sequence

from .cuts import block_cg_cut, cglp_separate
from .disjunctions import (
    Disjunction,
    DisjunctionFamily,
    candidate_disjunctions,
    fractional_coords,
    is_lattice_point,
    variable_disjunction,
)
from .instances import Instance
from .kernel import HPolytope, Ineq, empty_ineq, intersect_all, solve_lp
from .proofs import BRANCH, CUT, BCNode, BCProofTree, CPProof

OPTIMAL = "OPTIMAL"
INFEASIBLE = "INFEASIBLE"
NO_CUTTING_PLANE = "NO_CUTTING_PLANE"
NO_DISJUNCTION_FOUND = "NO_DISJUNCTION_FOUND"
ITERATION_CAP = "ITERATION_CAP"
BOUND_PROVED = "BOUND_PROVED"

NODE_SELECT = ("best-bound", "dfs", "fifo")
BRANCH_RULES = ("most-fractional", "first-fractional", "fixed-order")
CUT_RULES = ("cglp-max-violation", "cg-objective")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Stop:
    """``optimality``, ``prove-bound`` (with ``value`` = gamma) or ``epsilon`` (``value`` = eps)."""

    kind: str = "optimality"
    value: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("optimality", "prove-bound", "epsilon"):
            raise ConfigError(f"unknown stop rule {self.kind!r}")
        if self.kind != "optimality":
            if self.value is None:
                raise ConfigError(f"stop rule {self.kind} needs a value")
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def prove_bound(cls, gamma) -> "Stop":
        return cls("prove-bound", gamma)

    @classmethod
    def epsilon(cls, eps) -> "Stop":
        return cls("epsilon", eps)


@dataclass(frozen=True)
class RunConfig:
    family: DisjunctionFamily
    node_select: str = "best-bound"
    branch_rule: str = "most-fractional"
    cut_rule: str = "cglp-max-violation"
    max_iters: int = 1000
    stop: Stop = field(default_factory=Stop)
    branch_order: tuple[Disjunction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branch_order", tuple(self.branch_order))
        if self.node_select not in NODE_SELECT:
            raise ConfigError(f"unknown node selection {self.node_select!r}")
        if self.branch_rule not in BRANCH_RULES:
            raise ConfigError(f"unknown branching rule {self.branch_rule!r}")
        if self.cut_rule not in CUT_RULES:
            raise ConfigError(f"unknown cut rule {self.cut_rule!r}")
        if self.max_iters < 1:
            raise ConfigError("max_iters must be at least 1")


@dataclass(frozen=True)
class RunResult:
    status: str
    best_point: tuple | None
    bound: Fraction | None
    iterations: int
    proof: object
    trace: tuple = ()


def default_config(inst: Instance, **kw) -> RunConfig:
    kw.setdefault("family", DisjunctionFamily.variable(inst.pattern))
    return RunConfig(**kw)


def _check(inst: Instance, cfg: RunConfig) -> None:
    if not any(inst.pattern):
        raise ConfigError("instance has no integral coordinate")
    if cfg.family.dim != inst.dim or tuple(cfg.family.pattern) != tuple(inst.pattern):
        raise ConfigError("family pattern differs from the instance pattern")


# -- choices ------------------------------------------------------------------

def find_cut(inst: Instance, cfg: RunConfig, P: HPolytope, x) -> tuple[Disjunction, Ineq] | None:
    """A family member and a cut derived from it that separates ``x`` from ``P``."""
    if cfg.cut_rule == "cg-objective":
        for D in candidate_disjunctions(cfg.family, P, x):
            cut = block_cg_cut(P, D, x, inst.objective, inst.pattern)
            if cut is not None:
                return D, cut
        return None
    best = None
    for D in candidate_disjunctions(cfg.family, P, x):
        cut, depth = cglp_separate(P, D, x)
        if cut is not None and (best is None or depth > best[2]):
            best = (D, cut, depth)
    return None if best is None else best[:2]


def choose_branch(inst: Instance, cfg: RunConfig, P: HPolytope, x) -> Disjunction | None:
    n = inst.dim
    if cfg.branch_rule == "fixed-order":
        for D in cfg.branch_order:
            if not D.contains(x):
                return D
    if cfg.branch_rule == "most-fractional" and cfg.family.kind == "variable":
        frac = fractional_coords(x, inst.pattern)
        if not frac:
            return None

        def dist(i):
            f = x[i] - floor(x[i])
            return min(f, 1 - f)

        i = max(frac, key=lambda i: (dist(i), -i))
        return variable_disjunction(i + 1, floor(x[i]), n)
    return next(candidate_disjunctions(cfg.family, P, x), None)


# -- cutting planes -------------------------------------------------------------

def run_cp(inst: Instance, cfg: RunConfig) -> RunResult:
    _check(inst, cfg)
    c = inst.objective
    P = inst.C
    steps: list[tuple[Disjunction, Ineq]] = []
    trace = []
    gamma = cfg.stop.value if cfg.stop.kind == "prove-bound" else None
    if cfg.stop.kind == "epsilon":
        if inst.claimed_bound is None:
            raise ConfigError("epsilon stopping needs a claimed bound")
        gamma = inst.claimed_bound + cfg.stop.value
    while True:
        lp = solve_lp(P, c)
        if lp.infeasible:
            return RunResult(INFEASIBLE, None, None, len(steps),
                             CPProof(steps, empty_ineq(inst.dim)), tuple(trace))
        x, value = lp.point, lp.value
        if is_lattice_point(x, inst.pattern):
            return RunResult(OPTIMAL, x, value, len(steps), CPProof(steps, Ineq(c, value)),
                             tuple(trace))
        if gamma is not None and value <= gamma:
            return RunResult(BOUND_PROVED, None, value, len(steps),
                             CPProof(steps, Ineq(c, gamma)), tuple(trace))
        if len(steps) >= cfg.max_iters:
            return RunResult(ITERATION_CAP, None, value, len(steps),
                             CPProof(steps, Ineq(c, value)), tuple(trace))
        found = find_cut(inst, cfg, P, x)
        if found is None:
            return RunResult(NO_CUTTING_PLANE, None, value, len(steps),
                             CPProof(steps, Ineq(c, value)), tuple(trace))
        D, cut = found
        trace.append({"iter": len(steps) + 1, "bound": value, "point": x,
                      "disjunction": D.label, "cut": str(cut)})
        steps.append((D, cut))
        P = P.with_ineqs([cut])


# -- branch and bound / branch and cut -------------------------------------------

@dataclass
class _Node:
    id: int
    region: HPolytope
    tree: BCNode
    value: Fraction | None  # None when the region is empty
    point: tuple | None
    depth: int
    cuts: int = 0


def _rounds_rule(rule) -> int | None:
    """Cuts allowed per node before branching; None means unlimited."""
    if rule == "always-cut":
        return None
    if rule == "always-branch":
        return 0
    if isinstance(rule, int):
        return rule
    if isinstance(rule, str) and rule.startswith("rounds(") and rule.endswith(")"):
        return int(rule[7:-1])
    if isinstance(rule, tuple) and rule[0] == "rounds":
        return int(rule[1])
    raise ConfigError(f"unknown cut-or-branch rule {rule!r}")


def run_bb(inst: Instance, cfg: RunConfig) -> RunResult:
    return _tree_search(inst, cfg, 0)


def run_bc(inst: Instance, cfg: RunConfig, cut_or_branch="rounds(1)") -> RunResult:
    return _tree_search(inst, cfg, _rounds_rule(cut_or_branch))


def _tree_search(inst: Instance, cfg: RunConfig, max_cuts: int | None) -> RunResult:
    """Branch and bound, with up to ``max_cuts`` cutting rounds per node (None: unlimited).

    Node LPs are solved when a node is created; the prune test against the
    incumbent happens when the node is selected.
    """
    _check(inst, cfg)
    c = inst.objective
    counter = itertools.count()
    stop = cfg.stop
    gamma = stop.value if stop.kind == "prove-bound" else None
    eps = stop.value if stop.kind == "epsilon" else Fraction(0)

    def make(region, depth, cuts=0) -> _Node:
        lp = solve_lp(region, c)
        if lp.infeasible:
            return _Node(next(counter), region, BCNode(), None, None, depth, cuts)
        return _Node(next(counter), region, BCNode(), lp.value, lp.point, depth, cuts)

    root = make(inst.C, 0)
    open_nodes = [root]
    LB: Fraction | None = None
    best = None
    leaf_bound: Fraction | None = None  # max LP value over closed feasible leaves
    trace = []
    iters = 0
    status = None

    def pick() -> _Node:
        if cfg.node_select == "fifo":
            k = 0
        elif cfg.node_select == "dfs":
            k = len(open_nodes) - 1
        else:
            k = max(range(len(open_nodes)),
                    key=lambda j: (open_nodes[j].value, -open_nodes[j].id))
        return open_nodes.pop(k)

    def close(node):
        nonlocal leaf_bound
        if node.value is not None and (leaf_bound is None or node.value > leaf_bound):
            leaf_bound = node.value

    while open_nodes:
        if iters >= cfg.max_iters:
            status = ITERATION_CAP
            break
        # empty nodes never need an iteration
        empties = [nd for nd in open_nodes if nd.value is None]
        if empties:
            open_nodes = [nd for nd in open_nodes if nd.value is not None]
            continue
        node = pick()
        iters += 1
        x, value = node.point, node.value
        threshold = LB
        if gamma is not None:
            threshold = gamma if threshold is None else max(threshold, gamma)
        if threshold is not None and value <= threshold + (eps if LB is not None else 0):
            trace.append({"iter": iters, "node": node.id, "bound": value, "action": "prune"})
            close(node)
            continue
        if is_lattice_point(x, inst.pattern):
            LB, best = value, x
            trace.append({"iter": iters, "node": node.id, "bound": value, "action": "incumbent"})
            close(node)
            continue
        if max_cuts is None or node.cuts < max_cuts:
            found = find_cut(inst, cfg, node.region, x)
            if found is not None:
                D, cut = found
                child = make(node.region.with_ineqs([cut]), node.depth + 1, node.cuts + 1)
                node.tree.kind, node.tree.disjunction, node.tree.cut = CUT, D, cut
                node.tree.children = [child.tree]
                open_nodes.append(child)
                trace.append({"iter": iters, "node": node.id, "bound": value, "action": "cut",
                              "disjunction": D.label, "cut": str(cut)})
                continue
            if max_cuts is None:
                status = NO_CUTTING_PLANE
                open_nodes.append(node)
                break
        D = choose_branch(inst, cfg, node.region, x)
        if D is None:
            status = NO_DISJUNCTION_FOUND
            open_nodes.append(node)
            break
        kids = [make(intersect_all(node.region, Q), node.depth + 1) for Q in D.pieces]
        node.tree.kind, node.tree.disjunction = BRANCH, D
        node.tree.children = [k.tree for k in kids]
        open_nodes.extend(kids)
        trace.append({"iter": iters, "node": node.id, "bound": value, "action": "branch",
                      "disjunction": D.label})

    # dual bound: every leaf is closed below it, open leaves included
    bound = leaf_bound
    for nd in open_nodes:
        if nd.value is not None and (bound is None or nd.value > bound):
            bound = nd.value
    if LB is not None and (bound is None or LB > bound):
        bound = LB
    if status is None:
        if bound is None:
            status = INFEASIBLE
        elif LB is not None and bound == LB:
            status = OPTIMAL
        else:
            status = BOUND_PROVED
    if bound is not None and gamma is not None and bound <= gamma and status != ITERATION_CAP:
        bound = gamma
    target = empty_ineq(inst.dim) if bound is None else Ineq(c, bound)
    return RunResult(status, best, bound, iters, BCProofTree(root.tree, target), tuple(trace))


# -- exhaustive minimum ------------------------------------------------------------

def min_bb_tree_size(inst: Instance, gamma, limit: int | None = None) -> int:
    """Smallest BB proof of ``<c, x> <= gamma`` over variable disjunctions on a 0/1 polytope.

    Memoised over partial fixings (coordinates fixed to 0, coordinates fixed
    to 1). A state is a leaf when its LP bound is at most ``gamma`` or it is
    empty; otherwise it costs 2 plus its two children for the best coordinate.
    """
    from .kernel.polytope import _guard, coordinate_bounds

    n = inst.dim
    _guard(n)
    gamma = Fraction(gamma)
    for lo, hi in coordinate_bounds(inst.C):
        if lo < 0 or hi > 1:
            raise ConfigError("min_bb_tree_size needs a 0/1 polytope")
    c = inst.objective
    inf = float("inf")

    def region(zeros: int, ones: int) -> HPolytope:
        extra = []
        for i in range(n):
            e = [0] * n
            if zeros >> i & 1:
                e[i] = 1
                extra.append(Ineq(e, 0))
            elif ones >> i & 1:
                e[i] = -1
                extra.append(Ineq(e, -1))
        return inst.C.with_ineqs(extra)

    @lru_cache(maxsize=None)
    def best(zeros: int, ones: int):
        lp = solve_lp(region(zeros, ones), c)
        if lp.infeasible or lp.value <= gamma:
            return 0
        out = inf
        for i in range(n):
            bit = 1 << i
            if (zeros | ones) & bit:
                continue
            left = best(zeros | bit, ones)
            if 2 + left >= out:
                continue
            out = min(out, 2 + left + best(zeros, ones | bit))
        return out

    res = best(0, 0)
    if res == inf:
        raise ConfigError("gamma is not a valid bound on the integer points")
    return int(res)
