"""Desk-scale reproduction of the BB versus CP separations as one CSV table."""

from __future__ import annotations

import csv
import time
from fractions import Fraction

from .closures import iterated_closure
from .disjunctions import DisjunctionFamily, variable_disjunction
from .engine import Stop, default_config, min_bb_tree_size, run_bb, run_cp
from .instances import gen_b_cross_cube, gen_k3_copies, gen_tetra_h
from .kernel import lp_max
from .proofs import proof_size
from .transforms import cp_to_bb, size_bound

HEADER_COMMENT = "# dlab table1 schema v1"
COLUMNS = ["instance", "params", "family", "method", "measure", "value",
           "bound_achieved", "status", "wall_ms"]


def _row(instance, params, method, measure, value, bound, status, t0):
    return {
        "instance": instance,
        "params": params,
        "family": "variable",
        "method": method,
        "measure": measure,
        "value": str(value),
        "bound_achieved": "" if bound is None else str(Fraction(bound)),
        "status": status,
        "wall_ms": str(round((time.perf_counter() - t0) * 1000)),
    }


def _k3_rows(m):
    inst = gen_k3_copies(m)
    p = f"m={m}"
    out = []
    t = time.perf_counter()
    r = run_cp(inst, default_config(inst, cut_rule="cg-objective"))
    out.append(_row("k3copies", p, "cp", "iterations", r.iterations, r.bound, r.status, t))
    t = time.perf_counter()
    tree = cp_to_bb(inst, r.proof)
    out.append(_row("k3copies", p + f";size_cap={size_bound(r.proof, inst.dim)}", "cp2bb",
                    "tree_size", proof_size(tree), tree.target.b, "SIMULATED", t))
    t = time.perf_counter()
    b = run_bb(inst, default_config(inst))
    out.append(_row("k3copies", p, "bb", "tree_size", proof_size(b.proof), b.bound, b.status, t))
    if m <= 2:
        t = time.perf_counter()
        out.append(_row("k3copies", p, "minbb", "tree_size", min_bb_tree_size(inst, m), m,
                        "OPTIMAL", t))
    return out


def _bcube_rows():
    inst = gen_b_cross_cube(2)
    order = (variable_disjunction(1, 1, 2), variable_disjunction(2, 0, 2))
    out = []
    t = time.perf_counter()
    r = run_bb(inst, default_config(inst, branch_rule="fixed-order", branch_order=order,
                                    stop=Stop.prove_bound(0)))
    out.append(_row("bcube", "n=2", "bb", "tree_size", proof_size(r.proof), r.bound, r.status, t))
    t = time.perf_counter()
    r = run_cp(inst, default_config(inst, max_iters=12))
    out.append(_row("bcube", "n=2;max_iters=12", "cp", "iterations", r.iterations, r.bound,
                    r.status, t))
    t = time.perf_counter()
    chain = iterated_closure(inst.C, DisjunctionFamily.variable(inst.pattern), 8)
    val, _ = lp_max(chain[-1], inst.objective)
    out.append(_row("bcube", "n=2;rounds=8", "closure", "closure_rounds", 8, val,
                    "POSITIVE" if val > 0 else "ZERO", t))
    return out


def _tetra_rows(h):
    inst = gen_tetra_h(h)
    order = (variable_disjunction(1, 0, 3), variable_disjunction(2, 0, 3))
    out = []
    t = time.perf_counter()
    r = run_bb(inst, default_config(inst, branch_rule="fixed-order", branch_order=order,
                                    stop=Stop.prove_bound(0)))
    out.append(_row("tetra", f"h={h}", "bb", "tree_size", proof_size(r.proof), r.bound,
                    r.status, t))
    gamma = Fraction(h + 1, 2)
    t = time.perf_counter()
    r = run_cp(inst, default_config(inst, max_iters=500, stop=Stop.prove_bound(gamma)))
    out.append(_row("tetra", f"h={h};gamma={gamma}", "cp", "iterations", r.iterations,
                    r.proof.target.b, r.status, t))
    return out


def table1_rows() -> list[dict]:
    rows = []
    for m in (1, 2, 3, 4):
        rows += _k3_rows(m)
    rows += _bcube_rows()
    for h in (4, 16, 64):
        rows += _tetra_rows(h)
    rows.sort(key=lambda r: (r["instance"], r["params"], r["method"], r["measure"]))
    return rows


def write_table1(path) -> list[dict]:
    rows = table1_rows()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(HEADER_COMMENT + "\n")
        w = csv.DictWriter(fh, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return rows
