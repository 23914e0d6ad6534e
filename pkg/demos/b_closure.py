"""The quadrilateral B: two branchings settle it, closures creep toward (1, 1) forever.

Run: python3 demos/b_closure.py
"""

from dlab.closures import iterated_closure
from dlab.disjunctions import DisjunctionFamily, variable_disjunction
from dlab.engine import Stop, default_config, run_bb, run_cp
from dlab.instances import gen_b_cross_cube
from dlab.kernel import enumerate_vertices, lp_max
from dlab.proofs import proof_size

inst = gen_b_cross_cube(2)
order = (variable_disjunction(1, 1, 2), variable_disjunction(2, 0, 2))
bb = run_bb(inst, default_config(inst, branch_rule="fixed-order", branch_order=order,
                                 stop=Stop.prove_bound(0)))
print(f"branching on x1 then x2: {bb.status}, {proof_size(bb.proof) + 1} nodes")

chain = iterated_closure(inst.C, DisjunctionFamily.variable(inst.pattern), 6)
for r, P in enumerate(chain):
    val, _ = lp_max(P, inst.objective)
    moving = [v for v in enumerate_vertices(P) if v not in ((0, 0), (2, 2))]
    pts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in moving)
    print(f"closure round {r}: max x1 - x2 = {val}; vertices off the diagonal: {pts}")

cp = run_cp(inst, default_config(inst, max_iters=10))
print(f"cutting planes after {cp.iterations} cuts: {cp.status}, bound still {cp.bound}")
