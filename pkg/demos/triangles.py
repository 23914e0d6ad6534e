"""Copies of a triangle: a handful of cuts against an exponential branching tree.

Run: python3 demos/triangles.py
"""

from fractions import Fraction

from dlab.engine import default_config, min_bb_tree_size, run_bb, run_cp
from dlab.instances import gen_k3_copies
from dlab.proofs import proof_size, verify
from dlab.transforms import cp_to_bb

for m in (1, 2, 3):
    inst = gen_k3_copies(m)
    cp = run_cp(inst, default_config(inst, cut_rule="cg-objective"))
    bb = run_bb(inst, default_config(inst))
    print(f"m={m}: LP bound {Fraction(3 * m, 2)}, integer optimum {m}")
    for step in cp.trace:
        print(f"  cut {step['iter']}: {step['cut']}  (from {step['disjunction']})")
    print(f"  cutting planes: {cp.status} after {cp.iterations} cuts, proof {verify(inst, cp.proof)}")
    print(f"  branch and bound: tree size {proof_size(bb.proof)}")
    if m <= 2:
        print(f"  smallest possible tree: {min_bb_tree_size(inst, m)}")
    sim = cp_to_bb(inst, cp.proof)
    print(f"  the cut proof simulated by branching: size {proof_size(sim)}")
