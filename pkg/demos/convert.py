"""Turning a branch-and-cut tree into a cutting-plane proof and back.

Run: python3 demos/convert.py
"""

from dlab.engine import default_config, run_bc
from dlab.instances import random_01_polytope
from dlab.proofs import proof_size, verify
from dlab.transforms import bc_to_cp, cp_to_bb

inst = random_01_polytope(5, 5, 1)
print(f"{inst.name}: integer optimum {inst.claimed_bound}")
tree = run_bc(inst, default_config(inst), "rounds(1)").proof
print(f"branch-and-cut tree: size {proof_size(tree)}, {verify(inst, tree)}")
cp = bc_to_cp(inst, tree)
print(f"as cutting planes: {proof_size(cp)} cuts, {verify(inst, cp)}")
for D, h in cp.steps:
    print(f"  {D.label}: {h}")
back = cp_to_bb(inst, cp)
print(f"simulated by pure branching: size {proof_size(back)}, {verify(inst, back)}")
