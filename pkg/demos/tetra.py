"""A tall thin tetrahedron: two branchings always suffice, cuts need more as it grows.

Run: python3 demos/tetra.py   (the h = 64 line takes several seconds)
"""

from fractions import Fraction

from dlab.disjunctions import variable_disjunction
from dlab.engine import Stop, default_config, run_bb, run_cp
from dlab.instances import gen_tetra_h
from dlab.proofs import proof_size

for h in (4, 16, 64):
    inst = gen_tetra_h(h)
    order = (variable_disjunction(1, 0, 3), variable_disjunction(2, 0, 3))
    bb = run_bb(inst, default_config(inst, branch_rule="fixed-order", branch_order=order,
                                     stop=Stop.prove_bound(0)))
    gamma = Fraction(h + 1, 2)
    cp = run_cp(inst, default_config(inst, max_iters=500, stop=Stop.prove_bound(gamma)))
    print(f"h={h}: branch and bound {proof_size(bb.proof) + 1} nodes; "
          f"{cp.iterations} cuts to push the apex below {gamma}")
