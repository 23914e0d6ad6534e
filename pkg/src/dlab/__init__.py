"""Exact-arithmetic cutting-plane and branching proofs over disjunctions."""

from .closures import Exceeds, closure, iterated_closure, rank, sequential_convexify
from .cuts import block_cg_cut, cg_cut, cglp_cut, cglp_separate, is_derivable
from .disjunctions import (
    Disjunction,
    DisjunctionError,
    DisjunctionFamily,
    from_label,
    split_disjunction,
    variable_disjunction,
)
from .engine import (
    BOUND_PROVED,
    INFEASIBLE,
    ITERATION_CAP,
    NO_CUTTING_PLANE,
    NO_DISJUNCTION_FOUND,
    OPTIMAL,
    ConfigError,
    RunConfig,
    RunResult,
    Stop,
    default_config,
    min_bb_tree_size,
    run_bb,
    run_bc,
    run_cp,
)
from .instances import Instance, InstanceError
from .kernel import HPolytope, Ineq, ScaleLimitError
from .proofs import BCNode, BCProofTree, CPProof, Verdict, proof_size, verify
from .transforms import TransformError, bc_to_cp, cp_to_bb, lift_cp_proof, rotate_valid_on_face

__version__ = "0.1.0"
