"""Command-line harness: ``dlab gen|solve|verify|transform|closure|rank|minbb|experiment``."""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction

from . import engine, serialization as io
from .closures import iterated_closure, rank
from .disjunctions import DisjunctionFamily, from_label
from .instances import (
    gen_b_cross_cube,
    gen_center_variant,
    gen_k3_copies,
    gen_km_copies_alpha,
    gen_reverse_split,
    gen_tetra_h,
    random_01_polytope,
)
from .kernel import Ineq, enumerate_vertices, lp_max
from .proofs import CPProof, proof_size, verify
from .transforms import bc_to_cp, cp_to_bb


class UsageError(ValueError):
    pass


def _rat(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed rational {s!r}") from None


def _ints(s: str) -> list[int]:
    return [int(v) for v in s.split(",") if v.strip()] if s else []


def _pairs(s: str) -> list[tuple[int, int]]:
    out = []
    for part in (s or "").split(","):
        if part.strip():
            u, v = part.split("-")
            out.append((int(u), int(v)))
    return out


def _family(spec: str, pattern) -> DisjunctionFamily:
    if spec == "variable":
        return DisjunctionFamily.variable(pattern)
    if spec.startswith("split:"):
        return DisjunctionFamily.split(pattern, int(spec[6:]))
    if spec == "split":
        return DisjunctionFamily.split(pattern)
    raise UsageError(f"unknown family {spec!r} (use variable or split:W)")


def _stop(spec: str) -> engine.Stop:
    if spec == "optimality":
        return engine.Stop()
    kind, _, val = spec.partition(":")
    if kind in ("prove-bound", "epsilon") and val:
        return engine.Stop(kind, _rat(val))
    raise UsageError(f"unknown stop rule {spec!r}")


def cmd_gen(args) -> int:
    k = args.kind
    if k == "k3copies":
        inst = gen_k3_copies(args.m)
    elif k == "center":
        inst = gen_center_variant(args.m, _ints(args.center_edges))
    elif k == "kmalpha":
        inst = gen_km_copies_alpha(args.m, _rat(args.alpha), _pairs(args.cross_edges))
    elif k == "bcube":
        inst = gen_b_cross_cube(args.n)
    elif k == "tetra":
        inst = gen_tetra_h(_rat(args.h))
    elif k == "revsplit":
        inst = gen_reverse_split(_rat(args.h))
    else:
        inst = random_01_polytope(args.seed, args.n, _rat(args.density))
    io.save_instance(inst, args.out)
    print(f"wrote {inst.name} (dim {inst.dim}, {len(inst.C.ineqs)} inequalities) to {args.out}")
    return 0


def cmd_solve(args) -> int:
    inst = io.load_instance(args.instance)
    order = []
    for lab in filter(None, (args.branch_order or "").split(";")):
        D = from_label(lab.strip(), inst.dim, inst.pattern)
        if D is None:
            raise UsageError(f"cannot parse disjunction label {lab!r}")
        order.append(D)
    cfg = engine.RunConfig(
        family=_family(args.family, inst.pattern),
        node_select=args.node_select,
        branch_rule=args.branch_rule,
        cut_rule=args.cut_rule,
        max_iters=args.max_iters,
        stop=_stop(args.stop),
        branch_order=tuple(order),
    )
    if args.method == "cp":
        res = engine.run_cp(inst, cfg)
    elif args.method == "bb":
        res = engine.run_bb(inst, cfg)
    else:
        res = engine.run_bc(inst, cfg, args.bc_rule)
    if args.proof:
        io.save_proof(res.proof, args.proof)
    bound = "-" if res.bound is None else res.bound
    print(f"status={res.status} bound={bound} iterations={res.iterations} "
          f"proof_size={proof_size(res.proof)}")
    if res.best_point is not None:
        print("point=(" + ", ".join(str(v) for v in res.best_point) + ")")
    return 0


def cmd_verify(args) -> int:
    inst = io.load_instance(args.instance)
    proof = io.load_proof(args.proof, inst.dim)
    verdict = verify(inst, proof)
    kind = "cp" if isinstance(proof, CPProof) else "bc"
    print(f"{verdict} ({kind} proof, size {proof_size(proof)}, target {proof.target})")
    if not verdict and verdict.witness is not None:
        print("witness=(" + ", ".join(str(v) for v in verdict.witness) + ")")
    return 0 if verdict else 1


def cmd_transform(args) -> int:
    inst = io.load_instance(args.instance)
    proof = io.load_proof(args.input, inst.dim)
    if args.direction == "bc2cp":
        if isinstance(proof, CPProof):
            raise UsageError("bc2cp expects a tree proof")
        out = bc_to_cp(inst, proof)
    else:
        if not isinstance(proof, CPProof):
            raise UsageError("cp2bb expects a cutting-plane proof")
        out = cp_to_bb(inst, proof)
    io.save_proof(out, args.out)
    print(f"wrote proof of size {proof_size(out)} (input size {proof_size(proof)}) to {args.out}")
    return 0


def cmd_closure(args) -> int:
    inst = io.load_instance(args.instance)
    chain = iterated_closure(inst.C, _family(args.family, inst.pattern), args.rounds)
    doc = {"version": io.VERSION, "rounds": []}
    rows = []
    for r, P in enumerate(chain):
        d = io.instance_to_json(inst)
        d["ineqs"] = io.polytope_to_json(P)
        d["name"] = f"{inst.name} closure round {r}"
        doc["rounds"].append(d)
        val, _ = lp_max(P, inst.objective)
        verts = enumerate_vertices(P)
        rows.append([r, "" if val is None else str(val),
                     " ".join("(" + ",".join(str(v) for v in x) + ")" for x in verts)])
        print(f"round {r}: bound {val}")
    io.dump(doc, args.out)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["round", "bound", "vertices"])
            w.writerows(rows)
    return 0


def _parse_ineq(spec: str, n: int) -> Ineq:
    a, sep, b = spec.partition(";")
    if not sep:
        raise UsageError('inequality must look like "a1,a2,...;b"')
    coeffs = [_rat(v) for v in a.split(",")]
    if len(coeffs) != n:
        raise UsageError(f"inequality has {len(coeffs)} coefficients, instance has dim {n}")
    return Ineq(coeffs, _rat(b))


def cmd_rank(args) -> int:
    inst = io.load_instance(args.instance)
    target = _parse_ineq(args.ineq, inst.dim)
    r = rank(inst.C, _family(args.family, inst.pattern), target, args.cap)
    print(str(r))
    return 0


def cmd_minbb(args) -> int:
    inst = io.load_instance(args.instance)
    print(engine.min_bb_tree_size(inst, _rat(args.gamma)))
    return 0


def cmd_experiment(args) -> int:
    from .experiment import write_table1

    rows = write_table1(args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("kind", choices=["k3copies", "center", "kmalpha", "bcube", "tetra",
                                    "revsplit", "rand01"])
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--h", default="4")
    g.add_argument("--alpha", default="0")
    g.add_argument("--center-edges", default="")
    g.add_argument("--cross-edges", default="")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--density", default="1/2")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run a CP, BB or BC algorithm")
    s.add_argument("method", choices=["cp", "bb", "bc"])
    s.add_argument("--instance", required=True)
    s.add_argument("--family", default="variable")
    s.add_argument("--node-select", default="best-bound", choices=engine.NODE_SELECT)
    s.add_argument("--branch-rule", default="most-fractional", choices=engine.BRANCH_RULES)
    s.add_argument("--branch-order", default="", help='labels separated by ";"')
    s.add_argument("--cut-rule", default="cglp-max-violation", choices=engine.CUT_RULES)
    s.add_argument("--stop", default="optimality",
                   help="optimality | prove-bound:G | epsilon:E")
    s.add_argument("--bc-rule", default="rounds(1)",
                   help="always-cut | always-branch | rounds(r)")
    s.add_argument("--max-iters", type=int, default=1000)
    s.add_argument("--proof")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="verify a proof file against an instance")
    v.add_argument("--instance", required=True)
    v.add_argument("--proof", required=True)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transform", help="convert between proof kinds")
    t.add_argument("direction", choices=["bc2cp", "cp2bb"])
    t.add_argument("--instance", required=True)
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--out", required=True)
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("closure", help="iterated disjunctive closure")
    c.add_argument("--instance", required=True)
    c.add_argument("--family", default="variable")
    c.add_argument("--rounds", type=int, default=1)
    c.add_argument("--out", required=True)
    c.add_argument("--csv")
    c.set_defaults(func=cmd_closure)

    r = sub.add_parser("rank", help="closure rank of an inequality")
    r.add_argument("--instance", required=True)
    r.add_argument("--ineq", required=True, help='"a1,a2,...;b" for <a,x> <= b')
    r.add_argument("--family", default="variable")
    r.add_argument("--cap", type=int, default=10)
    r.set_defaults(func=cmd_rank)

    mb = sub.add_parser("minbb", help="exact minimum BB proof size (0/1 instances)")
    mb.add_argument("--instance", required=True)
    mb.add_argument("--gamma", required=True)
    mb.set_defaults(func=cmd_minbb)

    e = sub.add_parser("experiment", help="reproduce the separation table")
    e.add_argument("name", choices=["table1"])
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        # every domain error (format, scale guard, precondition) derives from ValueError
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
