"""JSON file formats for instances and proofs; rationals travel as "p/q"."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd
from pathlib import Path

from .disjunctions import Disjunction
from .instances import Instance
from .kernel import HPolytope, Ineq
from .proofs import BCNode, BCProofTree, CPProof

VERSION = 1
_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class FormatError(ValueError):
    pass


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    """Read ``"p/q"`` (lowest terms, ``q > 0``) or a plain integer."""
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    m = _RAT_RE.match(s) if isinstance(s, str) else None
    if not m:
        raise FormatError(f"malformed rational {s!r}")
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) else 1
    if q == 0 or gcd(p, q) != 1:
        raise FormatError(f"rational {s!r} is not in lowest terms")
    return Fraction(p, q)


def ineq_to_json(h: Ineq) -> dict:
    return {"a": [rat(v) for v in h.a], "b": rat(h.b)}


def ineq_from_json(d: dict, n: int | None = None) -> Ineq:
    try:
        h = Ineq([parse_rat(v) for v in d["a"]], parse_rat(d["b"]))
    except (KeyError, TypeError):
        raise FormatError(f"malformed inequality {d!r}") from None
    if n is not None and h.dim != n:
        raise FormatError(f"inequality has dimension {h.dim}, expected {n}")
    return h


def polytope_to_json(P: HPolytope) -> list:
    return [ineq_to_json(h) for h in P.ineqs]


def instance_to_json(inst: Instance) -> dict:
    return {
        "version": VERSION,
        "name": inst.name,
        "dim": inst.dim,
        "ineqs": polytope_to_json(inst.C),
        "objective": [rat(v) for v in inst.objective],
        "integrality": list(inst.pattern),
        "claimed_bound": None if inst.claimed_bound is None else rat(inst.claimed_bound),
    }


def _check_version(d: dict) -> None:
    if not isinstance(d, dict) or d.get("version") != VERSION:
        raise FormatError(f"unsupported or missing version (expected {VERSION})")


def instance_from_json(d: dict) -> Instance:
    _check_version(d)
    try:
        n = int(d["dim"])
        C = HPolytope(n, [ineq_from_json(h, n) for h in d["ineqs"]])
        c = [parse_rat(v) for v in d["objective"]]
        pattern = [bool(p) for p in d["integrality"]]
        cb = d.get("claimed_bound")
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed instance: missing {exc}") from None
    if len(c) != n or len(pattern) != n:
        raise FormatError("objective or integrality length differs from dim")
    inst = Instance(C, c, pattern, None if cb is None else parse_rat(cb), d.get("name", ""))
    return inst.validate()


def disjunction_to_json(D: Disjunction) -> dict:
    return {"label": D.label, "pieces": [polytope_to_json(Q) for Q in D.pieces]}


def disjunction_from_json(d: dict, n: int) -> Disjunction:
    try:
        pieces = [HPolytope(n, [ineq_from_json(h, n) for h in piece]) for piece in d["pieces"]]
        return Disjunction(n, pieces, d["label"])
    except (KeyError, TypeError):
        raise FormatError(f"malformed disjunction {d!r}") from None


def cp_to_json(proof: CPProof) -> dict:
    return {
        "version": VERSION,
        "kind": "cp",
        "target": ineq_to_json(proof.target),
        "steps": [{"disjunction": disjunction_to_json(D), "cut": ineq_to_json(h)}
                  for D, h in proof.steps],
    }


def _node_to_json(node: BCNode) -> dict:
    d = {"kind": node.kind}
    if node.disjunction is not None:
        d["disjunction"] = disjunction_to_json(node.disjunction)
    if node.cut is not None:
        d["cut"] = ineq_to_json(node.cut)
    d["children"] = [_node_to_json(ch) for ch in node.children]
    return d


def bc_to_json(tree: BCProofTree) -> dict:
    return {"version": VERSION, "kind": "bc", "target": ineq_to_json(tree.target),
            "root": _node_to_json(tree.root)}


def _node_from_json(d: dict, n: int) -> BCNode:
    try:
        kind = d["kind"]
        D = disjunction_from_json(d["disjunction"], n) if "disjunction" in d else None
        cut = ineq_from_json(d["cut"], n) if "cut" in d else None
        kids = [_node_from_json(ch, n) for ch in d.get("children", [])]
    except (KeyError, TypeError):
        raise FormatError("malformed tree node") from None
    return BCNode(kind, D, cut, kids)


def proof_to_json(proof) -> dict:
    return cp_to_json(proof) if isinstance(proof, CPProof) else bc_to_json(proof)


def proof_from_json(d: dict, n: int | None = None):
    _check_version(d)
    try:
        target = ineq_from_json(d["target"], n)
        n = target.dim
        if d["kind"] == "cp":
            steps = [(disjunction_from_json(s["disjunction"], n), ineq_from_json(s["cut"], n))
                     for s in d["steps"]]
            return CPProof(steps, target)
        if d["kind"] == "bc":
            return BCProofTree(_node_from_json(d["root"], n), target)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed proof: {exc}") from None
    raise FormatError(f"unknown proof kind {d.get('kind')!r}")


def dump(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n", encoding="utf-8")


def load(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None


def save_instance(inst: Instance, path) -> None:
    dump(instance_to_json(inst), path)


def load_instance(path) -> Instance:
    return instance_from_json(load(path))


def save_proof(proof, path) -> None:
    dump(proof_to_json(proof), path)


def load_proof(path, n: int | None = None):
    return proof_from_json(load(path), n)
