import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from corpus import cp_corpus, tree_corpus
from dlab import serialization as io
from dlab.instances import gen_b_cross_cube, gen_km_copies_alpha, gen_tetra_h
from dlab.proofs import verify


@given(st.fractions())
def test_rational_round_trip(x):
    assert io.parse_rat(io.rat(x)) == x


@pytest.mark.parametrize("bad", ["1/0", "2/4", "1.5", "", "1/-2", "abc", None, True])
def test_malformed_rationals(bad):
    with pytest.raises(io.FormatError):
        io.parse_rat(bad)


def test_integer_forms_are_accepted():
    assert io.parse_rat("7") == 7 and io.parse_rat(-3) == -3 and io.parse_rat("-1/3") == F(-1, 3)


@pytest.mark.parametrize("make", [lambda: gen_b_cross_cube(2), lambda: gen_tetra_h(F(7, 2))])
def test_instance_round_trip(make, tmp_path):
    inst = make()
    io.save_instance(inst, tmp_path / "i.json")
    assert io.load_instance(tmp_path / "i.json") == inst


def test_instance_file_layout():
    d = io.instance_to_json(gen_b_cross_cube(2))
    assert d["version"] == 1 and d["claimed_bound"] == "0/1"
    assert all("/" in v for h in d["ineqs"] for v in h["a"])


def test_proof_round_trip(tmp_path):
    for inst, proof in list(cp_corpus())[:8] + list(tree_corpus())[:12]:
        io.save_proof(proof, tmp_path / "p.json")
        back = io.load_proof(tmp_path / "p.json", inst.dim)
        assert back == proof
        assert verify(inst, back)


def test_version_and_shape_errors(tmp_path):
    d = io.instance_to_json(gen_b_cross_cube(2))
    with pytest.raises(io.FormatError):
        io.instance_from_json({**d, "version": 2})
    with pytest.raises(io.FormatError):
        io.instance_from_json({**d, "objective": ["1/1"]})
    with pytest.raises(io.FormatError):
        io.instance_from_json({k: v for k, v in d.items() if k != "ineqs"})
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(io.FormatError):
        io.load(p)
    proof = io.proof_to_json(cp_corpus()[0][1])
    with pytest.raises(io.FormatError):
        io.proof_from_json({**proof, "kind": "tree"})
    with pytest.raises(io.FormatError):
        io.proof_from_json(proof, 5)


def test_unbounded_instance_is_rejected_on_load():
    d = {"version": 1, "name": "ray", "dim": 1, "ineqs": [{"a": ["1/1"], "b": "0/1"}],
         "objective": ["1/1"], "integrality": [True], "claimed_bound": None}
    with pytest.raises(ValueError):
        io.instance_from_json(json.loads(json.dumps(d)))


def test_km_alpha_round_trip():
    inst = gen_km_copies_alpha(4, F(1, 4), [(0, 4)])
    assert io.instance_from_json(io.instance_to_json(inst)) == inst
