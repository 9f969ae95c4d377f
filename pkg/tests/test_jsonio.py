import json

import pytest
from hypothesis import given

from conftest import small_algebras
from semiprimal import jsonio
from semiprimal.boolean import FiniteBooleanAlgebra
from semiprimal.catalog import build
from semiprimal.duality import StoneLObject
from semiprimal.errors import InvalidAlgebra
from semiprimal.functors import VarietyAlgebra


@given(small_algebras(max_size=4))
def test_algebra_round_trip(A):
    doc = json.loads(jsonio.dump(jsonio.algebra_to_json(A)))
    assert jsonio.algebra_from_json(doc).same_tables(A)


def test_catalog_algebra_round_trip_keeps_metadata():
    A = build("R_5_1_18").algebra
    B = jsonio.algebra_from_json(jsonio.algebra_to_json(A))
    assert B.same_tables(A) and B.element_names == A.element_names and B.lattice == A.lattice


@pytest.mark.parametrize("doc, field", [
    ({"ops": []}, "size"),
    ({"size": "3", "ops": []}, "size"),
    ({"size": 2, "ops": [{"arity": 1, "table": [0, 1]}]}, "name"),
    ({"size": 2, "ops": [{"name": "f", "arity": 1}]}, "table"),
    ({"size": 2, "ops": [{"name": "f", "arity": 1, "table": [0, 5]}]}, "outside"),
    ({"size": 2, "ops": [], "lattice": {"meet": "m"}}, "join"),
])
def test_bad_algebra_names_the_field(doc, field):
    with pytest.raises(InvalidAlgebra, match=field):
        jsonio.algebra_from_json(doc)


def test_variety_round_trip(luk4_base):
    V = VarietyAlgebra.product(luk4_base, [1, 2])
    doc = jsonio.variety_to_json(V, "lukasiewicz4")
    assert doc["carrier"] == "full"
    W = jsonio.variety_from_json(doc, luk4_base)
    assert W.factors == V.factors and (W.carrier == V.carrier).all()
    sub = VarietyAlgebra(luk4_base, [2], [(0,), (2,), (4,)])
    doc = jsonio.variety_to_json(sub, "lukasiewicz4")
    assert jsonio.variety_from_json(doc, luk4_base).size == 3
    with pytest.raises(InvalidAlgebra, match="factors"):
        jsonio.variety_from_json({"factors": [9]}, luk4_base)
    with pytest.raises(InvalidAlgebra, match="coordinate"):
        jsonio.variety_from_json({"factors": [0], "carrier": [[2]]}, luk4_base)


def test_stonel_and_boolean_round_trip(luk4_base, tmp_path):
    X = StoneLObject(luk4_base, (1, 2, 2))
    path = tmp_path / "x.json"
    jsonio.dump(jsonio.stonel_to_json(X, "lukasiewicz4"), path)
    assert jsonio.stonel_from_json(jsonio.load(path), luk4_base) == X
    with pytest.raises(InvalidAlgebra, match="one entry per point"):
        jsonio.stonel_from_json({"points": 2, "v": [0]}, luk4_base)
    B = FiniteBooleanAlgebra(3)
    assert jsonio.boolean_from_json(jsonio.boolean_to_json(B)) == B
    with pytest.raises(InvalidAlgebra):
        jsonio.boolean_from_json({"atoms": -1})


def test_malformed_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(InvalidAlgebra, match="malformed"):
        jsonio.load(p)
