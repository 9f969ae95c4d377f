"""JSON interchange for algebras, members, labelled sets and verdicts."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .boolean import FiniteBooleanAlgebra
from .core import FiniteAlgebra
from .duality import StoneLObject
from .errors import InvalidAlgebra
from .functors import VarietyAlgebra


def algebra_to_json(A):
    out = {
        "name": A.name,
        "size": A.size,
        "ops": [{"name": op, "arity": k, "table": np.asarray(A.tables[op]).tolist()}
                for op, k in A.signature],
    }
    if A.element_names is not None:
        out["element_names"] = list(A.element_names)
    if A.lattice is not None:
        out["lattice"] = {"meet": A.lattice[0], "join": A.lattice[1]}
    return out


def _field(doc, key, kind, where):
    if key not in doc:
        raise InvalidAlgebra(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or (isinstance(value, bool) and kind is not bool):
        raise InvalidAlgebra(f"{where}: field {key!r} has the wrong type")
    return value


def algebra_from_json(doc):
    if not isinstance(doc, dict):
        raise InvalidAlgebra("algebra: expected a JSON object")
    size = _field(doc, "size", int, "algebra")
    ops = _field(doc, "ops", list, "algebra")
    sig, tables = [], {}
    for i, op in enumerate(ops):
        where = f"ops[{i}]"
        if not isinstance(op, dict):
            raise InvalidAlgebra(f"{where}: expected an object")
        name = _field(op, "name", str, where)
        arity = _field(op, "arity", int, where)
        if "table" not in op:
            raise InvalidAlgebra(f"{where}: missing field 'table'")
        try:
            table = np.array(op["table"], dtype=np.intp)
        except (TypeError, ValueError) as exc:
            raise InvalidAlgebra(f"{where}.table: {exc}") from exc
        sig.append((name, arity))
        tables[name] = table if arity else int(table)
    lattice = None
    if "lattice" in doc:
        lat = doc["lattice"]
        if not isinstance(lat, dict):
            raise InvalidAlgebra("lattice: expected an object")
        lattice = (_field(lat, "meet", str, "lattice"), _field(lat, "join", str, "lattice"))
    return FiniteAlgebra(size, sig, tables, name=doc.get("name", ""),
                         element_names=doc.get("element_names"), lattice=lattice)


def variety_to_json(V, base_ref):
    return {
        "base": base_ref,
        "factors": list(V.factors),
        "carrier": "full" if V.full and _is_lex_product(V) else V.carrier.tolist(),
    }


def _is_lex_product(V):
    return np.array_equal(VarietyAlgebra.product(V.base, V.factors).carrier, V.carrier)


def variety_from_json(doc, base):
    factors = _field(doc, "factors", list, "variety algebra")
    if any(not isinstance(f, int) or not 0 <= f < len(base.subuniverses) for f in factors):
        raise InvalidAlgebra("variety algebra: factors must be subuniverse ids of the base")
    carrier = doc.get("carrier", doc.get("full", "full"))
    if carrier == "full" or carrier is True:
        return VarietyAlgebra.product(base, factors)
    if not isinstance(carrier, list):
        raise InvalidAlgebra("variety algebra: carrier must be 'full' or a list of tuples")
    V = VarietyAlgebra(base, factors, carrier)
    for c, f in enumerate(factors):
        if not set(V.carrier[:, c].tolist()) <= set(base.sub(f).elements):
            raise InvalidAlgebra(f"carrier: coordinate {c} leaves its factor")
    V.algebra  # noqa: B018 - closure check
    return V


def stonel_to_json(X, base_ref):
    return {"base": base_ref, "points": X.points, "v": list(X.v)}


def stonel_from_json(doc, base):
    points = _field(doc, "points", int, "StoneL object")
    v = _field(doc, "v", list, "StoneL object")
    if len(v) != points:
        raise InvalidAlgebra("StoneL object: 'v' must have one entry per point")
    return StoneLObject(base, tuple(v))


def boolean_to_json(B):
    return {"atoms": B.atom_count}


def boolean_from_json(doc):
    k = _field(doc, "atoms", int, "Boolean algebra")
    if k < 0:
        raise InvalidAlgebra("Boolean algebra: 'atoms' must be non-negative")
    return FiniteBooleanAlgebra(k)


def load(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidAlgebra(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def dump(doc, path=None):
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    if path is None:
        return text
    Path(path).write_text(text + "\n")
    return text
