"""Named example algebras.

Every builder returns a :class:`CatalogEntry` holding a :class:`FiniteAlgebra`
whose lattice reduct is named ``meet``/``join``.  Chain families live on
``0..n`` with element ``i`` standing for ``i/n``.  Algebras given only by a
few monoid relations are completed by :func:`complete_monoid`, which
enumerates every compatible table and insists on a unique answer.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from .core import FiniteAlgebra
from .errors import ConstructionAmbiguous, InvalidAlgebra
from .lattice import LatticeReduct, residuum_from_monoid

LATTICE_OPS = (("meet", 2), ("join", 2))
BOUNDS = (("zero", 0), ("one", 0))
FLEW_SIGNATURE = LATTICE_OPS + (("odot", 2), ("imp", 2)) + BOUNDS
DEMORGAN_SIGNATURE = LATTICE_OPS + (("odot", 2), ("imp", 2), ("inv", 1), ("e", 0)) + BOUNDS


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    params: tuple
    algebra: FiniteAlgebra
    expected: dict = field(default_factory=dict)

    @property
    def label(self):
        return self.key + "".join(str(p) for p in self.params)


# --------------------------------------------------------------------------
# lattices from order descriptions


def chain_names(n):
    return ["0"] + [f"{i}/{n}" for i in range(1, n)] + ["1"]


def lattice_from_covers(names, covers):
    """Meet/join tables of the lattice generated by ``covers`` (pairs ``lo < hi``)."""
    n = len(names)
    idx = {name: i for i, name in enumerate(names)}
    leq = np.eye(n, dtype=bool)
    for lo, hi in covers:
        leq[idx[lo], idx[hi]] = True
    for k in range(n):  # transitive closure
        leq |= leq[:, [k]] & leq[[k], :]
    meet = np.empty((n, n), dtype=np.intp)
    join = np.empty((n, n), dtype=np.intp)
    for x in range(n):
        for y in range(n):
            lower = np.flatnonzero(leq[:, x] & leq[:, y])
            upper = np.flatnonzero(leq[x, :] & leq[y, :])
            glb = [z for z in lower if leq[lower, z].all()]
            lub = [z for z in upper if leq[z, upper].all()]
            if len(glb) != 1 or len(lub) != 1:
                raise InvalidAlgebra("order is not a lattice")
            meet[x, y], join[x, y] = glb[0], lub[0]
    return meet, join, leq


def chain_lattice(n):
    i = np.arange(n + 1)
    return np.minimum.outer(i, i), np.maximum.outer(i, i)


def _chain_algebra(n, extra_sig, extra_tables, name):
    meet, join = chain_lattice(n)
    sig = LATTICE_OPS + tuple(extra_sig) + BOUNDS
    tables = {"meet": meet, "join": join, "zero": 0, "one": n, **extra_tables}
    return FiniteAlgebra(n + 1, sig, tables, name=name, element_names=chain_names(n),
                         lattice=("meet", "join"))


# --------------------------------------------------------------------------
# chain families


def lukasiewicz(n):
    i = np.arange(n + 1)
    s = np.add.outer(i, i)
    tables = {"oplus": np.minimum(s, n), "odot": np.maximum(s - n, 0), "neg": n - i}
    sig = (("oplus", 2), ("odot", 2), ("neg", 1))
    return _chain_algebra(n, sig, tables, f"Ł{n}")


def general_chain(n):
    """Chain with every ``T_{i/n}`` as a basic operation."""
    sig, tables = [], {}
    for k in range(n + 1):
        t = np.zeros(n + 1, dtype=np.intp)
        t[k] = n
        sig.append((f"T{k}", 1))
        tables[f"T{k}"] = t
    return _chain_algebra(n, sig, tables, f"T{n}")


def moisil(n):
    i = np.arange(n + 1)
    sig, tables = [("neg", 1)], {"neg": n - i}
    for k in range(1, n + 1):
        sig.append((f"tau{k}", 1))
        tables[f"tau{k}"] = np.where(i >= k, n, 0)
    return _chain_algebra(n, sig, tables, f"M{n}")


def cornish(n):
    i = np.arange(n + 1)
    f = np.where((i >= 1) & (i < n), i + 1, i)
    return _chain_algebra(n, (("neg", 1), ("f", 1)), {"neg": n - i, "f": f}, f"CO{n}")


def post(n):
    i = np.arange(n + 1)
    prime = np.where(i < n, i + 1, 0)
    return _chain_algebra(n, (("prime", 1),), {"prime": prime}, f"P{n}")


def pure_chain(n):
    """The bounded chain ``0..n`` with no operations beyond the lattice."""
    return _chain_algebra(n, (), {}, f"chain{n}")


def godel(n):
    """Chain ``0..n`` with ``⊙ = ∧``: every element is idempotent."""
    meet, _ = chain_lattice(n)
    return flew_from_product(chain_names(n), [(str(a), str(b)) for a, b in
                                              zip(chain_names(n), chain_names(n)[1:])],
                             product=meet, name=f"G{n}")


# --------------------------------------------------------------------------
# monoid completion


def _unit_and_absorbing(n, unit, zero):
    t = np.full((n, n), -1, dtype=np.intp)
    t[zero, :] = zero
    t[:, zero] = zero
    t[unit, :] = np.arange(n)
    t[:, unit] = np.arange(n)
    return t


def complete_monoid(leq, meet, join, unit, zero, fixed, integral=True, extra=None):
    """Every commutative, associative, order-preserving product with the given
    unit, absorbing ``zero``, distributing over binary joins, and matching
    ``fixed`` (a dict of index pairs to values).

    ``integral`` restricts ``x⊙y ≤ x∧y``.  ``extra(table)`` may reject a
    complete candidate.  Returns the list of tables in search order.
    """
    n = leq.shape[0]
    base = _unit_and_absorbing(n, unit, zero)
    for (x, y), z in fixed.items():
        for u, v in ((x, y), (y, x)):
            if base[u, v] >= 0 and base[u, v] != z:
                return []
            base[u, v] = z
    cells = [(x, y) for x in range(n) for y in range(x, n) if base[x, y] < 0]
    out = []

    def consistent(t, x, y):
        z = t[x, y]
        known = t >= 0
        below = known & leq[:, [x]] & leq[:, y][None, :]  # (u, v) with u<=x, v<=y
        above = known & leq[x, :][:, None] & leq[[y], :]
        if not leq[t[below], z].all():
            return False
        if not leq[z, t[above]].all():
            return False
        return True

    def complete(t):
        i = np.arange(n)
        if not np.array_equal(t[t[:, :, None], i[None, None, :]],
                              t[i[:, None, None], t[None, :, :]]):
            return False
        # x⊙(y∨z) = (x⊙y) ∨ (x⊙z)
        lhs = t[i[:, None, None], join[None, :, :]]
        rhs = join[t[:, :, None], t[:, None, :]]
        if not np.array_equal(lhs, rhs):
            return False
        return extra is None or extra(t)

    def search(k, t):
        if k == len(cells):
            if complete(t):
                out.append(t.copy())
            return
        x, y = cells[k]
        cands = range(n)
        if integral:
            cands = np.flatnonzero(leq[:, meet[x, y]])
        for z in cands:
            t[x, y] = t[y, x] = z
            if consistent(t, x, y) and consistent(t, y, x):
                search(k + 1, t)
        t[x, y] = t[y, x] = -1

    if all(consistent(base, x, y) for x in range(n) for y in range(n) if base[x, y] >= 0):
        search(0, base)
    return out


def _unique(tables, what):
    if len(tables) != 1:
        raise ConstructionAmbiguous(
            f"{what}: {len(tables)} product tables satisfy the constraints",
            [t.tolist() for t in tables],
        )
    return tables[0]


def flew_from_product(names, covers, product=None, relations=None, name=""):
    """FL_ew algebra on the lattice given by ``covers`` with unit = top.

    Pass either a full ``product`` table or ``relations`` (name pairs to
    names) for :func:`complete_monoid`; the implication is the residuum.
    """
    meet, join, leq = lattice_from_covers(names, covers)
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    bot = int(np.flatnonzero(leq.all(axis=1))[0])
    idx = {nm: i for i, nm in enumerate(names)}
    if product is None:
        fixed = {(idx[x], idx[y]): idx[z] for (x, y), z in (relations or {}).items()}
        product = _unique(complete_monoid(leq, meet, join, top, bot, fixed), name)
    tables = {"meet": meet, "join": join, "odot": product, "zero": bot, "one": top,
              "imp": np.zeros_like(meet)}
    A = FiniteAlgebra(len(names), FLEW_SIGNATURE, tables, name=name, element_names=names,
                      lattice=("meet", "join"))
    tables["imp"] = residuum_from_monoid(LatticeReduct(A, "meet", "join", bot, top), "odot")
    return FiniteAlgebra(len(names), FLEW_SIGNATURE, tables, name=name, element_names=names,
                         lattice=("meet", "join"))


# --------------------------------------------------------------------------
# residuated lattices with named elements

CHAIN5 = ["0", "c", "b", "a", "1"]
CHAIN5_COVERS = list(zip(CHAIN5, CHAIN5[1:]))

FLEW_ENTRIES = {
    "R_5_1_17": (CHAIN5, CHAIN5_COVERS, {("a", "a"): "0"}),
    "R_5_1_18": (CHAIN5, CHAIN5_COVERS, {("a", "a"): "c", ("a", "b"): "0"}),
    "R_5_1_19": (CHAIN5, CHAIN5_COVERS, {("a", "a"): "b", ("a", "b"): "0"}),
    "R_5_1_20": (CHAIN5, CHAIN5_COVERS,
                 {("a", "a"): "c", ("a", "b"): "c", ("b", "b"): "0", ("a", "c"): "0"}),
    "R_5_1_21": (CHAIN5, CHAIN5_COVERS,
                 {("a", "a"): "b", ("a", "b"): "c", ("b", "b"): "0", ("a", "c"): "0"}),
    "R_5_1_22": (CHAIN5, CHAIN5_COVERS,
                 {("a", "a"): "c", ("b", "b"): "c", ("a", "c"): "0"}),
    "R_6_2_1_11": (["0", "c", "d", "b", "a", "1"],
                   [("0", "c"), ("0", "d"), ("c", "b"), ("d", "b"), ("b", "a"), ("a", "1")],
                   {("a", "a"): "c", ("a", "b"): "0"}),
    "R_6_3_1_9": (["0", "d", "b", "c", "a", "1"],
                  [("0", "d"), ("d", "b"), ("d", "c"), ("b", "a"), ("c", "a"), ("a", "1")],
                  {("a", "a"): "d", ("c", "c"): "d", ("a", "b"): "0", ("b", "c"): "0"}),
    "flew_diamond": (["0", "a", "b", "1"],
                     [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
                     {("a", "a"): "a", ("b", "b"): "b", ("a", "b"): "0"}),
}


def flew_entry(key):
    names, covers, rel = FLEW_ENTRIES[key]
    return flew_from_product(names, covers, relations=rel, name=key)


DEMORGAN_ORDERS = {
    "C4": (["0", "e", "a", "1"], [("0", "e"), ("e", "a"), ("a", "1")]),
    "D4": (["0", "e", "a", "1"], [("0", "e"), ("0", "a"), ("e", "1"), ("a", "1")]),
}


def demorgan_candidates(shape):
    """All product tables for the bounded De Morgan monoid of the given shape.

    Constraints: commutative monoid with unit ``e``, ``0`` absorbing, monotone,
    join-preserving, ``a⊙a = 1``, and ``x⊙y ≤ z ⇔ x⊙∼z ≤ ∼y`` for the
    involution swapping ``0↔1`` and ``e↔a``.
    """
    names, covers = DEMORGAN_ORDERS[shape]
    meet, join, leq = lattice_from_covers(names, covers)
    idx = {nm: i for i, nm in enumerate(names)}
    inv = np.array([idx[x] for x in ("1", "a", "e", "0")], dtype=np.intp)

    def involutive(t):
        i = np.arange(len(names))
        # lhs[x, y, z] = x⊙y ≤ z ; rhs[x, y, z] = x⊙∼z ≤ ∼y
        lhs = leq[t[:, :, None], i[None, None, :]]
        rhs = leq[t[i[:, None, None], inv[None, None, :]], inv[None, :, None]]
        return np.array_equal(lhs, rhs)

    fixed = {(idx["a"], idx["a"]): idx["1"]}
    tables = complete_monoid(leq, meet, join, idx["e"], idx["0"], fixed,
                             integral=False, extra=involutive)
    return names, meet, join, leq, inv, tables


def demorgan(shape, with_e=True):
    names, meet, join, leq, inv, tables = demorgan_candidates(shape)
    prod = _unique(tables, f"demorgan_{shape}")
    bot, top = names.index("0"), names.index("1")
    tables = {"meet": meet, "join": join, "odot": prod, "inv": inv, "e": names.index("e"),
              "zero": bot, "one": top, "imp": np.zeros_like(meet)}
    A = FiniteAlgebra(4, DEMORGAN_SIGNATURE, tables, element_names=names, lattice=("meet", "join"))
    tables["imp"] = residuum_from_monoid(LatticeReduct(A, "meet", "join", bot, top), "odot")
    A = FiniteAlgebra(4, DEMORGAN_SIGNATURE, tables, name=f"{shape}01", element_names=names,
                      lattice=("meet", "join"))
    if not with_e:
        A = A.reduct([op for op in A.signature.names if op != "e"], name=f"{shape}01 without e")
    return A


PSEUDOLOGICS = {
    1: (["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        {"a": "b", "b": "c", "c": "a"}),
    2: (["0", "a", "b", "c", "d", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "d"), ("d", "1")],
        {"a": "c", "b": "a", "c": "d", "d": "b"}),
    3: (["0", "a", "b", "c", "d", "e", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "d"), ("b", "d"), ("b", "e"), ("c", "e"),
         ("d", "1"), ("e", "1")],
        {"a": "d", "b": "a", "c": "b", "d": "e", "e": "c"}),
}


def pseudologic(k):
    names, covers, prime = PSEUDOLOGICS[k]
    meet, join, _ = lattice_from_covers(names, covers)
    idx = {nm: i for i, nm in enumerate(names)}
    p = np.array([idx[prime.get(x, {"0": "1", "1": "0"}.get(x))] for x in names], dtype=np.intp)
    sig = LATTICE_OPS + (("prime", 1),) + BOUNDS
    tables = {"meet": meet, "join": join, "prime": p, "zero": idx["0"], "one": idx["1"]}
    return FiniteAlgebra(len(names), sig, tables, name=f"pseudologic{k}", element_names=names,
                         lattice=("meet", "join"))


def pseudologic_conditions(A):
    """The two sufficient conditions on ``'``: no ``a ≠ 0`` with ``a' = 1``, and
    ``a ∧ a^(2n) = 0`` for some ``n ≥ 1``, checked for every ``a ≠ 1``.

    ``a = 1`` is skipped since ``1^(2n) = 1`` for every ``n``.
    """
    p, meet = A.tables["prime"], A.tables["meet"]
    zero, one = int(A.tables["zero"]), int(A.tables["one"])
    first = all(p[a] != one for a in range(A.size) if a != zero)
    second = True
    for a in range(A.size):
        if a == one:
            continue
        x, ok = a, False
        for _ in range(A.size):  # the orbit of a under '' repeats within |A| steps
            x = p[p[x]]
            if meet[a, x] == zero:
                ok = True
                break
        second &= ok
    return first, second


# --------------------------------------------------------------------------
# registry

FAMILIES = {
    "lukasiewicz": lukasiewicz,
    "moisil": moisil,
    "general": general_chain,
    "cornish": cornish,
    "post": post,
    "chain": pure_chain,
    "godel": godel,
    "pseudologic": pseudologic,
}

FIXED = {
    **{k: (lambda k=k: flew_entry(k)) for k in FLEW_ENTRIES},
    "demorgan_C4": lambda: demorgan("C4"),
    "demorgan_C4_efree": lambda: demorgan("C4", with_e=False),
    "demorgan_D4": lambda: demorgan("D4"),
    "demorgan_D4_efree": lambda: demorgan("D4", with_e=False),
}

FAMILY_RANGES = {
    "general": range(1, 6),
    "moisil": range(1, 6),
    "lukasiewicz": range(1, 7),
    "cornish": range(2, 6),
    "post": range(1, 5),
    "pseudologic": range(1, 4),
    "godel": range(2, 4),
}


@lru_cache(maxsize=None)
def golden():
    text = resources.files("semiprimal").joinpath("data/golden.json").read_text()
    return json.loads(text)


def _divisors(n):
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def family_expectation(family, n):
    """Expected verdict and subuniverse count for the chain families."""
    if n == 1 and family in ("lukasiewicz", "general", "moisil", "cornish", "post"):
        return {"level": "primal", "subuniverse_count": 1}  # all are the 2-element Boolean algebra
    if family == "lukasiewicz":
        return {"level": "semi-primal", "subuniverse_count": _divisors(n)}
    if family == "general":
        return {"level": "semi-primal", "subuniverse_count": 2 ** (n - 1)}
    if family == "moisil":
        return {"level": "semi-primal"}
    if family == "cornish":
        return {"level": "semi-primal", "subuniverse_count": 2}
    if family == "post":
        return {"level": "primal", "subuniverse_count": 1}
    if family == "pseudologic":
        return {"level": "semi-primal"}
    if family == "godel":
        return {"level": "none"}
    return {}


def split_key(key):
    """``"lukasiewicz4"`` -> ``("lukasiewicz", 4)``; fixed keys pass through."""
    if key in FIXED:
        return key, None
    m = re.fullmatch(r"([a-z_]+?)_?(\d+)", key)
    if m and m.group(1) in FAMILIES:
        return m.group(1), int(m.group(2))
    if key in FAMILIES:
        return key, None
    raise KeyError(f"unknown catalog key {key!r}")


def build(key, param=None):
    """Build a catalog entry by key, e.g. ``build("lukasiewicz", 4)`` or ``build("R_5_1_17")``."""
    if param is None:
        key, param = split_key(key)
    if key in FIXED:
        if param is not None:
            raise ValueError(f"{key} takes no parameter")
        return CatalogEntry(key, (), FIXED[key](), dict(golden().get(key, {})))
    if key not in FAMILIES:
        raise KeyError(f"unknown catalog key {key!r}")
    if param is None or int(param) < 1:
        raise ValueError(f"{key} needs a positive integer parameter")
    param = int(param)
    if key == "pseudologic" and param not in PSEUDOLOGICS:
        raise ValueError("pseudologic takes 1, 2 or 3")
    expected = family_expectation(key, param)
    expected.update(golden().get(f"{key}{param}", {}))
    return CatalogEntry(key, (param,), FAMILIES[key](param), expected)


def list_entries():
    """Every catalog entry with expected metadata, in a fixed order."""
    out = []
    for family, rng in FAMILY_RANGES.items():
        out.extend(build(family, n) for n in rng)
    out.extend(build(k) for k in FIXED)
    return out
