"""Finite dual objects: sets whose points carry a subalgebra label of the base.

A morphism ``m: (X, v) -> (Y, w)`` is any map with ``w(m(x)) ⊆ v(x)``.
``sigma`` sends an algebra to its homomorphisms into the base labelled by
their images; ``pi`` sends a labelled set to the product of its labels.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Homomorphism, enumerate_homomorphisms, is_homomorphism
from .errors import InvalidAlgebra, RoundTripFailure
from .functors import VarietyAlgebra


@dataclass(frozen=True, eq=False)
class StoneLObject:
    base: object
    v: tuple
    homs: tuple = None  # the homomorphisms behind each point, when built by sigma

    def __post_init__(self):
        v = tuple(int(x) for x in self.v)
        if any(not 0 <= x < len(self.base.subuniverses) for x in v):
            raise InvalidAlgebra(f"label out of range in {v}")
        object.__setattr__(self, "v", v)

    @property
    def points(self):
        return len(self.v)

    def label(self, x):
        return set(self.base.sub(self.v[x]).elements)

    def __eq__(self, other):
        return isinstance(other, StoneLObject) and self.base is other.base and self.v == other.v

    def __hash__(self):
        return hash((id(self.base), self.v))

    def __repr__(self):
        return f"StoneLObject(v={list(self.v)})"


def _contained(base, inner, outer):
    return set(base.sub(inner).elements) <= set(base.sub(outer).elements)


@dataclass(frozen=True, eq=False)
class StoneLMorphism:
    dom: StoneLObject
    cod: StoneLObject
    map: tuple

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        if len(m) != self.dom.points or any(not 0 <= y < self.cod.points for y in m):
            raise InvalidAlgebra("map has the wrong shape")
        base = self.dom.base
        for x, y in enumerate(m):
            if not _contained(base, self.cod.v[y], self.dom.v[x]):
                raise InvalidAlgebra(f"label of {y} is not inside the label of {x}")
        object.__setattr__(self, "map", m)

    def __eq__(self, other):
        return (isinstance(other, StoneLMorphism) and self.dom == other.dom
                and self.cod == other.cod and self.map == other.map)

    def __hash__(self):
        return hash((self.dom, self.cod, self.map))


def compose_stonel(outer, inner):
    return StoneLMorphism(inner.dom, outer.cod, tuple(outer.map[x] for x in inner.map))


def identity_stonel(X):
    return StoneLMorphism(X, X, tuple(range(X.points)))


def enumerate_stonel_morphisms(X, Y):
    base = X.base
    allowed = [[y for y in range(Y.points) if _contained(base, Y.v[y], X.v[x])]
               for x in range(X.points)]
    return [StoneLMorphism(X, Y, m) for m in itertools.product(*allowed)]


# --------------------------------------------------------------------------
# the two functors


def sigma_obj(A):
    """Homs ``A -> L`` in lexicographic order, each labelled by its image."""
    homs = enumerate_homomorphisms(A.algebra, A.base.algebra)
    return StoneLObject(A.base, tuple(A.base.id_of(h.image()) for h in homs), tuple(homs))


def sigma_mor(f, A1, A2, X1=None, X2=None):
    """``Σ(A₂) -> Σ(A₁)``, ``h ↦ h ∘ f`` for a homomorphism ``f: A₁ -> A₂``."""
    X1 = sigma_obj(A1) if X1 is None else X1
    X2 = sigma_obj(A2) if X2 is None else X2
    index = {h.map: i for i, h in enumerate(X1.homs)}
    m = []
    for h in X2.homs:
        composed = tuple(h.map[a] for a in f.map)
        if composed not in index:
            raise RoundTripFailure("h ∘ f is not a homomorphism into the base")
        m.append(index[composed])
    return StoneLMorphism(X2, X1, tuple(m))


def pi_obj(X):
    return VarietyAlgebra.product(X.base, X.v)


def pi_mor(m, P_dom=None, P_cod=None):
    """``Π(Y) -> Π(X)``, ``g ↦ g ∘ m`` for ``m: X -> Y``."""
    P_dom = pi_obj(m.cod) if P_dom is None else P_dom
    P_cod = pi_obj(m.dom) if P_cod is None else P_cod
    rows = P_dom.carrier[:, list(m.map)] if m.dom.points else np.zeros((P_dom.size, 0), np.intp)
    image = P_cod.index(rows)
    return Homomorphism(P_dom.algebra, P_cod.algebra, tuple(int(x) for x in image))


# --------------------------------------------------------------------------
# round trips


def roundtrip_algebra(A, X=None):
    """The evaluation ``a ↦ (h(a))_h`` from ``A`` onto ``ΠΣ(A)``, verified iso."""
    X = sigma_obj(A) if X is None else X
    P = pi_obj(X)
    rows = np.array([h.map for h in X.homs], dtype=np.intp).T.reshape(A.size, X.points)
    try:
        image = P.index(rows)
    except InvalidAlgebra as exc:
        raise RoundTripFailure(str(exc)) from exc
    h = Homomorphism(A.algebra, P.algebra, tuple(int(x) for x in image))
    if not (h.is_injective() and h.is_surjective()
            and is_homomorphism(A.algebra, P.algebra, h.map)):
        raise RoundTripFailure("evaluation is not an isomorphism")
    return h


def roundtrip_space(X):
    """``x ↦ pr_x`` from ``X`` onto ``ΣΠ(X)``, verified to respect labels."""
    P = pi_obj(X)
    Y = sigma_obj(P)
    index = {h.map: i for i, h in enumerate(Y.homs)}
    m = []
    for x in range(X.points):
        pr = tuple(int(c) for c in P.carrier[:, x])
        if pr not in index:
            raise RoundTripFailure(f"projection {x} is not among the homomorphisms")
        m.append(index[pr])
    if sorted(m) != list(range(Y.points)):
        raise RoundTripFailure("some homomorphism is not a projection")
    if any(Y.v[m[x]] != X.v[x] for x in range(X.points)):
        raise RoundTripFailure("labels differ after the round trip")
    return StoneLMorphism(X, Y, tuple(m))


# --------------------------------------------------------------------------
# functors between plain finite sets and labelled sets


def stonel_functors(X, which, S=None, base=None):
    """Finite versions of ``U``, ``Vtop``, ``Vbot``, ``C``, ``V_S`` and ``C_S``.

    ``U`` returns a point count.  ``Vtop``/``Vbot``/``V_S`` take a point
    count (with ``base``) and label every point by ``L``, ``⟨0,1⟩`` or ``S``.
    ``C``/``C_S`` keep the points labelled ``⟨0,1⟩`` (resp. inside ``S``) and
    return ``(object, kept point indices)``.
    """
    if which == "U":
        return X.points
    if which in ("Vtop", "Vbot", "V_S"):
        if base is None:
            raise ValueError(f"{which} needs a base")
        label = {"Vtop": base.full_id, "Vbot": base.smallest_id}.get(which)
        if which == "V_S":
            if S is None:
                raise ValueError("V_S needs S")
            label = base.id_of(S)
        return StoneLObject(base, (label,) * int(X))
    if which == "C":
        keep = [x for x in range(X.points) if X.v[x] == X.base.smallest_id]
    elif which == "C_S":
        if S is None:
            raise ValueError("C_S needs S")
        sid = X.base.id_of(S)
        keep = [x for x in range(X.points) if _contained(X.base, X.v[x], sid)]
    else:
        raise ValueError(f"unknown functor {which!r}")
    return StoneLObject(X.base, tuple(X.v[x] for x in keep)), keep


def set_maps(m, n):
    return list(itertools.product(range(n), repeat=m))


def all_stonel_objects(base, max_points):
    """Every labelled set with up to ``max_points`` points (all label sequences)."""
    out = []
    for r in range(max_points + 1):
        for v in itertools.product(range(len(base.subuniverses)), repeat=r):
            out.append(StoneLObject(base, v))
    return out
