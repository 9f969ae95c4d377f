"""Finite Boolean algebras kept in atom form.

``2^k`` has the k-bit masks ``0 .. 2^k - 1`` as elements; bit ``i`` is the
i-th atom.  A homomorphism ``2^k1 -> 2^k2`` is determined by where it sends
the atoms of the *codomain* back to: ``atom_map[j]`` is the atom ``i`` of
the domain whose image contains atom ``j`` (finite Stone duality).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_CAP, FiniteAlgebra
from .errors import InvalidAlgebra, SizeCapExceeded

BOOLEAN_SIGNATURE = (("meet", 2), ("join", 2), ("neg", 1), ("zero", 0), ("one", 0))


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    atom_count: int

    @property
    def size(self):
        return 1 << self.atom_count

    @property
    def top(self):
        return self.size - 1

    def atoms(self):
        return [1 << i for i in range(self.atom_count)]

    def atoms_below(self, mask):
        return [i for i in range(self.atom_count) if mask >> i & 1]


def bool_algebra(k, cap=DEFAULT_CAP):
    if k < 0:
        raise ValueError("atom count must be non-negative")
    if (1 << k) > cap:
        raise SizeCapExceeded(f"2^{k} exceeds cap {cap}")
    return FiniteBooleanAlgebra(int(k))


def ultrafilters(B):
    """One principal ultrafilter per atom, as the sorted tuple of its masks."""
    return [tuple(m for m in range(B.size) if m >> i & 1) for i in range(B.atom_count)]


@dataclass(frozen=True)
class BooleanHom:
    dom: FiniteBooleanAlgebra
    cod: FiniteBooleanAlgebra
    atom_map: tuple

    def __call__(self, mask):
        out = 0
        for j, i in enumerate(self.atom_map):
            if mask >> i & 1:
                out |= 1 << j
        return out

    def mask_map(self):
        return tuple(self(m) for m in range(self.dom.size))

    @classmethod
    def from_mask_map(cls, dom, cod, images):
        """Recover the atom map from the images of all masks; None if not a hom."""
        atom_map = []
        for j in range(cod.atom_count):
            owners = [i for i in range(dom.atom_count) if images[1 << i] >> j & 1]
            if len(owners) != 1:
                return None
            atom_map.append(owners[0])
        h = cls(dom, cod, tuple(atom_map))
        return h if h.mask_map() == tuple(images) else None


def compose_boolean(outer, inner):
    """``outer ∘ inner``: atoms pull back through ``outer`` first."""
    return BooleanHom(inner.dom, outer.cod, tuple(inner.atom_map[i] for i in outer.atom_map))


def enumerate_boolean_homs(B1, B2):
    """All homs ``B1 -> B2``: one per map from atoms of ``B2`` to atoms of ``B1``."""
    return [BooleanHom(B1, B2, m)
            for m in itertools.product(range(B1.atom_count), repeat=B2.atom_count)]


def as_finite_algebra(B):
    m = np.arange(B.size)
    tables = {
        "meet": np.bitwise_and.outer(m, m),
        "join": np.bitwise_or.outer(m, m),
        "neg": B.top ^ m,
        "zero": 0,
        "one": B.top,
    }
    return FiniteAlgebra(B.size, BOOLEAN_SIGNATURE, tables, name=f"2^{B.atom_count}",
                         lattice=("meet", "join"))


def normalize(leq, elements, bot):
    """Atom form of a finite Boolean lattice given by an order on ``elements``.

    Returns ``(B, masks)`` where ``masks[e]`` is the mask of element ``e``.
    Raises InvalidAlgebra if the lattice is not Boolean.
    """
    elements = list(elements)
    nonzero = [e for e in elements if e != bot]
    atoms = [a for a in nonzero if not any(leq[b, a] and b != a for b in nonzero)]
    B = FiniteBooleanAlgebra(len(atoms))
    if B.size != len(elements):
        raise InvalidAlgebra("not a Boolean lattice: element count is not 2^atoms")
    masks = {}
    for e in elements:
        masks[e] = sum(1 << i for i, a in enumerate(atoms) if leq[a, e])
    if len(set(masks.values())) != len(elements):
        raise InvalidAlgebra("not a Boolean lattice: atoms do not separate elements")
    return B, masks
