"""Members of the variety generated by a semi-primal base algebra ``L``,
with the Boolean skeleton, the Boolean power and the maps between them.

A member is stored as an explicit set of tuples inside a product of
subalgebras of ``L`` (:class:`VarietyAlgebra`).  All derived unary maps
(``T_ℓ``, ``χ_S``) are evaluated coordinatewise on those tuples.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .boolean import BooleanHom, FiniteBooleanAlgebra, enumerate_boolean_homs, normalize
from .core import (
    DEFAULT_CAP,
    FiniteAlgebra,
    Homomorphism,
    congruence_generated,
    enumerate_homomorphisms,
    enumerate_subuniverses,
    is_homomorphism,
    quotient,
)
from .errors import (
    BijectionFailure,
    InvalidAlgebra,
    NotInVariety,
    NotSurjectiveWarning,
    SemiPrimalError,
    SizeCapExceeded,
)
from .lattice import T_table, detect_lattice, order_leq


class Base:
    """A semi-primal algebra ``L`` with its reduct and numbered subuniverses.

    Subuniverse ids follow the order of :func:`enumerate_subuniverses`.
    ``certify`` runs the semi-primality test once at construction.
    """

    def __init__(self, algebra, certify=True):
        self.algebra = algebra
        self.reduct = detect_lattice(algebra)
        self.subuniverses = tuple(enumerate_subuniverses(algebra))
        self._ids = {s.elements: i for i, s in enumerate(self.subuniverses)}
        if certify:
            from .primality import is_semi_primal

            v = is_semi_primal(algebra, self.reduct, route="T-route")
            if not v.semi_primal:
                raise InvalidAlgebra(f"base {algebra.name or ''} is not semi-primal")

    @property
    def size(self):
        return self.algebra.size

    @property
    def bot(self):
        return self.reduct.bot

    @property
    def top(self):
        return self.reduct.top

    def id_of(self, sub):
        elements = tuple(sub.elements) if hasattr(sub, "elements") else tuple(sorted(sub))
        return self._ids[elements]

    def sub(self, i):
        return self.subuniverses[i]

    @property
    def full_id(self):
        return len(self.subuniverses) - 1

    @property
    def smallest_id(self):
        return 0


def _row_codes(rows, n):
    rows = np.asarray(rows, dtype=np.int64)
    weights = n ** np.arange(rows.shape[1] - 1, -1, -1, dtype=np.int64)
    return rows @ weights


class VarietyAlgebra:
    """An algebra given as a set of tuples, coordinate ``i`` ranging over
    the subuniverse ``factors[i]`` of the base.

    Elements are numbered by their row in ``carrier``.  ``full`` marks the
    case where the carrier is the whole product; :meth:`product` lists it
    in lexicographic order.
    """

    def __init__(self, base, factors, carrier=None, name=""):
        self.base = base
        self.factors = tuple(int(f) for f in factors)
        if carrier is None:
            lists = [base.sub(f).elements for f in self.factors]
            carrier = list(itertools.product(*lists))
            self.full = True
        else:
            self.full = None
        self.carrier = np.array(carrier, dtype=np.intp).reshape(len(carrier), len(self.factors))
        self.carrier.setflags(write=False)
        self.name = name
        codes = _row_codes(self.carrier, base.size)
        if len(np.unique(codes)) != len(codes):
            raise InvalidAlgebra("carrier has repeated tuples")
        self._order = np.argsort(codes)
        self._sorted_codes = codes[self._order]
        if self.full is None:
            sizes = [len(base.sub(f)) for f in self.factors]
            self.full = len(codes) == int(np.prod(sizes, dtype=np.int64))

    @classmethod
    def product(cls, base, factors, name=""):
        return cls(base, factors, name=name)

    @property
    def size(self):
        return len(self.carrier)

    def index(self, rows):
        """Element numbers of the given tuples; raises if any is missing."""
        rows = np.asarray(rows, dtype=np.intp)
        if not self.factors:
            return np.zeros(rows.shape[:-1], dtype=np.intp)
        codes = _row_codes(rows.reshape(-1, len(self.factors)), self.base.size)
        pos = np.searchsorted(self._sorted_codes, codes)
        pos = np.minimum(pos, len(self._sorted_codes) - 1)
        if not np.array_equal(self._sorted_codes[pos], codes):
            raise InvalidAlgebra("tuple outside the carrier")
        return self._order[pos].reshape(rows.shape[:-1])

    @cached_property
    def algebra(self):
        L = self.base.algebra
        rows = self.carrier
        tables = {}
        for op, k in L.signature:
            t = L.tables[op]
            if k == 0:
                tables[op] = self.constant(int(t))
                continue
            # coordinate c of f(x1..xk) is t[x1[c], .., xk[c]]
            coords = [t[np.ix_(*[rows[:, c]] * k)] for c in range(len(self.factors))]
            stacked = np.stack(coords, axis=-1) if coords else np.zeros((self.size,) * k + (0,))
            tables[op] = self.index(stacked)
        names = ["(" + ",".join(L.label(c) for c in row) + ")" for row in rows]
        return FiniteAlgebra(self.size, L.signature, tables, name=self.name, element_names=names,
                             lattice=L.lattice)

    def apply_unary(self, table):
        """Element numbers of ``table`` applied to every coordinate of every element."""
        return self.index(np.asarray(table)[self.carrier])

    def constant(self, value):
        return int(self.index(np.full(len(self.factors), value)))

    def __repr__(self):
        kind = "full" if self.full else f"{self.size} tuples"
        return f"VarietyAlgebra(factors={list(self.factors)}, {kind})"


def canonicalize(A, base, cap=DEFAULT_CAP):
    """Represent ``A`` by its values under every homomorphism into the base.

    Element ``a`` becomes the tuple ``(h(a))_h`` with homs in lexicographic
    order; row ``a`` of the carrier is element ``a`` of ``A``.
    """
    homs = enumerate_homomorphisms(A, base.algebra)
    r = len(homs)
    rows = np.array([h.map for h in homs], dtype=np.intp).T.reshape(A.size, r)
    if len({tuple(row) for row in rows}) != A.size:
        raise NotInVariety("homomorphisms into the base do not separate the elements")
    factors = [base.id_of(h.image()) for h in homs]
    V = VarietyAlgebra(base, factors, rows, name=A.name)
    if not V.full:
        warnings.warn("evaluation image is a proper subset of the product", NotSurjectiveWarning)
    return V


# --------------------------------------------------------------------------
# Boolean skeleton


@dataclass(frozen=True, eq=False)
class SkeletonResult:
    algebra: VarietyAlgebra
    skeleton: FiniteBooleanAlgebra
    inclusion: tuple  # mask -> element number of the algebra

    def mask_of(self, element):
        return self.inclusion.index(element)


def skeleton(A):
    """Elements fixed by ``T_top`` coordinatewise, in atom form."""
    base = A.base
    T1 = T_table(base.reduct, base.top)
    fixed = [i for i in range(A.size) if np.array_equal(T1[A.carrier[i]], A.carrier[i])]
    leq = _coordinatewise_leq(A)
    B, masks = normalize(leq, fixed, A.constant(base.bot))
    inclusion = [None] * B.size
    for e, m in masks.items():
        inclusion[m] = e
    return SkeletonResult(A, B, tuple(inclusion))


def _coordinatewise_leq(A):
    leq = order_leq(A.base.reduct)
    c = A.carrier
    if not A.factors:
        return np.ones((A.size, A.size), dtype=bool)
    return leq[c[:, None, :], c[None, :, :]].all(axis=-1)


# --------------------------------------------------------------------------
# Boolean power


@dataclass(frozen=True, eq=False)
class BooleanPower:
    """``L[B]``: elements are the maps ``ξ: L -> B`` with disjoint values
    joining to the top, ``xi[e, ℓ]`` being the mask ``ξ_e(ℓ)``."""

    base_algebra: FiniteAlgebra
    boolean: FiniteBooleanAlgebra
    xi: np.ndarray
    algebra: FiniteAlgebra

    def index(self, assignment):
        codes = _xi_codes(np.asarray(assignment).reshape(-1, self.base_algebra.size), self.boolean)
        keys = _xi_codes(self.xi, self.boolean)
        pos = np.searchsorted(keys, codes)
        pos = np.minimum(pos, len(keys) - 1)
        if not np.array_equal(keys[pos], codes):
            raise InvalidAlgebra("not a partition of unity")
        return pos.reshape(np.asarray(assignment).shape[:-1])


def _xi_codes(xi, B):
    n = xi.shape[1]
    weights = np.array([B.size ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    return xi.astype(np.int64) @ weights


def partitions_of_unity(n, B):
    """All ``ξ`` as an array of shape ``(n^k, n)``, sorted lexicographically."""
    k = B.atom_count
    out = np.zeros((n ** k, n), dtype=np.int64)
    for row, assign in enumerate(itertools.product(range(n), repeat=k)):
        for atom, ell in enumerate(assign):
            out[row, ell] |= 1 << atom
    order = np.argsort(_xi_codes(out, B), kind="stable")
    return out[order]


def boolean_power(L, B, cap=DEFAULT_CAP):
    """``L[B]`` with ``o(ξ₁..ξ_k)(ℓ) = ⋁_{o(ℓ₁..ℓ_k)=ℓ} ξ₁(ℓ₁) ∧ … ∧ ξ_k(ℓ_k)``."""
    n = L.size
    if n ** B.atom_count > cap:
        raise SizeCapExceeded(f"{n}^{B.atom_count} exceeds cap {cap}")
    xi = partitions_of_unity(n, B)
    m = len(xi)
    keys = _xi_codes(xi, B)

    def lookup(values):  # (..., n) masks -> element numbers
        return np.searchsorted(keys, _xi_codes(values.reshape(-1, n), B)).reshape(values.shape[:-1])

    tables = {}
    for op, k in L.signature:
        t = L.tables[op]
        res = np.zeros((m,) * k + (n,), dtype=np.int64)
        if k == 0:
            res[int(t)] = B.top
        for args in itertools.product(range(n), repeat=k):
            term = np.full((m,) * k, B.top, dtype=np.int64)
            for a, ell in enumerate(args):
                shape = tuple(-1 if b == a else 1 for b in range(k))
                term = term & xi[:, ell].reshape(shape)
            res[..., t[args]] |= term
        tables[op] = lookup(res) if k else int(lookup(res[None])[0])
    names = ["{" + ",".join(f"{L.label(l)}:{row[l]:0{max(B.atom_count, 1)}b}"
                            for l in range(n) if row[l]) + "}" for row in xi]
    A = FiniteAlgebra(m, L.signature, tables, name=f"{L.name}[2^{B.atom_count}]",
                      element_names=names, lattice=L.lattice)
    return BooleanPower(L, B, xi, A)


def power_to_tuples(P):
    """The atom-pointwise map ``ξ ↦ (ℓ with atom i ≤ ξ(ℓ))_i`` onto ``L^k``."""
    k = P.boolean.atom_count
    out = np.zeros((len(P.xi), k), dtype=np.intp)
    for i in range(k):
        out[:, i] = np.argmax((P.xi >> i) & 1, axis=1)
    return out


def power_as_variety(P, base):
    """``L[B]`` canonicalized over ``base`` (the base may be larger than ``L``)."""
    return canonicalize(P.algebra, base)


def skeleton_map(f, sk_dom, sk_cod):
    """``𝔖(f)``: a homomorphism of members restricted to their skeletons."""
    images = [sk_cod.mask_of(f.map[e]) for e in sk_dom.inclusion]
    phi = BooleanHom.from_mask_map(sk_dom.skeleton, sk_cod.skeleton, images)
    if phi is None:
        raise BijectionFailure("restriction to the skeleton is not a Boolean homomorphism")
    return phi


def power_map(phi, P_dom, P_cod):
    """``L[φ]``: ``ξ ↦ φ ∘ ξ`` from ``L[B₁]`` to ``L[B₂]``."""
    pushed = np.vectorize(phi, otypes=[np.int64])(P_dom.xi)
    image = P_cod.index(pushed)
    return Homomorphism(P_dom.algebra, P_cod.algebra, tuple(int(x) for x in image))


# --------------------------------------------------------------------------
# unit and transposes


def _T_rows(A):
    """``T[ℓ, a]``: element number of ``T_ℓ(a)`` computed coordinatewise."""
    R = A.base.reduct
    return np.stack([A.apply_unary(T_table(R, ell)) for ell in range(A.base.size)])


def unit_embedding(A, sk=None, power=None):
    """``a ↦ 𝒯_a`` with ``𝒯_a(ℓ) = T_ℓ(a)`` into ``L[𝔖(A)]``; verified injective hom."""
    if sk is None:
        sk = skeleton(A)
    if power is None:
        power = boolean_power(A.base.algebra, sk.skeleton)
    T = _T_rows(A)
    masks = np.vectorize(sk.mask_of, otypes=[np.int64])(T)  # (ℓ, a)
    image = power.index(masks.T)
    h = Homomorphism(A.algebra, power.algebra, tuple(int(x) for x in image))
    if not h.is_injective() or not is_homomorphism(A.algebra, power.algebra, h.map):
        raise BijectionFailure("unit map is not an injective homomorphism")
    return h


@dataclass(frozen=True, eq=False)
class Transpose:
    boolean_homs: tuple
    algebra_homs: tuple
    forward: tuple  # index into algebra_homs for each boolean hom
    backward: tuple


def transpose(A, B, sk=None, power=None):
    """Bijection ``Hom(𝔖A, B) ≅ Hom(A, L[B])``, both directions, verified.

    Forward: ``φ ↦ (a ↦ φ ∘ 𝒯_a)``.  Backward: ``h ↦ (s ↦ h(s)(top))``.
    """
    base = A.base
    if sk is None:
        sk = skeleton(A)
    if power is None:
        power = boolean_power(base.algebra, B)
    phis = enumerate_boolean_homs(sk.skeleton, B)
    homs = enumerate_homomorphisms(A.algebra, power.algebra)
    hom_index = {h.map: i for i, h in enumerate(homs)}
    T = _T_rows(A)
    masks = np.vectorize(sk.mask_of, otypes=[np.int64])(T)  # (ℓ, a)

    forward = []
    for phi in phis:
        pushed = np.vectorize(phi, otypes=[np.int64])(masks)
        m = tuple(int(x) for x in power.index(pushed.T))
        if m not in hom_index:
            raise BijectionFailure("forward transpose is not a homomorphism")
        forward.append(hom_index[m])

    backward = []
    phi_index = {phi.atom_map: i for i, phi in enumerate(phis)}
    for h in homs:
        images = [int(power.xi[h.map[sk.inclusion[s]], base.top]) for s in range(sk.skeleton.size)]
        phi = BooleanHom.from_mask_map(sk.skeleton, B, images)
        if phi is None:
            raise BijectionFailure("backward transpose is not a Boolean homomorphism")
        backward.append(phi_index[phi.atom_map])

    ok = (
        len(phis) == len(homs)
        and all(backward[forward[i]] == i for i in range(len(phis)))
        and all(forward[backward[j]] == j for j in range(len(homs)))
    )
    if not ok:
        raise BijectionFailure(f"transposes are not inverse ({len(phis)} vs {len(homs)})")
    return Transpose(tuple(phis), tuple(homs), tuple(forward), tuple(backward))


@dataclass(frozen=True, eq=False)
class SkeletonBijection:
    homs: tuple
    restrictions: tuple  # Boolean homs 𝔖A -> 2, aligned with homs


def skeleton_hom_bijection(A, sk=None):
    """``Hom(A, L) ≅ Hom(𝔖A, 2)`` by restriction, with inverse
    ``h̄(a) = ℓ ⇔ φ(T_ℓ(a)) = 1``, verified both ways."""
    base = A.base
    if sk is None:
        sk = skeleton(A)
    two = FiniteBooleanAlgebra(1)
    homs = enumerate_homomorphisms(A.algebra, base.algebra)
    phis = enumerate_boolean_homs(sk.skeleton, two)
    restrictions = []
    for h in homs:
        images = [1 if h.map[sk.inclusion[s]] == base.top else 0 for s in range(sk.skeleton.size)]
        if any(h.map[sk.inclusion[s]] not in (base.bot, base.top) for s in range(sk.skeleton.size)):
            raise BijectionFailure("restriction leaves {bot, top}")
        phi = BooleanHom.from_mask_map(sk.skeleton, two, images)
        if phi is None:
            raise BijectionFailure("restriction is not a Boolean homomorphism")
        restrictions.append(phi)
    if len({p.atom_map for p in restrictions}) != len(homs) or len(homs) != len(phis):
        raise BijectionFailure(f"restriction is not bijective ({len(homs)} vs {len(phis)})")
    T = _T_rows(A)
    by_map = {h.map: h for h in homs}
    for phi in phis:
        rebuilt = []
        for a in range(A.size):
            hits = [ell for ell in range(base.size) if phi(sk.mask_of(int(T[ell, a]))) == 1]
            if len(hits) != 1:
                raise BijectionFailure("inverse construction is not single-valued")
            rebuilt.append(hits[0])
        h = by_map.get(tuple(rebuilt))
        if h is None or restrictions[homs.index(h)].atom_map != phi.atom_map:
            raise BijectionFailure("inverse construction does not invert restriction")
    return SkeletonBijection(tuple(homs), tuple(restrictions))


# --------------------------------------------------------------------------
# subalgebra functors


def chi_rows(A, S):
    R = A.base.reduct
    t = np.full(A.base.size, R.bot, dtype=np.intp)
    t[list(S.elements)] = R.top
    return A.apply_unary(t)


@dataclass(frozen=True, eq=False)
class QuotientResult:
    algebra: VarietyAlgebra
    surjection: Homomorphism
    raw: FiniteAlgebra


def quotient_functor(A, S):
    """``A`` modulo the congruence generated by ``(χ_S(a), top)`` for all ``a``,
    canonicalized over the base again."""
    top = A.constant(A.base.top)
    pairs = [(int(c), top) for c in chi_rows(A, S)]
    theta = congruence_generated(A.algebra, pairs)
    Q = quotient(A.algebra, theta)
    V = canonicalize(Q.algebra, A.base)
    surj = Homomorphism(A.algebra, V.algebra, Q.surjection.map)
    return QuotientResult(V, surj, Q.algebra)


def predicted_quotient_factors(A, S):
    """Factor-filter prediction on full products: keep factors inside ``S``."""
    keep = set(S.elements)
    return [f for f in A.factors if set(A.base.sub(f).elements) <= keep]


def inclusion_functor(B, S, base):
    """``S[B]`` viewed as a member over the base."""
    P = boolean_power(S.as_algebra(), B)
    return canonicalize(P.algebra, base)


def subalgebra_products(base, max_factors, subs=None, max_size=None, min_factors=1):
    """Full products of non-decreasing sequences of subuniverse ids."""
    ids = range(len(base.subuniverses)) if subs is None else subs
    out = []
    for r in range(min_factors, max_factors + 1):
        for combo in itertools.combinations_with_replacement(ids, r):
            size = int(np.prod([len(base.sub(f)) for f in combo], dtype=np.int64))
            if max_size is not None and size > max_size:
                continue
            out.append(VarietyAlgebra.product(base, combo))
    return out


def is_member_of(A, base):
    try:
        canonicalize(A, base)
    except SemiPrimalError:
        return False
    return True
