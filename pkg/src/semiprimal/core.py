"""Finite universal algebra kernel.

Carriers are always ``{0, ..., n-1}`` and every operation is stored as a
dense numpy table of shape ``(n,) * arity``.  Everything here is a pure
function of immutable inputs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvalidAlgebra, SignatureMismatch, SizeCapExceeded

DEFAULT_CAP = 10**5


@dataclass(frozen=True)
class Signature:
    """Ordered operation symbols with their arities."""

    ops: tuple

    def __post_init__(self):
        ops = tuple((str(name), int(k)) for name, k in self.ops)
        names = [name for name, _ in ops]
        if len(set(names)) != len(names):
            raise InvalidAlgebra(f"duplicate operation names in signature: {names}")
        if any(k < 0 for _, k in ops):
            raise InvalidAlgebra("arities must be non-negative")
        object.__setattr__(self, "ops", ops)

    @property
    def names(self):
        return tuple(name for name, _ in self.ops)

    def arity(self, name):
        for n, k in self.ops:
            if n == name:
                return k
        raise KeyError(name)

    def without(self, *names):
        return Signature(tuple(op for op in self.ops if op[0] not in names))

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def __contains__(self, name):
        return name in self.names


def _frozen(arr):
    out = np.array(arr, dtype=np.intp)
    out.setflags(write=False)
    return out


class FiniteAlgebra:
    """A finite algebra given by full operation tables.

    Parameters
    ----------
    size : int
        Number of elements ``n``; the carrier is ``range(n)``.
    signature : Signature or sequence of (name, arity)
    tables : mapping name -> array-like
        Table of an ``k``-ary operation has shape ``(n,) * k``; a nullary
        operation is a scalar.
    name, element_names, lattice
        Metadata only.  ``lattice`` is an optional ``(meet, join)`` hint.
    """

    def __init__(self, size, signature, tables, name="", element_names=None, lattice=None):
        if not isinstance(signature, Signature):
            signature = Signature(tuple(signature))
        size = int(size)
        if size < 1:
            raise InvalidAlgebra("an algebra needs at least one element")
        frozen = {}
        for op, k in signature:
            if op not in tables:
                raise InvalidAlgebra(f"missing table for operation {op!r}")
            t = np.asarray(tables[op])
            if t.shape != (size,) * k:
                raise InvalidAlgebra(
                    f"table of {op!r} has shape {t.shape}, expected {(size,) * k}"
                )
            if t.size and (t.min() < 0 or t.max() >= size):
                raise InvalidAlgebra(f"table of {op!r} has entries outside 0..{size - 1}")
            frozen[op] = _frozen(t)
        self.size = size
        self.signature = signature
        self.tables = frozen
        self.name = name
        self.element_names = tuple(element_names) if element_names is not None else None
        if self.element_names is not None and len(self.element_names) != size:
            raise InvalidAlgebra("element_names must have one entry per element")
        self.lattice = tuple(lattice) if lattice is not None else None
        self._ops = tuple((op, k, frozen[op]) for op, k in signature if k >= 1)
        self.constants = _frozen(sorted({int(frozen[op]) for op, k in signature if k == 0}))

    def __len__(self):
        return self.size

    def __repr__(self):
        label = self.name or "FiniteAlgebra"
        return f"<{label}: {self.size} elements, ops {list(self.signature.names)}>"

    def op(self, name):
        return self.tables[name]

    def label(self, i):
        if self.element_names is None:
            return str(i)
        return self.element_names[i]

    def index_of(self, label):
        if self.element_names is None:
            return int(label)
        return self.element_names.index(label)

    def same_tables(self, other):
        """True when both algebras have identical signature and tables."""
        return (
            self.size == other.size
            and self.signature == other.signature
            and all(np.array_equal(self.tables[o], other.tables[o]) for o in self.signature.names)
        )

    def reduct(self, names, name=None):
        """Drop every operation not listed in ``names``."""
        sig = Signature(tuple(op for op in self.signature if op[0] in names))
        lattice = self.lattice if self.lattice and set(self.lattice) <= set(names) else None
        return FiniteAlgebra(
            self.size,
            sig,
            {op: self.tables[op] for op in sig.names},
            name=name or self.name,
            element_names=self.element_names,
            lattice=lattice,
        )

    def restrict(self, elements, name=""):
        """Subalgebra on a closed subset, relabelled to ``0..m-1`` in sorted order."""
        elements = np.array(sorted(int(e) for e in elements), dtype=np.intp)
        pos = np.full(self.size, -1, dtype=np.intp)
        pos[elements] = np.arange(len(elements))
        tables = {}
        for op, k in self.signature:
            t = self.tables[op]
            sub = t[np.ix_(*([elements] * k))] if k else t
            mapped = pos[sub]
            if np.any(mapped < 0):
                raise InvalidAlgebra("subset is not closed under " + op)
            tables[op] = mapped
        names = None
        if self.element_names is not None:
            names = [self.element_names[e] for e in elements]
        return FiniteAlgebra(
            len(elements), self.signature, tables, name=name, element_names=names, lattice=self.lattice
        )


def _check_same_signature(A, B):
    if A.signature != B.signature:
        raise SignatureMismatch(f"{A.signature.names} vs {B.signature.names}")


# --------------------------------------------------------------------------
# subuniverses


def _closure_mask(A, mask, new=None):
    """Close a boolean membership mask under all operations of ``A``.

    ``new`` lists the elements whose combinations have not been explored
    yet; everything else in ``mask`` must already be closed.
    """
    mask = np.array(mask, dtype=bool)
    if new is None:
        new = np.flatnonzero(mask)
    new = np.asarray(new, dtype=np.intp)
    missing = A.constants[~mask[A.constants]]
    if missing.size:
        mask[missing] = True
        new = np.concatenate([new, missing])
    while new.size:
        known = np.flatnonzero(mask)
        found = []
        for _, k, t in A._ops:
            for pos in range(k):
                idx = [known] * k
                idx[pos] = new
                found.append(t[np.ix_(*idx)].ravel())
        if not found:
            break
        vals = np.unique(np.concatenate(found))
        new = vals[~mask[vals]]
        mask[new] = True
    return mask


@dataclass(frozen=True, eq=False)
class SubUniverse:
    parent: FiniteAlgebra
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, SubUniverse)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    @property
    def _set(self):
        return frozenset(self.elements)

    @property
    def mask(self):
        m = np.zeros(self.parent.size, dtype=bool)
        m[list(self.elements)] = True
        return m

    def issubset(self, other):
        return set(self.elements) <= set(other.elements)

    def as_algebra(self, name=""):
        return self.parent.restrict(self.elements, name=name)

    def labels(self):
        return [self.parent.label(e) for e in self.elements]

    def __repr__(self):
        return f"SubUniverse({self.labels()})"


def _sub_from_mask(A, mask):
    return SubUniverse(A, tuple(int(i) for i in np.flatnonzero(mask)))


def subuniverse_closure(A, seed):
    """Smallest subuniverse of ``A`` containing ``seed`` and all constants."""
    seed = list(seed)
    if any(not 0 <= s < A.size for s in seed):
        raise IndexError("seed element out of range")
    mask = np.zeros(A.size, dtype=bool)
    mask[seed] = True
    return _sub_from_mask(A, _closure_mask(A, mask))


def enumerate_subuniverses(A):
    """All subuniverses of ``A`` sorted by (size, elements).

    Breadth-first search over closures: each found subuniverse is extended
    by every single missing element, duplicates are discarded by mask.
    """
    start = _closure_mask(A, np.zeros(A.size, dtype=bool))
    seen = {start.tobytes(): start}
    queue = [start]
    while queue:
        S = queue.pop()
        for x in np.flatnonzero(~S):
            m = S.copy()
            m[x] = True
            T = _closure_mask(A, m, new=[x])
            key = T.tobytes()
            if key not in seen:
                seen[key] = T
                queue.append(T)
    subs = [_sub_from_mask(A, m) for m in seen.values()]
    subs.sort(key=lambda s: (len(s), s.elements))
    return subs


def generating_set(A):
    """Greedy generating set: repeatedly add the element whose closure grows most.

    Ties go to the smaller index.  An element that already lies in the
    closure computed for an earlier candidate of the same round cannot beat
    that candidate and is skipped.
    """
    cur = _closure_mask(A, np.zeros(A.size, dtype=bool))
    gens = []
    while not cur.all():
        best, best_mask, best_size = None, None, -1
        covered = cur.copy()
        for x in np.flatnonzero(~cur):
            if covered[x] and best is not None:
                continue
            m = cur.copy()
            m[x] = True
            m = _closure_mask(A, m, new=[x])
            covered |= m
            s = int(m.sum())
            if s > best_size:
                best, best_mask, best_size = int(x), m, s
                if s == A.size:
                    break
        gens.append(best)
        cur = best_mask
    return gens


# --------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class Homomorphism:
    dom: FiniteAlgebra
    cod: FiniteAlgebra
    map: tuple

    def __call__(self, a):
        return self.map[a]

    def __eq__(self, other):
        return (
            isinstance(other, Homomorphism)
            and self.dom is other.dom
            and self.cod is other.cod
            and self.map == other.map
        )

    def __hash__(self):
        return hash((id(self.dom), id(self.cod), self.map))

    @property
    def array(self):
        return np.array(self.map, dtype=np.intp)

    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    def is_surjective(self):
        return len(set(self.map)) == self.cod.size

    def image(self):
        return SubUniverse(self.cod, tuple(sorted(set(self.map))))

    def __repr__(self):
        return f"Homomorphism({list(self.map)})"


def compose(outer, inner):
    """``outer ∘ inner`` (apply ``inner`` first)."""
    if inner.cod is not outer.dom and inner.cod.size != outer.dom.size:
        raise SignatureMismatch("maps are not composable")
    return Homomorphism(inner.dom, outer.cod, tuple(outer.map[i] for i in inner.map))


def is_homomorphism(A, B, mapping):
    """Direct check that ``mapping`` commutes with every operation."""
    _check_same_signature(A, B)
    h = np.asarray(mapping, dtype=np.intp)
    if h.shape != (A.size,) or (h.size and (h.min() < 0 or h.max() >= B.size)):
        return False
    for op, k in A.signature:
        tA, tB = A.tables[op], B.tables[op]
        if k == 0:
            if h[tA] != tB:
                return False
            continue
        if not np.array_equal(h[tA], tB[np.ix_(*([h] * k))]):
            return False
    return True


def _propagate(A, B, h, new, used):
    """Extend the partial map ``h`` (``-1`` = undefined) along the operations.

    Every combination involving at least one element of ``new`` is
    evaluated on both sides; results either confirm an existing value,
    define a new one, or expose a conflict (returns False).  ``used`` is
    the image mask when searching for injective maps, else None.
    """
    nB = B.size
    while new.size:
        known = np.flatnonzero(h >= 0)
        a_parts, b_parts = [], []
        for op, k, tA in A._ops:
            tB = B.tables[op]
            for pos in range(k):
                idx = [known] * k
                idx[pos] = new
                a_parts.append(tA[np.ix_(*idx)].ravel())
                b_parts.append(tB[np.ix_(*[h[i] for i in idx])].ravel())
        if not a_parts:
            break
        a = np.concatenate(a_parts)
        b = np.concatenate(b_parts)
        cur = h[a]
        defined = cur >= 0
        if np.any(cur[defined] != b[defined]):
            return False
        a, b = a[~defined], b[~defined]
        if a.size == 0:
            break
        codes = np.unique(a * nB + b)
        ua, ub = codes // nB, codes % nB
        if np.unique(ua).size != ua.size:
            return False
        if used is not None:
            if np.unique(ub).size != ub.size or used[ub].any():
                return False
            used[ub] = True
        h[ua] = ub
        new = ua
    return True


def _seed_constants(A, B, h, used):
    a = np.array([int(A.tables[op]) for op, k in A.signature if k == 0], dtype=np.intp)
    b = np.array([int(B.tables[op]) for op, k in A.signature if k == 0], dtype=np.intp)
    if a.size == 0:
        return True
    nB = B.size
    codes = np.unique(a * nB + b)
    ua, ub = codes // nB, codes % nB
    if np.unique(ua).size != ua.size:
        return False
    if used is not None:
        if np.unique(ub).size != ub.size:
            return False
        used[ub] = True
    h[ua] = ub
    return _propagate(A, B, h, ua, used)


def iter_homomorphisms(A, B, injective=False, gens=None):
    """Lazily yield homomorphism maps ``A -> B`` in backtracking order.

    Backtracks over the images of a greedy generating set of ``A`` and
    propagates every assignment through the operation tables.
    """
    _check_same_signature(A, B)
    if injective and A.size > B.size:
        return
    h = np.full(A.size, -1, dtype=np.intp)
    used = np.zeros(B.size, dtype=bool) if injective else None
    if not _seed_constants(A, B, h, used):
        return
    if gens is None:
        gens = generating_set(A)

    def extend(i, h, used):
        if i == len(gens):
            if np.all(h >= 0):
                yield tuple(int(x) for x in h)
            return
        g = gens[i]
        if h[g] >= 0:
            yield from extend(i + 1, h, used)
            return
        for b in range(B.size):
            if used is not None and used[b]:
                continue
            h2 = h.copy()
            u2 = used.copy() if used is not None else None
            h2[g] = b
            if u2 is not None:
                u2[b] = True
            if _propagate(A, B, h2, np.array([g], dtype=np.intp), u2):
                yield from extend(i + 1, h2, u2)

    yield from extend(0, h, used)


def enumerate_homomorphisms(A, B):
    """Every homomorphism ``A -> B``, sorted lexicographically by map."""
    maps = sorted(iter_homomorphisms(A, B))
    return [Homomorphism(A, B, m) for m in maps]


def find_isomorphism(A, B):
    """First isomorphism ``A -> B`` in search order, or None."""
    _check_same_signature(A, B)
    if A.size != B.size:
        return None
    for m in iter_homomorphisms(A, B, injective=True):
        return Homomorphism(A, B, m)
    return None


def internal_isomorphisms(A, subs=None):
    """All isomorphisms between (not necessarily distinct) subalgebras of ``A``.

    Returns triples ``(S1, S2, phi)`` where ``phi`` is a dict from elements
    of ``S1`` to elements of ``S2``.  Identities are always included.
    """
    if subs is None:
        subs = enumerate_subuniverses(A)
    algebras = [s.as_algebra() for s in subs]
    out = []
    for i, S1 in enumerate(subs):
        for j, S2 in enumerate(subs):
            if len(S1) != len(S2):
                continue
            isos = sorted(iter_homomorphisms(algebras[i], algebras[j], injective=True))
            for m in isos:
                phi = {S1.elements[x]: S2.elements[y] for x, y in enumerate(m)}
                out.append((S1, S2, phi))
    return out


def is_identity_iso(triple):
    S1, S2, phi = triple
    return S1 == S2 and all(k == v for k, v in phi.items())


# --------------------------------------------------------------------------
# products


@dataclass(frozen=True, eq=False)
class Product:
    """A direct product with its mixed-radix coordinate decoding.

    Element ``i`` of ``algebra`` is the tuple ``coords[i]``; the first
    coordinate is the most significant digit, so index order equals
    lexicographic order of tuples.
    """

    algebra: FiniteAlgebra
    factors: tuple
    coords: np.ndarray

    def encode(self, tup):
        idx = 0
        for c, F in zip(tup, self.factors):
            idx = idx * F.size + int(c)
        return idx

    def decode(self, i):
        return tuple(int(c) for c in self.coords[i])

    def projection(self, i):
        return Homomorphism(self.algebra, self.factors[i], tuple(int(c) for c in self.coords[:, i]))


def direct_product(As, signature=None, cap=DEFAULT_CAP, name=""):
    """Direct product of ``As`` with componentwise tables.

    The empty product is the one-element algebra; it needs ``signature``.
    """
    As = list(As)
    if not As and signature is None:
        raise SignatureMismatch("empty product needs an explicit signature")
    sig = signature if signature is not None else As[0].signature
    if not isinstance(sig, Signature):
        sig = Signature(tuple(sig))
    for F in As:
        if F.signature != sig:
            raise SignatureMismatch(f"{F.signature.names} vs {sig.names}")
    sizes = [F.size for F in As]
    N = int(np.prod(sizes, dtype=object)) if sizes else 1
    if N > cap:
        raise SizeCapExceeded(f"product has {N} elements, cap is {cap}")
    m = len(As)
    coords = np.zeros((N, m), dtype=np.intp)
    strides = []
    stride = 1
    for j in reversed(range(m)):
        coords[:, j] = (np.arange(N) // stride) % sizes[j]
        strides.append(stride)
        stride *= sizes[j]
    strides = strides[::-1]
    tables = {}
    for op, k in sig:
        if k == 0:
            tables[op] = sum(int(F.tables[op]) * s for F, s in zip(As, strides))
            continue
        res = np.zeros((N,) * k, dtype=np.intp)
        for j, F in enumerate(As):
            args = [coords[:, j].reshape(tuple(N if a == b else 1 for b in range(k))) for a in range(k)]
            res += F.tables[op][tuple(args)] * strides[j]
        tables[op] = res
    names = None
    if As and all(F.element_names is not None for F in As):
        names = ["(" + ",".join(As[j].element_names[c] for j, c in enumerate(row)) + ")" for row in coords]
    lattice = As[0].lattice if As else None
    coords.setflags(write=False)
    alg = FiniteAlgebra(N, sig, tables, name=name, element_names=names, lattice=lattice)
    return Product(alg, tuple(As), coords)


# --------------------------------------------------------------------------
# congruences and quotients


@dataclass(frozen=True, eq=False)
class Congruence:
    """Partition of the carrier; blocks are numbered by first occurrence."""

    parent: FiniteAlgebra
    labels: tuple

    @classmethod
    def from_labels(cls, A, labels):
        relabel = {}
        canon = []
        for x in labels:
            if x not in relabel:
                relabel[x] = len(relabel)
            canon.append(relabel[x])
        return cls(A, tuple(canon))

    @classmethod
    def identity(cls, A):
        return cls(A, tuple(range(A.size)))

    @classmethod
    def full(cls, A):
        return cls(A, (0,) * A.size)

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.parent is other.parent and self.labels == other.labels

    def __hash__(self):
        return hash((id(self.parent), self.labels))

    @property
    def num_blocks(self):
        return max(self.labels) + 1

    def blocks(self):
        out = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.labels):
            out[b].append(x)
        return out

    def related(self, a, b):
        return self.labels[a] == self.labels[b]

    def leq(self, other):
        """``self ⊆ other`` as equivalence relations."""
        return all(other.labels[a] == other.labels[b]
                   for blk in self.blocks() for a in blk for b in blk)

    def is_compatible(self):
        lab = np.array(self.labels, dtype=np.intp)
        A = self.parent
        for _, k, t in A._ops:
            # compatible iff the label of f(args) depends only on the labels of args
            full = lab[t]
            keys = [lab.reshape([-1 if a == b else 1 for b in range(k)]) for a in range(k)]
            keys = np.broadcast_arrays(*keys)
            nb = self.num_blocks
            code = np.zeros(full.shape, dtype=np.int64)
            for key in keys:
                code = code * nb + key
            code = code.ravel()
            vals = full.ravel()
            order = np.argsort(code, kind="stable")
            c, v = code[order], vals[order]
            same = c[1:] == c[:-1]
            if np.any(v[1:][same] != v[:-1][same]):
                return False
        return True


def kernel(h):
    return Congruence.from_labels(h.dom, h.map)


def congruence_generated(A, pairs):
    """Smallest congruence of ``A`` containing ``pairs``.

    Union-find seeded with the pairs.  Every successful merge of ``a`` and
    ``b`` queues the pair; for each queued pair, each operation and each
    argument position, all translates ``f(.., a, ..)`` and ``f(.., b, ..)``
    are merged, until the queue empties.
    """
    parent = list(range(A.size))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    queue = []

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra
        queue.append((a, b))

    for a, b in pairs:
        if not (0 <= a < A.size and 0 <= b < A.size):
            raise IndexError("pair element out of range")
        union(int(a), int(b))
    while queue:
        a, b = queue.pop()
        for _, k, t in A._ops:
            for pos in range(k):
                xs = np.take(t, a, axis=pos).ravel()
                ys = np.take(t, b, axis=pos).ravel()
                diff = xs != ys
                for x, y in zip(xs[diff].tolist(), ys[diff].tolist()):
                    union(x, y)
    return Congruence.from_labels(A, [find(x) for x in range(A.size)])


@dataclass(frozen=True, eq=False)
class Quotient:
    algebra: FiniteAlgebra
    surjection: Homomorphism
    congruence: Congruence


def quotient(A, theta):
    """Quotient algebra ``A/theta``; block ``i`` becomes element ``i``."""
    if theta.parent is not A:
        raise ValueError("congruence belongs to a different algebra")
    lab = np.array(theta.labels, dtype=np.intp)
    reps = np.array([blk[0] for blk in theta.blocks()], dtype=np.intp)
    tables = {}
    for op, k in A.signature:
        t = A.tables[op]
        tables[op] = lab[t[np.ix_(*([reps] * k))]] if k else lab[t]
    names = None
    if A.element_names is not None:
        names = ["[" + A.element_names[r] + "]" for r in reps]
    Q = FiniteAlgebra(len(reps), A.signature, tables, name=(A.name + "/θ") if A.name else "",
                      element_names=names, lattice=A.lattice)
    return Quotient(Q, Homomorphism(A, Q, tuple(int(x) for x in lab)), theta)


def image_algebra(h):
    """The image of ``h`` as a subalgebra of the codomain."""
    return h.image().as_algebra()


def trivial_algebra(signature, name="trivial"):
    if not isinstance(signature, Signature):
        signature = Signature(tuple(signature))
    tables = {op: np.zeros((1,) * k, dtype=np.intp) if k else 0 for op, k in signature}
    return FiniteAlgebra(1, signature, tables, name=name)


def all_maps(n, m) -> Iterator[tuple]:
    """Every function ``range(n) -> range(m)`` as a tuple (brute force helper)."""
    return itertools.product(range(m), repeat=n)
