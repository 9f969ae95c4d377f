"""Bounded-lattice reducts and the unary maps derived from them."""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousLatticeWarning, NoLatticeReduct, NotResiduated

PREFERRED_NAMES = (("meet", "join"), ("∧", "∨"), ("and", "or"))


def _is_lattice_pair(meet, join):
    n = meet.shape[0]
    idx = np.arange(n)
    for t in (meet, join):
        if not np.array_equal(t[idx, idx], idx):
            return False
        if not np.array_equal(t, t.T):
            return False
        # (x*y)*z == x*(y*z)
        if not np.array_equal(t[t[:, :, None], idx[None, None, :]],
                              t[idx[:, None, None], t[None, :, :]]):
            return False
    # absorption: x ∧ (x ∨ y) = x and x ∨ (x ∧ y) = x
    xs = np.broadcast_to(idx[:, None], (n, n))
    if not np.array_equal(meet[xs, join], xs):
        return False
    if not np.array_equal(join[xs, meet], xs):
        return False
    return True


def _bounds(meet):
    n = meet.shape[0]
    leq = meet == np.arange(n)[:, None]
    bots = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if bots.size != 1 or tops.size != 1 or bots[0] == tops[0]:
        return None
    return int(bots[0]), int(tops[0])


@dataclass(frozen=True, eq=False)
class LatticeReduct:
    algebra: object
    meet_op: str
    join_op: str
    bot: int
    top: int
    ambiguous: bool = False

    @property
    def meet(self):
        return self.algebra.tables[self.meet_op]

    @property
    def join(self):
        return self.algebra.tables[self.join_op]

    @property
    def size(self):
        return self.algebra.size

    def leq(self):
        return order_leq(self)

    def meet_all(self, xs):
        out = self.top
        for x in xs:
            out = int(self.meet[out, x])
        return out

    def join_all(self, xs):
        out = self.bot
        for x in xs:
            out = int(self.join[out, x])
        return out


def _validate(A, meet_op, join_op):
    try:
        meet, join = A.tables[meet_op], A.tables[join_op]
    except KeyError:
        return None
    if meet.ndim != 2 or join.ndim != 2:
        return None
    if not _is_lattice_pair(meet, join):
        return None
    return _bounds(meet)


def detect_lattice(A, hints=None):
    """Find and validate the bounded-lattice reduct of ``A``.

    ``hints`` (or the algebra's own ``lattice`` metadata) names the meet and
    join operations.  Without hints, conventionally named pairs are tried
    first, then every ordered pair of binary operations in signature order.
    A second, genuinely different valid pair triggers an
    :class:`AmbiguousLatticeWarning`; the first match is kept.
    """
    if hints is None:
        hints = A.lattice
    if hints is not None:
        meet_op, join_op = hints
        b = _validate(A, meet_op, join_op)
        if b is None:
            raise NoLatticeReduct(f"{meet_op!r}/{join_op!r} do not form a bounded lattice")
        return LatticeReduct(A, meet_op, join_op, *b)

    binary = [op for op, k in A.signature if k == 2]
    candidates = [p for p in PREFERRED_NAMES if p[0] in binary and p[1] in binary]
    candidates += [p for p in itertools.permutations(binary, 2) if p not in candidates]
    found = []
    for meet_op, join_op in candidates:
        b = _validate(A, meet_op, join_op)
        if b is not None:
            found.append((meet_op, join_op, b))
    if not found:
        raise NoLatticeReduct("no pair of binary operations forms a bounded lattice")
    meet_op, join_op, b = found[0]
    others = [f for f in found[1:] if {f[0], f[1]} != {meet_op, join_op}]
    if others:
        warnings.warn(
            f"several lattice reducts found, using {meet_op}/{join_op}", AmbiguousLatticeWarning
        )
    return LatticeReduct(A, meet_op, join_op, *b, ambiguous=bool(others))


def order_leq(R):
    """Boolean table ``leq[x, y]`` meaning ``x <= y`` (i.e. ``x ∧ y = x``)."""
    return R.meet == np.arange(R.size)[:, None]


@dataclass(frozen=True)
class DerivedUnary:
    kind: str
    parameter: object
    table: tuple

    @property
    def array(self):
        return np.array(self.table, dtype=np.intp)


def T_table(R, ell):
    t = np.full(R.size, R.bot, dtype=np.intp)
    t[ell] = R.top
    return t


def tau_table(R, ell):
    leq = order_leq(R)
    return np.where(leq[ell, :], R.top, R.bot).astype(np.intp)


def chi_table(R, S):
    t = np.full(R.size, R.bot, dtype=np.intp)
    t[list(S)] = R.top
    return t


def derived_unary(R, kind, param):
    """Tables of ``T`` (indicator of one element), ``tau`` (indicator of an
    up-set) and ``chi`` (indicator of a subset), valued in ``{bot, top}``.

    ``tau`` uses the non-strict order, so incomparable elements go to bot.
    """
    if kind == "T":
        if not 0 <= param < R.size:
            raise IndexError(param)
        t = T_table(R, param)
    elif kind == "tau":
        if not 0 <= param < R.size:
            raise IndexError(param)
        t = tau_table(R, param)
    elif kind == "chi":
        S = tuple(param.elements) if hasattr(param, "elements") else tuple(param)
        if any(not 0 <= s < R.size for s in S):
            raise IndexError(param)
        t = chi_table(R, S)
        param = S
    else:
        raise ValueError(f"unknown derived unary kind {kind!r}")
    return DerivedUnary(kind, param, tuple(int(x) for x in t))


def median_eval(R):
    """Ternary table of ``(x∧y) ∨ (x∧z) ∨ (y∧z)``."""
    n = R.size
    meet, join = R.meet, R.join
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    return join[join[meet[x, y], meet[x, z]], meet[y, z]]


def residuum_from_monoid(R, prod_op):
    """Residual ``x → y = max{z : x⊙z ≤ y}`` of a commutative monotone product.

    Raises :class:`NotResiduated` when the product is not commutative or
    monotone, when some maximum does not exist, or when the resulting table
    fails ``x⊙y ≤ z ⇔ x ≤ y→z`` on some triple.
    """
    prod = R.algebra.tables[prod_op]
    n = R.size
    leq = order_leq(R)
    if not np.array_equal(prod, prod.T):
        raise NotResiduated(f"{prod_op} is not commutative")
    for x, y in zip(*np.nonzero(leq)):
        if not leq[prod[x], prod[y]].all():
            raise NotResiduated(f"{prod_op} is not monotone")
    imp = np.zeros((n, n), dtype=np.intp)
    for x in range(n):
        for y in range(n):
            cands = np.flatnonzero(leq[prod[x, :], y])
            tops = [z for z in cands if leq[cands, z].all()]
            if not tops:
                raise NotResiduated(f"no largest z with {x}⊙z <= {y}")
            imp[x, y] = tops[0]
    # x⊙y <= z  iff  x <= y→z, on all triples
    lhs = leq[prod[:, :, None], np.arange(n)[None, None, :]]
    rhs = leq[np.arange(n)[:, None, None], imp[None, :, :]]
    if not np.array_equal(lhs, rhs):
        raise NotResiduated("residuation law fails")
    return imp
