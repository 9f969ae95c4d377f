"""Primality, quasi-primality and semi-primality of lattice-based algebras.

The lattice median is a majority term, so a function on ``A`` is a term
function exactly when it preserves every subuniverse of ``A²``.  All three
semi-primality tests below start from that list of binary relations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import (
    direct_product,
    enumerate_subuniverses,
    internal_isomorphisms,
    is_identity_iso,
    subuniverse_closure,
)
from .errors import NotFLew, NotResiduated, RouteDisagreement
from .lattice import T_table, detect_lattice, residuum_from_monoid

ROUTES = ("T-route", "square-route", "discriminator-route")
LEVELS = ("primal", "semi-primal", "quasi-primal-only", "none")


@dataclass
class PrimalityVerdict:
    level: str
    route: str
    witness: dict = field(default_factory=dict)

    @property
    def semi_primal(self):
        return self.level in ("primal", "semi-primal")

    @property
    def quasi_primal(self):
        return self.level != "none"

    def to_json(self):
        return {"level": self.level, "route": self.route, "witness": self.witness or None}


@dataclass(frozen=True, eq=False)
class Square:
    """``A²`` with its subuniverses, each stored as an array of index pairs."""

    algebra: object
    product: object
    subuniverses: tuple
    pairs: tuple

    def labels(self, i):
        return [self.product.algebra.label(x) for x in self.subuniverses[i].elements]


def square(A):
    P = direct_product([A, A], name=f"{A.name}²")
    subs = tuple(enumerate_subuniverses(P.algebra))
    pairs = tuple(P.coords[list(s.elements)] for s in subs)
    return Square(A, P, subs, pairs)


def _mask(A, pairs):
    m = np.zeros((A.size, A.size), dtype=bool)
    m[pairs[:, 0], pairs[:, 1]] = True
    return m


def relation_violation(table, pairs, mask):
    """First tuple of rows of ``pairs`` sent outside the relation by ``table``.

    ``table`` acts coordinatewise; returns the offending row indices
    (lexicographic over the argument tuple) or None.
    """
    k = table.ndim
    shape = lambda a: tuple(-1 if b == a else 1 for b in range(k))  # noqa: E731
    xs = tuple(pairs[:, 0].reshape(shape(a)) for a in range(k))
    ys = tuple(pairs[:, 1].reshape(shape(a)) for a in range(k))
    ok = mask[table[xs], table[ys]]
    if ok.all():
        return None
    flat = int(np.argmin(ok.ravel()))
    return np.unravel_index(flat, ok.shape)


def preserves_square(A, table, sq=None):
    """None if ``table`` preserves every subuniverse of ``A²``, else a witness dict."""
    if sq is None:
        sq = square(A)
    table = np.asarray(table)
    for i, pairs in enumerate(sq.pairs):
        bad = relation_violation(table, pairs, _mask(A, pairs))
        if bad is not None:
            args = [tuple(int(c) for c in pairs[j]) for j in bad]
            return {"subuniverse": sq.labels(i), "arguments": [[A.label(x) for x in p] for p in args]}
    return None


def preserves_subuniverses(A, f):
    """None if ``f(a⃗)`` always lies in the subuniverse generated by ``a⃗``,
    else the first violating argument tuple in lexicographic order."""
    f = np.asarray(f)
    closures = {}
    for args in itertools.product(range(A.size), repeat=f.ndim):
        key = frozenset(args)
        if key not in closures:
            closures[key] = subuniverse_closure(A, key).mask
        if not closures[key][f[args]]:
            return args
    return None


def discriminator_table(n):
    """``t(x, y, z) = z`` if ``x = y`` else ``x``."""
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    return np.where(x == y, z, x).astype(np.intp)


def build_discriminator_from_T(A, R=None):
    """Evaluate ``(d(x,y) ∧ x) ∨ (c(x,y) ∧ z)`` with ``c = ⋁_ℓ T_ℓ(x) ∧ T_ℓ(y)``
    and ``d = T_bot(c)``."""
    if R is None:
        R = detect_lattice(A)
    n = A.size
    meet, join = R.meet, R.join
    c = np.full((n, n), R.bot, dtype=np.intp)
    for ell in range(n):
        T = T_table(R, ell)
        c = join[c, meet[T[:, None], T[None, :]]]
    d = T_table(R, R.bot)[c]
    x = np.arange(n)[:, None, None]
    z = np.arange(n)[None, None, :]
    return join[meet[d[:, :, None], x], meet[c[:, :, None], z]]


def is_quasi_primal(A, R=None, sq=None):
    """Does the ternary discriminator preserve every subuniverse of ``A²``?

    Returns ``(flag, witness)``.  ``R`` is only checked for existence: the
    median of the reduct is what makes the square test sound.
    """
    if R is None:
        R = detect_lattice(A)
    w = preserves_square(A, discriminator_table(A.size), sq)
    return w is None, ({"kind": "discriminator-not-preserved", **w} if w else None)


def _t_route(A, R, sq):
    for ell in range(A.size):
        w = preserves_square(A, T_table(R, ell), sq)
        if w is not None:
            return False, {"kind": "T-not-preserved", "element": A.label(ell), **w}
    return True, None


def _square_route(A, R, sq):
    for i, pairs in enumerate(sq.pairs):
        left, right = np.unique(pairs[:, 0]), np.unique(pairs[:, 1])
        if len(pairs) == len(left) * len(right):
            continue  # a product S₁ × S₂ (subuniverse membership is automatic)
        if np.array_equal(pairs[:, 0], pairs[:, 1]):
            continue  # a diagonal Δ_S
        return False, {"kind": "non-product-subuniverse", "subuniverse": sq.labels(i)}
    return True, None


def _discriminator_route(A, R, sq):
    ok, w = is_quasi_primal(A, R, sq)
    if not ok:
        return False, w
    for triple in internal_isomorphisms(A):
        if not is_identity_iso(triple):
            S1, S2, phi = triple
            return False, {
                "kind": "internal-isomorphism",
                "from": S1.labels(),
                "to": S2.labels(),
                "map": {A.label(k): A.label(v) for k, v in phi.items()},
            }
    return True, None


_ROUTE_FUNCS = {
    "T-route": _t_route,
    "square-route": _square_route,
    "discriminator-route": _discriminator_route,
}


def is_semi_primal(A, R=None, route="all", sq=None):
    """Semi-primality verdict by one route, or by all three (``route="all"``).

    The non-semi-primal level distinguishes quasi-primal algebras from the
    rest.  Disagreement between routes raises :class:`RouteDisagreement`.
    """
    if R is None:
        R = detect_lattice(A)
    if sq is None:
        sq = square(A)
    routes = ROUTES if route == "all" else (route,)
    if any(r not in _ROUTE_FUNCS for r in routes):
        raise ValueError(f"unknown route {route!r}")
    results = {r: _ROUTE_FUNCS[r](A, R, sq) for r in routes}
    flags = {r: ok for r, (ok, _) in results.items()}
    if len(set(flags.values())) > 1:
        raise RouteDisagreement(f"{A.name or 'algebra'}: {flags}")
    ok = next(iter(flags.values()))
    witness = {r: w for r, (_, w) in results.items() if w is not None}
    if route != "all":
        witness = witness.get(route) or {}
    if ok:
        return PrimalityVerdict("semi-primal", route, witness)
    qp, _ = is_quasi_primal(A, R, sq)
    return PrimalityVerdict("quasi-primal-only" if qp else "none", route, witness)


def is_primal(A, R=None, route="all", sq=None):
    """Primal iff semi-primal with ``A`` as its only subuniverse."""
    v = is_semi_primal(A, R, route, sq)
    if not v.semi_primal:
        return v
    subs = enumerate_subuniverses(A)
    if len(subs) == 1:
        return PrimalityVerdict("primal", route, v.witness)
    proper = {"kind": "proper-subuniverse", "subuniverse": subs[0].labels()}
    return PrimalityVerdict("semi-primal", route, {**v.witness, "not-primal": proper})


# --------------------------------------------------------------------------
# FL_ew shortcut


def idempotent_elements(A, prod_op="odot"):
    t = A.tables[prod_op]
    return tuple(int(x) for x in np.flatnonzero(t[np.arange(A.size), np.arange(A.size)] == np.arange(A.size)))


def flew_negation(A, R=None, prod_op="odot"):
    """``x → bot`` for the residuum of ``prod_op`` after validating FL_ew axioms."""
    if R is None:
        R = detect_lattice(A)
    t = A.tables[prod_op]
    i = np.arange(A.size)
    if not np.array_equal(t[R.top], i) or not np.array_equal(t[:, R.top], i):
        raise NotFLew("top is not the unit of the product")
    if not np.array_equal(t[t[:, :, None], i[None, None, :]], t[i[:, None, None], t[None, :, :]]):
        raise NotFLew("product is not associative")
    try:
        imp = residuum_from_monoid(R, prod_op)
    except NotResiduated as exc:
        raise NotFLew(str(exc)) from exc
    return imp[:, R.bot]


def flew_quasiprimal_witness(A, R=None, prod_op="odot", max_n=None):
    """Least ``n ≤ max_n`` with ``x ∨ ¬(xⁿ) = top`` for every ``x``, or None."""
    if R is None:
        R = detect_lattice(A)
    neg = flew_negation(A, R, prod_op)
    t = A.tables[prod_op]
    max_n = A.size if max_n is None else max_n
    i = np.arange(A.size)
    power = i.copy()
    for n in range(1, max_n + 1):
        if n > 1:
            power = t[power, i]
        if np.all(R.join[i, neg[power]] == R.top):
            return n
    return None


# --------------------------------------------------------------------------
# small-size oracle


def unary_term_functions(A):
    """All unary term functions of ``A`` by closing the projection and constants
    under the basic operations.  Exponential; meant for ``|A| ≤ 3``."""
    n = A.size
    found = {tuple(range(n))}
    found |= {(int(A.tables[op]),) * n for op, k in A.signature if k == 0}
    frontier = set(found)
    while frontier:
        new = set()
        funcs = sorted(found)
        for _, k, t in A._ops:
            for combo in itertools.product(funcs, repeat=k):
                if not any(f in frontier for f in combo):
                    continue
                g = tuple(int(t[tuple(f[x] for f in combo)]) for x in range(n))
                if g not in found:
                    new.add(g)
        found |= new
        frontier = new
    return found
