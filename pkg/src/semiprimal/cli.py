"""Command-line entry point: ``semiprimal <command> ...``.

Exit codes: 0 success, 1 a checked property failed, 2 bad input.  With
``--json`` exactly one JSON document is written to standard output.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import catalog, jsonio
from .boolean import bool_algebra
from .core import (
    DEFAULT_CAP,
    enumerate_homomorphisms,
    enumerate_subuniverses,
)
from .duality import roundtrip_algebra, roundtrip_space, sigma_obj
from .errors import (
    BijectionFailure,
    NotSurjectiveWarning,
    RoundTripFailure,
    RouteDisagreement,
    SemiPrimalError,
)
from .experiments import murskii_sample, route_fuzz
from .functors import (
    Base,
    boolean_power,
    canonicalize,
    quotient_functor,
    skeleton,
    skeleton_hom_bijection,
    transpose,
    unit_embedding,
)
from .primality import ROUTES, is_primal, is_quasi_primal, is_semi_primal

PROPERTY_FAILURES = (RouteDisagreement, BijectionFailure, RoundTripFailure)


class InputError(Exception):
    pass


def load_algebra(ref):
    """A JSON file path or a catalog key such as ``lukasiewicz4``."""
    if Path(ref).is_file():
        return jsonio.algebra_from_json(jsonio.load(ref))
    try:
        return catalog.build(ref).algebra
    except (KeyError, ValueError) as exc:
        raise InputError(f"{ref!r} is neither a file nor a catalog key") from exc


def _base(args, doc=None):
    ref = args.base or (doc or {}).get("base")
    if ref is None:
        raise InputError("--base is required")
    return Base(load_algebra(ref)), ref


def load_member(ref, args):
    """A member of the variety: member JSON (with ``factors``) or any algebra."""
    doc = jsonio.load(ref) if Path(ref).is_file() else None
    base, base_ref = _base(args, doc)
    if doc is not None and "factors" in doc:
        return jsonio.variety_from_json(doc, base), base_ref
    A = jsonio.algebra_from_json(doc) if doc is not None else load_algebra(ref)
    with warnings.catch_warnings():
        warnings.simplefilter("error", NotSurjectiveWarning)
        try:
            return canonicalize(A, base, cap=args.cap), base_ref
        except NotSurjectiveWarning as exc:
            raise BijectionFailure(str(exc)) from exc


# --------------------------------------------------------------------------
# commands; each returns (payload dict, human text)


def cmd_check(args):
    A = load_algebra(args.algebra)
    if args.property == "quasiprimal":
        ok, w = is_quasi_primal(A)
        payload = {"level": "quasi-primal" if ok else "none", "route": "discriminator", "witness": w}
    elif args.property == "primal":
        payload = is_primal(A, route=args.route).to_json()
    else:
        payload = is_semi_primal(A, route=args.route).to_json()
    text = f"{A.name or args.algebra}: {payload['level']} ({payload['route']})"
    if payload["witness"]:
        text += "\nwitness: " + json.dumps(payload["witness"], ensure_ascii=False)
    return payload, text


def cmd_subalgebras(args):
    A = load_algebra(args.algebra)
    subs = [s.labels() for s in enumerate_subuniverses(A)]
    return {"subuniverses": subs}, "\n".join("{" + ", ".join(s) + "}" for s in subs)


def cmd_homs(args):
    A, B = load_algebra(args.source), load_algebra(args.target)
    homs = [list(h.map) for h in enumerate_homomorphisms(A, B)]
    return {"count": len(homs), "homs": homs}, f"{len(homs)} homomorphisms\n" + "\n".join(
        str(h) for h in homs)


def cmd_skeleton(args):
    V, _ = load_member(args.member, args)
    sk = skeleton(V)
    elements = [V.algebra.label(e) for e in sk.inclusion]
    payload = {"atoms": sk.skeleton.atom_count, "elements": elements}
    return payload, f"Boolean skeleton 2^{sk.skeleton.atom_count}: " + " ".join(elements)


def cmd_boolpower(args):
    L = load_algebra(args.algebra)
    P = boolean_power(L, bool_algebra(args.atoms, cap=args.cap), cap=args.cap)
    if args.out:
        jsonio.dump(jsonio.algebra_to_json(P.algebra), args.out)
    return jsonio.algebra_to_json(P.algebra), f"{P.algebra.name}: {P.algebra.size} elements"


def cmd_dual(args):
    V, base_ref = load_member(args.member, args)
    X = sigma_obj(V)
    return jsonio.stonel_to_json(X, base_ref), f"{X.points} points, labels {list(X.v)}"


def cmd_roundtrip(args):
    if args.kind == "algebra":
        V, _ = load_member(args.input, args)
        h = roundtrip_algebra(V)
        return {"iso": list(h.map), "verified": True}, "iso verified"
    doc = jsonio.load(args.input)
    base, _ = _base(args, doc)
    m = roundtrip_space(jsonio.stonel_from_json(doc, base))
    return {"iso": list(m.map), "verified": True}, "iso verified"


def cmd_adjoint(args):
    V, _ = load_member(args.member, args)
    sk = skeleton(V)
    unit_embedding(V, sk)
    sb = skeleton_hom_bijection(V, sk)
    counts = {}
    for k in range(args.atoms + 1):
        counts[k] = len(transpose(V, bool_algebra(k), sk).boolean_homs)
    payload = {"skeleton_atoms": sk.skeleton.atom_count, "points": len(sb.homs),
               "transpose_counts": counts, "verified": True}
    return payload, f"adjunction bijections verified for 2^0..2^{args.atoms}: {counts}"


def cmd_quotient(args):
    V, base_ref = load_member(args.member, args)
    if not 0 <= args.sub < len(V.base.subuniverses):
        raise InputError(f"--sub must be a subuniverse id below {len(V.base.subuniverses)}")
    Q = quotient_functor(V, V.base.sub(args.sub))
    payload = {"quotient": jsonio.variety_to_json(Q.algebra, base_ref),
               "surjection": list(Q.surjection.map)}
    return payload, f"quotient has {Q.algebra.size} elements, factors {list(Q.algebra.factors)}"


def cmd_catalog(args):
    if args.action == "list":
        rows = [{"key": e.label, "size": e.algebra.size, "expected": e.expected}
                for e in catalog.list_entries()]
        return {"entries": rows}, "\n".join(f"{r['key']:<22} {r['size']:>3}  "
                                            f"{r['expected'].get('level', '')}" for r in rows)
    if args.key is None:
        raise InputError("catalog build needs a key")
    try:
        entry = catalog.build(args.key, args.n)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    doc = jsonio.algebra_to_json(entry.algebra)
    if args.out:
        jsonio.dump(doc, args.out)
    return doc, f"{entry.label}: {entry.algebra.size} elements"


def cmd_experiments(args):
    if args.kind == "murskii":
        r = murskii_sample(args.chain, args.ops, args.samples, args.seed, args.budget)
        lo, hi = r.interval
        return r.to_json(), (f"{r.semi_primal_count}/{r.sample_count} semi-primal "
                             f"({r.fraction:.3f}, 95% Wilson [{lo:.3f}, {hi:.3f}])")
    bad = route_fuzz(args.chain, args.ops, args.samples, args.seed, args.budget)
    if bad:
        raise RouteDisagreement(f"{bad} disagreements")
    return {"disagreements": 0}, "0 route disagreements"


# --------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="semiprimal", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="size cap for constructions")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON document")
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def with_base(sp):
        sp.add_argument("--base", help="base algebra: JSON file or catalog key")
        return sp

    c = sub.add_parser("check", help="primality verdicts")
    c.add_argument("property", choices=["semiprimal", "quasiprimal", "primal"])
    c.add_argument("algebra")
    c.add_argument("--route", default="all", choices=["all", *ROUTES])
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("subalgebras", help="list subuniverses")
    c.add_argument("algebra")
    c.set_defaults(func=cmd_subalgebras)

    c = sub.add_parser("homs", help="list homomorphisms")
    c.add_argument("source")
    c.add_argument("target")
    c.set_defaults(func=cmd_homs)

    c = with_base(sub.add_parser("skeleton", help="Boolean skeleton of a member"))
    c.add_argument("member")
    c.set_defaults(func=cmd_skeleton)

    c = sub.add_parser("boolpower", help="Boolean power L[2^k]")
    c.add_argument("algebra")
    c.add_argument("--atoms", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_boolpower)

    c = with_base(sub.add_parser("dual", help="dual labelled set of a member"))
    c.add_argument("member")
    c.set_defaults(func=cmd_dual)

    c = with_base(sub.add_parser("roundtrip", help="duality round trips"))
    c.add_argument("kind", choices=["algebra", "space"])
    c.add_argument("input")
    c.set_defaults(func=cmd_roundtrip)

    c = with_base(sub.add_parser("adjoint-check", help="skeleton/power adjunction bijections"))
    c.add_argument("member")
    c.add_argument("--atoms", type=int, default=2, help="check B = 2^0 .. 2^atoms")
    c.set_defaults(func=cmd_adjoint)

    c = with_base(sub.add_parser("quotient", help="subalgebra quotient functor"))
    c.add_argument("member")
    c.add_argument("--sub", type=int, required=True, help="subuniverse id of the base")
    c.set_defaults(func=cmd_quotient)

    c = sub.add_parser("catalog", help="list or build catalog algebras")
    c.add_argument("action", choices=["list", "build"])
    c.add_argument("key", nargs="?")
    c.add_argument("n", nargs="?", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("experiments", help="random sampling")
    c.add_argument("kind", choices=["murskii", "fuzz"])
    c.add_argument("--chain", type=int, default=3)
    c.add_argument("--ops", type=int, nargs="+", default=[2])
    c.add_argument("--samples", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--budget", type=float, help="wall-clock limit in seconds")
    c.set_defaults(func=cmd_experiments)
    return p


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, dispatch, print, and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, text = args.func(args)
    except PROPERTY_FAILURES as exc:
        print(f"property violated: {exc}", file=stderr)
        if args.json:
            print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=stdout)
        return 1
    except (InputError, SemiPrimalError, KeyError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=stderr)
        return 2
    if args.json:
        print(json.dumps(payload, ensure_ascii=False), file=stdout)
    else:
        print(text, file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
