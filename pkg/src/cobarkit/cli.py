"""Batch interface: homology tables, loop-model homology, identity suites.

Exit codes: 0 all pass, 1 verification failure, 2 input error, 3 fuel or
truncation exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import sset
from .doldkan import gamma
from .loopgroup import FuelExhausted
from .sset import TruncationError


def _load_space(spec, dim):
    if spec.endswith(".json"):
        with open(spec) as fh:
            data = json.load(fh)
        if "cells" in data:
            return sset.sset_from_json(data)
        raise ValueError("unrecognized JSON schema")
    return sset.standard(spec, dim=dim)


def _load_complex(spec):
    with open(spec) as fh:
        data = json.load(fh)
    return chain_from_json(data)


def chain_from_json(data):
    from .chain import ChainComplex

    basis = {int(k): list(v) for k, v in data.get("degrees", {}).items()}
    d = {}
    for k, rows in data.get("d", {}).items():
        d[int(k)] = [list(map(int, row)) for row in rows]
    return ChainComplex(basis, d)


def chain_to_json(C):
    return {
        "degrees": {str(n): [str(b) for b in C.basis[n]] for n in C.degrees()},
        "d": {str(n): C.d[n] for n in sorted(C.d)},
    }


def _emit(rows, header, fmt):
    if fmt == "json":
        print(json.dumps({"header": header, "rows": rows}, default=str))
    else:
        width = max(len(str(h)) for h in header)
        print("  ".join(str(h).ljust(width) for h in header))
        for row in rows:
            print("  ".join(str(v).ljust(width) for v in row))


def cmd_homology(args):
    try:
        if args.space.endswith(".json"):
            with open(args.space) as fh:
                data = json.load(fh)
            if "degrees" in data:
                cx = chain_from_json(data)
            else:
                cx = gamma(sset.sset_from_json(data))
        else:
            X = sset.standard(args.space, dim=max(args.nmax + 1, 3))
            cx = gamma(X)
    except (ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    rows = [[n, repr(cx.homology(n))] for n in range(args.nmax + 1)]
    _emit(rows, ["degree", "homology"], args.format)
    return 0


def cmd_loop_homology(args):
    try:
        X = _load_space(args.space, dim=args.nmax + 4)
    except (ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.method == "adams":
            from .barcobar import adams_cobar, chains_coalgebra, connected_cover_coalgebra

            C = connected_cover_coalgebra(chains_coalgebra(X))
            if C.rank(1):
                # degree-zero word generators make every degree infinite rank
                print(
                    "fuel error: loop homology needs the 1-skeleton collapsed",
                    file=sys.stderr,
                )
                return 3
            cb = adams_cobar(C, args.nmax + 1)
            rows = [[n, repr(cb.complex.homology(n))] for n in range(args.nmax + 1)]
        else:
            from .loopgroup import kan_loop_group, loop_homology_stable

            G = kan_loop_group(X, args.nmax + 1)
            vals = loop_homology_stable(G, args.nmax, fuel=args.fuel)
            rows = [[n, vals[n]] for n in range(args.nmax + 1)]
    except TruncationError as exc:
        print(f"truncation error: {exc}", file=sys.stderr)
        return 3
    except FuelExhausted as exc:
        print(f"fuel error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    _emit(rows, ["degree", "homology"], args.format)
    return 0


def _suite_ez_aw(size, rng):
    from .awez import ez_aw_identity_range

    out = []
    for p in range(1, min(size, 4) + 1):
        for q in range(1, min(size, 4) + 1):
            if p + q > size + 1:
                continue
            n = p + q
            X = sset.standard_simplex(p, dim=n)
            Y = sset.standard_simplex(q, dim=n)
            out.append((f"splitting-shuffle identity D{p}xD{q}", ez_aw_identity_range(X, Y, n)))
    return out


def _suite_shih(size, rng):
    from .awez import shih_homotopy_checks

    out = []
    for p in range(1, size + 1):
        for q in range(1, size - p + 1 + 1):
            if p + q > size:
                continue
            n = p + q + 1
            X = sset.standard_simplex(p, dim=n)
            Y = sset.standard_simplex(q, dim=n)
            res = shih_homotopy_checks(X, Y, n)
            out.append((f"contraction identity D{p}xD{q}", all(res)))
    return out


def _suite_dold_kan(size, rng):
    from .doldkan import eval_iso_gamma_N, is_unimodular
    from .random_objects import random_complex

    out = []
    for t in range(size):
        C = random_complex(rng, maxdeg=3, maxrank=3)
        NK, A, nc, mats = eval_iso_gamma_N(C, 4)
        ok = all(
            C.rank(n) == nc.complex.rank(n) and is_unimodular(mats[n])
            for n in range(4)
        )
        out.append((f"round trip on random complex {t}", ok))
    return out


def _suite_stasheff(size, rng):
    from .barcobar import ainf_from_dg, stasheff_check
    from .random_objects import random_dg_algebra, mutate_one_sign

    out = []
    for t in range(size):
        A = random_dg_algebra(rng)
        m = ainf_from_dg(A)
        out.append((f"induced family on random algebra {t}", stasheff_check(m, 4)))
        mutated = mutate_one_sign(m, rng)
        if mutated is not None:
            out.append((f"mutated sign fails {t}", not stasheff_check(mutated, 3)))
    return out


def _suite_szczarba_cancel(size, rng):
    from .szczarba import cancellation_check

    return [
        (f"counit-expansion cancellation k={k}", cancellation_check(k))
        for k in range(min(size, 2) + 1)
    ]


def _suite_shih_szczarba(size, rng):
    from .szczarba import compare_shih_szczarba

    out = []
    for k in range(min(size, 1) + 1):
        res = compare_shih_szczarba(k)
        out.append((f"projected contraction comparison k={k}", all(res.values())))
    return out


def _suite_duskin(size, rng):
    from .loopgroup import SimplicialMonoid, classifying_space
    from .sset import Monoid, nerve

    out = []
    for k in (2, 3):
        M = Monoid.cyclic(k)
        W = classifying_space(SimplicialMonoid.constant(M, size + 2), size + 1)
        HW = [repr(gamma(W.to_presentation()).homology(n)) for n in range(size + 1)]
        HN = [repr(gamma(nerve(M, size + 2)).homology(n)) for n in range(size + 1)]
        out.append((f"classifying space vs diagonal nerve Z/{k}", HW == HN))
    return out


def _suite_dec_iso(size, rng):
    from .barcobar import chains_coalgebra, cobar_dec_iso
    from .random_objects import random_two_stage_coalgebra

    out = []
    for name, X in (("S1", sset.circle(5)), ("S2", sset.sphere(2, dim=6))):
        _, _, rep = cobar_dec_iso(chains_coalgebra(X), min(size, 3), lenmax=5)
        out.append((f"decalage iso on chains of {name}", all(rep.values())))
    B = random_two_stage_coalgebra(rng)
    _, _, rep = cobar_dec_iso(B, min(size, 3), lenmax=5)
    out.append(("decalage iso on a random two-stage coalgebra", all(rep.values())))
    return out


SUITES = {
    "ez-aw": _suite_ez_aw,
    "shih": _suite_shih,
    "dold-kan": _suite_dold_kan,
    "stasheff": _suite_stasheff,
    "szczarba-cancel": _suite_szczarba_cancel,
    "shih-szczarba": _suite_shih_szczarba,
    "duskin": _suite_duskin,
    "dec-iso": _suite_dec_iso,
}


def cmd_verify(args):
    rng = random.Random(args.seed)
    try:
        suite = SUITES[args.suite]
    except KeyError:
        print(f"input error: unknown suite {args.suite!r}", file=sys.stderr)
        return 2
    results = suite(args.size, rng)
    rows = [[name, "pass" if ok else "FAIL"] for name, ok in results]
    rows.append([f"seed={args.seed}", ""])
    _emit(rows, ["check", "status"], args.format)
    return 0 if all(ok for _, ok in results) else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="cobarkit",
        description="exact bar/cobar calculus on finite simplicial sets",
    )
    parser.add_argument("--format", choices=["table", "json"], default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="homology of normalized chains")
    p.add_argument("space", help="standard name (delta2, sphere2, s1) or JSON path")
    p.add_argument("nmax", type=int)
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("loop-homology", help="homology of a loop model")
    p.add_argument("space")
    p.add_argument("nmax", type=int)
    p.add_argument("--method", choices=["kan", "adams"], default="adams")
    p.add_argument("--fuel", type=int, default=4)
    p.set_defaults(fn=cmd_loop_homology)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("size", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except TruncationError as exc:
        print(f"truncation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
