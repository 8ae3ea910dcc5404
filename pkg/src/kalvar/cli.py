"""Command-line front end: ``kalvar <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error (bad flags, malformed
JSON, parameter constraints).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .arith import GF, QQ
from .degrees import (degree_all_methods, degree_binomial, degree_koutschan,
                      degree_schur, degree_univariate, multidegree_incidence)
from .groebner_d2 import (agreement_threshold, eval_univariate, gb_generators,
                          hilbert_function, hilbert_polynomial, hilbert_series_closed,
                          hilbert_series_facets, hilbert_series_shelling,
                          initial_ideal_and_facets, verify_buchberger)
from .kalman import (StratumSpec, brute_force_member, degree_census, kalman_matrix,
                     make_witness, membership_report, reduced_kalman_matrix,
                     small_kalman_matrix, stratum_generators)
from .matrix import ScalarMatrix, symbolic_matrix
from .polyring import PolyRing, buchberger_complete, poly_to_text, series_coefficients


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _census_text(census) -> str:
    return " ".join(f"{k}:{v}" for k, v in sorted(census.items()))


def _spec(args) -> StratumSpec:
    try:
        return StratumSpec(args.s, args.d, args.n)
    except ValueError as e:
        raise UsageError(str(e))


def _field(p: Optional[int]):
    if p is None:
        return QQ
    try:
        return GF(p)
    except ValueError as e:
        raise UsageError(str(e))


def _read_matrix(path: str) -> ScalarMatrix:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}")
    try:
        return ScalarMatrix.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"malformed matrix JSON: {e}")


def _scalar_str(x) -> str:
    if hasattr(x, "value"):
        return str(x.value)
    return str(x)


# -- subcommands ------------------------------------------------------------

def cmd_matrix(args) -> int:
    n, d = args.n, args.d
    if args.input:
        A = _read_matrix(args.input)
        n = A.nrows
    else:
        A = None
    if not (1 <= d <= n - 1):
        raise UsageError(f"need 1 <= d <= n-1, got d={d}, n={n}")
    if A is None:
        A = symbolic_matrix(PolyRing(n, QQ))
    if args.kind == "full":
        M = kalman_matrix(A, d)
    elif args.kind == "small":
        M = small_kalman_matrix(A, d)
    else:
        M = reduced_kalman_matrix(d, n, A=A)
    symbolic = not isinstance(M, ScalarMatrix)
    if args.json:
        if symbolic:
            entries = [[e.to_json() for e in r] for r in M.rows]
            field = "Q"
        else:
            entries = [[_scalar_str(x) for x in r] for r in M.rows]
            field = M.field.to_json()
        _emit({"kind": args.kind, "d": d, "n": n, "rows": M.nrows, "cols": M.ncols,
               "field": field, "entries": entries})
    else:
        fmt = poly_to_text if symbolic else _scalar_str
        for r in M.rows:
            print(" | ".join(fmt(e) for e in r))
    return 0


def cmd_generators(args) -> int:
    spec = _spec(args)
    if spec.d >= spec.n:
        raise UsageError("generators need d <= n-1")
    try:
        gens = stratum_generators(spec, args.source)
    except ValueError as e:
        raise UsageError(str(e))
    census = degree_census(gens)
    report = None
    if args.groebner:
        res = buchberger_complete(gens, max_pairs=args.max_pairs, max_poly_degree=args.max_degree)
        report = {"status": res.status, "pairs_processed": res.pairs_processed,
                  "pairs_skipped": res.pairs_skipped, "reason": res.reason,
                  "census": {str(k): v for k, v in res.degree_census().items()},
                  "squarefree_leading_terms": all(max(g.lm) <= 1 for g in res.basis),
                  "basis": [poly_to_text(g) for g in res.basis]}
    if args.json:
        out = {"spec": {"s": spec.s, "d": spec.d, "n": spec.n}, "source": args.source,
               "census": {str(k): v for k, v in census.items()},
               "generators": [g.to_json() for g in gens]}
        if report is not None:
            out["groebner"] = report
        _emit(out)
    else:
        print(f"census: {_census_text(census)}")
        for g in gens:
            print(poly_to_text(g))
        if report is not None:
            print(f"groebner: {report['status']} after {report['pairs_processed']} pairs; "
                  f"census {_census_text({int(k): v for k, v in report['census'].items()})}; "
                  f"squarefree leading terms: {str(report['squarefree_leading_terms']).lower()}")
    if report is not None and report["status"] != "complete":
        return 1
    return 0


def cmd_member(args) -> int:
    A = _read_matrix(args.input)
    try:
        spec = StratumSpec(args.s, args.d, A.nrows)
    except ValueError as e:
        raise UsageError(str(e))
    rep = membership_report(A, spec)
    if args.brute:
        if A.field is QQ:
            raise UsageError("--brute needs a GF(p) matrix")
        try:
            rep["brute_force"] = brute_force_member(A, spec)
        except ValueError as e:
            raise UsageError(str(e))
    if args.json:
        _emit(rep)
    else:
        print("true" if rep["member"] else "false")
        print(f"kalman_rank {rep['kalman_rank']} (member iff <= {rep['kalman_bound']})")
        print(f"small_rank {rep['small_rank']} (member iff <= {rep['small_bound']})")
        if "brute_force" in rep:
            print(f"brute_force {str(rep['brute_force']).lower()}")
    return 0


def cmd_witness(args) -> int:
    spec = _spec(args)
    w = make_witness(spec, _field(args.p), args.seed)
    if not w.verify():
        print("witness failed verification", file=sys.stderr)
        return 1
    _emit(w.to_json())
    return 0


def _koutschan(spec: StratumSpec) -> int:
    if spec.s != 2:
        raise ValueError("the closed form covers s = 2 only")
    return degree_koutschan(spec.d, spec.n)


_SINGLE = {
    "schur": degree_schur,
    "binomial": degree_binomial,
    "univariate": degree_univariate,
    "koutschan": _koutschan,
}


def cmd_degree(args) -> int:
    spec = _spec(args)
    if args.method == "all":
        rep = degree_all_methods(spec)
        _emit(rep)
        return 0 if rep["agree"] else 1
    try:
        print(_SINGLE[args.method](spec))
    except ValueError as e:
        raise UsageError(str(e))
    return 0


def cmd_grid_degree(args) -> int:
    if args.nmax < 1:
        raise UsageError("--nmax must be >= 1")
    rows = []
    for n in range(1, args.nmax + 1):
        for d in range(1, n + 1):
            for s in range(1, d + 1):
                rows.append(degree_all_methods(s, d, n))
    ok = all(r["agree"] for r in rows)
    if args.json:
        _emit({"nmax": args.nmax, "pass": ok, "cells": rows})
    else:
        print(f"{'s':>2} {'d':>2} {'n':>2} {'degree':>8}  methods-agreeing")
        for r in rows:
            agreeing = ",".join(r["methods"]) if r["agree"] else "MISMATCH " + json.dumps(r["methods"])
            print(f"{r['s']:>2} {r['d']:>2} {r['n']:>2} {r['degree']:>8}  {agreeing}")
    return 0 if ok else 1


def cmd_hilbert(args) -> int:
    n = args.n
    if n < 3:
        raise UsageError("--n must be >= 3")
    series = series_coefficients(hilbert_series_closed(n), args.tmax)
    hp = hilbert_polynomial(n)
    table = []
    for t in range(args.tmax + 1):
        hf = hilbert_function(n, t)
        hpt = eval_univariate(hp, t)
        table.append({"t": t, "hf": hf, "series": series[t],
                      "hp": int(hpt) if hpt.denominator == 1 else str(hpt)})
    ok = all(r["hf"] == r["series"] for r in table)
    threshold = agreement_threshold(n, args.tmax)
    closed = (f"{n}/(1-z)^{n * n - n + 2} - {n - 1}/(1-z)^{n * n - n + 1} "
              f"- 1/(1-z)^{n * n - 2 * n + 4} + 1/(1-z)^{n * n - 2 * n + 3}")
    if args.json:
        _emit({"check": "hilbert", "n": n, "pass": ok,
               "details": {"closed_form": closed, "table": table, "threshold": threshold}})
    else:
        print(f"HS(z) = {closed}")
        print(f"{'t':>3} {'HF(t)':>14} {'series':>14} {'HP(t)':>14}")
        for r in table:
            print(f"{r['t']:>3} {r['hf']:>14} {r['series']:>14} {r['hp']:>14}")
        print(f"HF(t) = HP(t) for t >= {threshold}" if threshold is not None
              else "HF and HP disagree at t = tmax")
    return 0 if ok else 1


def _gb_reports(n: int) -> List[dict]:
    reports = [verify_buchberger(n)]
    B = gb_generators(n)
    lead = [g.lm for g in B.elements] == B.expected_leading_monomials()
    reports.append({"check": "leading_terms", "n": n,
                    "pass": lead and len(B.quadrics) == (n - 2) * (n - 3) // 2
                    and len(B.cubics) == (n - 1) * (n - 2) // 2,
                    "details": {"quadrics": len(B.quadrics), "cubics": len(B.cubics),
                                "leading_terms_match": lead}})
    fc = initial_ideal_and_facets(n)
    reports.append({"check": "facets", "n": n,
                    "pass": fc.intersection_matches and fc.unmixed,
                    "details": {"facets": fc.facet_names(),
                                "intersection_matches": fc.intersection_matches,
                                "codimension": fc.codimension, "degree": fc.degree,
                                "unmixed": fc.unmixed}})
    closed = hilbert_series_closed(n)
    shell = hilbert_series_shelling(n) == closed
    facet = hilbert_series_facets(n) == closed
    reports.append({"check": "series_identity", "n": n, "pass": shell and facet,
                    "details": {"shelling_equals_closed": shell,
                                "facet_series_equals_closed": facet}})
    return reports


def cmd_gbcheck(args) -> int:
    if args.n < 3:
        raise UsageError("--n must be >= 3")
    reports = _gb_reports(args.n)
    if args.json:
        _emit(reports)
    else:
        for r in reports:
            print(f"{r['check']}: {'pass' if r['pass'] else 'FAIL'}")
    return 0 if all(r["pass"] for r in reports) else 1


def _bitext(poly) -> str:
    parts = []
    for (i, j), c in sorted(poly.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
        mono = []
        if i:
            mono.append("t1" if i == 1 else f"t1^{i}")
        if j:
            mono.append("t2" if j == 1 else f"t2^{j}")
        m = "*".join(mono)
        if not m:
            parts.append(str(c))
        else:
            parts.append(m if c == 1 else f"{c}*{m}")
    return " + ".join(parts) if parts else "0"


def cmd_multidegree(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    try:
        C, sub = multidegree_incidence(args.n)
    except ArithmeticError as e:
        print(str(e), file=sys.stderr)
        return 1
    if args.json:
        _emit({"n": args.n,
               "incidence": [[i, j, c] for (i, j), c in sorted(C.items(), reverse=True)],
               "substituted": [[i, j, c] for (i, j), c in sorted(sub.items(), reverse=True)]})
    else:
        print(_bitext(C))
        print(_bitext(sub))
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kalvar",
                                description="Kalman varieties: matrices, generators, membership, degrees.")
    sub = p.add_subparsers(dest="command", required=True)

    def sdn(q, need_n=True):
        q.add_argument("--s", type=int, required=True, help="invariant subspace dimension")
        q.add_argument("--d", type=int, required=True, help="dimension of L = span(e_1..e_d)")
        if need_n:
            q.add_argument("--n", type=int, required=True, help="ambient dimension")

    q = sub.add_parser("matrix", help="Kalman, small or reduced Kalman matrix")
    q.add_argument("--kind", choices=["full", "small", "reduced"], default="small")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--n", type=int, help="ambient dimension (symbolic mode)")
    q.add_argument("--input", help="matrix JSON file ('-' for stdin); evaluates instead of symbolic")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_matrix)

    q = sub.add_parser("generators", help="minors cutting out a stratum, with degree census")
    sdn(q)
    q.add_argument("--source", choices=["full", "small", "reduced"], default="reduced")
    q.add_argument("--groebner", action="store_true", help="also run Buchberger completion")
    q.add_argument("--max-pairs", type=int, default=50_000)
    q.add_argument("--max-degree", type=int, default=30)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_generators)

    q = sub.add_parser("member", help="membership verdict from both rank criteria")
    sdn(q, need_n=False)
    q.add_argument("--input", required=True, help="matrix JSON file ('-' for stdin)")
    q.add_argument("--brute", action="store_true", help="also run the exhaustive GF(p) search")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_member)

    q = sub.add_parser("witness", help="random matrix with a certified invariant subspace")
    sdn(q)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--p", type=int, help="work over GF(p) (default: rationals)")
    q.set_defaults(func=cmd_witness)

    q = sub.add_parser("degree", help="degree of a stratum")
    sdn(q)
    q.add_argument("--method", choices=["all", "schur", "koutschan", "binomial", "univariate"],
                   default="schur")
    q.set_defaults(func=cmd_degree)

    q = sub.add_parser("grid-degree", help="degrees for all 1 <= s <= d <= n <= nmax")
    q.add_argument("--nmax", type=int, default=8)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_grid_degree)

    q = sub.add_parser("hilbert", help="Hilbert function table for d = 2")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--tmax", type=int, default=8)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_hilbert)

    q = sub.add_parser("gbcheck", help="verify the explicit d = 2 Groebner basis")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_gbcheck)

    q = sub.add_parser("multidegree", help="bidegree of the incidence variety")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_multidegree)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command == "matrix" and args.input is None and args.n is None:
        print("kalvar matrix: need --n or --input", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as e:
        print(f"kalvar {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
