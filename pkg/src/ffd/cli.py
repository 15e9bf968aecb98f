"""Command-line surface.

Polynomial literals use a tiny grammar over T: terms like ``T^2``, ``2T``,
``5`` joined by ``+``/``-`` (coefficients are reduced into the prime field;
extension-field coefficients may be element indices).  Exit codes: 0 success,
1 usage error, 2 precondition breach, 3 precision shortfall, 4 verdict
failure.  FFD_CONFIG may point at a JSON config supplying defaults.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import PreconditionError, PrecisionError
from .gf import Fq, Poly, parse_poly, format_poly, abs_value
from .laurent import series_from_rational, series_sqrt, quadratic_roots
from .cfrac import (ContinuedFraction, Period, cf_expand_rational, cf_expand_series,
                    convergents, cf_galois_conjugate, conjugate_gap,
                    periodic_minimal_polynomial)
from .heights import liouville_sweep, check_liouville, CSV_HEADER
from .exponents import (exponent_estimate, wn_of_height, wnstar_of_height,
                        SAMPLE_CSV_HEADER)
from .words import (complexity, combi_factorize, dio_estimate,
                    verify_repetition_properties, word_from_spec)
from .experiments import (ExperimentReport, appendix_digit_approx, resolve_xi,
                          verify_main1, verify_main2, verify_main4, verify_main5,
                          verify_prop_main7, word_to_quotients,
                          quotient_prefix_cf, _jsonable)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_PRECISION = 3
EXIT_VERDICT = 4


def _load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _field_from(args, cfg) -> Fq:
    fieldcfg = cfg.get("field", {})
    p = args.p or fieldcfg.get("p")
    e = args.e or fieldcfg.get("e", 1)
    modulus = fieldcfg.get("modulus")
    if args.modulus:
        modulus = [int(x) for x in args.modulus.split(",")]
    if args.q:
        q = args.q
        # factor q = p^e for prime p
        for cand in range(2, q + 1):
            if q % cand == 0:
                p = cand
                e = 0
                while q % cand == 0 and q > 1:
                    q //= cand
                    e += 1
                break
        if q != 1:
            raise PreconditionError(f"--q must be a prime power, got {args.q}")
    if p is None:
        p, e = 3, 1
    if e > 1 and modulus is None:
        builtin = {(2, 2): [1, 1, 1], (2, 3): [1, 1, 0, 1], (3, 2): [1, 0, 1]}
        modulus = builtin.get((p, e))
    return Fq(int(p), int(e), modulus)


def _fraction(text) -> Fraction:
    return Fraction(text)


def _json_arg(text):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def _emit(args, payload: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")


def _emit_report(args, report: ExperimentReport) -> int:
    fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "json")
    _emit(args, report.to_csv() if fmt == "csv" else report.to_json())
    for c in report.checks:
        status = "ok " if c["holds"] else "FAIL"
        print(f"[{status}] {c['name']}: {c['detail']}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERDICT


def _rows_payload(args, header, rows) -> str:
    fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "json")
    if fmt == "csv":
        import csv as _csv
        import io as _io
        buf = _io.StringIO()
        w = _csv.writer(buf, quoting=_csv.QUOTE_MINIMAL, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    return json.dumps([dict(zip(header, r)) for r in rows], sort_keys=True,
                      indent=2, default=str)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ffd",
        description="Exact arithmetic and approximation exponents over F_q((1/T)).",
        epilog="Polynomial grammar: sums of cT^k terms, e.g. 'T^2+2T+1', '-T+3'.")
    ap.add_argument("--q", type=int, help="field size (prime power)")
    ap.add_argument("--p", type=int, help="characteristic")
    ap.add_argument("--e", type=int, help="extension degree")
    ap.add_argument("--modulus", help="comma-separated F_p modulus coefficients")
    ap.add_argument("--precision", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--threads", type=int, default=None,
                    help="cap on internal parallelism (results are identical "
                         "for every setting)")
    ap.add_argument("--out", help="write the main artifact to this path")
    ap.add_argument("--format", choices=("json", "csv"), default=None)
    ap.add_argument("--config", default=os.environ.get("FFD_CONFIG"),
                    help="JSON config file (default: $FFD_CONFIG)")
    sub = ap.add_subparsers(dest="group", required=True)

    cf = sub.add_parser("cf", help="continued fractions").add_subparsers(
        dest="cmd", required=True)
    c = cf.add_parser("expand", help="expand a rational function")
    c.add_argument("--num", required=True)
    c.add_argument("--den", required=True)
    c = cf.add_parser("convergents")
    c.add_argument("--num", required=True)
    c.add_argument("--den", required=True)
    c.add_argument("--upto", type=int, default=None)
    c = cf.add_parser("minpoly")
    c.add_argument("--cf", required=True, help="JSON {a0, quotients, period}")
    c = cf.add_parser("conjugate")
    c.add_argument("--cf", required=True)

    se = sub.add_parser("series", help="Laurent series").add_subparsers(
        dest="cmd", required=True)
    c = se.add_parser("sqrt")
    c.add_argument("--num", required=True)
    c.add_argument("--den", default="1")
    c = se.add_parser("roots")
    c.add_argument("--A", required=True)
    c.add_argument("--B", default="0")
    c.add_argument("--C", required=True)

    ex = sub.add_parser("exp", help="approximation exponents").add_subparsers(
        dest="cmd", required=True)
    for name in ("wn", "wnstar"):
        c = ex.add_parser(name)
        c.add_argument("--xi", required=True, help="JSON xi spec")
        c.add_argument("--n", type=int, default=2)
        c.add_argument("--h", type=int, required=True)
    c = ex.add_parser("estimate")
    c.add_argument("--xi", required=True)
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--h-list", default="1,2")
    c.add_argument("--starred", action="store_true")

    wo = sub.add_parser("word", help="word combinatorics").add_subparsers(
        dest="cmd", required=True)
    c = wo.add_parser("complexity")
    c.add_argument("--spec", required=True, help="JSON generator spec")
    c.add_argument("--n", type=int, required=True)
    c = wo.add_parser("dio")
    c.add_argument("--spec", required=True)
    c = wo.add_parser("combi")
    c.add_argument("--spec", required=True)
    c.add_argument("--kappa", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c = wo.add_parser("gen")
    c.add_argument("--spec", help="full JSON generator spec")
    c.add_argument("--type", help="generator type (shortcut)")
    c.add_argument("--w")
    c.add_argument("--eta")
    c.add_argument("--N", type=int)
    c.add_argument("--char", type=int)

    li = sub.add_parser("liouville", help="lower-bound checks").add_subparsers(
        dest="cmd", required=True)
    c = li.add_parser("check")
    c.add_argument("--case", required=True)
    c.add_argument("--inputs", required=True,
                   help="JSON: polys as coefficient-literal strings")
    c = li.add_parser("sweep")
    c.add_argument("--hmax", type=int, default=1)
    c.add_argument("--random", type=int, default=0)

    ve = sub.add_parser("verify", help="theorem checks at desk scale").add_subparsers(
        dest="cmd", required=True)
    c = ve.add_parser("main4")
    c.add_argument("--w", required=True)
    c.add_argument("--jmax", type=int, default=2)
    c.add_argument("--b", default="T")
    c.add_argument("--c", default="T+1")
    c.add_argument("--tol")
    c.add_argument("--gap-tol")
    c = ve.add_parser("main5")
    c.add_argument("--w", required=True)
    c.add_argument("--eta", required=True)
    c.add_argument("--jmax", type=int, default=1)
    c.add_argument("--b", default="T")
    c.add_argument("--c", default="T+1")
    c.add_argument("--d", default="T+2")
    c.add_argument("--tol")
    c.add_argument("--gap-tol")
    c = ve.add_parser("main1")
    c.add_argument("--word-spec", required=True)
    c.add_argument("--alphabet", required=True, help='JSON {"symbol": "poly"}')
    c.add_argument("--kappa", type=int, required=True)
    c.add_argument("--h-list", default="1,2")
    c = ve.add_parser("main2")
    c.add_argument("--word-spec", required=True)
    c.add_argument("--alphabet", required=True)
    c.add_argument("--slack", default="1/2")
    c = ve.add_parser("appendix")
    c.add_argument("--word-spec", required=True)
    c.add_argument("--kappa", type=int, default=None)
    c.add_argument("--tol", default="1/5")
    c = ve.add_parser("prop57")
    c.add_argument("--xi", required=True)
    c.add_argument("--h-list", default="1,2,3")
    return ap


def _run(args) -> int:
    cfg = _load_config(args.config)
    field = _field_from(args, cfg)
    prec = args.precision or cfg.get("precision", 32)
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    if args.threads is not None and args.threads < 1:
        raise PreconditionError("--threads must be >= 1")

    if args.group == "cf":
        if args.cmd == "expand":
            cfv = cf_expand_rational(parse_poly(field, args.num),
                                     parse_poly(field, args.den))
            quots = [format_poly(a) for a in [cfv.a0] + list(cfv.quotients)]
            print("[" + ", ".join(quots) + "]")
            _emit_ok = args.out and _emit(args, json.dumps(
                _jsonable(cfv.to_json()), sort_keys=True, indent=2))
            return EXIT_OK
        if args.cmd == "convergents":
            cfv = cf_expand_rational(parse_poly(field, args.num),
                                     parse_poly(field, args.den))
            n = len(cfv.quotients) if args.upto is None else min(
                args.upto, len(cfv.quotients))
            tab = convergents(cfv, n)
            rows = [[k, format_poly(tab.p(k)), format_poly(tab.q(k))]
                    for k in range(n + 1)]
            payload = _rows_payload(args, ["n", "p_n", "q_n"], rows)
            _emit(args, payload)
            return EXIT_OK
        cfv = ContinuedFraction.from_json(field, _json_arg(args.cf)) \
            if isinstance(_json_arg(args.cf), dict) else None
        if args.cmd == "minpoly":
            d = _json_arg(args.cf)
            cfv = _cf_from_literals(field, d)
            M = periodic_minimal_polynomial(cfv)
            print(str(M))
            print(f"height: {M.height()}")
            gapinfo = conjugate_gap(cfv) if (cfv.period and cfv.period.start >= 1
                                             ) else None
            if args.out:
                _emit(args, json.dumps({"minpoly": _jsonable(M),
                                        "height_exp": M.height().exponent},
                                       sort_keys=True, indent=2))
            return EXIT_OK
        if args.cmd == "conjugate":
            d = _json_arg(args.cf)
            cfv = _cf_from_literals(field, d)
            out = cf_galois_conjugate(cfv)
            print(str(out))
            if args.out:
                _emit(args, json.dumps(_jsonable(out.to_json()), sort_keys=True,
                                       indent=2))
            return EXIT_OK

    if args.group == "series":
        if args.cmd == "sqrt":
            s = series_from_rational(parse_poly(field, args.num),
                                     parse_poly(field, args.den), prec)
            print(str(series_sqrt(s, prec=prec)))
            return EXIT_OK
        if args.cmd == "roots":
            roots = quadratic_roots(parse_poly(field, args.A),
                                    parse_poly(field, args.B),
                                    parse_poly(field, args.C), prec)
            for r in roots:
                print(str(r))
            if not roots:
                print("(no roots in F_q((1/T)))")
            return EXIT_OK

    if args.group == "exp":
        spec = _json_arg(args.xi)
        xi, minpoly, self_key = resolve_xi(field, spec, prec)
        if args.cmd == "wn":
            s = wn_of_height(xi, args.n, args.h, minpoly=minpoly)
        elif args.cmd == "wnstar":
            s = wnstar_of_height(xi, args.n, args.h, self_key=self_key)
        else:
            hs = [int(x) for x in args.h_list.split(",")]
            est = exponent_estimate(xi, args.n, hs, starred=args.starred,
                                    minpoly=minpoly, self_key=self_key)
            rows = [s.csv_row() for s in est["samples"]]
            _emit(args, _rows_payload(args, SAMPLE_CSV_HEADER, rows))
            print(f"estimate: {est['west']}")
            return EXIT_OK
        _emit(args, _rows_payload(args, SAMPLE_CSV_HEADER, [s.csv_row()]))
        return EXIT_OK

    if args.group == "word":
        if args.cmd == "gen":
            spec = _json_arg(args.spec) if args.spec else _gen_spec_from_flags(args, field)
            word = word_from_spec(spec)
            print(" ".join(str(s) for s in word.symbols))
            if args.out:
                _emit(args, json.dumps(word.to_json(), sort_keys=True, indent=2))
            return EXIT_OK
        word = word_from_spec(_json_arg(args.spec))
        if args.cmd == "complexity":
            print(complexity(word.symbols, args.n))
            return EXIT_OK
        if args.cmd == "dio":
            est = dio_estimate(word.symbols)
            wit = est["witness"]
            print(f"rho >= {est['rho']}  (|U|={len(wit.U)}, |V|={len(wit.V)}, "
                  f"w={wit.w})")
            return EXIT_OK
        if args.cmd == "combi":
            res = combi_factorize(word.symbols, args.kappa, args.n)
            wit = res["witness"]
            checks = verify_repetition_properties(wit, args.kappa, args.n,
                                                  word.symbols)
            print(f"case={res['case']} |U|={len(wit.U)} |V|={len(wit.V)} w={wit.w}")
            for k, v in checks.items():
                print(f"  {k}: {v}")
            return EXIT_OK if checks["all"] else EXIT_VERDICT

    if args.group == "liouville":
        if args.cmd == "sweep":
            rep = liouville_sweep(field, args.hmax, n_random=args.random, seed=seed)
            rows = [r.csv_row() for r in rep["sample_reports"]]
            summary = {k: rep[k] for k in ("field", "hmax", "numbers", "pairs",
                                           "checks", "random_instances", "all_hold")}
            summary["violations"] = [list(map(str, v)) for v in rep["violations"]]
            if args.format == "csv" or (args.out or "").endswith(".csv"):
                _emit(args, _rows_payload(args, CSV_HEADER, rows))
            else:
                _emit(args, json.dumps(_jsonable(summary), sort_keys=True, indent=2))
            print(f"pairs={rep['pairs']} checks={rep['checks']} "
                  f"all_hold={rep['all_hold']}", file=sys.stderr)
            return EXIT_OK if rep["all_hold"] else EXIT_VERDICT
        if args.cmd == "check":
            rep = _liouville_check_from_json(field, args.case,
                                             _json_arg(args.inputs), prec)
            _emit(args, _rows_payload(args, CSV_HEADER, [rep.csv_row()]))
            return EXIT_OK if rep.holds else EXIT_VERDICT

    if args.group == "verify":
        if args.cmd == "main4":
            rep = verify_main4(field, _fraction(args.w), parse_poly(field, args.b),
                               parse_poly(field, args.c), args.jmax,
                               tol=_fraction(args.tol) if args.tol else None,
                               gap_tol=_fraction(args.gap_tol) if args.gap_tol else None)
            return _emit_report(args, rep)
        if args.cmd == "main5":
            rep = verify_main5(field, _fraction(args.w), _fraction(args.eta),
                               parse_poly(field, args.b), parse_poly(field, args.c),
                               parse_poly(field, args.d), args.jmax,
                               tol=_fraction(args.tol) if args.tol else None,
                               gap_tol=_fraction(args.gap_tol) if args.gap_tol else None)
            return _emit_report(args, rep)
        if args.cmd == "main1":
            word = word_from_spec(_json_arg(args.word_spec))
            amap = {s: parse_poly(field, lit)
                    for s, lit in _json_arg(args.alphabet).items()}
            hs = [int(x) for x in args.h_list.split(",")]
            rep = verify_main1(field, word, amap, args.kappa, h_list=hs, prec=prec)
            return _emit_report(args, rep)
        if args.cmd == "main2":
            word = word_from_spec(_json_arg(args.word_spec))
            amap = {s: parse_poly(field, lit)
                    for s, lit in _json_arg(args.alphabet).items()}
            rep = verify_main2(field, word, amap, slack=_fraction(args.slack))
            return _emit_report(args, rep)
        if args.cmd == "appendix":
            word = word_from_spec(_json_arg(args.word_spec))
            rep = appendix_digit_approx(field, [int(x) for x in word.symbols],
                                        cert_tol=_fraction(args.tol),
                                        kappa=args.kappa)
            return _emit_report(args, rep)
        if args.cmd == "prop57":
            hs = [int(x) for x in args.h_list.split(",")]
            rep = verify_prop_main7(field, _json_arg(args.xi), h_list=hs, prec=prec)
            return _emit_report(args, rep)

    raise PreconditionError("unhandled command")


def _cf_from_literals(field, d) -> ContinuedFraction:
    per = d.get("period")
    return ContinuedFraction(
        field, parse_poly(field, d.get("a0", "0")),
        [parse_poly(field, a) for a in d.get("quotients", ())],
        None if per is None else Period(int(per["start"]), int(per["len"])))


def _gen_spec_from_flags(args, field) -> dict:
    if not args.type:
        raise PreconditionError("word gen needs --spec or --type")
    spec = {"type": args.type}
    if args.w:
        spec["w"] = [Fraction(args.w).numerator, Fraction(args.w).denominator]
    if args.eta:
        spec["eta"] = [Fraction(args.eta).numerator, Fraction(args.eta).denominator]
    if args.N:
        spec["N"] = args.N
    spec["char"] = args.char or field.p
    return spec


def _liouville_check_from_json(field, case, inputs, prec):
    from .heights import AlgebraicNumber, XPoly

    def xpoly(lit):
        return XPoly.from_polys([parse_poly(field, t) for t in lit])

    def alg(spec):
        xi, minpoly, _ = resolve_xi(field, spec, prec)
        if spec.get("type") == "rational":
            return AlgebraicNumber.from_rational(parse_poly(field, spec["num"]),
                                                 parse_poly(field, spec["den"]))
        from .cfrac import algebraic_number_from_periodic
        cfv = _cf_from_literals(field, spec)
        return algebraic_number_from_periodic(cfv)

    if case == "poly_value":
        beta = alg(inputs["beta"])
        return check_liouville(case, xpoly(inputs["P"]), beta.minpoly, beta)
    if case in ("algebraic_pair", "quadratic_pair"):
        return check_liouville(case, alg(inputs["alpha"]), alg(inputs["beta"]))
    if case == "conjugate_gap":
        return check_liouville(case, alg(inputs["alpha"]))
    raise PreconditionError(f"CLI does not wire case {case!r}")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _run(args)
    except PrecisionError as exc:
        print(f"precision shortfall: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except PreconditionError as exc:
        print(f"precondition breach: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
