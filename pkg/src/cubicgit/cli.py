"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checks, strata
from .feasibility import Infeasible, WeightPolytopeQuery, find_witness
from .formulas import brute_force_isq3, euler_char_isq3, plethysm_check
from .maximal import GoldenMismatch, enumerate_maximal, golden_consistency, load_golden, match_labels
from .poly import ParseError, format_monomial, parse
from .sing import DEFAULT_JET, classify_point
from .weights import MonomialSet, OnePS, argmax, mu

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, default=_default)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, OnePS):
        return list(o.weights)
    if hasattr(o, "tag"):
        return o.tag
    return str(o)


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def _read_poly(path: str, n: int = 6):
    try:
        return parse(_read(path).strip(), n)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}")


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"{what} must be comma separated integers, got {text!r}")


def _fractions(text: str, what: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.replace(" ", "").split(",") if t]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} must be comma separated rationals, got {text!r}")


def _support(text: str, n: int) -> MonomialSet:
    """Monomials separated by commas, whitespace or newlines; or a polynomial."""
    text = text.strip()
    try:
        if "+" in text or "-" in text:
            return MonomialSet.of_support(parse(text, n))
        parts = [p for p in text.replace(",", " ").split() if p]
        return MonomialSet.of_support(parse(" + ".join(parts), n))
    except (ParseError, ValueError) as exc:
        raise UsageError(f"bad support: {exc}")


# subcommands


def cmd_mu(args, out) -> int:
    f = _read_poly(args.poly)
    w = _ints(args.lam, "--lambda")
    if len(w) != f.n:
        raise UsageError(f"--lambda needs {f.n} entries")
    try:
        lam = OnePS(w)
    except ValueError as exc:
        raise UsageError(f"--lambda: {exc}")
    if f.is_zero():
        raise UsageError("mu of the zero polynomial")
    top = [format_monomial(m) for m in argmax(f, lam)]
    value = mu(f, lam)
    if args.fmt == "tsv":
        out.write(f"{value}\t{','.join(top)}\n")
    else:
        out.write(_json({"mu": value, "argmax": top}) + "\n")
    return EXIT_OK


def cmd_destab(args, out) -> int:
    S = _support(_read(args.support), args.n)
    if not len(S):
        raise UsageError("empty support")
    d = S.d
    w = find_witness(WeightPolytopeQuery(S, strict=args.strict, normalized=not args.torus))
    if isinstance(w, Infeasible):
        res = {"result": "infeasible", "strict": args.strict, "reason": w.reason}
    else:
        res = {"result": "witness", "strict": args.strict, "witness": list(w.weights), "degree": d}
    if args.fmt == "tsv":
        out.write("infeasible\n" if isinstance(w, Infeasible) else ",".join(map(str, w.weights)) + "\n")
    else:
        out.write(_json(res) + "\n")
    return EXIT_OK


def cmd_tables(args, out) -> int:
    if args.n < 2 or args.d < 1:
        raise UsageError("need --n >= 2 and --d >= 1")
    records = enumerate_maximal(args.n, args.d, args.strict)
    status = EXIT_OK
    if args.n == 6 and args.d == 3 and not args.no_golden:
        golden_path = args.golden or checks.data_path("table2" if args.strict else "table1", args.data_dir)
        golden = load_golden(golden_path)
        problems = golden_consistency(golden)
        try:
            if problems:
                raise GoldenMismatch(problems[0], [], [])
            records = match_labels(records, golden)
        except GoldenMismatch as exc:
            sys.stderr.write(f"golden mismatch: {exc}\n")
            status = EXIT_FAIL
    if args.fmt == "tsv":
        out.write("label\twitness\tsize\tgenerators\n")
        for r in records:
            out.write(f"{r.label or ''}\t{','.join(map(str, r.witness.weights))}\t{len(r.members)}\t"
                      f"{' '.join(r.generators.strings())}\n")
    else:
        out.write(_json({"n": args.n, "d": args.d, "strict": args.strict, "count": len(records),
                         "records": [r.to_dict() for r in records]}) + "\n")
    return status


def cmd_classify(args, out) -> int:
    f = _read_poly(args.poly)
    p = _fractions(args.point, "--point")
    if len(p) != f.n or not any(p):
        raise UsageError(f"--point needs {f.n} coordinates, not all zero")
    if not f.is_homogeneous() or f.is_zero():
        raise UsageError("the polynomial must be a nonzero form")
    res = classify_point(f, p, args.chart, args.jet)
    out.write(_json({"tag": res["tag"], "corank": res["corank"], "details": res["details"]}) + "\n")
    return EXIT_OK


def cmd_strata(args, out) -> int:
    data = None
    if args.data_dir:
        with open(checks.data_path("strata", args.data_dir)) as fh:
            data = json.load(fh)
    data = data or strata.catalog_data()
    if args.action == "list":
        rows = []
        for sid, rec in data["strata"].items():
            rows.append({"id": sid, "symbol": strata.GREEK[sid], "dimension": rec["dimension"],
                         "stabilizer_dim": rec["stabilizer_dim"], "normal_form": rec["normal_form"],
                         "params": [p.describe() for p in strata.signature(sid)]})
        if args.fmt == "tsv":
            out.write("id\tsymbol\tdimension\tstabilizer_dim\tnormal_form\n")
            for r in rows:
                out.write(f"{r['id']}\t{r['symbol']}\t{r['dimension']}\t{r['stabilizer_dim']}\t{r['normal_form']}\n")
        else:
            out.write(_json(rows) + "\n")
        return EXIT_OK
    if args.action == "verify":
        try:
            ids = [strata.canonical_id(args.id)] if args.id else list(data["strata"])
        except KeyError as exc:
            raise UsageError(str(exc.args[0]))
        reports = [strata.verify_entry(sid, args.seed, args.samples, data) for sid in ids]
        if args.fmt == "tsv":
            for r in reports:
                for name, c in r["checks"].items():
                    out.write(f"{r['id']}\t{name}\t{'pass' if c['ok'] else 'fail'}\n")
        else:
            out.write(_json(reports) + "\n")
        return EXIT_OK if all(r["ok"] for r in reports) else EXIT_FAIL
    # graph
    g = strata.incidence_graph(verify=not args.no_verify, seed=args.seed, data=data)
    if args.fmt == "dot":
        out.write(strata.graph_to_dot(g))
    else:
        out.write(_json(g) + "\n")
    ok = all(e.get("verified", True) for e in g["edges"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_euler(args, out) -> int:
    try:
        value = euler_char_isq3(args.n, args.d, args.g)
    except ValueError as exc:
        raise UsageError(str(exc))
    res = {"n": args.n, "d": args.d, "g": args.g, "chi": value}
    status = EXIT_OK
    if args.brute_force:
        if args.g != 0 or args.d > args.n:
            raise UsageError("brute force is implemented for rational normal curves (g = 0, d <= n)")
        res["brute_force"] = brute_force_isq3(args.n, args.d)
        status = EXIT_OK if res["brute_force"] == value else EXIT_FAIL
    if args.fmt == "tsv":
        out.write(f"{value}\n")
    else:
        out.write(_json(res) + "\n")
    return status


def cmd_plethysm(args, out) -> int:
    r = plethysm_check()
    out.write(_json(r) + "\n")
    return EXIT_OK if r["balanced"] and r["total"] == sum(r["dims"].values()) else EXIT_FAIL


def cmd_verify_all(args, out) -> int:
    results = checks.run_all(args.seed, args.data_dir, oracle=not args.skip_oracle, oracle_bound=args.oracle_bound)
    if args.fmt == "tsv":
        for r in results:
            out.write(f"{r['check']}\t{r['status']}\t{r['detail']}\n")
    else:
        out.write(_json({"seed": args.seed, "results": results}) + "\n")
    return EXIT_FAIL if any(r["status"] == "fail" for r in results) else EXIT_OK


def _formats(p, *choices, default="json"):
    g = p.add_mutually_exclusive_group()
    for c in choices:
        g.add_argument(f"--{c}", dest="fmt", action="store_const", const=c)
    p.set_defaults(fmt=default)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cubicgit", description="GIT stability computations for cubic fourfolds.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("mu", help="Hilbert-Mumford weight of a form")
    p.add_argument("--poly", required=True, help="file holding the polynomial")
    p.add_argument("--lambda", dest="lam", required=True, help="comma separated weights")
    _formats(p, "json", "tsv")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("destab", help="destabilizing 1-PS for a monomial support")
    p.add_argument("--support", required=True, help="file with monomials or a polynomial")
    p.add_argument("--strict", action="store_true", help="all weights negative")
    p.add_argument("--torus", action="store_true", help="allow any coordinate order")
    p.add_argument("--n", type=int, default=6)
    _formats(p, "json", "tsv")
    p.set_defaults(func=cmd_destab)

    p = sub.add_parser("tables", help="maximal destabilizing monomial sets")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--golden", help="golden JSON to match against")
    p.add_argument("--no-golden", action="store_true")
    p.add_argument("--data-dir")
    _formats(p, "json", "tsv")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("classify", help="singularity type at a point")
    p.add_argument("--poly", required=True)
    p.add_argument("--point", required=True, help='e.g. "1,0,0,0,0,0"')
    p.add_argument("--chart", type=int)
    p.add_argument("--jet", type=int, default=DEFAULT_JET)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("strata", help="boundary strata catalog")
    p.add_argument("action", choices=["list", "verify", "graph"])
    p.add_argument("--id")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--no-verify", action="store_true", help="graph without running the edge checks")
    p.add_argument("--data-dir")
    _formats(p, "json", "tsv", "dot")
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("euler", help="chi(I_C^2(3))")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--brute-force", action="store_true")
    _formats(p, "json", "tsv")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("plethysm", help="Sym^3(Sym^2 C^3) decomposition check")
    p.set_defaults(func=cmd_plethysm)

    p = sub.add_parser("verify-all", help="run every check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--data-dir")
    p.add_argument("--skip-oracle", action="store_true")
    p.add_argument("--oracle-bound", type=int, default=61)
    _formats(p, "json", "tsv")
    p.set_defaults(func=cmd_verify_all)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "strata" and args.fmt == "dot" and args.action != "graph":
            raise UsageError("--dot is only for 'strata graph'")
        for name in ("samples", "jet", "oracle_bound"):
            if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except checks.MissingData as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAIL


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
