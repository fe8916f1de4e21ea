"""Command-line front end.

Subcommands: ``torsion`` (presentation -> normalized torsion + boundary
action + first Johnson value), ``surgery`` (clasper -> closed formula, with
``--oracle`` adding the compiled-presentation cross-check), ``johnson``
(automorphism -> Johnson value and its trace), ``compare`` (exact diff of
two invariant files), ``verify`` (property suites).

Exit codes: 0 success, 1 verification/comparison failure, 2 parse error,
3 precondition violation.  Reports are JSON with rationals as strings, and
are byte-identical across runs for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from ._backend import BACKEND
from .cylinder import LabeledPresentation, one_loop_leading, torsion
from .clasper import OneLoopClasper, one_loop_presentation, surgery_factor
from .errors import CyltorError, ParseError
from .johnson import auto_from_json, es_trace, ia_degree, tau
from .k1 import K1Value
from .cylinder import trivial_cylinder
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _cmd_torsion(args) -> int:
    pres = LabeledPresentation.from_json(_load_json(args.infile))
    inv = torsion(pres, args.cap, allow_mod_h=args.mod_h)
    report = inv.torsion.to_json()
    report["mod_h"] = inv.mod_h
    report["sigma"] = inv.sigma.to_json()
    report["tau1"] = inv.tau1.to_json() if inv.tau1 is not None else None
    if args.loop_degree:
        loop = one_loop_leading(pres, args.loop_degree, args.cap)
        report["one_loop_leading"] = {
            "degree": loop.degree,
            "value": loop.value.to_json(),
        }
    _emit(report, args.out)
    return EXIT_OK


def _cmd_surgery(args) -> int:
    c = OneLoopClasper.from_json(_load_json(args.infile))
    formula = surgery_factor(c, args.genus, args.cap)
    report = {"formula": formula.to_json(), "oracle": None, "match": None}
    if args.oracle:
        pres = one_loop_presentation(c, genus=args.genus)
        base = trivial_cylinder(args.genus)
        diff = torsion(pres, args.cap).torsion.log - torsion(base, args.cap).torsion.log
        report["oracle"] = K1Value(Fraction(1), diff).to_json()
        report["match"] = diff == formula.log
    _emit(report, args.out)
    if report["match"] is False:
        return EXIT_FAIL
    return EXIT_OK


def _cmd_johnson(args) -> int:
    auto = auto_from_json(_load_json(args.infile))
    report = {"ia_degree": ia_degree(auto)}
    value = tau(auto, args.degree)
    report["tau"] = value.to_json()
    report["trace"] = es_trace(value).to_json()
    _emit(report, args.out)
    return EXIT_OK


def _cmd_compare(args) -> int:
    a = _load_json(args.first)
    b = _load_json(args.second)

    def log_map(data):
        return {(e["degree"], tuple(e["word"])): Fraction(e["coeff"]) for e in data["log"]}

    same_det = Fraction(a["det_eps"]) == Fraction(b["det_eps"])
    la, lb = log_map(a), log_map(b)
    diffs = []
    for key in sorted(set(la) | set(lb)):
        ca, cb = la.get(key, Fraction(0)), lb.get(key, Fraction(0))
        if ca != cb:
            diffs.append({
                "degree": key[0],
                "word": list(key[1]),
                "first": str(ca),
                "second": str(cb),
            })
    report = {"equal": same_det and not diffs, "det_eps_equal": same_det, "log_diff": diffs}
    _emit(report, args.out)
    return EXIT_OK if report["equal"] else EXIT_FAIL


def _cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(
                lambda n: run_suite(n, seed=args.seed, trials=args.trials,
                                    genus=args.genus, cap=args.cap),
                names,
            ))
    else:
        reports = [run_suite(n, seed=args.seed, trials=args.trials,
                             genus=args.genus, cap=args.cap) for n in names]
    reports.sort(key=lambda r: r["suite"])
    ok = all(r["passed"] for r in reports)
    for r in reports:
        for c in r["checks"]:
            status = "PASS" if c["passed"] else "FAIL"
            line = f"[{r['suite']}] {c['name']}: {status}"
            if c["counterexample"]:
                line += f"  (counterexample: {c['counterexample']})"
            print(line)
    report = {"backend": BACKEND, "passed": ok, "suites": reports}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyltor", description=__doc__)
    p.add_argument("--version", action="version", version=f"cyltor {__version__} ({BACKEND} kernel)")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("torsion", help="normalized torsion of a presentation")
    t.add_argument("--in", dest="infile", required=True)
    t.add_argument("--cap", type=int, required=True)
    t.add_argument("--out")
    t.add_argument("--mod-h", action="store_true",
                   help="allow non-Torelli inputs (class defined mod degree-one units)")
    t.add_argument("--loop-degree", type=int, default=0,
                   help="also report the leading one-loop field at this degree")
    t.set_defaults(func=_cmd_torsion)

    s = sub.add_parser("surgery", help="one-loop surgery factor")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--cap", type=int, required=True)
    s.add_argument("--oracle", action="store_true",
                   help="cross-check against the compiled presentation")
    s.add_argument("--out")
    s.set_defaults(func=_cmd_surgery)

    j = sub.add_parser("johnson", help="Johnson value and trace of an automorphism")
    j.add_argument("--in", dest="infile", required=True)
    j.add_argument("--degree", type=int, required=True)
    j.add_argument("--out")
    j.set_defaults(func=_cmd_johnson)

    c = sub.add_parser("compare", help="exact diff of two invariant files")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_compare)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    v.add_argument("--cap", type=int, default=4)
    v.add_argument("--genus", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=64)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "cap", 1) < 1:
            raise ParseError("cap must be >= 1")
        if getattr(args, "genus", 1) < 1:
            raise ParseError("genus must be >= 1")
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CyltorError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
