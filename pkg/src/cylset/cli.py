"""Command-line front end.

Exit codes: 0 on success or when no counterexample exists within bounds,
1 when a counterexample was found or a check failed, 2 on usage errors.
Reports print as JSON when --json is passed, human-readable otherwise.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import constructions, semantics, terms, units
from .semantics import CheckReport


def _print_report(report: CheckReport, as_json: bool, label: str = "") -> int:
    if as_json:
        summary = {
            "checked": report.checked,
            "failures": len(report.failures),
            "exhaustive": report.exhaustive,
        }
        if label:
            summary["suite"] = label
        if report.notes:
            summary["notes"] = report.notes
        print(json.dumps(summary, sort_keys=True))
        for f in report.failures:
            print(json.dumps({"law": f.law, **f.witness}, sort_keys=True, default=str))
    else:
        status = "PASS" if report.ok else "FAIL"
        mode = "exhaustive" if report.exhaustive else "sampled"
        head = f"{label}: " if label else ""
        print(f"{head}{status} checked={report.checked} failures={len(report.failures)} ({mode})")
        for f in report.failures:
            print(f"  FAIL {f.law} {f.witness}")
    return 0 if report.ok else 1


def _load_unit(path: str) -> units.Unit:
    try:
        return units.load_unit(path)
    except (OSError, ValueError, json.JSONDecodeError) as err:
        raise SystemExit(f"cylset: malformed unit file {path}: {err}") from None


def _parse_assignments(v: units.Unit, assigns: list[str]) -> semantics.Evaluation:
    data: dict[str, list[int]] = {}
    for item in assigns or []:
        m = re.fullmatch(r"(x\d+)=\[([\d,\s]*)\]", item.strip())
        if not m:
            raise SystemExit(f"cylset: bad --assign {item!r}; expected e.g. x0=[0,2]")
        positions = [int(p) for p in m.group(2).replace(",", " ").split()]
        data[m.group(1)] = positions
    try:
        return semantics.evaluation_from_dict(v, data)
    except ValueError as err:
        raise SystemExit(f"cylset: {err}") from None


def _cmd_parse(args) -> int:
    try:
        t = terms.parse_term(args.term, args.vars)
    except terms.TermSyntaxError as err:
        print(f"cylset: {err}", file=sys.stderr)
        return 2
    out = {
        "term": terms.render_term(t),
        "index_set": sorted(terms.index_set(t)),
        "variables": sorted(terms.variables(t)),
    }
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        print(out["term"])
        print(f"indices: {out['index_set']}  variables: {out['variables']}")
    return 0


def _cmd_eval(args) -> int:
    v = _load_unit(args.unit)
    try:
        t = terms.parse_term(args.term)
        iota = _parse_assignments(v, args.assign)
        value = semantics.evaluate(t, v, iota)
    except (terms.TermSyntaxError, ValueError) as err:
        print(f"cylset: {err}", file=sys.stderr)
        return 2
    positions = sorted(v.position(f) for f in value)
    if args.json:
        print(json.dumps({
            "positions": positions,
            "sequences": [list(v.sequences[p].values) for p in positions],
        }))
    else:
        shown = " ".join(str(v.sequences[p]) for p in positions) or "(empty)"
        print(f"{len(positions)} of {len(v)} sequences: {shown}")
    return 0


def _cmd_classify(args) -> int:
    v = _load_unit(args.unit)
    tags = units.classify(v)
    names = [t.value for t in (units.ClassTag.CRS, units.ClassTag.D, units.ClassTag.G, units.ClassTag.GS) if t in tags]
    print(json.dumps(names) if args.json else ", ".join(names))
    return 0


_CLASS_TAGS = {
    "crs": units.ClassTag.CRS,
    "d": units.ClassTag.D,
    "g": units.ClassTag.G,
    "gs": units.ClassTag.GS,
}


def _enumerated_units(args) -> list[units.Unit]:
    tag = _CLASS_TAGS[args.cls]
    window = tuple(range(args.window))
    return list(units.enumerate_units(window, args.max_base, args.max_seqs, tag))


def _check_one_algebra(alg, samples: int, seed: int) -> CheckReport:
    if len(alg.universe) <= 10:
        elems = semantics.all_subsets(alg)
        exhaustive = True
    else:
        elems = semantics.sample_subsets(alg, samples, seed)
        exhaustive = False
    report = semantics.check_ca_axioms(alg, elems)
    report.exhaustive = exhaustive
    return report


def _cmd_check_axioms(args) -> int:
    if args.mapped is not None:
        report = _check_one_algebra(semantics.MappedUnitAlgebra(args.mapped), args.samples, args.seed)
    elif args.unit:
        report = _check_one_algebra(semantics.UnitAlgebra(_load_unit(args.unit)), args.samples, args.seed)
    elif args.cls:
        report = CheckReport()
        for v in _enumerated_units(args):
            one = _check_one_algebra(semantics.UnitAlgebra(v), args.samples, args.seed)
            for f in one.failures:
                f.witness.setdefault("unit", units.unit_to_dict(v))
            report.merge(one)
    else:
        raise SystemExit("cylset: check-axioms needs --unit FILE, --mapped N, or --class TAG")
    return _print_report(report, args.json)


def _cmd_check_eqs(args) -> int:
    if args.unit:
        report = semantics.check_eq_laws(_load_unit(args.unit), samples=args.samples, seed=args.seed)
    elif args.cls:
        report = CheckReport()
        for v in _enumerated_units(args):
            one = semantics.check_eq_laws(v, samples=args.samples, seed=args.seed)
            for f in one.failures:
                f.witness.setdefault("unit", units.unit_to_dict(v))
            report.merge(one)
    else:
        raise SystemExit("cylset: check-eqs needs --unit FILE or --class TAG")
    return _print_report(report, args.json)


def _cmd_split(args) -> int:
    v = _load_unit(args.unit)
    try:
        tau = terms.parse_term(args.term)
        iota = _parse_assignments(v, args.assign)
    except (terms.TermSyntaxError, ValueError) as err:
        print(f"cylset: {err}", file=sys.stderr)
        return 2
    build = constructions.split_atom_diag if args.mode == "diag" else constructions.split_any_crs
    probe = (
        terms.And(tau, terms.escape_term(0, 1)) if args.mode == "diag" else tau
    )
    try:
        if args.focus is not None:
            focus = v.sequences[args.focus]
        else:
            sat = semantics.evaluate(probe, v, iota)
            if not sat:
                print("cylset: no sequence satisfies the split target in this unit", file=sys.stderr)
                return 1
            focus = min(sat)
        if args.mode == "diag" and args.pivot is not None:
            cert = constructions.split_atom_diag(v, focus, iota, tau, pivot=args.pivot)
        else:
            cert = build(v, focus, iota, tau)
    except (ValueError, RuntimeError, IndexError) as err:
        print(f"cylset: {err}", file=sys.stderr)
        return 1
    verified = constructions.verify_certificate(cert)
    if args.json:
        out = constructions.certificate_to_dict(cert)
        out["verified"] = verified
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"splitter: {terms.render_term(cert.splitter)}")
        print(f"branch: {cert.branch}  fresh indices: {cert.fresh}  pivot: {cert.pivot}")
        print(f"verified: {verified}")
    return 0 if verified else 1


def _cmd_witness(args) -> int:
    _, report = constructions.mapped_witness(args.n, args.samples, args.seed)
    return _print_report(report, args.json)


def _cmd_refute_twins(args) -> int:
    report = constructions.refute_twins_in_gs2(args.max_base, args.workers)
    return _print_report(report, args.json)


def _cmd_replicate(args) -> int:
    results = constructions.replicate(
        args.suite, max_base=args.max_base, workers=args.workers, seed=args.seed
    )
    worst = 0
    for name, report in results:
        worst = max(worst, _print_report(report, args.json, label=name))
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cylset",
        description="Evaluate cylindric terms over finite sequence-set units, "
        "classify units, and run the splitting and witness constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, unit=False, term=False, assign=False, sampled=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if unit:
            p.add_argument("--unit", required=True, help="unit JSON file")
        if term:
            p.add_argument("--term", required=True, help="term text, e.g. 'x0 . -c0 -d01'")
        if assign:
            p.add_argument(
                "--assign", action="append", default=[], metavar="xk=[positions]",
                help="variable assignment by sequence positions; repeatable",
            )
        if sampled:
            p.add_argument("--samples", type=int, default=200)
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("parse", help="parse a term and echo its normal rendering")
    common(p, term=True)
    p.add_argument("--vars", type=int, default=None, help="generator count bound for variables")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("eval", help="evaluate a term in the algebra over a unit")
    common(p, unit=True, term=True, assign=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("classify", help="report the unit's class tags")
    common(p, unit=True)
    p.set_defaults(func=_cmd_classify)

    def enumeration_flags(p):
        p.add_argument("--class", dest="cls", choices=sorted(_CLASS_TAGS), default=None,
                       help="check every enumerated unit carrying this class tag")
        p.add_argument("--window", type=int, default=2, help="window size for --class enumeration")
        p.add_argument("--max-base", type=int, default=2, help="base size for --class enumeration")
        p.add_argument("--max-seqs", type=int, default=16, help="unit size cap for --class enumeration")

    p = sub.add_parser("check-axioms", help="check the cylindric postulates on sampled subsets")
    common(p, sampled=True)
    p.add_argument("--unit", help="unit JSON file")
    p.add_argument("--mapped", type=int, default=None, metavar="N", help="use the mapped algebra of window size N")
    enumeration_flags(p)
    p.set_defaults(func=_cmd_check_axioms)

    p = sub.add_parser("check-eqs", help="check the seven unit-algebra equations")
    common(p, sampled=True)
    p.add_argument("--unit", help="unit JSON file")
    enumeration_flags(p)
    p.set_defaults(func=_cmd_check_eqs)

    p = sub.add_parser("split", help="produce a two-half splitting certificate")
    common(p, unit=True, term=True, assign=True)
    p.add_argument("--mode", choices=("diag", "crs"), default="diag")
    p.add_argument("--focus", type=int, default=None, help="focus sequence position (default: least satisfying)")
    p.add_argument("--pivot", type=int, choices=(0, 1), default=None, help="force the outer cylindrification pivot (diag mode)")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("witness", help="build the mapped witness algebra and verify its facts")
    common(p, sampled=True)
    p.add_argument("--n", type=int, default=4, help="window size (2..4)")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("refute-twins", help="exhaustively refute the twin system over small disjoint-square units")
    common(p)
    p.add_argument("--max-base", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_refute_twins)

    p = sub.add_parser("replicate", help="run the replication suites")
    common(p)
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    p.add_argument("--max-base", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_replicate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as err:
        if isinstance(err.code, str):
            print(err.code, file=sys.stderr)
            return 2
        raise
    except ValueError as err:
        print(f"cylset: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
