"""Command-line front end over the expression and classification layers.

Every command assembles a Report and prints it in text or JSON form;
JSON output is deterministic for fixed inputs and configuration.  Exit
codes: 0 on success, 1 on any hard error (bad arguments, parse or
input failures), 2 when --strict is set and some verdict came back
unknown.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import Config, DEFAULT_CONFIG, load_config
from .errors import ParseError, UltraharmonicError
from .experiments import SUITES, run_suite
from .filters import (
    FilterBase,
    definition_check,
    glazer_member,
    glazer_sum_base,
    is_harmonic_base,
    principal_sum,
)
from .grammar import parse, to_text
from .harmonic import anharmonic_subset, classify
from .progressions import find_ap, longest_ap
from .report import Report, dump_json, load_report, render_text
from .sets import SetExpr
from .syndetic import classify_psyndetic, gap_profile
from .verdict import UNKNOWN

_MEMORY_WARN_HORIZON = 10**8


class _Parser(argparse.ArgumentParser):
    # usage problems are hard errors; exit code 2 is reserved for --strict
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", type=int, help="enumeration cap for this run")
    common.add_argument(
        "--checkpoints", type=_csv_ints, help="partial-sum horizons, comma-separated"
    )
    common.add_argument(
        "--exact", action="store_true", help="exact rational partial sums"
    )
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="output form"
    )
    common.add_argument(
        "--strict", action="store_true", help="exit 2 if any verdict is unknown"
    )
    common.add_argument("--config", help="key=value config file")
    return common


def _configure(args) -> Config:
    config = DEFAULT_CONFIG
    if args.config:
        config = load_config(args.config, config)
    if args.horizon:
        if args.horizon > _MEMORY_WARN_HORIZON:
            print(
                f"warning: horizon {args.horizon} above {_MEMORY_WARN_HORIZON} "
                "may take several GB of memory",
                file=sys.stderr,
            )
        config = replace(config, horizon_cap=args.horizon)
    if args.checkpoints:
        config = replace(config, checkpoints=args.checkpoints)
    else:
        kept = tuple(c for c in config.checkpoints if c <= config.horizon_cap)
        config = replace(config, checkpoints=kept or (config.horizon_cap,))
    if args.exact:
        config = replace(config, precision="exact")
    return config


def _snapshot(config: Config) -> dict:
    return {
        "horizon": config.horizon_cap,
        "checkpoints": list(config.checkpoints),
        "precision": config.precision,
        "cache_dir": config.cache_dir,
    }


def _emit(report: Report, args) -> None:
    if args.format == "json":
        sys.stdout.write(dump_json(report))
    else:
        sys.stdout.write(render_text(report))


def _finish(report: Report, args, *, errors: int, unknowns: int) -> int:
    _emit(report, args)
    if errors:
        return 1
    if args.strict and unknowns:
        return 2
    return 0


def _parse_all(texts, report) -> tuple[list[tuple[str, SetExpr]], int]:
    """Parse each expression, recording per-expression errors."""
    out = []
    errors = 0
    for text in texts:
        try:
            out.append((text, parse(text)))
        except ParseError as exc:
            errors += 1
            report.add({"kind": "error", "expression": text, "message": str(exc)})
    return out, errors


def _cmd_classify(args) -> int:
    config = _configure(args)
    report = Report("classify", {"exprs": list(args.exprs), "psyndetic": args.psyndetic}, _snapshot(config))
    parsed, errors = _parse_all(args.exprs, report)
    unknowns = 0
    for text, e in parsed:
        try:
            verdict = classify(e, config=config)
            record = {
                "kind": "classify",
                "expression": text,
                "canonical": to_text(e),
                "verdict": verdict.to_dict(),
            }
            if verdict.value == UNKNOWN:
                unknowns += 1
            if args.psyndetic:
                psyn = classify_psyndetic(e, config=config)
                record["psyndetic"] = psyn.to_dict()
                if psyn.value == UNKNOWN:
                    unknowns += 1
            report.add(record)
        except UltraharmonicError as exc:
            errors += 1
            report.add({"kind": "error", "expression": text, "message": str(exc)})
    return _finish(report, args, errors=errors, unknowns=unknowns)


def _cmd_gaps(args) -> int:
    config = _configure(args)
    horizon = args.horizon or min(10**4, config.horizon_cap)
    report = Report("gaps", {"exprs": list(args.exprs), "horizon": horizon}, _snapshot(config))
    parsed, errors = _parse_all(args.exprs, report)
    for text, e in parsed:
        try:
            profile = gap_profile(e, horizon, config=config)
            report.add({"kind": "gaps", "expression": text, "profile": profile.to_dict()})
        except UltraharmonicError as exc:
            errors += 1
            report.add({"kind": "error", "expression": text, "message": str(exc)})
    return _finish(report, args, errors=errors, unknowns=0)


def _cmd_ap(args) -> int:
    config = _configure(args)
    horizon = args.horizon or min(10**4, config.horizon_cap)
    arguments = {
        "exprs": list(args.exprs),
        "horizon": horizon,
        "longest": args.longest,
        "length": args.length,
        "k_cap": args.k_cap,
    }
    report = Report("ap", arguments, _snapshot(config))
    parsed, errors = _parse_all(args.exprs, report)
    for text, e in parsed:
        try:
            if args.longest:
                witness = longest_ap(e, horizon, args.k_cap, config=config)
                record = {"kind": "ap", "mode": "longest", "k": args.k_cap}
            else:
                witness = find_ap(e, args.length, horizon, config=config)
                record = {"kind": "ap", "mode": "find", "k": args.length}
            record.update(
                expression=text,
                horizon=horizon,
                witness=None if witness is None else witness.to_dict() | {"terms": witness.terms()},
            )
            report.add(record)
        except UltraharmonicError as exc:
            errors += 1
            report.add({"kind": "error", "expression": text, "message": str(exc)})
    return _finish(report, args, errors=errors, unknowns=0)


def _cmd_extract(args) -> int:
    config = _configure(args)
    report = Report(
        "extract",
        {"a": args.a, "b": args.b, "count": args.count},
        _snapshot(config),
    )
    errors = 0
    try:
        a = parse(args.a)
        b = parse(args.b)
        values = anharmonic_subset(a, b, args.count, config=config)
        report.add(
            {
                "kind": "extract",
                "a": args.a,
                "b": args.b,
                "count": args.count,
                "elements": values,
            }
        )
    except (UltraharmonicError, ValueError) as exc:
        errors += 1
        report.add({"kind": "error", "expression": f"{args.a} / {args.b}", "message": str(exc)})
    return _finish(report, args, errors=errors, unknowns=0)


def _build_bases(args, config: Config) -> tuple[FilterBase, FilterBase]:
    horizon = min(10**4, config.horizon_cap)
    lefts = [parse(t) for t in args.left]
    rights = [parse(t) for t in args.right]
    return (
        FilterBase.build(lefts, horizon=horizon),
        FilterBase.build(rights, horizon=horizon),
    )


def _cmd_glazer_add(args) -> int:
    config = _configure(args)
    arguments = {"n": args.n, "m": args.m, "member": list(args.member or [])}
    report = Report("glazer add", arguments, _snapshot(config))
    errors = 0
    unknowns = 0
    point = principal_sum(args.n, args.m).point
    if not args.member:
        report.add({"kind": "glazer-principal", "n": args.n, "m": args.m, "point": point})
    for text in args.member or []:
        try:
            e = parse(text)
            direct = definition_check(e, args.n, args.m)
            report.add(
                {
                    "kind": "glazer-principal",
                    "n": args.n,
                    "m": args.m,
                    "point": point,
                    "expression": text,
                    "member": direct,
                    "agrees": direct == e.member(point),
                }
            )
        except ParseError as exc:
            errors += 1
            report.add({"kind": "error", "expression": text, "message": str(exc)})
    return _finish(report, args, errors=errors, unknowns=unknowns)


def _cmd_glazer_member(args) -> int:
    config = _configure(args)
    arguments = {"expr": args.expr, "left": list(args.left), "right": list(args.right)}
    report = Report("glazer member", arguments, _snapshot(config))
    errors = 0
    unknowns = 0
    try:
        e = parse(args.expr)
        f, g = _build_bases(args, config)
        verdict = glazer_member(e, f, g, config=config)
        if verdict.value == UNKNOWN:
            unknowns += 1
        report.add(
            {
                "kind": "glazer-member",
                "expression": args.expr,
                "left": f.texts(),
                "right": g.texts(),
                "verdict": verdict.to_dict(),
            }
        )
    except UltraharmonicError as exc:
        errors += 1
        report.add({"kind": "error", "expression": args.expr, "message": str(exc)})
    return _finish(report, args, errors=errors, unknowns=unknowns)


def _cmd_glazer_sum(args) -> int:
    config = _configure(args)
    arguments = {"left": list(args.left), "right": list(args.right)}
    report = Report("glazer sum", arguments, _snapshot(config))
    errors = 0
    unknowns = 0
    try:
        f, g = _build_bases(args, config)
        total = glazer_sum_base(f, g, horizon=min(10**4, config.horizon_cap))
        harmonicity = is_harmonic_base(total, config=config)
        if harmonicity.value == UNKNOWN:
            unknowns += 1
        report.add(
            {
                "kind": "glazer-sum",
                "left": f.texts(),
                "right": g.texts(),
                "base": total.to_dict(),
                "harmonicity": harmonicity.to_dict(),
            }
        )
    except UltraharmonicError as exc:
        errors += 1
        report.add({"kind": "error", "expression": "glazer sum", "message": str(exc)})
    return _finish(report, args, errors=errors, unknowns=unknowns)


def _cmd_experiment(args) -> int:
    config = _configure(args)
    report = Report("experiment", {"name": args.name}, _snapshot(config))
    records = run_suite(args.name, config)
    report.add({"kind": "experiment", "name": args.name, "properties": records})
    failed = sum(1 for r in records if not r["passed"])
    return _finish(report, args, errors=failed, unknowns=0)


def _cmd_report(args) -> int:
    payload = load_report(args.path)
    if args.format == "json":
        sys.stdout.write(dump_json(payload))
    else:
        sys.stdout.write(render_text(payload))
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="ultraharmonic", description=__doc__)
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="harmonicity of set expressions")
    p.add_argument("exprs", nargs="+", metavar="EXPR")
    p.add_argument("--psyndetic", action="store_true", help="also report piecewise syndeticity")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("gaps", parents=[common], help="gap structure of an enumerated prefix")
    p.add_argument("exprs", nargs="+", metavar="EXPR")
    p.set_defaults(func=_cmd_gaps)

    p = sub.add_parser("ap", parents=[common], help="arithmetic progressions in a set")
    p.add_argument("exprs", nargs="+", metavar="EXPR")
    p.add_argument("-k", "--length", type=int, default=3, help="progression length to find")
    p.add_argument("--longest", action="store_true", help="longest progression instead")
    p.add_argument("--k-cap", type=int, default=12, help="length cap for --longest")
    p.set_defaults(func=_cmd_ap)

    p = sub.add_parser("extract", parents=[common], help="anharmonic subset of a harmonic set")
    p.add_argument("a", metavar="HARMONIC")
    p.add_argument("b", metavar="ANHARMONIC")
    p.add_argument("-k", "--count", type=int, required=True, help="how many elements")
    p.set_defaults(func=_cmd_extract)

    g = sub.add_parser("glazer", help="ultrafilter and filter-base addition")
    gsub = g.add_subparsers(dest="glazer_command", required=True)

    p = gsub.add_parser("add", parents=[common], help="sum of principal ultrafilters")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--member", action="append", metavar="EXPR", help="evaluate membership of EXPR in e(n)+e(m)")
    p.set_defaults(func=_cmd_glazer_add)

    p = gsub.add_parser("member", parents=[common], help="membership in a base-level Glazer sum")
    p.add_argument("expr", metavar="EXPR")
    p.add_argument("--left", action="append", required=True, metavar="EXPR", help="left base element (repeatable)")
    p.add_argument("--right", action="append", required=True, metavar="EXPR", help="right base element (repeatable)")
    p.set_defaults(func=_cmd_glazer_member)

    p = gsub.add_parser("sum", parents=[common], help="the sumset base of two filter bases")
    p.add_argument("--left", action="append", required=True, metavar="EXPR")
    p.add_argument("--right", action="append", required=True, metavar="EXPR")
    p.set_defaults(func=_cmd_glazer_sum)

    p = sub.add_parser("experiment", parents=[common], help="run a named property suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("report", parents=[common], help="re-render a saved JSON report")
    p.add_argument("path")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UltraharmonicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
