"""Command-line front end.

Exit codes are a scripting contract: 0 = ok/clean, 1 = violations found,
2 = usage or parse error, 3 = budget/cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import MorsePresentation, level_profile, validate
from .diskcerts import (
    BadCertificateError,
    DiskCertError,
    audit_certificates,
    parse_certificates,
    report_to_json,
    sphere_report,
)
from .search import SearchParams, search
from .textio import (
    ParseError,
    SemanticError,
    parse,
    profile_to_csv,
    profile_to_json,
    serialize,
)
from .twoside import (
    CapExceededError,
    ConfigError,
    parse_config,
    run_sweep,
    sweep_report_json,
    verify_paper_lemmas,
)

OK, VIOLATIONS, USAGE, BUDGET = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise _UsageError(f"cannot read {path}: {err}") from None


def _load_presentation(path: str) -> MorsePresentation:
    try:
        return parse(_read(path))
    except ParseError as err:
        raise _UsageError(f"{path}: {err}") from None


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="thinpos",
        description="Width calculus for Morse event-sequence link "
                    "presentations.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a presentation file")
    p.add_argument("file")

    p = sub.add_parser("width", help="print the width")
    p.add_argument("file")

    p = sub.add_parser("profile", help="per-gap counts and classes")
    p.add_argument("file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--plot", metavar="OUT", help="write a figure to OUT")

    p = sub.add_parser("search", help="search for a thinner presentation")
    p.add_argument("file")
    p.add_argument("--strategy", default="exhaustive",
                   choices=("exhaustive", "greedy", "anneal"))
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", metavar="OUT", help="write the move trace JSON")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for compatibility; results are identical "
                        "for any value")

    p = sub.add_parser("oracle", help="sweep two-sided configurations")
    p.add_argument("--max-events", type=int, required=True)
    p.add_argument("--punctures", default="2,4",
                   help="comma-separated per-side puncture counts")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for compatibility; results are identical "
                        "for any value")

    p = sub.add_parser("verify-twoside",
                       help="check one two-sided configuration")
    p.add_argument("configfile")

    p = sub.add_parser("check-disks", help="audit disk certificates")
    p.add_argument("file")
    p.add_argument("certs")

    p = sub.add_parser("report", help="per-thin-gap incompressibility report")
    p.add_argument("file")
    p.add_argument("--knot", action="store_true")
    p.add_argument("--prime", action="store_true")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--plot", metavar="OUT", help="write a figure to OUT")
    return top


def _cmd_validate(args) -> int:
    text = _read(args.file)
    try:
        pres = parse(text)
    except SemanticError as err:
        print(f"invalid: {err}")
        return VIOLATIONS
    except ParseError as err:
        raise _UsageError(f"{args.file}: {err}") from None
    report = validate(pres)
    print(f"ok: {len(pres.events)} events, {report.components} components")
    if report.split_gaps:
        print(f"warning: zero-count gaps {list(report.split_gaps)}")
    return OK


def _cmd_width(args) -> int:
    print(f"width: {_load_presentation(args.file).width()}")
    return OK


def _cmd_profile(args) -> int:
    profile = level_profile(_load_presentation(args.file))
    if args.json:
        sys.stdout.write(profile_to_json(profile))
    elif args.csv:
        sys.stdout.write(profile_to_csv(profile))
    else:
        for g, (count, cls) in enumerate(
                zip(profile.gap_counts, profile.gap_classes)):
            print(f"gap {g}: {count} ({cls})")
        print(f"width: {profile.width}")
        print(f"ladder: {list(profile.ladder.values)}")
    if args.plot:
        from .plotting import plot_profile
        plot_profile(profile, args.plot)
    return OK


def _cmd_search(args) -> int:
    pres = _load_presentation(args.file)
    params = SearchParams(args.strategy, budget=args.budget, seed=args.seed)
    result = search(pres, params)
    print(f"width: {pres.width()} -> {result.best_width} "
          f"in {len(result.trace.steps)} moves")
    sys.stdout.write(serialize(result.best))
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(result.trace.to_json())
    if result.budget_exhausted:
        print("budget exhausted; result is best-so-far", file=sys.stderr)
        return BUDGET
    return OK


def _cmd_oracle(args) -> int:
    try:
        punctures = tuple(int(tok) for tok in args.punctures.split(","))
    except ValueError:
        raise _UsageError(f"bad puncture list {args.punctures!r}") from None
    n, violations = run_sweep(args.max_events, punctures)
    if args.json:
        sys.stdout.write(sweep_report_json(n, violations))
    else:
        print(f"{len(violations)} violations / {n} configs")
        for report in violations:
            for key, v in report.verdicts.items():
                if not v.ok:
                    print(f"  {report.config}: {key}: {v.detail}")
    return VIOLATIONS if violations else OK


def _cmd_verify_twoside(args) -> int:
    try:
        config = parse_config(_read(args.configfile))
    except ConfigError as err:
        raise _UsageError(f"{args.configfile}: {err}") from None
    report = verify_paper_lemmas(config)
    sys.stdout.write(json.dumps(report.to_json_dict(), indent=2) + "\n")
    return OK if report.ok else VIOLATIONS


def _cmd_check_disks(args) -> int:
    pres = _load_presentation(args.file)
    try:
        family = parse_certificates(_read(args.certs))
    except BadCertificateError as err:
        raise _UsageError(f"{args.certs}: {err}") from None
    try:
        audit = audit_certificates(pres, family)
    except DiskCertError as err:
        raise _UsageError(str(err)) from None
    sys.stdout.write(json.dumps(audit, indent=2) + "\n")
    return OK if audit["ok"] else VIOLATIONS


def _cmd_report(args) -> int:
    pres = _load_presentation(args.file)
    reports = sphere_report(pres, is_knot=args.knot, is_prime=args.prime)
    if args.json:
        sys.stdout.write(report_to_json(reports))
    elif args.csv:
        print("gap,width,rank,verdicts")
        for g in sorted(reports):
            r = reports[g]
            print(f"{g},{r.width},{r.rank},\"{'; '.join(r.verdicts)}\"")
    else:
        if not reports:
            print("no thin gaps")
        for g in sorted(reports):
            r = reports[g]
            print(f"thin gap {g} (width {r.width}, rank {r.rank}):")
            for v in r.verdicts:
                print(f"  {v}")
            if not r.verdicts:
                print("  no verdicts")
    if args.plot:
        from .plotting import plot_report
        plot_report(pres.profile, reports, args.plot)
    return OK


_COMMANDS = {
    "validate": _cmd_validate,
    "width": _cmd_width,
    "profile": _cmd_profile,
    "search": _cmd_search,
    "oracle": _cmd_oracle,
    "verify-twoside": _cmd_verify_twoside,
    "check-disks": _cmd_check_disks,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    except CapExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return BUDGET
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
