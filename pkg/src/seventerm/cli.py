"""Command line: ``seventerm run | list-fixtures | oracle | show``.

Exit codes: 0 all verdicts pass, 1 some verdict fails, 2 input or validation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cohomology import CohomologyError
from .fixtures import FIXTURES
from .maps import PreconditionError, SevenTermContext
from .oracle import D2_SUPPORTED, SUPPORTED, OracleError
from .problem import CHECKS, ProblemError, emit, parse_problem
from .report import run

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seventerm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="run the pipeline and verification checks")
    r.add_argument("--input", required=True, help="problem file or fixture name")
    r.add_argument("--checks", choices=CHECKS, default=None)
    r.add_argument("--report", type=Path, help="write the JSON report here")
    r.add_argument("--degree-max", type=int, choices=(2, 3), default=None)
    r.add_argument("--seed", type=int, default=None, help="seed for perturbation checks")
    r.add_argument("--timing", action="store_true",
                   help="include wall time in the report file (breaks byte-stability)")

    sub.add_parser("list-fixtures", help="list built-in fixtures")

    o = sub.add_parser("oracle", help="print an E_2 page (and d_2 where computed)")
    o.add_argument("--input", required=True)
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--r", type=int, default=2)

    s = sub.add_parser("show", help="print the normalized problem file")
    s.add_argument("--input", required=True)
    return ap


def _cmd_run(args) -> int:
    spec = parse_problem(args.input)
    report = run(spec, args.checks, args.degree_max, args.seed)
    print(report.summary())
    if args.report:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(report.to_json(timing=args.timing))
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


def _cmd_oracle(args) -> int:
    if (args.p, args.q) not in SUPPORTED:
        raise OracleError(f"E^{{{args.p},{args.q}}} is not supported; "
                          f"supported: {sorted(SUPPORTED)}")
    spec = parse_problem(args.input)
    ext, module = spec.build()
    ctx = SevenTermContext(ext, module)
    page = ctx.oracle.page(args.r, args.p, args.q)
    print(f"E_{args.r}^{{{args.p},{args.q}}} = {page.group}  (order {page.group.order()})")
    if args.r == 2 and (args.p, args.q) in D2_SUPPORTED:
        d = ctx.oracle.d2(args.p, args.q)
        print(f"d_2: E_2^{{{args.p},{args.q}}} -> E_2^{{{args.p + 2},{args.q - 1}}} = {d.target}")
        for row in d.matrix:
            print("  " + " ".join(str(x) for x in row))
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.cmd == "list-fixtures":
            for name, desc in FIXTURES.items():
                print(f"{name:<14} {desc}")
            return EXIT_OK
        if args.cmd == "show":
            sys.stdout.write(emit(parse_problem(args.input)))
            return EXIT_OK
        if args.cmd == "oracle":
            return _cmd_oracle(args)
        return _cmd_run(args)
    except (ProblemError, CohomologyError, OracleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
