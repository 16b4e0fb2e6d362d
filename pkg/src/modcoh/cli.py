"""Command line front end.

    modcoh --fixture s3 --suite transport --report machine
    modcoh --list

Exit status: 0 when every check passes, 1 when at least one fails, 2 for
malformed input (bad fixture, unknown suite).
"""
from __future__ import annotations

import argparse
import sys

from .fixtures import FixtureError, bundled_fixtures, load_fixture
from .suites import SUITES, list_suites, run_suite

__all__ = ["main", "run"]


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modcoh", description="Exact coherence checks for module categories.")
    p.add_argument("--fixture", help="fixture JSON path or bundled fixture name")
    p.add_argument("--suite", action="append", default=[], metavar="NAME",
                   help="suite to run (repeatable); default: the fixture's suites")
    p.add_argument("--seed", type=int, help="sampling seed (overrides the fixture)")
    p.add_argument("--samples", type=int, help="sample count (overrides the fixture)")
    p.add_argument("--report", choices=("text", "machine"), default="text")
    p.add_argument("--list", action="store_true", help="list suites (restricted by --suite) and bundled fixtures")
    return p


def _format_matrix(m) -> str:
    rows = m.to_strings()
    return "\n".join("    [" + " ".join(r) + "]" for r in rows)


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    args = _parser().parse_args(argv)
    if args.list:
        try:
            entries = list_suites(args.suite)
        except KeyError as exc:
            print(f"unknown suite {exc.args[0]!r}", file=err)
            return 2
        for name, desc in entries:
            print(f"{name:<11} {desc}", file=out)
        if not args.suite:
            print("fixtures: " + " ".join(sorted(bundled_fixtures())), file=out)
        return 0
    if not args.fixture:
        print("--fixture is required", file=err)
        return 2
    try:
        spec = load_fixture(args.fixture)
    except FixtureError as exc:
        print(f"malformed fixture: {exc}", file=err)
        return 2
    names = args.suite or spec.suites
    if not names:
        print("no suites selected", file=err)
        return 2
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        print(f"unknown suite {unknown[0]!r}; known: {', '.join(SUITES)}", file=err)
        return 2
    seed = spec.seed if args.seed is None else args.seed
    samples = spec.samples if args.samples is None else args.samples
    results = []
    try:
        for name in names:
            results.append((name, run_suite(name, spec, seed, samples)))
    except FixtureError as exc:
        print(f"malformed fixture: {exc}", file=err)
        return 2

    failed = False
    first = None
    for name, reports in results:
        bad = [r for r in reports if not r.passed]
        failed = failed or bool(bad)
        if first is None and bad:
            first = (name, bad[0])
        if args.report == "machine":
            for r in reports:
                print(r.line(name), file=out)
        else:
            status = "ok" if not bad else f"{len(bad)} FAILED"
            print(f"{name}: {len(reports)} checks, {status}", file=out)
            for r in bad[:5]:
                print(f"  FAIL {r.diagram} {r.tuple_text()}", file=out)
    if first is not None:
        # machine reports keep stdout line-oriented; the counterexample goes to stderr
        dest = out if args.report == "text" else err
        name, r = first
        print(f"first counterexample: {name} {r.diagram} {r.tuple_text()}", file=dest)
        if r.lhs is not None:
            print("  left composite:\n" + _format_matrix(r.lhs), file=dest)
            print("  right composite:\n" + _format_matrix(r.rhs), file=dest)
    return 1 if failed else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
