"""Command-line front end.

Exit codes: 0 success, 1 verification failure (failed check, failed suite,
inconsistent data), 2 input error.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from importlib import resources
from typing import Sequence

from . import algebra, characterization as ch
from .algebra import ResiduatedSystem, parse_scale_spec
from .capacity import Capacity, Universe, enumerate_capacities
from .errors import DragonflyError, GuardExceeded, UnsupportedOperation
from .formats import (Dataset, format_interval, format_vector, parse_capacity, parse_dataset,
                      parse_vector, read_text, render_interval_table, render_operation_tables)
from .identification import Datum, InconsistentData, check_admissible, identify, verify_interval_characterization
from .integrals import IntegralKind, evaluate
from .report import NOT_APPLICABLE, Report, expect_failure

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

LYON_FIXTURE = "lyon.csv"


class InputError(DragonflyError):
    pass


def lyon_text() -> str:
    return resources.files("dragonfly").joinpath("data", LYON_FIXTURE).read_text(encoding="utf-8")


def _system_arg(args) -> ResiduatedSystem | None:
    return parse_scale_spec(args.scale) if args.scale else None


def _load_dataset(path: str, system: ResiduatedSystem | None) -> Dataset:
    if path == "lyon":
        return parse_dataset(lyon_text(), system, source=LYON_FIXTURE)
    return parse_dataset(read_text(path), system, source=path)


def _load_capacity(args, system: ResiduatedSystem | None) -> tuple[ResiduatedSystem, Capacity]:
    return parse_capacity(read_text(args.capacity), system, args.block, source=args.capacity)


def cmd_integrate(args, out) -> int:
    system, mu = _load_capacity(args, _system_arg(args))
    f = parse_vector(system, args.vector, mu.universe.n)
    result = evaluate(IntegralKind(args.kind), system, mu, f)
    print(system.format_value(result.value), file=out)
    if args.explain:
        u = mu.universe
        print(f"witness {u.format_subset(result.witness)}", file=out)
        for mask, term in result.terms:
            mark = " *" if mask == result.witness else ""
            print(f"  {u.format_subset(mask)}: {system.format_value(term)}{mark}", file=out)
    return EXIT_OK


def cmd_identify(args, out) -> int:
    dataset = _load_dataset(args.dataset, _system_arg(args))
    if args.complete_only:
        dataset = dataset.complete_only()
    extra = []
    for text in args.add_row or []:
        values = parse_vector(dataset.system, text, dataset.universe.n + 1)
        extra.append(Datum(values[:-1], values[-1]))
    dataset = dataset.with_rows(extra)
    try:
        result = identify(dataset.system, dataset.universe, dataset.data)
    except InconsistentData as exc:
        print(str(exc), file=out)
        return EXIT_FAIL
    if args.table:
        print(render_interval_table(dataset.system, result.interval), end="", file=out)
    else:
        print(format_interval(dataset.system, result.interval), end="", file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    dataset = _load_dataset(args.dataset, _system_arg(args))
    system, mu = _load_capacity(args, dataset.system)
    if dataset.universe != mu.universe:
        raise InputError("dataset criteria differ from the capacity's criteria")
    report = check_admissible(system, mu, dataset.data)
    rows = report.data["rows"]
    for j, computed, expected, ok in rows:
        f = format_vector(system, dataset.data[j].f)
        print(f"row {j + 1}: f=({f}) expected={system.format_value(expected)} "
              f"computed={system.format_value(computed)} {'pass' if ok else 'FAIL'}", file=out)
    passed = sum(1 for r in rows if r[3])
    status = "pass" if report.passed else "fail"
    print(f"total: {passed} pass / {len(rows) - passed} fail ({passed}/{len(rows)}) {status}", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def verification_suites(system: ResiduatedSystem, level: int = 1, n: int = 2) -> list[Report]:
    """Run the structural and theorem suites for ``system`` at an exhaustiveness level.

    Level 0 checks the operation tables only; level 1 adds the algebraic
    laws and the integral oracles on ``n`` criteria; level 2 adds the
    interval-characterization oracle and the oracles on ``n + 1`` criteria.
    Required counterexamples are reported as passing ``:must-fail`` entries.
    """
    if not system.is_finite:
        raise UnsupportedOperation("verification suites need a finite chain")
    reports = [algebra.check_operation_tables(system)]
    if level < 1:
        return reports
    zero_divisors = system.has_zero_divisors
    has_interior = bool(system.interior_values())
    # zero divisors break associativity and both monotonicity laws
    gated = expect_failure if zero_divisors else (lambda r: r)
    reports += [
        algebra.check_embedding(system),
        algebra.check_adjointness(system),
        gated(algebra.check_monoid(system)),
        algebra.check_adjointness_failure(system),
        gated(algebra.check_tnorm_monotone(system)),
        gated(algebra.check_residuum_monotone(system, known_first=True)),
    ]
    if has_interior:
        reports.append(expect_failure(algebra.check_residuum_monotone(system)))
    if zero_divisors:
        reports.append(Report("integral-suites", NOT_APPLICABLE,
                              detail="Dragonfly integrals need a chain without zero divisors"))
        return reports
    sizes = [n] if level < 2 else [n, n + 1]
    for size in sizes:
        u = Universe(size)
        for kind in (IntegralKind.TNORM_D, IntegralKind.RESIDUUM_D):
            r = ch.verify_trichotomy(system, u, kind)
            r.name += f"[n={size}]"
            reports.append(r)
        reports.append(ch.check_integral_monotonicity(system, u, IntegralKind.TNORM_D,
                                                      name=f"monotone-tnorm-d[n={size}]"))
        known = enumerate_capacities(u, system, allow_star=False)
        reports.append(ch.check_integral_monotonicity(system, u, IntegralKind.RESIDUUM_D, known,
                                                      name=f"monotone-residuum-d-known-mu[n={size}]"))
        star_mono = ch.check_integral_monotonicity(system, u, IntegralKind.RESIDUUM_D,
                                                   name=f"monotone-residuum-d-star-mu[n={size}]")
        reports.append(expect_failure(star_mono) if has_interior else star_mono)
    if level >= 2:
        u = Universe(n)
        bad = []
        count = 0
        for f in itertools.product(system.dvalues(), repeat=n):
            for alpha in system.dvalues():
                count += 1
                r = verify_interval_characterization(system, u, Datum(f, alpha))
                if r.failed:
                    bad.append(r)
        if bad:
            reports.append(Report("interval-characterization", "fail", bad[0].witness, checked=count))
        else:
            reports.append(Report("interval-characterization", "pass", checked=count))
    return reports


def cmd_verify(args, out) -> int:
    system = _system_arg(args) or ResiduatedSystem.godel(5)
    reports = verification_suites(system, args.level, args.criteria)
    for r in reports:
        print(r.line(), file=out)
    failed = sum(r.failed for r in reports)
    skipped = sum(r.status == NOT_APPLICABLE for r in reports)
    print(f"{system.describe()}: {len(reports)} suites, {len(reports) - failed - skipped} pass, "
          f"{failed} fail, {skipped} n/a", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_tables(args, out) -> int:
    if args.which == "ops":
        system = _system_arg(args) or ResiduatedSystem.godel(5)
        print(render_operation_tables(system), end="", file=out)
        return EXIT_OK
    dataset = _load_dataset(args.dataset, _system_arg(args))
    if args.which == "complete":
        dataset = dataset.complete_only()
    try:
        interval = identify(dataset.system, dataset.universe, dataset.data).interval
    except InconsistentData as exc:
        print(str(exc), file=out)
        return EXIT_FAIL
    if args.format == "interval":
        print(format_interval(dataset.system, interval), end="", file=out)
    else:
        print(render_interval_table(dataset.system, interval), end="", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dragonfly",
                                     description="Qualitative integrals on Dragonfly algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def scale_opt(p):
        p.add_argument("--scale", help="scale spec, e.g. 'scale godel 5 1,2,3,4,5'")

    p = sub.add_parser("integrate", help="evaluate an integral")
    p.add_argument("--capacity", required=True, help="capacity or interval file")
    p.add_argument("--block", help="block tag to use from an interval file (lower/upper)")
    p.add_argument("--vector", required=True, help="comma-separated input, '*' for unknown")
    p.add_argument("--kind", default="tnorm-d", choices=[k.value for k in IntegralKind])
    p.add_argument("--explain", action="store_true", help="print the per-subset terms")
    scale_opt(p)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("identify", help="compute the interval of admissible capacities")
    p.add_argument("dataset", help="dataset CSV, or 'lyon' for the bundled fixture")
    p.add_argument("--complete-only", action="store_true", help="drop rows with unknown values")
    p.add_argument("--add-row", action="append", metavar="VALUES",
                   help="extra datum: criteria values then alpha, comma-separated")
    p.add_argument("--table", action="store_true", help="human-readable table instead of file format")
    scale_opt(p)
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("check", help="check a capacity against a dataset")
    p.add_argument("dataset", help="dataset CSV, or 'lyon'")
    p.add_argument("--capacity", required=True)
    p.add_argument("--block")
    scale_opt(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run structural and theorem suites")
    p.add_argument("--level", type=int, default=1, choices=(0, 1, 2))
    p.add_argument("--criteria", type=int, default=2, help="universe size for the oracles")
    scale_opt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="render the operation tables or a bundled identification result")
    p.add_argument("which", choices=("ops", "complete", "all"),
                   help="ops: Dragonfly operation tables; complete: interval from rows without unknowns; "
                        "all: interval from every row")
    p.add_argument("--dataset", default="lyon")
    p.add_argument("--format", choices=("table", "interval"), default="table")
    scale_opt(p)
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except GuardExceeded as exc:
        print(f"error: refusing exhaustive run: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DragonflyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
