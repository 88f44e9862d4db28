"""Command-line interface: ``pairorbits {ideals,count,nlambda,verify,scan}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cache import Cache, ComputationRecord
from .counting import canonical_element, char_submodule_size, orbit_size
from .errors import BudgetExceeded, PairOrbitsError, ParseError
from .interpolate import (
    conjecture_scan,
    is_heightzero_principal,
    n_ideal_recovery,
    n_lambda_recovery,
    parse_reference,
    symbolic_pair,
    verify_identities,
)
from .oracle import DEFAULT_BUDGET
from .partition import Partition, format_partition, parse_partition
from .poset import (
    enumerate_ideals,
    format_generators,
    ideal_from_generators,
    is_height_zero,
    is_principal,
    is_realized,
    max_elements,
    parse_generators,
)
from .polynomial import IntPolynomial

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(PairOrbitsError):
    pass


def _payload(quantity: str, lam: Partition, poly: IntPolynomial, provenance: str,
             ideal: Optional[str] = None, **extra) -> dict:
    out = {"quantity": quantity, "partition": format_partition(lam)}
    if ideal is not None:
        out["ideal"] = ideal
    out["coefficients"] = list(poly.coeffs) or [0]
    out["provenance"] = provenance
    out.update(extra)
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def _cache(args) -> Optional[Cache]:
    if args.no_cache:
        return None
    return Cache(args.cache_dir) if args.cache_dir else Cache.default()


def _cached(args, quantity: str, lam: Partition, ideal: Optional[str], compute) -> ComputationRecord:
    cache = _cache(args)
    if cache is not None:
        hit = cache.get(quantity, lam, ideal)
        if hit is not None:
            return hit
    poly, provenance = compute()
    rec = ComputationRecord(quantity, lam, ideal, poly.coeffs, provenance)
    return cache.put(rec) if cache is not None else rec


# commands ---------------------------------------------------------------


def cmd_ideals(args) -> int:
    lam = parse_partition(args.partition)
    rows = []
    for I in enumerate_ideals(lam):
        realized = is_realized(I)
        hz, pr = is_height_zero(I), is_principal(I)
        if args.realized and not realized:
            continue
        if args.height_zero and not hz:
            continue
        if args.principal and not pr:
            continue
        rows.append({
            "boundary": str(I),
            "max_elements": format_generators(max_elements(I)),
            "canonical": str(canonical_element(lam, I)),
            "char_size": list(char_submodule_size(lam, I).coeffs),
            "orbit_size": list(orbit_size(lam, I).coeffs) or [0],
            "realized": realized,
            "height_zero": hz,
            "principal": pr,
        })
    if args.format == "json":
        print(json.dumps({"quantity": "ideals", "partition": format_partition(lam),
                          "provenance": "symbolic", "ideals": rows}))
        return EXIT_OK
    header = f"{'boundary':<12} {'max':<16} {'e_I':<16} {'|A_I|':<8} {'|A*_I|':<16} flags"
    print(header)
    for r in rows:
        flags = "".join(c for c, on in zip("RHP", (r["realized"], r["height_zero"], r["principal"])) if on)
        print(f"{r['boundary']:<12} {r['max_elements']:<16} {r['canonical']:<16} "
              f"{str(IntPolynomial(tuple(r['char_size']))):<8} "
              f"{str(IntPolynomial(tuple(r['orbit_size']))):<16} {flags}")
    return EXIT_OK


def cmd_count(args) -> int:
    lam = parse_partition(args.partition)
    try:
        ideal = ideal_from_generators(lam, parse_generators(args.ideal))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not is_realized(ideal):
        raise UsageError(f"ideal {args.ideal} (boundary {ideal}) is not realized over {lam}")
    quantity = "n1_ideal" if args.pi else "n_ideal"

    def compute():
        if is_heightzero_principal(ideal):
            n, n1 = symbolic_pair(lam, ideal)
            return (n1 if args.pi else n), "symbolic"
        rec = n_ideal_recovery(lam, ideal, args.pi, args.budget, args.jobs)
        return rec.poly, rec.provenance

    rec = _cached(args, quantity, lam, str(ideal), compute)
    _emit(args, _payload(quantity, lam, rec.poly, rec.provenance, str(ideal)), str(rec.poly))
    return EXIT_OK


def cmd_nlambda(args) -> int:
    lam = parse_partition(args.partition)

    def compute():
        rec = n_lambda_recovery(lam, args.budget, args.jobs)
        return rec.poly, rec.provenance

    rec = _cached(args, "n_lambda", lam, None, compute)
    _emit(args, _payload("n_lambda", lam, rec.poly, rec.provenance), str(rec.poly))
    return EXIT_OK


def cmd_verify(args) -> int:
    lam = parse_partition(args.partition)
    report = verify_identities(lam, args.budget, args.jobs)
    if args.format == "json":
        checks = [{"name": c.name, "passed": c.passed, "lhs": c.lhs, "rhs": c.rhs} for c in report.checks]
        print(json.dumps(_payload("verify", lam, report.n_lambda, "interpolated",
                                  passed=report.passed, checks=checks,
                                  heightzero_total=list(report.heightzero_total.coeffs) or [0])))
    else:
        print(f"n_lambda = {report.n_lambda}")
        print(f"height-zero total = {report.heightzero_total}  "
              f"(ascending: {report.heightzero_total.ascending()})")
        print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_scan(args) -> int:
    reference = parse_reference(Path(args.reference).read_text()) if args.reference else None
    report = conjecture_scan(args.max, args.budget, reference, args.max_part, args.jobs)
    cache = _cache(args)
    if cache is not None:
        for e in report.entries:
            if e.poly is not None:
                cache.put(ComputationRecord("n_lambda", e.partition, None, e.poly.coeffs, "scan"))
    lines = report.lines()
    if args.report:
        Path(args.report).write_text("\n".join(lines) + "\n")
    if args.format == "json":
        entries = []
        for e in report.entries:
            item = {"quantity": "n_lambda", "partition": format_partition(e.partition),
                    "coefficients": list(e.poly.coeffs) if e.poly else None,
                    "provenance": "interpolated" if e.poly else e.error, "status": e.status}
            entries.append(item)
        print(json.dumps({"quantity": "scan", "passed": report.passed, "entries": entries}))
    else:
        print("\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


# parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="largest module size p^|lambda| the oracle may enumerate")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sampling")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--cache-dir", default=None, help="overrides $PAIRORBITS_CACHE_DIR")

    parser = argparse.ArgumentParser(prog="pairorbits", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideals", parents=[common], help="list order ideals of a partition")
    p.add_argument("partition")
    p.add_argument("--realized", action="store_true")
    p.add_argument("--height-zero", action="store_true")
    p.add_argument("--principal", action="store_true")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("count", parents=[common], help="stabilizer orbit count n_{lambda,I}")
    p.add_argument("partition")
    p.add_argument("--ideal", required=True, help='generators "(v,l);(v,l)"')
    p.add_argument("--pi", action="store_true", help="count orbits inside pi*A")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("nlambda", parents=[common], help="orbits of pairs n_lambda(q)")
    p.add_argument("partition")
    p.set_defaults(func=cmd_nlambda)

    p = sub.add_parser("verify", parents=[common], help="run the identity checks for a partition")
    p.add_argument("partition")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="n_lambda for all small partitions")
    p.add_argument("--max", type=int, required=True, help="largest weight (multiplicities <= 2)")
    p.add_argument("--max-part", type=int, default=None)
    p.add_argument("--reference", default=None, help="file of '<partition> : c0 c1 ...' lines")
    p.add_argument("--report", default=None, help="write the scan lines to this file")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, UsageError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PairOrbitsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
