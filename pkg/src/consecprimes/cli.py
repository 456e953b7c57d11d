"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (or no threshold / weak bound),
2 usage or configuration error, 3 resource limit hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import certificate, limits, scanner
from .certificate import GapBound
from .errors import NoThreshold, PrecisionError, PrimeResourceError, WeakBound
from .primes import PrimeTable, default_segment_size, sieve_upto
from .report import (
    FORMATS,
    SCHEMA_VERSION,
    GapBoundConfigError,
    build_registry,
    emit_report,
    load_gap_bounds,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--segment-size", type=_positive, default=None,
                        help="sieve segment length (default from CONSECPRIMES_SEGMENT_SIZE or 2**18)")
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--gap-bounds", metavar="PATH", help="JSON array of extra gap bounds")

    p = argparse.ArgumentParser(prog="consecprimes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check one of the three inequalities")
    s.add_argument("--theorem", type=int, choices=sorted(scanner.THEOREMS), required=True)
    s.add_argument("--max-n", type=_positive, required=True)

    s = sub.add_parser("threshold", parents=[common], help="find where the k-th power inequality starts to hold")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--max-n", type=_positive, required=True)

    s = sub.add_parser("certificate", parents=[common], help="derive a polynomial certificate from a gap bound")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--c", type=_positive)
    s.add_argument("--n0", type=_positive)
    s.add_argument("--bound", metavar="NAME", help="use a named gap bound from the registry")
    s.add_argument("--scan-budget", type=_positive, default=10_000)

    s = sub.add_parser("limit", parents=[common], help="empirical n(k, epsilon) for the ratio sequence")
    s.add_argument("--k", required=True, help="integer or decimal exponent")
    s.add_argument("--epsilon", required=True, help="decimal or fraction, e.g. 0.5 or 1/2")
    s.add_argument("--max-n", type=_positive, required=True)
    s.add_argument("--precision", type=_positive, default=limits.DEFAULT_PRECISION,
                   help="bits for non-integer exponents")

    s = sub.add_parser("gapcheck", parents=[common], help="probe a gap constant over a range")
    s.add_argument("--c", type=_positive, required=True)
    s.add_argument("--max-n", type=_positive, required=True)
    s.add_argument("--n0", type=_positive, help="fail if the bound breaks at any index above this")

    s = sub.add_parser("sieve", parents=[common], help="list primes up to a limit")
    s.add_argument("--limit", type=_nonnegative, required=True)
    return p


def _registry(args) -> dict[str, GapBound]:
    if args.gap_bounds:
        return load_gap_bounds(args.gap_bounds)
    return build_registry([])


def _pick_bound(args, registry: dict[str, GapBound]) -> GapBound:
    if args.bound is not None:
        if args.bound not in registry:
            raise UsageError(f"unknown gap bound {args.bound!r}; known: {', '.join(registry)}")
        return registry[args.bound]
    if args.c is None or args.n0 is None:
        raise UsageError("certificate needs either --bound NAME or both --c and --n0")
    for g in registry.values():
        if (g.c, g.n0) == (args.c, args.n0):
            return g
    try:
        return GapBound(f"custom(c={args.c},n0={args.n0})", args.c, args.n0, "command line")
    except ValueError as e:
        raise UsageError(str(e)) from None


def _sieve_report(limit: int, primes: list[int], fmt: str) -> bytes:
    if fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, "type": "PrimeList", "limit": limit,
                   "count": len(primes), "primes": primes}
        return (json.dumps(payload) + "\n").encode()
    return "".join(f"{q}\n" for q in primes).encode()


def _dispatch(args) -> tuple[object, int]:
    table = PrimeTable(segment_size=args.segment_size, workers=args.workers)
    cmd = args.command
    if cmd == "verify":
        check = scanner.verify_theorem(args.theorem, args.max_n, table=table, workers=args.workers)
        return check, EXIT_OK if check.passed else EXIT_FAIL
    if cmd == "threshold":
        return scanner.find_threshold(args.k, args.max_n, table=table, workers=args.workers), EXIT_OK
    if cmd == "certificate":
        g = _pick_bound(args, _registry(args))
        if args.k < 2:
            raise UsageError("certificate needs --k >= 2")
        rep = certificate.assemble_theorem(args.k, g, args.scan_budget, table=table)
        return rep, EXIT_OK if rep.status == "complete" else EXIT_FAIL
    if cmd == "limit":
        try:
            res = limits.epsilon_threshold(args.k, args.epsilon, args.max_n, table=table,
                                           precision=args.precision)
        except (TypeError, ValueError) as e:
            if isinstance(e, NoThreshold):
                raise
            raise UsageError(str(e)) from None
        return res, EXIT_OK
    if cmd == "gapcheck":
        _registry(args)  # validate the config file even though gapcheck takes c directly
        res = certificate.gap_check(args.c, args.max_n, table=table)
        ok = args.n0 is None or res.empirical_n0 <= args.n0
        return res, EXIT_OK if ok else EXIT_FAIL
    raise AssertionError(cmd)


def _write(data: bytes, output: str | None) -> None:
    if output:
        with open(output, "wb") as f:
            f.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        if args.segment_size is None:
            args.segment_size = default_segment_size()
        if args.command == "sieve":
            primes = sieve_upto(args.limit, segment_size=args.segment_size, workers=args.workers)
            _write(_sieve_report(args.limit, primes.tolist(), args.format), args.output)
            return EXIT_OK
        try:
            result, code = _dispatch(args)
        except (WeakBound, NoThreshold) as e:
            result, code = e, EXIT_FAIL
        _write(emit_report(result, args.format), args.output)
        return code
    except PrimeResourceError as e:
        print(f"consecprimes: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, GapBoundConfigError, OSError, ValueError, PrecisionError) as e:
        detail = f" (entry: {e.entry!r})" if getattr(e, "entry", None) is not None else ""
        print(f"consecprimes: {e}{detail}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
