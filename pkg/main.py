"""
Split-Octonion Products - command-line entry point

Commands:
  mul       multiply two split-octonions (direct or fast)
  verify    run the verification harness
  count     operation counts for one product
  bench     time direct vs fast over doubles
  schedule  print the fast-product schedule
"""

import argparse
import json
import sys
from typing import List, Optional

from benchmark import checksums_agree, print_benchmark, run_benchmark
from config import DEFAULT_SUITE_FILE, load_suite
from octonion import (
    OctonionParseError, SplitOctonion, direct_mul, equal, format_octonion, format_scalar, parse_octonion,
)
from scalars import FLOAT, RATIONAL, with_counting
from schedule import apply, fast_mul, prepare, render_schedule
from verify import HarnessError, VerificationSuite, relative_error

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

ALGORITHMS = {
    'direct': direct_mul,
    'fast': fast_mul,
}


def print_header(title: str):
    print("\n" + "=" * 70)
    print(f"{title:^70}")
    print("=" * 70)


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _operands(args, parser: argparse.ArgumentParser):
    x_text = args.x if args.x is not None else args.x_pos
    b_text = args.b if args.b is not None else args.b_pos
    if x_text is None or b_text is None:
        parser.error("mul needs two operands (positional or --x/--b)")
    ring = FLOAT if args.float else RATIONAL
    return parse_octonion(x_text, ring), parse_octonion(b_text, ring)


def cmd_mul(args, parser: argparse.ArgumentParser) -> int:
    x, b = _operands(args, parser)
    product = ALGORITHMS[args.algo](x, b)

    if args.check:
        other = 'fast' if args.algo == 'direct' else 'direct'
        second = ALGORITHMS[other](x, b)
        agree = (relative_error(product, second, x, b) <= 1e-12) if args.float else equal(product, second, RATIONAL)
        if not agree:
            print(f"[FAIL] {args.algo} gives {product}, {other} gives {second}", file=sys.stderr)
            return EXIT_FAILED

    if args.format == 'json':
        print(dump_json({'coeffs': [format_scalar(c) for c in product.coeffs]}))
    else:
        print(format_octonion(product))
    return EXIT_OK


def cmd_verify(args, parser: argparse.ArgumentParser) -> int:
    settings, references = load_suite(args.config)
    settings = settings.with_overrides(seed=args.seed, random_pairs=args.random)
    suite = VerificationSuite(settings, references)

    try:
        report = suite.run(symbolic=args.symbolic, properties=args.properties,
                           float_samples=args.float_samples)
    except HarnessError as e:
        print(f"Harness error: {e}", file=sys.stderr)
        return EXIT_FAILED

    if args.format == 'json':
        print(dump_json(report.to_dict()))
    else:
        print_header("SPLIT-OCTONION VERIFICATION")
        print(report.to_text())
        print("=" * 70)
    return EXIT_OK if report.passed else EXIT_FAILED


def _count(algo: str):
    x = SplitOctonion.basis(1) + SplitOctonion.basis(6)
    b = SplitOctonion.basis(2) - SplitOctonion.basis(5)
    if algo == 'apply':
        prepared, prep = with_counting(prepare, b)
        # prepared coefficients are operands here, not constants
        _, applied = with_counting(apply, prepared, x)
        return applied, prep
    _, counts = with_counting(ALGORITHMS[algo], x, b)
    return counts, None


def cmd_count(args, parser: argparse.ArgumentParser) -> int:
    counts, prep = _count(args.algo)
    if args.format == 'json':
        data = counts.as_dict()
        if prep is not None:
            data['prepare'] = prep.as_dict()
        print(dump_json(data))
        return EXIT_OK

    print(f"algo: {args.algo}")
    print(f"mults: {counts.mults}")
    print(f"adds: {counts.adds}")
    print(f"shifts: {counts.shifts}")
    if prep is not None:
        print(f"prepare: {prep}")
    return EXIT_OK


def cmd_bench(args, parser: argparse.ArgumentParser) -> int:
    settings, _ = load_suite(args.config)
    iters = args.iters if args.iters is not None else settings.bench_iters
    if iters < 1:
        parser.error("--iters must be at least 1")
    rows = run_benchmark(iters, runs=settings.bench_runs, warmup=settings.bench_warmup,
                         reuse_prepared=args.reuse_prepared, seed=settings.seed)
    if args.format == 'json':
        print(dump_json({
            'iters': iters,
            'rows': [{'name': r.name, 'ns_per_op': r.ns_per_op, 'checksum': r.checksum} for r in rows],
            'checksums_agree': checksums_agree(rows),
        }))
    else:
        print_benchmark(rows, iters)
    return EXIT_OK


def cmd_schedule(args, parser: argparse.ArgumentParser) -> int:
    print(render_schedule())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Split-octonion products: schoolbook vs 28-multiplication fast algorithm',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py mul "0,1,0,0,0,0,0,0" "0,0,1,0,0,0,0,0" --algo fast
  python main.py verify --symbolic --random 1000
  python main.py count fast
  python main.py bench --iters 5000 --reuse-prepared
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    mul = sub.add_parser('mul', help='Multiply two split-octonions')
    mul.add_argument('x_pos', nargs='?', metavar='X', help='Left operand, 8 comma-separated scalars')
    mul.add_argument('b_pos', nargs='?', metavar='B', help='Right operand, 8 comma-separated scalars')
    mul.add_argument('--x', help='Left operand (alternative to positional)')
    mul.add_argument('--b', help='Right operand (alternative to positional)')
    mul.add_argument('--algo', choices=sorted(ALGORITHMS), default='direct', help='Algorithm (default: direct)')
    mul.add_argument('--float', action='store_true', help='Compute over doubles instead of rationals')
    mul.add_argument('--check', action='store_true', help='Also run the other algorithm and compare')
    mul.set_defaults(handler=cmd_mul)

    verify = sub.add_parser('verify', help='Run the verification harness')
    verify.add_argument('--random', type=int, default=None, help='Random rational pairs (default: from config)')
    verify.add_argument('--seed', type=int, default=None, help='Random seed (default: from config)')
    verify.add_argument('--symbolic', action='store_true', help='Replay the schedule over polynomials')
    verify.add_argument('--properties', action='store_true', help='Run the algebra property suite')
    verify.add_argument('--float-samples', type=int, default=0, help='Double-precision agreement samples')
    verify.add_argument('--config', default=DEFAULT_SUITE_FILE, help='YAML suite file')
    verify.set_defaults(handler=cmd_verify)

    count = sub.add_parser('count', help='Operation counts for one product')
    count.add_argument('algo', nargs='?', choices=['direct', 'fast', 'apply'], default='fast')
    count.set_defaults(handler=cmd_count)

    bench = sub.add_parser('bench', help='Time direct vs fast over doubles')
    bench.add_argument('--iters', type=int, default=None, help='Products per run (default: from config)')
    bench.add_argument('--reuse-prepared', action='store_true', help='Add an apply-only row')
    bench.add_argument('--config', default=DEFAULT_SUITE_FILE, help='YAML suite file')
    bench.set_defaults(handler=cmd_bench)

    schedule = sub.add_parser('schedule', help='Print the fast-product schedule')
    schedule.set_defaults(handler=cmd_schedule)

    for command in (mul, verify, count, bench):
        command.add_argument('--format', choices=['text', 'json'], default='text', help='Output format')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, 'random', None) is not None and args.random < 0:
        parser.error("--random must be non-negative")
    try:
        return args.handler(args, parser)
    except OctonionParseError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
